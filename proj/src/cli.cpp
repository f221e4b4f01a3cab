#include "qcal/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>

#include "qcal/discord.hpp"
#include "qcal/error.hpp"
#include "qcal/output.hpp"
#include "qcal/scenario.hpp"
#include "qcal/sweep.hpp"
#include "qcal/validate.hpp"

namespace qcal {

namespace {

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError:
    case ErrorCode::ValidationError:
    case ErrorCode::UnknownKey:
    case ErrorCode::HeaderMismatch:
    case ErrorCode::NonMonotonePressure:
    case ErrorCode::ParseError:
      return true;
    default:
      return false;
  }
}

// Reading inputs: missing files are usage errors, malformed contents are
// validation failures.
template <class F>
auto load_input(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::IoError) throw CLI::ValidationError(e.what());  // becomes usage
    throw;
  }
}

void emit(const Scenario& scenario, const CurveSet& curves, std::ostream& out) {
  for (const auto& path : emit_csv(curves, scenario.output.csv)) out << path << "\n";
  if (scenario.output.svg && !curves.empty()) {
    emit_svg(curves, *scenario.output.svg);
    out << *scenario.output.svg << "\n";
  }
}

std::string format12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qcal: caloric potentials of small quantum spin models"};
  app.name("qcal");
  app.require_subcommand(1);

  std::string scenario_path;
  auto add_scenario_command = [&](const char* name, const char* help) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->add_option("--scenario", scenario_path, "scenario JSON file")->required();
    return cmd;
  };
  auto* entropy_cmd = add_scenario_command("entropy-sweep", "isothermal entropy change curves");
  auto* adiabatic_cmd = add_scenario_command("adiabatic-sweep", "adiabatic temperature change curves");
  auto* force_cmd = add_scenario_command("force", "generalized force curves");
  auto* decompose_cmd = add_scenario_command("decompose", "work/heat split along the sweep");
  auto* run_cmd = add_scenario_command("run", "every computation listed in the scenario");

  auto* ingest_cmd = app.add_subcommand("ingest", "sweep J over an exchange table");
  std::string table_path;
  ingest_cmd->add_option("--exchange-table", table_path, "CSV with header pressure_gpa,J_kelvin")->required();
  ingest_cmd->add_option("--scenario", scenario_path, "scenario JSON file")->required();

  auto* discord_cmd = app.add_subcommand("discord", "pair discord D(T) of the dimer");
  double J = 0.0, t_from = 0.0, t_to = 0.0;
  int points = 1;
  discord_cmd->add_option("--J", J, "exchange coupling [K]")->required();
  discord_cmd->add_option("--T-from", t_from, "first temperature [K]")->required();
  discord_cmd->add_option("--T-to", t_to, "last temperature [K]")->required();
  discord_cmd->add_option("--points", points, "number of temperatures")->required()->check(CLI::PositiveNumber);

  auto* validate_cmd = app.add_subcommand("validate", "run the invariant suites");
  bool quick = false;
  validate_cmd->add_flag("--quick", quick, "smaller samples and grids");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitSuccess : kExitUsage;
  }

  try {
    if (validate_cmd->parsed()) {
      bool ok = true;
      for (const auto& r : run_validation(quick)) {
        out << (r.passed ? "PASS " : "FAIL ") << r.name << "  (" << r.detail << ")\n";
        ok = ok && r.passed;
      }
      out << (ok ? "all checks passed\n" : "some checks FAILED\n");
      return ok ? kExitSuccess : kExitValidationFailure;
    }

    if (discord_cmd->parsed()) {
      TemperatureGrid grid{t_from, t_to, points, GridSpacing::Linear};
      out << "T_K,discord\n";
      for (double t : grid.values()) {
        out << format12(t) << "," << format12(discord_from_correlation(pair_correlation(J, t))) << "\n";
      }
      return kExitSuccess;
    }

    const Scenario scenario = load_input([&] { return load_scenario_file(scenario_path); });
    const int threads = configured_threads();

    if (ingest_cmd->parsed()) {
      const ExchangeTable table = load_input([&] { return load_exchange_table_file(table_path); });
      const Scenario s = restrict_computations(
          scenario,
          {Computation::Entropy, Computation::Adiabatic, Computation::ClassicalAdiabatic,
           Computation::Discord, Computation::Force, Computation::Decompose},
          {Computation::Entropy, Computation::Discord});
      emit(s, run_exchange_sweep(s, table, threads), out);
      return kExitSuccess;
    }

    Scenario s = scenario;
    if (entropy_cmd->parsed()) {
      s = restrict_computations(scenario, {Computation::Entropy}, {Computation::Entropy});
    } else if (adiabatic_cmd->parsed()) {
      s = restrict_computations(scenario, {Computation::Adiabatic, Computation::ClassicalAdiabatic},
                                {Computation::Adiabatic});
    } else if (force_cmd->parsed()) {
      s = restrict_computations(scenario, {Computation::Force}, {Computation::Force});
    } else if (decompose_cmd->parsed()) {
      s = restrict_computations(scenario, {Computation::Decompose}, {Computation::Decompose});
    } else if (!run_cmd->parsed()) {
      err << "qcal: no subcommand\n";
      return kExitUsage;
    }
    emit(s, run_sweep(s, default_sweep_grid(s), threads), out);
    return kExitSuccess;
  } catch (const CLI::ValidationError& e) {
    err << "qcal: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "qcal: " << e.what();
    if (!e.field().empty()) err << " (at " << e.field() << ")";
    err << "\n";
    return is_input_error(e.code()) ? kExitValidationFailure : kExitComputation;
  } catch (const std::exception& e) {
    err << "qcal: " << e.what() << "\n";
    return kExitComputation;
  }
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return cli_main(args, std::cout, std::cerr);
}

}  // namespace qcal
