#include "qcal/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <optional>
#include <thread>

#include "qcal/caloric.hpp"
#include "qcal/discord.hpp"
#include "qcal/error.hpp"

namespace qcal {

namespace {

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Task {
  std::size_t curve = 0;
  std::size_t point = 0;
  std::string coordinates;
  std::function<CurvePoint()> run;
};

void run_tasks(std::vector<Task>& tasks, CurveSet& out, int threads) {
  std::vector<std::optional<CurvePoint>> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        results[i] = tasks[i].run();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n_threads =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), tasks.size());
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (!errors[i]) continue;
    const std::string where = " [" + out.curves[tasks[i].curve].name + ", " + tasks[i].coordinates + "]";
    try {
      std::rethrow_exception(errors[i]);
    } catch (const Error& e) {
      throw Error(e.code(), e.what() + where, tasks[i].coordinates);
    }
  }
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    out.curves[tasks[i].curve].points[tasks[i].point] = *results[i];
  }
}

}  // namespace

SweepGrid default_sweep_grid(const Scenario& scenario) {
  SweepGrid grid;
  grid.values = scenario.sweep.values();
  const std::string symbol = scenario.parameter == "tabulated" ? "lambda" : scenario.parameter;
  for (double v : grid.values) grid.labels.push_back(symbol + "=" + format_value(v));
  return grid;
}

SweepGrid exchange_sweep_grid(const ExchangeTable& table) {
  SweepGrid grid;
  for (std::size_t k = 0; k < table.size(); ++k) {
    grid.values.push_back(table.J_kelvin[k]);
    grid.labels.push_back("P=" + format_value(table.pressure_gpa[k]) + "GPa(J=" +
                          format_value(table.J_kelvin[k]) + ")");
  }
  return grid;
}

int configured_threads() {
  if (const char* env = std::getenv("QCAL_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0 && n <= 1024) return static_cast<int>(n);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

CurveSet run_sweep(const Scenario& scenario) {
  return run_sweep(scenario, default_sweep_grid(scenario), configured_threads());
}

CurveSet run_sweep(const Scenario& scenario, const SweepGrid& grid, int threads) {
  CurveSet out;
  if (scenario.computations.empty()) return out;
  if (grid.values.size() < 2 || grid.labels.size() != grid.values.size()) {
    throw Error(ErrorCode::ValidationError, "sweep grid needs at least 2 labelled values", "sweep");
  }

  const ParamHamiltonian model = build_model(scenario);
  const std::vector<double> temps = scenario.temperatures.values();
  const std::vector<double>& lambdas = grid.values;
  const LatticeHeatSpec lattice = scenario.lattice.value_or(LatticeHeatSpec{});
  std::vector<Task> tasks;

  auto add_curve = [&](std::string name, std::string x_unit, std::string y_unit, std::size_t n) {
    out.curves.push_back({std::move(name), std::move(x_unit), std::move(y_unit),
                          std::vector<CurvePoint>(n)});
    return out.curves.size() - 1;
  };
  auto add_task = [&](std::size_t curve, std::size_t point, std::string coords,
                      std::function<CurvePoint()> fn) {
    tasks.push_back({curve, point, std::move(coords), std::move(fn)});
  };
  auto t_coord = [](double t) { return "T=" + format_value(t); };

  for (Computation c : scenario.computations) {
    switch (c) {
      case Computation::Entropy:
      case Computation::Adiabatic:
      case Computation::ClassicalAdiabatic: {
        const std::string prefix = c == Computation::Entropy      ? "entropy "
                                   : c == Computation::Adiabatic ? "adiabatic "
                                                                 : "classical_adiabatic ";
        const std::string unit = c == Computation::Entropy ? "kB" : "K";
        for (std::size_t k = 1; k < lambdas.size(); ++k) {
          const std::size_t curve =
              add_curve(prefix + grid.labels[0] + "->" + grid.labels[k], "K", unit, temps.size());
          const double li = lambdas[0], lf = lambdas[k];
          for (std::size_t j = 0; j < temps.size(); ++j) {
            const double t = temps[j];
            add_task(curve, j, t_coord(t), [&model, &lattice, c, li, lf, t] {
              const CaloricResult r =
                  c == Computation::Entropy     ? isothermal_entropy_change(model, li, lf, t)
                  : c == Computation::Adiabatic ? adiabatic_temperature_change(model, li, lf, t)
                                                : classical_adiabatic_temperature_change(
                                                      model, lattice, li, lf, t);
              return CurvePoint{t, r.value, r.error_estimate};
            });
          }
        }
        break;
      }
      case Computation::Discord: {
        std::vector<std::pair<double, std::string>> couplings;
        if (scenario.parameter == "J") {
          for (std::size_t k = 0; k < lambdas.size(); ++k) couplings.emplace_back(lambdas[k], grid.labels[k]);
        } else {
          couplings.emplace_back(scenario.model.J, "J=" + format_value(scenario.model.J));
        }
        for (const auto& [J, label] : couplings) {
          const std::size_t curve = add_curve("discord " + label, "K", "dimensionless", temps.size());
          for (std::size_t j = 0; j < temps.size(); ++j) {
            const double t = temps[j];
            add_task(curve, j, t_coord(t), [J = J, t] {
              return CurvePoint{t, discord_from_correlation(pair_correlation(J, t)), 0.0};
            });
          }
        }
        break;
      }
      case Computation::Force: {
        for (double t : temps) {
          const std::size_t curve = add_curve("force " + t_coord(t), "K", "dimensionless", lambdas.size());
          for (std::size_t k = 0; k < lambdas.size(); ++k) {
            const double lambda = lambdas[k];
            add_task(curve, k, grid.labels[k] + ", " + t_coord(t), [&model, lambda, t] {
              return CurvePoint{lambda, generalized_force(model, lambda, t), 0.0};
            });
          }
        }
        break;
      }
      case Computation::Decompose: {
        const std::string span = grid.labels.front() + "->" + grid.labels.back();
        const std::size_t work = add_curve("work " + span, "K", "K", temps.size());
        const std::size_t heat = add_curve("heat " + span, "K", "K", temps.size());
        for (std::size_t j = 0; j < temps.size(); ++j) {
          const double t = temps[j];
          // Work and heat share one decomposition; each task recomputes it so
          // points stay independent.
          for (const bool is_work : {true, false}) {
            add_task(is_work ? work : heat, j, t_coord(t), [&model, &lambdas, t, is_work] {
              std::vector<PathPoint> path;
              for (double l : lambdas) path.push_back({l, t});
              const auto d = process_decompose(model, path);
              const double closure = std::abs(d.energy_change - (d.work + d.heat));
              return CurvePoint{t, is_work ? d.work : d.heat, closure};
            });
          }
        }
        break;
      }
    }
  }

  run_tasks(tasks, out, threads);
  return out;
}

Scenario restrict_computations(Scenario scenario, const std::vector<Computation>& allowed,
                               const std::vector<Computation>& fallback) {
  std::vector<Computation> kept;
  for (Computation c : scenario.computations)
    if (std::find(allowed.begin(), allowed.end(), c) != allowed.end()) kept.push_back(c);
  scenario.computations = kept.empty() ? fallback : kept;
  return scenario;
}

CurveSet run_exchange_sweep(const Scenario& scenario, const ExchangeTable& table, int threads) {
  if (scenario.model.kind != ModelKind::Dimer) {
    throw Error(ErrorCode::ValidationError, "exchange-table sweeps need a dimer model", "model.type");
  }
  Scenario s = scenario;
  s.parameter = "J";
  return run_sweep(s, exchange_sweep_grid(table), threads);
}

}  // namespace qcal
