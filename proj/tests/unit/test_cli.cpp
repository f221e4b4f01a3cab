#include "helpers.hpp"
#include "qcal/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qcal;

namespace {
struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

struct Workspace {
  std::filesystem::path dir;
  Workspace() {
    dir = std::filesystem::temp_directory_path() / ("qcal_cli_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(dir);
  }
  ~Workspace() { std::filesystem::remove_all(dir); }
  std::string write(const std::string& name, const std::string& text) const {
    const auto p = (dir / name).string();
    std::ofstream(p, std::ios::binary) << text;
    return p;
  }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

std::string scenario_text(const Workspace& ws, const std::string& computations, bool svg = false) {
  std::string out = R"({"model": {"type": "dimer", "J": 1.0}, "sweep": {"from": 0.5, "to": 1.5, "points": 2},
    "temperatures": {"from": 0.5, "to": 2.0, "points": 4}, "computations": )" + computations +
                    R"(, "output": {"csv": ")" + ws.path("out.csv") + "\"";
  if (svg) out += R"(, "svg": ")" + ws.path("out.svg") + "\"";
  return out + "}}";
}
}  // namespace

TEST_CASE("discord subcommand") {
  const auto r = run({"discord", "--J", "1", "--T-from", "1", "--T-to", "1", "--points", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "T_K,discord\n1,0.465276662552\n");
  const auto grid = run({"discord", "--J", "1", "--T-from", "1", "--T-to", "2", "--points", "3"});
  CHECK(grid.code == 0);
  CHECK(grid.out.find("\n1.5,") != std::string::npos);
  CHECK(run({"discord", "--J", "1", "--T-from", "0", "--T-to", "1", "--points", "2"}).code == kExitComputation);
  CHECK(run({"discord", "--J", "1", "--T-from", "1", "--T-to", "1", "--points", "0"}).code == kExitUsage);
  CHECK(run({"discord", "--J", "1"}).code == kExitUsage);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"entropy-sweep"}).code == kExitUsage);
  const auto missing = run({"entropy-sweep", "--scenario", "/nonexistent/s.json"});
  CHECK(missing.code == kExitUsage);
  CHECK(missing.err.find("/nonexistent/s.json") != std::string::npos);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("entropy sweep writes csv and svg") {
  Workspace ws;
  const auto file = ws.write("s.json", scenario_text(ws, R"(["entropy", "discord"])", true));
  const auto r = run({"entropy-sweep", "--scenario", file});
  CHECK(r.code == 0);
  CHECK(r.out == ws.path("out.csv") + "\n" + ws.path("out.svg") + "\n");
  std::ifstream csv(ws.path("out.csv"));
  std::string header;
  std::getline(csv, header);
  CHECK(header == "abscissa_K,value_kB,error_estimate");
  CHECK(std::filesystem::exists(ws.path("out.svg")));
}

TEST_CASE("other scenario subcommands") {
  Workspace ws;
  const auto file = ws.write("s.json", scenario_text(ws, "[]"));
  CHECK(run({"adiabatic-sweep", "--scenario", file}).code == 0);
  const auto force = run({"force", "--scenario", file});
  CHECK(force.code == 0);
  CHECK(force.out.find("out_0_force_T_0.5.csv") != std::string::npos);
  const auto dec = run({"decompose", "--scenario", file});
  CHECK(dec.code == 0);
  CHECK(dec.out.find("work") != std::string::npos);
  CHECK(dec.out.find("heat") != std::string::npos);
  // run with no computations writes nothing
  const auto nothing = run({"run", "--scenario", file});
  CHECK(nothing.code == 0);
  CHECK(nothing.out.empty());
}

TEST_CASE("ingest") {
  Workspace ws;
  const auto file = ws.write("s.json", scenario_text(ws, "[]"));
  const auto table = ws.write("t.csv", "pressure_gpa,J_kelvin\n0,0.5\n4.9,1.5\n");
  const auto r = run({"ingest", "--exchange-table", table, "--scenario", file});
  CHECK(r.code == 0);
  CHECK(r.out.find("entropy_P_0GPa_J_0.5") != std::string::npos);
  CHECK(r.out.find("discord_P_4.9GPa_J_1.5") != std::string::npos);
  const auto bad = ws.write("bad.csv", "pressure_gpa,J_kelvin\n1,0.5\n0,1.5\n");
  CHECK(run({"ingest", "--exchange-table", bad, "--scenario", file}).code == kExitValidationFailure);
  CHECK(run({"ingest", "--exchange-table", ws.path("none.csv"), "--scenario", file}).code == kExitUsage);
}

TEST_CASE("scenario errors map to exit codes") {
  Workspace ws;
  const auto bad = ws.write("bad.json", "{\"model\": ");
  const auto r = run({"entropy-sweep", "--scenario", bad});
  CHECK(r.code == kExitValidationFailure);
  CHECK(r.err.find("SyntaxError") != std::string::npos);
  const auto invalid = ws.write("invalid.json", R"({"model": {"type": "dimer", "J": 1}, "sweep": {"from": 0.5, "to": 1.5, "points": 1},
    "temperatures": {"from": 1, "points": 1}, "output": {"csv": "x.csv"}})");
  const auto v = run({"entropy-sweep", "--scenario", invalid});
  CHECK(v.code == kExitValidationFailure);
  CHECK(v.err.find("sweep.points") != std::string::npos);
  // computation failure
  const auto flat = ws.write("flat.json", R"({"model": {"type": "single_spin", "b": 0}, "sweep": {"from": 0, "to": 1, "points": 2},
    "temperatures": {"from": 1, "points": 1}, "computations": ["adiabatic"], "output": {"csv": ")" + ws.path("f.csv") + R"("}})");
  const auto c = run({"adiabatic-sweep", "--scenario", flat});
  CHECK(c.code == kExitComputation);
  CHECK(c.err.find("DegenerateVariance") != std::string::npos);
  CHECK_FALSE(std::filesystem::exists(ws.path("f.csv")));
  // unwritable output
  const auto unwritable = ws.write("u.json", R"({"model": {"type": "dimer", "J": 1}, "sweep": {"from": 0.5, "to": 1.5, "points": 2},
    "temperatures": {"from": 1, "points": 1}, "computations": ["entropy"], "output": {"csv": "/nonexistent/dir/x.csv"}})");
  CHECK(run({"entropy-sweep", "--scenario", unwritable}).code == kExitComputation);
}

TEST_CASE("validate quick") {
  const auto r = run({"validate", "--quick"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("PASS discord.route_equivalence") != std::string::npos);
}
