#include "helpers.hpp"
#include "../oracles.hpp"
#include "qcal/output.hpp"
#include "qcal/sweep.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qcal;

namespace {
std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Scenario scenario(const std::string& computations, const std::string& temps) {
  return parse_scenario(R"({"model": {"type": "dimer", "J": 1.0}, "sweep": {"from": 0.5, "to": 1.5, "points": 2},
    "temperatures": )" + temps + R"(, "computations": )" + computations + R"(, "output": {"csv": "x.csv"}})");
}

Curve line(std::string name, std::size_t n) {
  Curve c{std::move(name), "K", "kB", {}};
  for (std::size_t i = 0; i < n; ++i) c.points.push_back({static_cast<double>(i), 0.5 * i, 0.0});
  return c;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() / ("qcal_test_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};
}  // namespace

TEST_CASE("single entropy point") {
  const auto curves = run_sweep(scenario(R"(["entropy"])", R"({"from": 1, "points": 1})"));
  REQUIRE(curves.curves.size() == 1);
  const auto& c = curves.curves[0];
  CHECK(c.name == "entropy J=0.5->J=1.5");
  CHECK(c.abscissa_unit == "K");
  CHECK(c.value_unit == "kB");
  REQUIRE(c.points.size() == 1);
  CHECK_NEAR(c.points[0].value, oracle::dimer_entropy(1.5, 0, 1) - oracle::dimer_entropy(0.5, 0, 1), 1e-8);
  CHECK_NEAR(c.points[0].value, -0.8666, 1e-3);
}

TEST_CASE("entropy change peaks inside the temperature window") {
  const auto c = run_sweep(scenario(R"(["entropy"])", R"({"from": 0.2, "to": 5, "points": 49})")).curves.at(0);
  std::size_t peak = 0;
  for (std::size_t i = 1; i < c.points.size(); ++i)
    if (std::abs(c.points[i].value) > std::abs(c.points[peak].value)) peak = i;
  CHECK(peak > 0);
  CHECK(peak + 1 < c.points.size());
  CHECK_NEAR(c.points[peak].abscissa, 1.3, 0.2);
}

TEST_CASE("empty computations give an empty curve set") {
  CHECK(run_sweep(scenario("[]", R"({"from": 1, "points": 3, "to": 2})")).empty());
}

TEST_CASE("all computations and their curve layout") {
  const auto s = parse_scenario(R"({"model": {"type": "dimer", "J": 1.0, "b": 0.2}, "parameter": "J",
    "sweep": {"from": 0.5, "to": 1.5, "points": 3}, "temperatures": {"from": 0.5, "to": 2, "points": 4},
    "computations": ["entropy", "adiabatic", "discord", "force", "decompose"], "output": {"csv": "x.csv"}})");
  const auto curves = run_sweep(s, default_sweep_grid(s), 2);
  // 2 entropy + 2 adiabatic + 3 discord + 4 force + work + heat
  REQUIRE(curves.curves.size() == 13);
  CHECK(curves.curves[0].name == "entropy J=0.5->J=1");
  CHECK(curves.curves[2].name == "adiabatic J=0.5->J=1");
  CHECK(curves.curves[2].value_unit == "K");
  CHECK(curves.curves[4].name == "discord J=0.5");
  CHECK(curves.curves[7].name == "force T=0.5");
  CHECK(curves.curves[7].points.size() == 3);
  CHECK(curves.curves[11].name == "work J=0.5->J=1.5");
  CHECK(curves.curves[12].name == "heat J=0.5->J=1.5");
  for (const auto& c : curves.curves)
    for (std::size_t i = 1; i < c.points.size(); ++i) CHECK(c.points[i].abscissa > c.points[i - 1].abscissa);
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& w = curves.curves[11].points[i];
    const auto& q = curves.curves[12].points[i];
    CHECK(w.error_estimate <= 1e-8);
    CHECK(std::abs(q.error_estimate - w.error_estimate) == 0.0);
  }
}

TEST_CASE("failed grid points abort the sweep with coordinates") {
  const auto s = parse_scenario(R"({"model": {"type": "single_spin", "b": 0}, "sweep": {"from": 0, "to": 1, "points": 2},
    "temperatures": {"from": 1, "to": 2, "points": 2}, "computations": ["adiabatic"], "output": {"csv": "x.csv"}})");
  try {
    run_sweep(s, default_sweep_grid(s), 3);
    FAIL("expected DegenerateVariance");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateVariance);
    CHECK(std::string(e.what()).find("T=1") != std::string::npos);
    CHECK(std::string(e.what()).find("adiabatic b=0->b=1") != std::string::npos);
  }
}

TEST_CASE("thread count does not change results") {
  const auto s = scenario(R"(["entropy", "adiabatic", "discord", "force"])", R"({"from": 0.3, "to": 3, "points": 7})");
  const auto one = run_sweep(s, default_sweep_grid(s), 1);
  CHECK(run_sweep(s, default_sweep_grid(s), 4) == one);
  CHECK(run_sweep(s, default_sweep_grid(s), 16) == one);
}

TEST_CASE("exchange-table sweep") {
  const auto table = load_exchange_table("pressure_gpa,J_kelvin\n0,0.5\n2,1.0\n4,1.5\n");
  const auto s = scenario(R"(["entropy", "discord"])", R"({"from": 1, "points": 1})");
  const auto curves = run_exchange_sweep(s, table, 2);
  REQUIRE(curves.curves.size() == 5);
  CHECK(curves.curves[1].name == "entropy P=0GPa(J=0.5)->P=4GPa(J=1.5)");
  CHECK_NEAR(curves.curves[1].points[0].value, -0.8666, 1e-3);
  CHECK(curves.curves[2].name == "discord P=0GPa(J=0.5)");
  const auto spin = parse_scenario(R"({"model": {"type": "single_spin", "b": 1}, "sweep": {"from": 0.5, "to": 1, "points": 2},
    "temperatures": {"from": 1, "points": 1}, "output": {"csv": "x.csv"}})");
  CHECK_QCAL_ERROR(run_exchange_sweep(spin, table, 1), ErrorCode::ValidationError);
}

TEST_CASE("csv format") {
  const std::string one = format_csv(line("a", 1));
  CHECK(one == "abscissa_K,value_kB,error_estimate\n0,0,0\n");
  CHECK(count(one, "\n") == 2);
  Curve c{"c", "K", "K", {{1.0 / 3.0, -2e-20, 1e-9}}};
  CHECK(format_csv(c) == "abscissa_K,value_K,error_estimate\n0.333333333333,-2e-20,1e-09\n");
  CHECK(format_csv(c).find('\r') == std::string::npos);
}

TEST_CASE("csv files") {
  TempDir dir;
  const std::string base = (dir.path / "out.csv").string();
  CHECK(emit_csv(CurveSet{{line("only", 2)}}, base) == std::vector<std::string>{base});
  CHECK(slurp(base) == format_csv(line("only", 2)));
  const auto written = emit_csv(CurveSet{{line("entropy J=0.5->J=1.5", 2), line("b", 3)}}, base);
  REQUIRE(written.size() == 2);
  CHECK(written[0] == (dir.path / "out_0_entropy_J_0.5-_J_1.5.csv").string());
  CHECK(written[1] == (dir.path / "out_1_b.csv").string());
  CHECK(slurp(written[1]) == format_csv(line("b", 3)));
  // deterministic bytes across runs
  const std::string before = slurp(written[0]);
  emit_csv(CurveSet{{line("entropy J=0.5->J=1.5", 2), line("b", 3)}}, base);
  CHECK(slurp(written[0]) == before);
  CHECK_QCAL_ERROR(emit_csv(CurveSet{{line("x", 2)}}, (dir.path / "missing" / "x.csv").string()), ErrorCode::IoError);
}

TEST_CASE("svg output") {
  const std::string two = format_svg(CurveSet{{line("a", 2)}});
  CHECK(count(two, "<polyline") == 1);
  CHECK(two.find("viewBox=\"0 0 800 600\"") != std::string::npos);
  CHECK(two.find("version=\"1.1\"") != std::string::npos);
  CHECK(two.rfind("</svg>\n") == two.size() - 7);
  const std::string three = format_svg(CurveSet{{line("a", 2), line("b & c", 3), line("d", 4)}});
  CHECK(count(three, "<polyline") == 3);
  CHECK(count(three, "class=\"legend-entry\"") == 3);
  CHECK(three.find("b &amp; c") != std::string::npos);
  CHECK(count(three, "<text") > 6);  // tick labels and legend
  CHECK_QCAL_ERROR(format_svg(CurveSet{{line("a", 1)}}), ErrorCode::TooFewPoints);
  CHECK_QCAL_ERROR(format_svg(CurveSet{}), ErrorCode::TooFewPoints);
  // flat curve still renders
  Curve flat{"flat", "K", "K", {{0, 1, 0}, {1, 1, 0}}};
  CHECK(count(format_svg(CurveSet{{flat}}), "<polyline") == 1);

  TempDir dir;
  const std::string path = (dir.path / "plot.svg").string();
  emit_svg(CurveSet{{line("a", 2)}}, path);
  CHECK(slurp(path) == two);
  CHECK_QCAL_ERROR(emit_svg(CurveSet{{line("a", 2)}}, (dir.path / "no" / "p.svg").string()), ErrorCode::IoError);
}
