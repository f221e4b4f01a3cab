#include "helpers.hpp"
#include "../oracles.hpp"
#include "qcal/models.hpp"
#include "qcal/thermal.hpp"

using namespace qcal;

namespace {
std::vector<double> spectrum(const ParamHamiltonian& m, double lambda) {
  return hermitian_eigen(m.evaluate(lambda)).values;
}
void check_spectrum(const std::vector<double>& got, const std::vector<double>& expect) {
  REQUIRE(got.size() == expect.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK_NEAR(got[i], expect[i], 1e-13);
}
}  // namespace

TEST_CASE("dimer spectra") {
  check_spectrum(spectrum(build_dimer(1.0, 0.0, "J"), 1.0), {-3.0, 1.0, 1.0, 1.0});
  check_spectrum(spectrum(build_dimer(0.0, 2.0, "b"), 2.0), {-2.0, 0.0, 0.0, 2.0});
  // general (J, b): singlet -3J and Zeeman-split triplet J - b m
  const auto m = build_dimer(0.7, 0.0, "b");
  auto expect = std::vector<double>{-2.1, 0.7 - 1.3, 0.7, 0.7 + 1.3};
  std::sort(expect.begin(), expect.end());
  check_spectrum(spectrum(m, 1.3), expect);
}

TEST_CASE("dimer derivative and frozen parameters") {
  const auto mj = build_dimer(1.0, 0.5, "J");
  CHECK(mj.parameter_name() == "J");
  CHECK(mj.frozen_params().at("b") == 0.5);
  CHECK(mj.nominal_lambda() == 1.0);
  CHECK(mj.dimension() == 4);
  CHECK(mj.derivative(-3.0).matrix() == dimer_operators().exchange);
  CHECK(mj.derivative(7.0).matrix() == dimer_operators().exchange);
  const auto mb = build_dimer(1.0, 0.5, "b");
  CHECK(mb.frozen_params().at("J") == 1.0);
  CHECK((mb.derivative(2.0).matrix() + dimer_operators().magnetization).max_abs() == 0.0);
  CHECK_QCAL_ERROR(build_dimer(1.0, 0.0, "B"), ErrorCode::InvalidParameter);
}

TEST_CASE("single spin") {
  const auto m = build_single_spin_zeeman(1.0);
  check_spectrum(spectrum(m, 1.0), {-0.5, 0.5});
  check_spectrum(spectrum(m, 0.0), {0.0, 0.0});
  CHECK((m.derivative(3.0).matrix() + spin_half_operators().sz).max_abs() == 0.0);
  CHECK(m.zeeman().has_value());
}

TEST_CASE("tabulated interpolation and derivative") {
  const SpectrumTable t{{0.0, 1.0, 2.0}, {{0.0, 1.0}, {0.0, 2.0}, {0.0, 3.0}}};
  const auto m = build_tabulated(t);
  CHECK(m.parameter_name() == "tabulated");
  const auto h = m.evaluate(0.5).matrix();
  CHECK_NEAR(h(0, 0).real(), 0.0, 1e-15);
  CHECK_NEAR(h(1, 1).real(), 1.5, 1e-15);
  const auto d = m.derivative(1.0).matrix();
  CHECK_NEAR(d(0, 0).real(), 0.0, 1e-15);
  CHECK_NEAR(d(1, 1).real(), 1.0, 1e-15);
  CHECK_NEAR(m.derivative(0.0).matrix()(1, 1).real(), 1.0, 1e-15);
  CHECK_NEAR(m.derivative(2.0).matrix()(1, 1).real(), 1.0, 1e-15);
  CHECK_QCAL_ERROR(m.evaluate(2.5), ErrorCode::OutOfRange);
  CHECK_QCAL_ERROR(m.derivative(-0.1), ErrorCode::OutOfRange);
}

TEST_CASE("tabulated construction errors") {
  CHECK_QCAL_ERROR(build_tabulated({{0.0, 1.0}, {{0.0}, {1.0}}}), ErrorCode::GridTooSmall);
  CHECK_QCAL_ERROR(build_tabulated({{0.0, 2.0, 1.0}, {{0.0}, {1.0}, {2.0}}}), ErrorCode::NonMonotoneGrid);
  CHECK_QCAL_ERROR(build_tabulated({{0.0, 1.0, 1.0}, {{0.0}, {1.0}, {2.0}}}), ErrorCode::NonMonotoneGrid);
  CHECK_QCAL_ERROR(build_tabulated({{0.0, 1.0, 2.0}, {{0.0}, {1.0, 2.0}, {2.0}}}), ErrorCode::DimensionMismatch);
}

TEST_CASE("finite differences match derivative operators") {
  std::mt19937_64 rng(201);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const SpectrumTable t{{-3.0, -1.0, 0.5, 3.0}, {{0.0, 1.0, -2.0}, {1.0, 0.0, 2.0}, {0.5, 0.5, 0.0}, {2.0, -1.0, 1.0}}};
  for (const auto& m : {build_dimer(1.0, 0.3, "J"), build_dimer(-0.4, 1.0, "b"), build_single_spin_zeeman(0.0),
                        build_tabulated(t)}) {
    for (int k = 0; k < 10; ++k) {
      double lambda = u(rng);
      for (double node : t.lambda_grid)
        if (m.parameter_name() == "tabulated" && std::abs(lambda - node) < 1e-3) lambda += 2e-3;
      const double h = 1e-5;
      const ComplexMatrix fd = (m.evaluate(lambda + h).matrix() - m.evaluate(lambda - h).matrix()) * Complex(0.5 / h);
      const ComplexMatrix d = m.derivative(lambda).matrix();
      CHECK((fd - d).max_abs() <= 1e-6 * std::max(1.0, d.max_abs()));
    }
  }
}

TEST_CASE("dimer at J=0 is two independent spins") {
  const auto dimer = build_dimer(0.0, 0.0, "b");
  const auto spin = build_single_spin_zeeman(0.0);
  for (double b : {-2.0, -0.3, 0.0, 0.4, 1.0, 5.0})
    for (double t : {0.05, 0.3, 1.0, 4.0}) {
      const double sd = thermo_point(thermal_state(dimer, b, t)).entropy;
      const double ss = thermo_point(thermal_state(spin, b, t)).entropy;
      CHECK_NEAR(0.5 * sd, ss, 1e-10);
      CHECK_NEAR(ss, oracle::spin_entropy(b, t), 1e-12);
    }
}

TEST_CASE("unit conversion") {
  const UnitSystem u;
  CHECK(u.g == 2.0);
  CHECK_NEAR(u.field_to_kelvin(1.0), 2.0 * 0.6717, 1e-15);
  CHECK_NEAR(u.kelvin_to_field(u.field_to_kelvin(3.7)), 3.7, 1e-14);
}
