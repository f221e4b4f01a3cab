#include "qcal/caloric.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "qcal/error.hpp"

namespace qcal {

std::string_view to_string(CaloricKind kind) noexcept {
  return kind == CaloricKind::EntropyChange ? "entropy_change" : "temperature_change";
}

std::string_view to_string(CaloricMethod method) noexcept {
  switch (method) {
    case CaloricMethod::Quadrature: return "quadrature";
    case CaloricMethod::Direct: return "direct";
    case CaloricMethod::Ode: return "ode";
    case CaloricMethod::EntropyMatching: return "entropy_matching";
  }
  return "unknown";
}

void LatticeHeatSpec::validate() const {
  for (double a : {a0, a1, a3}) {
    if (!std::isfinite(a) || a < 0.0) {
      throw Error(ErrorCode::ValidationError, "lattice coefficients must be finite and >= 0",
                  "lattice");
    }
  }
}

namespace {

void require_positive_temperature(double temperature) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw Error(ErrorCode::NonPositiveTemperature,
                "temperature must be > 0 K, got " + std::to_string(temperature));
  }
}

double entropy_at(const ParamHamiltonian& model, double lambda, double temperature) {
  return thermo_point(thermal_state(model, lambda, temperature)).entropy;
}

double mean_derivative(const ParamHamiltonian& model, double lambda, double temperature) {
  const auto state = thermal_state(model, lambda, temperature);
  double acc = 0.0;
  for (std::size_t n = 0; n < state.populations.size(); ++n)
    acc += state.populations[n] * state.derivative_diagonal[n];
  return acc;
}

CaloricResult make_result(CaloricKind kind, CaloricMethod method, double lambda_i,
                          double lambda_f, double temperature) {
  CaloricResult r;
  r.kind = kind;
  r.method = method;
  r.lambda_i = lambda_i;
  r.lambda_f = lambda_f;
  r.T_start = temperature;
  return r;
}

bool variance_degenerate(const ThermalState& state, double variance) {
  const auto& e = state.energies();
  const double spread = e.back() - e.front();
  return spread == 0.0 || variance < 1e-14 * spread * spread;
}

enum class StepFailure { None, DegenerateVariance, BadTemperature, ZeroHeat };

// dT/dlambda at one point, or the reason it could not be evaluated.
using Slope = std::function<std::optional<double>(double lambda, double temperature,
                                                  StepFailure& failure)>;

struct OdeRun {
  double final_temperature = 0.0;
  std::vector<PathPoint> trajectory;
  StepFailure failure = StepFailure::None;
};

OdeRun integrate_rk4(const Slope& slope, double lambda_i, double lambda_f, double T_start,
                     int steps) {
  OdeRun run;
  run.trajectory.reserve(static_cast<std::size_t>(steps) + 1);
  const double h = (lambda_f - lambda_i) / steps;
  double temperature = T_start;
  run.trajectory.push_back({lambda_i, temperature});

  auto eval = [&](double lambda, double t) -> std::optional<double> {
    if (!(t > 0.0) || !std::isfinite(t)) {
      run.failure = StepFailure::BadTemperature;
      return std::nullopt;
    }
    return slope(lambda, t, run.failure);
  };

  for (int k = 0; k < steps; ++k) {
    const double lambda = lambda_i + k * h;
    const auto k1 = eval(lambda, temperature);
    if (!k1) return run;
    const auto k2 = eval(lambda + 0.5 * h, temperature + 0.5 * h * *k1);
    if (!k2) return run;
    const auto k3 = eval(lambda + 0.5 * h, temperature + 0.5 * h * *k2);
    if (!k3) return run;
    const double lambda_next = k + 1 == steps ? lambda_f : lambda_i + (k + 1) * h;
    const auto k4 = eval(lambda_next, temperature + h * *k3);
    if (!k4) return run;
    temperature += h / 6.0 * (*k1 + 2.0 * *k2 + 2.0 * *k3 + *k4);
    if (!(temperature > 0.0) || !std::isfinite(temperature)) {
      run.failure = StepFailure::BadTemperature;
      return run;
    }
    run.trajectory.push_back({lambda_next, temperature});
  }
  run.final_temperature = temperature;
  return run;
}

// Doubles the RK4 step count until successive final temperatures agree to 1e-9 K.
CaloricResult solve_isentrope(const Slope& slope, CaloricResult result) {
  constexpr double kTolerance = 1e-9;
  constexpr int kInitialSteps = 8;
  constexpr int kMaxSteps = 1 << 16;

  double previous = 0.0;
  bool have_previous = false;
  StepFailure last_failure = StepFailure::None;
  int consecutive_failures = 0;
  int level = 0;
  for (int steps = kInitialSteps; steps <= kMaxSteps; steps *= 2, ++level) {
    OdeRun run = integrate_rk4(slope, result.lambda_i, result.lambda_f, result.T_start, steps);
    if (run.failure != StepFailure::None) {
      last_failure = run.failure;
      have_previous = false;
      // Overshooting below T = 0 is cured by smaller steps; a degenerate point
      // that survives refinement belongs to the path itself.
      if (run.failure != StepFailure::BadTemperature && ++consecutive_failures >= 3) break;
      continue;
    }
    consecutive_failures = 0;
    last_failure = StepFailure::None;
    if (have_previous) {
      const double diff = std::abs(run.final_temperature - previous);
      if (diff < kTolerance) {
        result.value = run.final_temperature - result.T_start;
        result.error_estimate = diff;
        result.refinement_levels = level;
        result.trajectory = std::move(run.trajectory);
        return result;
      }
    }
    previous = run.final_temperature;
    have_previous = true;
  }
  switch (last_failure) {
    case StepFailure::DegenerateVariance:
      throw Error(ErrorCode::DegenerateVariance, "energy variance vanishes along the adiabat");
    case StepFailure::ZeroHeat:
      throw Error(ErrorCode::ZeroTotalHeat, "total heat capacity vanishes along the sweep");
    case StepFailure::BadTemperature:
      throw Error(ErrorCode::OdeNoConvergence,
                  "adiabat is driven to T = 0 (isentrope blocked, e.g. by a level crossing)");
    default:
      throw Error(ErrorCode::OdeNoConvergence,
                  "adiabat did not converge to 1e-9 K within " + std::to_string(kMaxSteps) +
                      " RK4 steps");
  }
}

}  // namespace

double generalized_force(const ParamHamiltonian& model, double lambda, double temperature) {
  require_positive_temperature(temperature);
  return -mean_derivative(model, lambda, temperature);
}

double maxwell_residual(const ParamHamiltonian& model, double lambda, double temperature) {
  require_positive_temperature(temperature);
  const double h_lambda = 1e-4 * std::max(1.0, std::abs(lambda));
  const double h_t = 1e-4 * temperature;
  const double ds_dlambda = (entropy_at(model, lambda + h_lambda, temperature) -
                             entropy_at(model, lambda - h_lambda, temperature)) /
                            (2.0 * h_lambda);
  const double dforce_dt = (mean_derivative(model, lambda, temperature + h_t) -
                            mean_derivative(model, lambda, temperature - h_t)) /
                           (2.0 * h_t);
  return ds_dlambda + dforce_dt;
}

double entropy_change_integrand(const ParamHamiltonian& model, double lambda,
                                double temperature) {
  const auto state = thermal_state(model, lambda, temperature);
  return -temperature_derivative(state, state.derivative_diagonal);
}

QuadratureResult simpson_doubling(const std::function<double(double)>& f, double a, double b) {
  constexpr double kTolerance = 1e-8;
  constexpr int kMaxDoublings = 16;
  constexpr int kMinDoublings = 2;

  const double ends = f(a) + f(b);
  double even_sum = 0.0;  // interior points of the previous level
  double odd_sum = f(0.5 * (a + b));
  long intervals = 2;
  auto simpson = [&] {
    const double h = (b - a) / static_cast<double>(intervals);
    return h / 3.0 * (ends + 4.0 * odd_sum + 2.0 * even_sum);
  };

  double estimate = simpson();
  for (int level = 1; level <= kMaxDoublings; ++level) {
    even_sum += odd_sum;
    intervals *= 2;
    const double h = (b - a) / static_cast<double>(intervals);
    odd_sum = 0.0;
    for (long i = 1; i < intervals; i += 2) odd_sum += f(a + static_cast<double>(i) * h);
    const double refined = simpson();
    const double diff = std::abs(refined - estimate);
    estimate = refined;
    if (level >= kMinDoublings &&
        (diff < kTolerance || diff < kTolerance * std::abs(refined))) {
      return {estimate, diff, level};
    }
  }
  throw Error(ErrorCode::QuadratureNoConvergence,
              "Simpson estimates still differ after " + std::to_string(kMaxDoublings) +
                  " doublings");
}

CaloricResult isothermal_entropy_change(const ParamHamiltonian& model, double lambda_i,
                                        double lambda_f, double temperature) {
  require_positive_temperature(temperature);
  auto result = make_result(CaloricKind::EntropyChange, CaloricMethod::Quadrature, lambda_i,
                            lambda_f, temperature);
  if (lambda_i == lambda_f) return result;
  const auto q = simpson_doubling(
      [&](double lambda) { return entropy_change_integrand(model, lambda, temperature); },
      lambda_i, lambda_f);
  result.value = q.value;
  result.error_estimate = q.error_estimate;
  result.refinement_levels = q.levels;
  return result;
}

CaloricResult isothermal_entropy_change_direct(const ParamHamiltonian& model, double lambda_i,
                                               double lambda_f, double temperature) {
  require_positive_temperature(temperature);
  auto result = make_result(CaloricKind::EntropyChange, CaloricMethod::Direct, lambda_i,
                            lambda_f, temperature);
  if (lambda_i == lambda_f) return result;
  result.value = entropy_at(model, lambda_f, temperature) - entropy_at(model, lambda_i, temperature);
  return result;
}

CaloricResult adiabatic_temperature_change(const ParamHamiltonian& model, double lambda_i,
                                           double lambda_f, double T_start) {
  require_positive_temperature(T_start);
  auto result = make_result(CaloricKind::TemperatureChange, CaloricMethod::Ode, lambda_i,
                            lambda_f, T_start);
  {
    const auto start = thermal_state(model, lambda_i, T_start);
    if (variance_degenerate(start, energy_variance(start))) {
      throw Error(ErrorCode::DegenerateVariance, "energy variance vanishes at the start point");
    }
  }
  if (lambda_i == lambda_f) {
    result.trajectory = {{lambda_i, T_start}};
    return result;
  }
  Slope slope = [&model](double lambda, double t, StepFailure& failure) -> std::optional<double> {
    const auto state = thermal_state(model, lambda, t);
    const double var = energy_variance(state);
    if (variance_degenerate(state, var)) {
      failure = StepFailure::DegenerateVariance;
      return std::nullopt;
    }
    return t * diagonal_covariance(state, state.derivative_diagonal, state.energies()) / var;
  };
  return solve_isentrope(slope, std::move(result));
}

CaloricResult adiabatic_temperature_change_matching(const ParamHamiltonian& model,
                                                    double lambda_i, double lambda_f,
                                                    double T_start) {
  require_positive_temperature(T_start);
  auto result = make_result(CaloricKind::TemperatureChange, CaloricMethod::EntropyMatching,
                            lambda_i, lambda_f, T_start);
  if (lambda_i == lambda_f) {
    result.trajectory = {{lambda_i, T_start}};
    return result;
  }
  const double target = entropy_at(model, lambda_i, T_start);
  double lo = T_start * 1e-3;
  double hi = T_start * 1e3;
  const double f_lo = entropy_at(model, lambda_f, lo) - target;
  const double f_hi = entropy_at(model, lambda_f, hi) - target;
  if (f_lo > 0.0 || f_hi < 0.0) {
    throw Error(ErrorCode::BracketFailure,
                "entropy " + std::to_string(target) + " not attained at lambda = " +
                    std::to_string(lambda_f) + " for T in [" + std::to_string(lo) + ", " +
                    std::to_string(hi) + "]");
  }
  constexpr double kTolerance = 1e-10;
  int iterations = 0;
  while (hi - lo > kTolerance && iterations < 200) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = entropy_at(model, lambda_f, mid) - target;
    if (f_mid == 0.0) {
      lo = hi = mid;
      break;
    }
    (f_mid < 0.0 ? lo : hi) = mid;
    ++iterations;
  }
  const double t_final = 0.5 * (lo + hi);
  result.value = t_final - T_start;
  result.error_estimate = 0.5 * (hi - lo);
  result.refinement_levels = iterations;
  result.trajectory = {{lambda_i, T_start}, {lambda_f, t_final}};
  return result;
}

CaloricResult classical_adiabatic_temperature_change(const ParamHamiltonian& model,
                                                     const LatticeHeatSpec& lattice, double b_i,
                                                     double b_f, double T_start) {
  require_positive_temperature(T_start);
  if (model.parameter_name() != "b") {
    throw Error(ErrorCode::InvalidParameter,
                "classical adiabatic change needs the field b as working parameter");
  }
  if (!model.zeeman()) throw Error(ErrorCode::NoZeemanTerm, "model has no Zeeman term");
  lattice.validate();

  auto result =
      make_result(CaloricKind::TemperatureChange, CaloricMethod::Ode, b_i, b_f, T_start);
  const ComplexMatrix& mag = model.zeeman()->magnetization;
  const bool magnetic_only = lattice.is_zero();

  Slope slope = [&](double b, double t, StepFailure& failure) -> std::optional<double> {
    const auto state = thermal_state(model, b, t);
    const double var = energy_variance(state);
    if (magnetic_only && variance_degenerate(state, var)) {
      failure = StepFailure::DegenerateVariance;
      return std::nullopt;
    }
    const double c_total = var / (t * t) + lattice(t);
    if (c_total < 1e-14) {
      failure = StepFailure::ZeroHeat;
      return std::nullopt;
    }
    const double dm_dt = temperature_derivative(state, state.spectrum->diagonal_elements(mag));
    return -t * dm_dt / c_total;
  };

  {
    StepFailure failure = StepFailure::None;
    if (!slope(b_i, T_start, failure)) {
      if (failure == StepFailure::ZeroHeat) {
        throw Error(ErrorCode::ZeroTotalHeat, "total heat capacity vanishes at the start point");
      }
      throw Error(ErrorCode::DegenerateVariance, "energy variance vanishes at the start point");
    }
  }
  if (b_i == b_f) {
    result.trajectory = {{b_i, T_start}};
    return result;
  }
  return solve_isentrope(slope, std::move(result));
}

}  // namespace qcal
