#include "qcal/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qcal/error.hpp"

namespace qcal {

namespace {

void require_positive_temperature(double temperature) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw Error(ErrorCode::NonPositiveTemperature,
                "temperature must be > 0 K, got " + std::to_string(temperature));
  }
}

}  // namespace

ThermalState thermal_state(const HermitianOperator& hamiltonian,
                           const HermitianOperator& derivative, double lambda,
                           double temperature) {
  require_positive_temperature(temperature);
  auto spectrum = std::make_shared<const EigenDecomposition>(hermitian_eigen(hamiltonian));
  const auto& energies = spectrum->values;

  // log-sum-exp with the ground state as the shift.
  const double e_min = energies.front();
  std::vector<double> weights(energies.size());
  double sum = 0.0;
  for (std::size_t n = 0; n < energies.size(); ++n) {
    weights[n] = std::exp(-(energies[n] - e_min) / temperature);
    sum += weights[n];
  }
  ThermalState state;
  state.temperature = temperature;
  state.lambda = lambda;
  state.populations.resize(energies.size());
  for (std::size_t n = 0; n < energies.size(); ++n) {
    const double p = weights[n] / sum;
    state.populations[n] = p < kPopulationFloor ? 0.0 : p;
  }
  state.log_partition = std::log(sum) - e_min / temperature;
  state.derivative_diagonal = spectrum->diagonal_elements(derivative.matrix());
  state.spectrum = std::move(spectrum);
  return state;
}

ThermalState thermal_state(const ParamHamiltonian& h, double lambda, double temperature) {
  require_positive_temperature(temperature);
  return thermal_state(h.evaluate(lambda), h.derivative(lambda), lambda, temperature);
}

double energy_variance(const ThermalState& state) {
  const auto& e = state.energies();
  double u = 0.0;
  for (std::size_t n = 0; n < e.size(); ++n) u += state.populations[n] * e[n];
  double var = 0.0;
  for (std::size_t n = 0; n < e.size(); ++n) {
    const double d = e[n] - u;
    var += state.populations[n] * d * d;
  }
  return var;
}

ThermodynamicPoint thermo_point(const ThermalState& state) {
  const auto& e = state.energies();
  const auto& p = state.populations;
  ThermodynamicPoint pt;
  pt.temperature = state.temperature;
  pt.lambda = state.lambda;

  double u = 0.0, s = 0.0, force = 0.0;
  for (std::size_t n = 0; n < e.size(); ++n) {
    u += p[n] * e[n];
    if (p[n] > 0.0) s -= p[n] * std::log(p[n]);
    force -= p[n] * state.derivative_diagonal[n];
  }
  pt.internal_energy = u;
  pt.entropy = std::max(s, 0.0);
  pt.free_energy = -state.temperature * state.log_partition;
  pt.energy_variance = energy_variance(state);
  pt.specific_heat = pt.energy_variance / (state.temperature * state.temperature);
  pt.generalized_force = force;
  return pt;
}

double thermal_average(const ThermalState& state, const ComplexMatrix& a) {
  const auto diag = state.spectrum->diagonal_elements(a);
  double acc = 0.0;
  for (std::size_t n = 0; n < diag.size(); ++n) acc += state.populations[n] * diag[n];
  return acc;
}

double thermal_average(const ThermalState& state, const HermitianOperator& a) {
  return thermal_average(state, a.matrix());
}

double diagonal_covariance(const ThermalState& state, const std::vector<double>& a,
                           const std::vector<double>& b) {
  const auto& p = state.populations;
  if (a.size() != p.size() || b.size() != p.size()) {
    throw Error(ErrorCode::DimensionMismatch, "covariance operands do not match the spectrum");
  }
  double ma = 0.0, mb = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) {
    ma += p[n] * a[n];
    mb += p[n] * b[n];
  }
  double cov = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) cov += p[n] * (a[n] - ma) * (b[n] - mb);
  return cov;
}

double temperature_derivative(const ThermalState& state, const std::vector<double>& a_diagonal) {
  const double t = state.temperature;
  return diagonal_covariance(state, a_diagonal, state.energies()) / (t * t);
}

namespace {
const ZeemanCoupling& require_zeeman(const ParamHamiltonian& model) {
  if (!model.zeeman()) {
    throw Error(ErrorCode::NoZeemanTerm,
                "model with parameter \"" + model.parameter_name() + "\" has no Zeeman term");
  }
  return *model.zeeman();
}
}  // namespace

double magnetization(const ThermalState& state, const ParamHamiltonian& model) {
  return thermal_average(state, require_zeeman(model).magnetization);
}

ThermalState thermal_state_at_field(const ParamHamiltonian& model, double lambda, double b,
                                    double temperature) {
  const auto& zeeman = require_zeeman(model);
  require_positive_temperature(temperature);
  HermitianOperator h(zeeman.field_free(lambda) - b * zeeman.magnetization);
  HermitianOperator dh(-1.0 * zeeman.magnetization);
  return thermal_state(h, dh, lambda, temperature);
}

double zero_field_susceptibility(const ParamHamiltonian& model, double lambda,
                                 double temperature) {
  const auto& zeeman = require_zeeman(model);
  const auto state = thermal_state_at_field(model, lambda, 0.0, temperature);
  const double m = thermal_average(state, zeeman.magnetization);
  const double m2 = thermal_average(state, zeeman.magnetization * zeeman.magnetization);
  return std::max(m2 - m * m, 0.0) / temperature;
}

double zero_field_susceptibility(const ParamHamiltonian& model, double temperature) {
  return zero_field_susceptibility(model, model.nominal_lambda(), temperature);
}

namespace {

struct SubpathSample {
  std::vector<double> energies;
  std::vector<double> populations;
};

SubpathSample sample(const ParamHamiltonian& model, double lambda, double temperature) {
  auto state = thermal_state(model, lambda, temperature);
  return {state.energies(), state.populations};
}

// Midpoint-rule work and heat across one segment split into `m` substeps.
ProcessStep decompose_segment(const ParamHamiltonian& model, const PathPoint& a,
                              const PathPoint& b, int m) {
  ProcessStep step;
  SubpathSample prev = sample(model, a.lambda, a.temperature);
  for (int j = 1; j <= m; ++j) {
    const double t = static_cast<double>(j) / m;
    const double lambda = j == m ? b.lambda : a.lambda + t * (b.lambda - a.lambda);
    const double temp = j == m ? b.temperature : a.temperature + t * (b.temperature - a.temperature);
    SubpathSample next = sample(model, lambda, temp);
    for (std::size_t n = 0; n < prev.energies.size(); ++n) {
      const double p_mid = 0.5 * (prev.populations[n] + next.populations[n]);
      const double e_mid = 0.5 * (prev.energies[n] + next.energies[n]);
      step.work += p_mid * (next.energies[n] - prev.energies[n]);
      step.heat += e_mid * (next.populations[n] - prev.populations[n]);
    }
    prev = std::move(next);
  }
  return step;
}

}  // namespace

ProcessDecomposition process_decompose(const ParamHamiltonian& model,
                                       const std::vector<PathPoint>& path) {
  if (path.size() < 2) {
    throw Error(ErrorCode::EmptyPath, "process path needs at least 2 points");
  }
  for (const auto& pt : path) require_positive_temperature(pt.temperature);

  const double u0 = thermo_point(thermal_state(model, path.front().lambda, path.front().temperature))
                        .internal_energy;
  const double u1 = thermo_point(thermal_state(model, path.back().lambda, path.back().temperature))
                        .internal_energy;
  const double du = u1 - u0;
  const double tolerance = 1e-10 * std::max(1.0, std::abs(du));
  constexpr int kMaxSubsteps = 4096;

  ProcessDecomposition best;
  double previous_work = 0.0;
  for (int m = 1; m <= kMaxSubsteps; m *= 2) {
    ProcessDecomposition trial;
    trial.energy_change = du;
    trial.substeps_per_segment = m;
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      const auto step = decompose_segment(model, path[k], path[k + 1], m);
      trial.work += step.work;
      trial.heat += step.heat;
      trial.steps.push_back(step);
    }
    const bool converged = m > 1 && std::abs(trial.work - previous_work) <= tolerance;
    previous_work = trial.work;
    best = std::move(trial);
    if (converged) break;
  }
  return best;
}

}  // namespace qcal
