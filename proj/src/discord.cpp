#include "qcal/discord.hpp"

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

ThermalState zero_field_dimer_state(double J, double temperature) {
  require_positive_temperature(temperature);
  return thermal_state(build_dimer(J, 0.0, "J"), J, temperature);
}

}  // namespace

CorrelationRecord pair_correlation(double J, double temperature) {
  const auto state = zero_field_dimer_state(J, temperature);
  const auto& ops = dimer_operators();
  CorrelationRecord r;
  r.J = J;
  r.T = temperature;
  r.c_x = thermal_average(state, ops.pauli_xx);
  r.c_y = thermal_average(state, ops.pauli_yy);
  r.c_z = thermal_average(state, ops.pauli_zz);
  r.discord = 0.5 * std::abs(r.c_z);
  return r;
}

double discord_from_correlation(const CorrelationRecord& record) {
  constexpr double kIsotropyTolerance = 1e-8;
  const double spread = std::max({std::abs(record.c_x - record.c_y),
                                  std::abs(record.c_y - record.c_z),
                                  std::abs(record.c_x - record.c_z)});
  if (spread > kIsotropyTolerance) {
    throw Error(ErrorCode::AnisotropicState,
                "correlation components differ by " + std::to_string(spread));
  }
  return 0.5 * std::abs(record.c_z);
}

double discord_from_susceptibility(double chi, double temperature) {
  require_positive_temperature(temperature);
  if (!(chi >= 0.0)) {
    throw Error(ErrorCode::NegativeSusceptibility,
                "susceptibility must be >= 0, got " + std::to_string(chi));
  }
  return 0.5 * std::abs(2.0 * temperature * chi - 1.0);
}

double reduce_molar_susceptibility(double chi_molar, const UnitSystem& units) {
  // N_A (g mu_B)^2 / k_B in emu K / mol; mu_B / k_B converted from K/T to K/G.
  const double prefactor = units.avogadro * units.g * units.g * (units.mu_B_over_kB * 1e-4) *
                           units.bohr_magneton_cgs;
  return chi_molar / prefactor;
}

double discord_temperature_derivative(double J, double temperature) {
  const auto state = zero_field_dimer_state(J, temperature);
  const auto zz = state.spectrum->diagonal_elements(dimer_operators().pauli_zz);
  double c = 0.0;
  for (std::size_t n = 0; n < zz.size(); ++n) c += state.populations[n] * zz[n];
  const double sign = c < 0.0 ? -1.0 : (c > 0.0 ? 1.0 : (J > 0.0 ? -1.0 : 1.0));
  return 0.5 * sign * temperature_derivative(state, zz);
}

CaloricResult entropy_change_from_discord(double J_i, double J_f, double temperature) {
  require_positive_temperature(temperature);
  CaloricResult result;
  result.kind = CaloricKind::EntropyChange;
  result.method = CaloricMethod::Quadrature;
  result.lambda_i = J_i;
  result.lambda_f = J_f;
  result.T_start = temperature;
  if (J_i == J_f) return result;
  if (!(J_i * J_f > 0.0)) {
    throw Error(ErrorCode::SignCrossing, "J interval [" + std::to_string(J_i) + ", " +
                                             std::to_string(J_f) + "] touches or crosses J = 0");
  }
  const auto q = simpson_doubling(
      [temperature](double J) { return discord_temperature_derivative(J, temperature); }, J_i,
      J_f);
  result.value = 6.0 * std::abs(q.value);
  result.error_estimate = 6.0 * q.error_estimate;
  result.refinement_levels = q.levels;
  return result;
}

}  // namespace qcal
