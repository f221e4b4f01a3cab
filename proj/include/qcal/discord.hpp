#pragma once

// Pair correlations and Schatten 1-norm discord of the isotropic spin-1/2
// Heisenberg dimer at zero field (Pauli-normalized correlations).

#include "qcal/caloric.hpp"

namespace qcal {

struct CorrelationRecord {
  double J = 0.0;
  double T = 0.0;
  double c_x = 0.0;
  double c_y = 0.0;
  double c_z = 0.0;
  double discord = 0.0;
};

/// c_alpha = <sigma_1^alpha sigma_2^alpha> in the b = 0 dimer thermal state.
CorrelationRecord pair_correlation(double J, double temperature);

/// D = |c| / 2. Throws Error(AnisotropicState) if the components differ by > 1e-8.
double discord_from_correlation(const CorrelationRecord& record);

/// D = |2 T chi - 1| / 2 with chi per dimer in (g mu_B)^2 / k_B units.
double discord_from_susceptibility(double chi, double temperature);

/// Molar susceptibility (emu-style, N_A (g mu_B)^2 / k_B prefactor) reduced to per-dimer units.
double reduce_molar_susceptibility(double chi_molar_kelvin_units, const UnitSystem& units);

/// dD/dT at (J, T), through the covariance route on c_z.
double discord_temperature_derivative(double J, double temperature);

/// |Delta S| = 6 |Int_{J_i}^{J_f} dD/dT dJ|. J_i and J_f must share a strict sign.
CaloricResult entropy_change_from_discord(double J_i, double J_f, double temperature);

}  // namespace qcal
