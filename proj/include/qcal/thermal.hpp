#pragma once

// Canonical-ensemble thermodynamics on a diagonalized H(lambda), k_B = 1.

#include <memory>
#include <vector>

#include "qcal/linalg.hpp"
#include "qcal/models.hpp"

namespace qcal {

struct ThermalState {
  double temperature = 0.0;
  double lambda = 0.0;
  std::vector<double> populations;  // ordered as spectrum->values
  double log_partition = 0.0;
  std::shared_ptr<const EigenDecomposition> spectrum;
  /// <n|dH/dlambda|n> in the energy eigenbasis.
  std::vector<double> derivative_diagonal;

  const std::vector<double>& energies() const { return spectrum->values; }
};

struct ThermodynamicPoint {
  double temperature = 0.0;
  double lambda = 0.0;
  double internal_energy = 0.0;
  double entropy = 0.0;
  double free_energy = 0.0;
  double specific_heat = 0.0;
  double energy_variance = 0.0;
  double generalized_force = 0.0;
};

struct ProcessStep {
  double work = 0.0;  // Sum_n pbar_n dE_n
  double heat = 0.0;  // Sum_n Ebar_n dp_n
};

struct ProcessDecomposition {
  double work = 0.0;
  double heat = 0.0;
  double energy_change = 0.0;
  std::vector<ProcessStep> steps;  // one per input path segment
  int substeps_per_segment = 1;
};

struct PathPoint {
  double lambda = 0.0;
  double temperature = 0.0;
};

/// Populations below this are set to exactly zero.
inline constexpr double kPopulationFloor = 1e-300;

ThermalState thermal_state(const ParamHamiltonian& h, double lambda, double temperature);

/// Same as above for an arbitrary (field-modified) operator; derivative_diagonal
/// is taken from `derivative`.
ThermalState thermal_state(const HermitianOperator& hamiltonian,
                           const HermitianOperator& derivative, double lambda,
                           double temperature);

ThermodynamicPoint thermo_point(const ThermalState& state);

/// Sum_n p_n <n|A|n>.
double thermal_average(const ThermalState& state, const HermitianOperator& a);
double thermal_average(const ThermalState& state, const ComplexMatrix& a);

/// Sum_n p_n (a_n - <a>)(b_n - <b>) for energy-basis diagonals a_n, b_n.
double diagonal_covariance(const ThermalState& state, const std::vector<double>& a,
                           const std::vector<double>& b);

/// Var[H] = Sum_n p_n (E_n - U)^2.
double energy_variance(const ThermalState& state);

/// d<A>/dT at fixed lambda: Cov(A, H) / T^2.
double temperature_derivative(const ThermalState& state, const std::vector<double>& a_diagonal);

/// M = <Sum_i S_iz>, in units of g mu_B.
double magnetization(const ThermalState& state, const ParamHamiltonian& model);

/// Zero-field chi = Var(M) / T per model system, in (g mu_B)^2 / k_B units.
/// The field is switched off; other parameters stay at `lambda`
/// (ignored when the working parameter is the field itself).
double zero_field_susceptibility(const ParamHamiltonian& model, double lambda, double temperature);
double zero_field_susceptibility(const ParamHamiltonian& model, double temperature);

/// Thermal state of the model with its Zeeman term replaced by field b.
ThermalState thermal_state_at_field(const ParamHamiltonian& model, double lambda, double b,
                                    double temperature);

/// Work/heat split of a quasi-static path through (lambda, T) points.
ProcessDecomposition process_decompose(const ParamHamiltonian& model,
                                       const std::vector<PathPoint>& path);

}  // namespace qcal
