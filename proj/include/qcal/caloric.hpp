#pragma once

// Caloric potentials of a parameterized Hamiltonian in thermal equilibrium:
// isothermal entropy change and adiabatic temperature change, each with an
// independent state-function route for cross-checking.

#include <functional>
#include <string_view>
#include <vector>

#include "qcal/models.hpp"
#include "qcal/thermal.hpp"

namespace qcal {

enum class CaloricKind { EntropyChange, TemperatureChange };
enum class CaloricMethod { Quadrature, Direct, Ode, EntropyMatching };

std::string_view to_string(CaloricKind kind) noexcept;
std::string_view to_string(CaloricMethod method) noexcept;

struct CaloricResult {
  CaloricKind kind = CaloricKind::EntropyChange;
  double value = 0.0;  // k_B for entropy, K for temperature
  double lambda_i = 0.0;
  double lambda_f = 0.0;
  double T_start = 0.0;
  CaloricMethod method = CaloricMethod::Quadrature;
  double error_estimate = 0.0;
  int refinement_levels = 0;
  /// Sampled (lambda, T) along the isentrope, for temperature changes.
  std::vector<PathPoint> trajectory;
};

/// Lattice heat capacity c_l(T) = a0 + a1 T + a3 T^3 in k_B units.
struct LatticeHeatSpec {
  double a0 = 0.0;
  double a1 = 0.0;
  double a3 = 0.0;

  double operator()(double temperature) const {
    return a0 + a1 * temperature + a3 * temperature * temperature * temperature;
  }
  bool is_zero() const { return a0 == 0.0 && a1 == 0.0 && a3 == 0.0; }
  void validate() const;

  friend bool operator==(const LatticeHeatSpec&, const LatticeHeatSpec&) = default;
};

/// Y = -<dH/dlambda>.
double generalized_force(const ParamHamiltonian& model, double lambda, double temperature);

/// (dS/dlambda)_T + d<dH/dlambda>/dT by central differences; zero in theory.
double maxwell_residual(const ParamHamiltonian& model, double lambda, double temperature);

/// Integrand of the isothermal entropy change: -Cov(dH/dlambda, H) / T^2.
double entropy_change_integrand(const ParamHamiltonian& model, double lambda, double temperature);

CaloricResult isothermal_entropy_change(const ParamHamiltonian& model, double lambda_i,
                                        double lambda_f, double temperature);

/// S(lambda_f, T) - S(lambda_i, T).
CaloricResult isothermal_entropy_change_direct(const ParamHamiltonian& model, double lambda_i,
                                               double lambda_f, double temperature);

/// Integrates the isentrope dT/dlambda = T Cov(dH/dlambda, H) / Var[H] with RK4.
CaloricResult adiabatic_temperature_change(const ParamHamiltonian& model, double lambda_i,
                                           double lambda_f, double T_start);

/// Solves S(lambda_f, T_f) = S(lambda_i, T_start) by bisection.
CaloricResult adiabatic_temperature_change_matching(const ParamHamiltonian& model,
                                                    double lambda_i, double lambda_f,
                                                    double T_start);

/// Field sweep with a lattice bath: dT/db = -T (dM/dT) / (c_B + c_l).
CaloricResult classical_adiabatic_temperature_change(const ParamHamiltonian& model,
                                                     const LatticeHeatSpec& lattice, double b_i,
                                                     double b_f, double T_start);

// Numerical building blocks, exposed for reuse by the discord route.

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int levels = 0;
};

/// Composite Simpson on [a, b] doubling the interval count until successive
/// estimates differ by < 1e-8 absolute or relative. Throws
/// Error(QuadratureNoConvergence) after 16 doublings.
QuadratureResult simpson_doubling(const std::function<double(double)>& f, double a, double b);

}  // namespace qcal
