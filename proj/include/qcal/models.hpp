#pragma once

// Parameterized Hamiltonian families H(lambda) with analytic dH/dlambda.
//
// Conventions: k_B = 1, energies and temperatures in kelvin. The exchange
// term uses Pauli operators, H_int = J sigma_1 . sigma_2, so the singlet sits
// at -3J and the triplet at +J. Magnetization uses spin-1/2 operators,
// M = S_1z + S_2z, and the field enters pre-reduced as b = g mu_B B / k_B.
// Converting to the J_s S_1 . S_2 convention: J_s = 4 J.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcal/linalg.hpp"

namespace qcal {

struct UnitSystem {
  double g = 2.0;
  double mu_B_over_kB = 0.6717;     // K / T
  double avogadro = 6.02214076e23;  // 1 / mol
  double bohr_magneton_cgs = 9.2740100783e-21;  // erg / G

  /// Reduced field b = g mu_B B / k_B in kelvin for a field in tesla.
  double field_to_kelvin(double tesla) const { return g * mu_B_over_kB * tesla; }
  double kelvin_to_field(double kelvin) const { return kelvin / (g * mu_B_over_kB); }

  friend bool operator==(const UnitSystem&, const UnitSystem&) = default;
};

/// Lets magnetic observables be evaluated on a model: Sum_i S_iz and the
/// field-free Hamiltonian at a given working-parameter value.
struct ZeemanCoupling {
  ComplexMatrix magnetization;
  std::function<ComplexMatrix(double lambda)> field_free;
};

struct SpectrumTable {
  std::vector<double> lambda_grid;
  std::vector<std::vector<double>> energies;  // energies[k] = levels at lambda_grid[k]

  friend bool operator==(const SpectrumTable&, const SpectrumTable&) = default;
};

class ParamHamiltonian {
 public:
  using OperatorFn = std::function<HermitianOperator(double)>;

  ParamHamiltonian(std::size_t dimension, std::string parameter_name,
                   std::map<std::string, double> frozen_params, double nominal_lambda,
                   OperatorFn evaluate, OperatorFn derivative,
                   std::optional<ZeemanCoupling> zeeman = std::nullopt, double lambda_min = -1e300,
                   double lambda_max = 1e300);

  std::size_t dimension() const noexcept { return dimension_; }
  /// "J", "b" or "tabulated".
  const std::string& parameter_name() const noexcept { return parameter_name_; }
  const std::map<std::string, double>& frozen_params() const noexcept { return frozen_; }
  /// The value the promoted symbol was given at construction.
  double nominal_lambda() const noexcept { return nominal_lambda_; }
  double lambda_min() const noexcept { return lambda_min_; }
  double lambda_max() const noexcept { return lambda_max_; }

  HermitianOperator evaluate(double lambda) const;
  HermitianOperator derivative(double lambda) const;

  const std::optional<ZeemanCoupling>& zeeman() const noexcept { return zeeman_; }

 private:
  void check_range(double lambda) const;

  std::size_t dimension_;
  std::string parameter_name_;
  std::map<std::string, double> frozen_;
  double nominal_lambda_;
  OperatorFn evaluate_;
  OperatorFn derivative_;
  std::optional<ZeemanCoupling> zeeman_;
  double lambda_min_;
  double lambda_max_;
};

/// Two spin-1/2 sites: H = J sigma_1 . sigma_2 - b (S_1z + S_2z).
/// `parameter` ("J" or "b") selects the working parameter; the other is frozen.
ParamHamiltonian build_dimer(double J, double b, const std::string& parameter);

/// H(b) = -b S_z.
ParamHamiltonian build_single_spin_zeeman(double b);

/// Diagonal H(lambda) from piecewise-linear interpolation of tabulated levels.
/// Inside a grid interval the derivative is the interval slope; at a node it
/// is the central difference over the neighbouring nodes (one-sided at the ends).
ParamHamiltonian build_tabulated(SpectrumTable table);

/// Building blocks shared with the correlation code.
struct DimerOperators {
  ComplexMatrix exchange;       // sigma_1 . sigma_2
  ComplexMatrix magnetization;  // S_1z + S_2z
  ComplexMatrix pauli_xx, pauli_yy, pauli_zz;
};

const DimerOperators& dimer_operators();

}  // namespace qcal
