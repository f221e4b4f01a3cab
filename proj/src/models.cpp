#include "qcal/models.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "qcal/error.hpp"

namespace qcal {

ParamHamiltonian::ParamHamiltonian(std::size_t dimension, std::string parameter_name,
                                   std::map<std::string, double> frozen_params,
                                   double nominal_lambda, OperatorFn evaluate,
                                   OperatorFn derivative, std::optional<ZeemanCoupling> zeeman,
                                   double lambda_min, double lambda_max)
    : dimension_(dimension),
      parameter_name_(std::move(parameter_name)),
      frozen_(std::move(frozen_params)),
      nominal_lambda_(nominal_lambda),
      evaluate_(std::move(evaluate)),
      derivative_(std::move(derivative)),
      zeeman_(std::move(zeeman)),
      lambda_min_(lambda_min),
      lambda_max_(lambda_max) {}

void ParamHamiltonian::check_range(double lambda) const {
  if (!std::isfinite(lambda) || lambda < lambda_min_ || lambda > lambda_max_) {
    throw Error(ErrorCode::OutOfRange, "lambda = " + std::to_string(lambda) + " outside [" +
                                           std::to_string(lambda_min_) + ", " +
                                           std::to_string(lambda_max_) + "]");
  }
}

HermitianOperator ParamHamiltonian::evaluate(double lambda) const {
  check_range(lambda);
  return evaluate_(lambda);
}

HermitianOperator ParamHamiltonian::derivative(double lambda) const {
  check_range(lambda);
  return derivative_(lambda);
}

const DimerOperators& dimer_operators() {
  static const DimerOperators ops = [] {
    const auto s = spin_half_operators();
    const auto id = ComplexMatrix::identity(2);
    DimerOperators d;
    d.pauli_xx = kron(s.pauli_x, s.pauli_x);
    d.pauli_yy = kron(s.pauli_y, s.pauli_y);
    d.pauli_zz = kron(s.pauli_z, s.pauli_z);
    d.exchange = d.pauli_xx + d.pauli_yy + d.pauli_zz;
    d.magnetization = kron(s.sz, id) + kron(id, s.sz);
    return d;
  }();
  return ops;
}

ParamHamiltonian build_dimer(double J, double b, const std::string& parameter) {
  const auto& ops = dimer_operators();
  const ComplexMatrix exchange = ops.exchange;
  const ComplexMatrix mag = ops.magnetization;

  if (parameter == "J") {
    auto evaluate = [=](double j) { return HermitianOperator(j * exchange - b * mag); };
    auto derivative = [=](double) { return HermitianOperator(exchange); };
    ZeemanCoupling zeeman{mag, [=](double j) { return j * exchange; }};
    return ParamHamiltonian(4, "J", {{"b", b}}, J, evaluate, derivative, zeeman);
  }
  if (parameter == "b") {
    auto evaluate = [=](double field) { return HermitianOperator(J * exchange - field * mag); };
    auto derivative = [=](double) { return HermitianOperator(-1.0 * mag); };
    ZeemanCoupling zeeman{mag, [=](double) { return J * exchange; }};
    return ParamHamiltonian(4, "b", {{"J", J}}, b, evaluate, derivative, zeeman);
  }
  throw Error(ErrorCode::InvalidParameter, "dimer parameter must be \"J\" or \"b\", got \"" +
                                               parameter + "\"");
}

ParamHamiltonian build_single_spin_zeeman(double b) {
  const ComplexMatrix sz = spin_half_operators().sz;
  auto evaluate = [=](double field) { return HermitianOperator(-field * sz); };
  auto derivative = [=](double) { return HermitianOperator(-1.0 * sz); };
  ZeemanCoupling zeeman{sz, [](double) { return ComplexMatrix(2); }};
  return ParamHamiltonian(2, "b", {}, b, evaluate, derivative, zeeman);
}

ParamHamiltonian build_tabulated(SpectrumTable table) {
  const auto& grid = table.lambda_grid;
  if (grid.size() < 3) {
    throw Error(ErrorCode::GridTooSmall,
                "tabulated spectrum needs >= 3 grid points, got " + std::to_string(grid.size()));
  }
  if (table.energies.size() != grid.size()) {
    throw Error(ErrorCode::DimensionMismatch, "energies rows do not match lambda grid length");
  }
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!std::isfinite(grid[k])) throw Error(ErrorCode::NonMonotoneGrid, "non-finite grid value");
    if (k > 0 && !(grid[k] > grid[k - 1])) {
      throw Error(ErrorCode::NonMonotoneGrid,
                  "lambda grid not strictly increasing at index " + std::to_string(k));
    }
  }
  const std::size_t levels = table.energies.front().size();
  if (levels == 0) throw Error(ErrorCode::DimensionMismatch, "spectrum rows are empty");
  for (const auto& row : table.energies) {
    if (row.size() != levels) {
      throw Error(ErrorCode::DimensionMismatch, "spectrum rows have inconsistent level counts");
    }
    for (double e : row)
      if (!std::isfinite(e)) throw Error(ErrorCode::DimensionMismatch, "non-finite energy");
  }

  auto shared = std::make_shared<const SpectrumTable>(std::move(table));

  // Index k of the interval [grid[k], grid[k+1]] containing lambda.
  auto interval = [](const std::vector<double>& g, double lambda) {
    auto it = std::upper_bound(g.begin(), g.end(), lambda);
    std::size_t k = static_cast<std::size_t>(it - g.begin());
    return std::min(k == 0 ? 0 : k - 1, g.size() - 2);
  };

  auto evaluate = [shared, interval, levels](double lambda) {
    const auto& g = shared->lambda_grid;
    const std::size_t k = interval(g, lambda);
    const double w = (lambda - g[k]) / (g[k + 1] - g[k]);
    std::vector<double> e(levels);
    for (std::size_t n = 0; n < levels; ++n) {
      const double lo = shared->energies[k][n], hi = shared->energies[k + 1][n];
      e[n] = w == 0.0 ? lo : (w == 1.0 ? hi : lo + w * (hi - lo));
    }
    return HermitianOperator(ComplexMatrix::diagonal(e));
  };

  auto derivative = [shared, interval, levels](double lambda) {
    const auto& g = shared->lambda_grid;
    const auto& E = shared->energies;
    const std::size_t last = g.size() - 1;
    std::vector<double> d(levels);
    auto node = std::find(g.begin(), g.end(), lambda);
    if (node != g.end()) {
      const std::size_t k = static_cast<std::size_t>(node - g.begin());
      const std::size_t lo = k == 0 ? 0 : k - 1;
      const std::size_t hi = k == last ? last : k + 1;
      for (std::size_t n = 0; n < levels; ++n) d[n] = (E[hi][n] - E[lo][n]) / (g[hi] - g[lo]);
    } else {
      const std::size_t k = interval(g, lambda);
      for (std::size_t n = 0; n < levels; ++n) d[n] = (E[k + 1][n] - E[k][n]) / (g[k + 1] - g[k]);
    }
    return HermitianOperator(ComplexMatrix::diagonal(d));
  };

  const double lo = shared->lambda_grid.front();
  const double hi = shared->lambda_grid.back();
  return ParamHamiltonian(levels, "tabulated", {}, lo, evaluate, derivative, std::nullopt, lo, hi);
}

}  // namespace qcal
