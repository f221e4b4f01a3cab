#pragma once

#include <string>
#include <vector>

#include "qcal/scenario.hpp"

namespace qcal {

struct CurvePoint {
  double abscissa = 0.0;
  double value = 0.0;
  double error_estimate = 0.0;

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

struct Curve {
  std::string name;
  std::string abscissa_unit;  // e.g. "K"
  std::string value_unit;     // e.g. "kB", "K", "dimensionless"
  std::vector<CurvePoint> points;

  friend bool operator==(const Curve&, const Curve&) = default;
};

struct CurveSet {
  std::vector<Curve> curves;

  bool empty() const noexcept { return curves.empty(); }
  friend bool operator==(const CurveSet&, const CurveSet&) = default;
};

/// Working-parameter values to sweep, with a display label per value.
struct SweepGrid {
  std::vector<double> values;
  std::vector<std::string> labels;
};

SweepGrid default_sweep_grid(const Scenario& scenario);

/// J grid taken from an exchange table, labelled by pressure.
SweepGrid exchange_sweep_grid(const ExchangeTable& table);

/// QCAL_THREADS if set to a positive integer, else the processor count.
int configured_threads();

/// Evaluates every requested computation on the grid. Curves pair the first
/// grid value with each later one (lambda_0 -> lambda_k). Points are computed
/// concurrently but returned in grid order; any failed point aborts the run
/// with an Error naming its grid coordinates.
CurveSet run_sweep(const Scenario& scenario);
CurveSet run_sweep(const Scenario& scenario, const SweepGrid& grid, int threads);

/// Scenario with `computations` narrowed to `allowed`; `fallback` if that leaves nothing.
Scenario restrict_computations(Scenario scenario, const std::vector<Computation>& allowed,
                               const std::vector<Computation>& fallback);

/// The scenario run on the table's J values (dimer model, parameter J).
CurveSet run_exchange_sweep(const Scenario& scenario, const ExchangeTable& table, int threads);

}  // namespace qcal
