#pragma once

#include <string>
#include <vector>

namespace qcal {

struct CheckResult {
  std::string name;  // "<module>.<invariant>"
  bool passed = false;
  std::string detail;
};

/// Runs the invariant checks of every module. `quick` shrinks sample counts
/// and grids; every invariant is still exercised.
std::vector<CheckResult> run_validation(bool quick);

}  // namespace qcal
