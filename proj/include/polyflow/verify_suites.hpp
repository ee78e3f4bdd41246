#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace polyflow::suites {

struct SuiteOptions {
  long cases = 0;          // 0: suite default
  std::uint64_t seed = 1729;
  double tol = -1.0;       // < 0: suite default
  double drift_tol = -1.0; // < 0: suite default
};

struct SuiteReport {
  std::string suite;
  long cases = 0;
  long failures = 0;
  double max_residual = 0.0;
  bool pass = false;
  std::vector<std::string> notes;
};

/// Known suites: vieta, invariants, theorem24, euler-shift, trig, elliptic,
/// dynamics. Unknown names raise UnknownSuite.
SuiteReport run_suite(const std::string& name, const SuiteOptions& opts);

std::vector<std::string> suite_names();

}  // namespace polyflow::suites
