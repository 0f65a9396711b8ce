#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "emlab/check.hpp"

namespace emlab::cli {

struct SuiteOptions {
  std::uint64_t seed = 7;
  int jobs = 1;
  /// Negative control: corrupts one exact comparison per suite.
  bool inject_fault = false;
};

/// linear, semilinear, reduced, geom, capacity.
const std::vector<std::string>& suite_names();

/// Property battery of one module, or all of them in the order above.
/// Row names carry the suite as a prefix. Throws ConfigError for an
/// unknown name.
std::vector<Check> run_suite(const std::string& name, const SuiteOptions& opts);

}  // namespace emlab::cli
