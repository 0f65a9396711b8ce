#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace emlab::cli {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  /// Measured numbers, one "key=value" list.
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 7;
  /// emlab executable used by the determinism criterion.
  std::string tool_path;
  /// Scratch directory for that criterion.
  std::string work_dir = ".";
};

struct Criterion {
  int id;
  const char* name;
  CriterionResult (*run)(const AcceptanceOptions&);
};

const std::vector<Criterion>& criteria();
/// Runs one criterion and fills id, name and seconds. Throws
/// std::out_of_range for an unknown id.
CriterionResult run_criterion(int id, const AcceptanceOptions& opts);
/// "PASS|FAIL <id> <name> (<seconds>s) <detail>".
std::string format_result(const CriterionResult& r);

}  // namespace emlab::cli
