#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace emlab {

/// One recorded inequality lhs <= rhs (or a statistic against a bound).
struct Check {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

/// lhs <= rhs + slack.
Check make_check(std::string name, double lhs, double rhs, double slack = 0.0);

bool all_pass(const std::vector<Check>& checks);

/// %.12g, with "inf"/"-inf"/"nan" spelled out.
std::string fmt(double v);

/// Rows "check,lhs,rhs,pass".
void write_checks_csv(std::ostream& os, const std::vector<Check>& checks, bool header = true);

}  // namespace emlab
