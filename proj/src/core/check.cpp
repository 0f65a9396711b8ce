#include "emlab/check.hpp"

#include <cmath>
#include <cstdio>

namespace emlab {

Check make_check(std::string name, double lhs, double rhs, double slack) {
  return Check{std::move(name), lhs, rhs, lhs <= rhs + slack};
}

bool all_pass(const std::vector<Check>& checks) {
  for (const Check& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_checks_csv(std::ostream& os, const std::vector<Check>& checks, bool header) {
  if (header) os << "check,lhs,rhs,pass\n";
  for (const Check& c : checks) os << c.name << ',' << fmt(c.lhs) << ',' << fmt(c.rhs) << ',' << (c.pass ? 1 : 0) << '\n';
}

}  // namespace emlab
