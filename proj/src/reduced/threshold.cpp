#include <cmath>
#include <limits>
#include <stdexcept>

#include "emlab/reduced.hpp"

namespace emlab {

namespace {

GridFunction disk_green(double h, double radius) {
  const Domain dom = Domain::centered_ball(2, radius, h);
  return solve_poisson(project_measure(DiscreteMeasure::dirac(dom, {0, 0, 0}, 1.0, true)));
}

double integral_from_green(const GridFunction& green, double c) {
  const double w = green.domain().cell_volume();
  double s = 0.0;
  for (double v : green.values()) s += std::exp(c * v);
  return w * s;
}

void check_hs(const std::vector<double>& hs, std::size_t min_count, const char* what) {
  if (hs.size() < min_count)
    throw std::invalid_argument(std::string(what) + ": need at least " + std::to_string(min_count) + " grid sizes");
  for (std::size_t k = 0; k < hs.size(); ++k) {
    if (!(hs[k] > 0.0)) throw std::invalid_argument(std::string(what) + ": grid sizes must be positive");
    if (k > 0 && !(hs[k] < hs[k - 1]))
      throw std::invalid_argument(std::string(what) + ": grid sizes must decrease");
  }
}

}  // namespace

double exponential_integral(double c, double h, double radius) {
  return integral_from_green(disk_green(h, radius), c);
}

ThresholdTable threshold_scan_exponential(const std::vector<double>& masses, const std::vector<double>& hs) {
  check_hs(hs, 3, "threshold_scan_exponential");
  for (std::size_t k = 1; k < masses.size(); ++k)
    if (!(masses[k] > masses[k - 1])) throw std::invalid_argument("threshold_scan_exponential: masses must increase");
  std::vector<GridFunction> greens;
  for (double h : hs) greens.push_back(disk_green(h, 1.0));

  ThresholdTable table;
  table.critical = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> log_ratio;
  for (double c : masses) {
    std::vector<double> vals;
    for (const GridFunction& g : greens) vals.push_back(integral_from_green(g, c));
    const std::size_t m = vals.size();
    const double d_last = vals[m - 1] - vals[m - 2];
    const double d_prev = vals[m - 2] - vals[m - 3];
    const double ratio = std::abs(d_last) / std::abs(d_prev);
    const std::string cls = ratio < 1.0 ? "convergent" : "divergent";
    for (std::size_t k = 0; k < m; ++k) table.rows.push_back({c, hs[k], vals[k], cls});
    log_ratio.push_back(std::log(ratio));
  }
  // last convergent -> divergent switch along the mass list; close to the
  // threshold the two terms of the increments compete and the sign can flicker
  for (std::size_t k = masses.size(); k-- > 1;) {
    const double a = log_ratio[k - 1], b = log_ratio[k];
    if (std::isfinite(a) && std::isfinite(b) && a < 0.0 && b >= 0.0) {
      table.critical = masses[k - 1] + (masses[k] - masses[k - 1]) * (-a) / (b - a);
      break;
    }
  }
  return table;
}

ThresholdTable threshold_scan_polynomial(const std::vector<double>& ps, const std::vector<double>& hs,
                                         ReducedOptions opts) {
  check_hs(hs, 2, "threshold_scan_polynomial");
  ThresholdTable table;
  table.critical = std::numeric_limits<double>::quiet_NaN();
  for (double p : ps) {
    const Nonlinearity g = Nonlinearity::power(p);
    std::vector<double> l1;
    for (double h : hs) {
      const Domain dom = Domain::centered_ball(3, 1.0, h);
      const DiscreteMeasure mu = DiscreteMeasure::dirac(dom, {0, 0, 0}, 1.0, true);
      l1.push_back(norms(reduced_measure(dom, g, mu, default_levels(), opts).u_star).l1);
    }
    bool decreasing = true;
    for (std::size_t k = 1; k < l1.size(); ++k) decreasing = decreasing && l1[k] < l1[k - 1];
    const bool collapsing = decreasing && l1.back() <= 0.5 * l1.front();
    for (std::size_t k = 0; k < l1.size(); ++k)
      table.rows.push_back({p, hs[k], l1[k], collapsing ? "collapsing" : "persistent"});
    if (collapsing && std::isnan(table.critical)) table.critical = p;
  }
  return table;
}

}  // namespace emlab
