#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include "emlab/geom.hpp"

namespace emlab {

namespace {

double dist(const Point& a, const Point& b) {
  return std::hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2]);
}

void validate(const PointMeasure& mu, std::size_t limit, const char* what) {
  if (mu.dim < 1 || mu.dim > 3) throw std::invalid_argument(std::string(what) + ": dim must be 1, 2 or 3");
  if (mu.points.size() != mu.weights.size())
    throw std::invalid_argument(std::string(what) + ": points and weights differ in length");
  for (double w : mu.weights)
    if (!(w >= 0.0)) throw std::invalid_argument(std::string(what) + ": weights must be nonnegative");
  if (mu.points.size() > limit)
    throw std::invalid_argument(std::string(what) + ": at most " + std::to_string(limit) + " atoms");
}

bool exceeds(double mass, double bound) { return mass > bound * (1 + 1e-12); }

// Calls f on every subset of {0..n-1} with 1..kmax elements.
template <class F>
void for_each_small_subset(std::size_t n, std::size_t kmax, F&& f) {
  std::vector<std::size_t> idx;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (!idx.empty()) f(idx);
    if (idx.size() == kmax) return;
    for (std::size_t k = start; k < n; ++k) {
      idx.push_back(k);
      self(self, k + 1);
      idx.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace

bool frostman_check(const PointMeasure& nu, double alpha, double s, double delta) {
  validate(nu, 64, "frostman_check");
  if (!(delta > 0.0) || !(alpha >= 0.0) || !(s >= 0.0))
    throw std::invalid_argument("frostman_check: need delta > 0, alpha >= 0, s >= 0");
  const std::size_t n = nu.points.size();
  const double om = omega(s);
  bool ok = true;
  for_each_small_subset(n, static_cast<std::size_t>(nu.dim) + 1, [&](const std::vector<std::size_t>& ids) {
    if (!ok) return;
    std::vector<Point> pts;
    for (std::size_t k : ids) pts.push_back(nu.points[k]);
    const Point c = enclosing_ball(pts).center;
    std::vector<std::pair<double, double>> by_dist;
    for (std::size_t k = 0; k < n; ++k) by_dist.emplace_back(dist(c, nu.points[k]), nu.weights[k]);
    std::sort(by_dist.begin(), by_dist.end());
    double mass = 0.0;
    for (std::size_t k = 0; k < n && ok; ++k) {
      mass += by_dist[k].second;
      const double r = by_dist[k].first;
      // open balls slightly larger than r hold exactly the atoms up to here
      if (k + 1 < n && by_dist[k + 1].first <= r * (1 + 1e-12) + 1e-15) continue;
      if (r < delta && exceeds(mass, alpha * om * std::pow(r, s))) ok = false;
    }
  });
  return ok;
}

SetOracle hausdorff_oracle(const PointMeasure& mu, double alpha, double s, double delta) {
  validate(mu, kExactLimit, "hausdorff_oracle");
  auto table = std::make_shared<std::vector<double>>(hausdorff_table(PointSet{mu.dim, mu.points, 0.0}, s, delta));
  return [table, alpha](std::uint32_t m) { return alpha * table->at(m); };
}

std::vector<std::size_t> greedy_decompose(const PointMeasure& mu, const SetOracle& t, double theta) {
  validate(mu, kExactLimit, "greedy_decompose");
  if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("greedy_decompose: theta must lie in (0, 1)");
  const std::size_t n = mu.points.size();
  const std::uint32_t full = n == 0 ? 0 : (1u << n) - 1;

  std::vector<double> tv(full + 1);
  for (std::uint32_t m = 0; m <= full; ++m) tv[m] = t(m);
  for (std::uint32_t m = 0; m <= full; ++m)
    for (std::size_t k = 0; k < n; ++k)
      if (exceeds(tv[m], tv[m | (1u << k)]) && tv[m] - tv[m | (1u << k)] > 1e-15)
        throw std::invalid_argument("greedy_decompose: the set function is not monotone");

  std::uint32_t e = full;
  for (;;) {
    double sup = 0.0;
    for (std::uint32_t f = e; f; f = (f - 1) & e)
      if (exceeds(mu.mass(f), tv[f])) sup = std::max(sup, mu.mass(f));
    if (sup == 0.0) break;
    std::uint32_t pick = 0;
    // smallest mask that carries at least theta * sup
    for (std::uint32_t f = 1; f <= e; ++f)
      if ((f & e) == f && exceeds(mu.mass(f), tv[f]) && mu.mass(f) >= theta * sup) {
        pick = f;
        break;
      }
    e ^= pick;
  }
  std::vector<std::size_t> kept;
  for (std::size_t k = 0; k < n; ++k)
    if (e >> k & 1u) kept.push_back(k);
  return kept;
}

StrongApprox strong_approx(const PointMeasure& mu, double alpha, double s, double eps, double beta) {
  validate(mu, kExactLimit, "strong_approx");
  if (!(alpha > 0.0 && beta > alpha)) throw std::invalid_argument("strong_approx: need 0 < alpha < beta");
  if (!(eps >= 0.0)) throw std::invalid_argument("strong_approx: eps must be nonnegative");
  const std::size_t n = mu.points.size();
  double dmin = kInfDelta, diam = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = dist(mu.points[i], mu.points[j]);
      dmin = std::min(dmin, d);
      diam = std::max(diam, d);
    }
  if (!frostman_check(mu, alpha, s, dmin / 2))
    throw std::invalid_argument("strong_approx: mu exceeds alpha H^s at the scale of its support");

  const double total = mu.mass();
  StrongApprox out;
  double delta = diam > 0.0 ? diam : 1.0;
  for (int step = 0; step < 64; ++step, delta /= 2) {
    out.kept = greedy_decompose(mu, hausdorff_oracle(mu, beta, s, delta));
    double kept_mass = 0.0;
    for (std::size_t k : out.kept) kept_mass += mu.weights[k];
    out.delta = delta;
    out.removed_mass = total - kept_mass;
    out.steps = step + 1;
    if (out.removed_mass <= eps) {
      out.reached = true;
      break;
    }
  }
  return out;
}

}  // namespace emlab
