#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "emlab/geom.hpp"

namespace emlab {

namespace {

double dist(const Point& a, const Point& b) {
  return std::hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2]);
}

bool inside(const Ball& b, const Point& p) { return b.r >= 0.0 && dist(b.center, p) <= b.r * (1 + 1e-12) + 1e-15; }

// Smallest ball with every point of r on its boundary, in their affine hull.
Ball circum_ball(const std::vector<Point>& r) {
  if (r.empty()) return {{0, 0, 0}, -1.0};
  if (r.size() == 1) return {r[0], 0.0};
  const std::size_t m = r.size() - 1;
  Eigen::MatrixXd a(m, m);
  Eigen::VectorXd rhs(m);
  std::vector<Eigen::Vector3d> e(m);
  for (std::size_t j = 0; j < m; ++j)
    e[j] = Eigen::Vector3d(r[j + 1][0] - r[0][0], r[j + 1][1] - r[0][1], r[j + 1][2] - r[0][2]);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = 0; k < m; ++k) a(j, k) = 2.0 * e[j].dot(e[k]);
    rhs(j) = e[j].squaredNorm();
  }
  const Eigen::VectorXd lam = a.completeOrthogonalDecomposition().solve(rhs);
  Ball b{r[0], 0.0};
  for (std::size_t j = 0; j < m; ++j)
    for (int c = 0; c < 3; ++c) b.center[c] += lam(j) * e[j](c);
  for (const Point& p : r) b.r = std::max(b.r, dist(b.center, p));
  return b;
}

Ball welzl(std::span<const Point> pts, std::size_t n, std::vector<Point>& r) {
  if (n == 0 || r.size() == 4) return circum_ball(r);
  const Point& p = pts[n - 1];
  Ball b = welzl(pts, n - 1, r);
  if (inside(b, p)) return b;
  r.push_back(p);
  b = welzl(pts, n - 1, r);
  r.pop_back();
  return b;
}

void validate(const PointSet& a, double delta) {
  if (a.dim < 1 || a.dim > 3) throw std::invalid_argument("point set: dim must be 1, 2 or 3");
  if (!(delta > 0.0)) throw std::invalid_argument("hausdorff: delta must be positive");
  if (!(a.rho >= 0.0)) throw std::invalid_argument("point set: rho must be nonnegative");
  for (const Point& p : a.points)
    for (int c = a.dim; c < 3; ++c)
      if (p[c] != 0.0) throw std::invalid_argument("point set: coordinates beyond dim must be zero");
}

// Radius of the cluster ball, or -1 when no admissible ball covers it.
double cluster_radius(const PointSet& a, std::span<const Point> pts, double delta, Ball* out = nullptr) {
  Ball b = enclosing_ball(pts);
  b.r += a.rho;
  const bool ok = b.r < delta || (a.rho > 0.0 && b.r <= delta);
  if (out) *out = b;
  return ok ? b.r : -1.0;
}

double cost(double r, double s) { return omega(s) * std::pow(r, s); }

std::vector<Point> gather(const PointSet& a, std::uint32_t mask) {
  std::vector<Point> v;
  for (std::size_t k = 0; k < a.points.size(); ++k)
    if (mask >> k & 1u) v.push_back(a.points[k]);
  return v;
}

struct Table {
  std::vector<double> best;
  std::vector<std::uint32_t> pick;
};

Table exact_table(const PointSet& a, double s, double delta) {
  const std::size_t n = a.points.size();
  if (n > kExactLimit)
    throw std::invalid_argument("hausdorff: exact mode handles at most " + std::to_string(kExactLimit) + " points");
  const std::uint32_t full = (1u << n) - 1;
  std::vector<double> single(full + 1, kInfDelta);
  for (std::uint32_t m = 1; m <= full; ++m) {
    const std::vector<Point> pts = gather(a, m);
    const double r = cluster_radius(a, pts, delta);
    if (r >= 0.0) single[m] = cost(r, s);
  }
  Table t{std::vector<double>(full + 1, kInfDelta), std::vector<std::uint32_t>(full + 1, 0)};
  t.best[0] = 0.0;
  for (std::uint32_t m = 1; m <= full; ++m) {
    const std::uint32_t low = m & (~m + 1);
    const std::uint32_t rest = m ^ low;
    // submasks of m that contain its lowest point, in increasing order
    for (std::uint32_t sub = 0;; sub = (sub - rest) & rest) {
      const std::uint32_t part = sub | low;
      const double v = single[part] + t.best[m ^ part];
      if (v < t.best[m]) {
        t.best[m] = v;
        t.pick[m] = part;
      }
      if (sub == rest) break;
    }
    if (!std::isfinite(t.best[m])) throw std::invalid_argument("hausdorff: a ball of radius rho exceeds delta");
  }
  return t;
}

Cover greedy_cover(const PointSet& a, double s, double delta) {
  std::vector<std::vector<Point>> clusters;
  std::vector<double> costs;
  for (const Point& p : a.points) {
    clusters.push_back({p});
    const double r = cluster_radius(a, clusters.back(), delta);
    if (r < 0.0) throw std::invalid_argument("hausdorff: a ball of radius rho exceeds delta");
    costs.push_back(cost(r, s));
  }
  for (;;) {
    double best = kInfDelta;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      for (std::size_t j = i + 1; j < clusters.size(); ++j) {
        std::vector<Point> merged = clusters[i];
        merged.insert(merged.end(), clusters[j].begin(), clusters[j].end());
        const double r = cluster_radius(a, merged, delta);
        if (r < 0.0) continue;
        const double change = cost(r, s) - costs[i] - costs[j];
        if (change < best) {
          best = change;
          bi = i;
          bj = j;
        }
      }
    }
    if (!(best <= 1e-12 * (1.0 + costs[bi] + costs[bj]))) break;
    clusters[bi].insert(clusters[bi].end(), clusters[bj].begin(), clusters[bj].end());
    costs[bi] = cost(cluster_radius(a, clusters[bi], delta), s);
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
    costs.erase(costs.begin() + static_cast<std::ptrdiff_t>(bj));
  }
  Cover c;
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    Ball b;
    cluster_radius(a, clusters[i], delta, &b);
    c.balls.push_back(b);
    c.value += costs[i];
  }
  return c;
}

}  // namespace

double PointMeasure::mass() const {
  double m = 0.0;
  for (double w : weights) m += w;
  return m;
}

double PointMeasure::mass(std::uint32_t mask) const {
  double m = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k)
    if (mask >> k & 1u) m += weights[k];
  return m;
}

PointMeasure PointMeasure::restricted(std::span<const std::size_t> ids) const {
  PointMeasure r{dim, {}, {}};
  for (std::size_t k : ids) {
    r.points.push_back(points.at(k));
    r.weights.push_back(weights.at(k));
  }
  return r;
}

double omega(double s) {
  if (!(s >= 0.0)) throw std::invalid_argument("omega: s must be nonnegative");
  if (s == 0.0) return 1.0;
  if (s == 1.0) return 2.0;
  if (s == 2.0) return std::numbers::pi;
  return std::pow(std::numbers::pi, s / 2) / std::tgamma(s / 2 + 1);
}

Ball enclosing_ball(std::span<const Point> pts) {
  if (pts.empty()) return {{0, 0, 0}, 0.0};
  std::vector<Point> r;
  return welzl(pts, pts.size(), r);
}

Cover hausdorff_cover(const PointSet& a, double s, double delta, CoverMode mode) {
  validate(a, delta);
  if (!(s >= 0.0)) throw std::invalid_argument("hausdorff: s must be nonnegative");
  if (a.points.empty()) return {};
  if (mode == CoverMode::greedy) return greedy_cover(a, s, delta);
  const Table t = exact_table(a, s, delta);
  Cover c;
  for (std::uint32_t m = static_cast<std::uint32_t>(t.best.size() - 1); m; m ^= t.pick[m]) {
    Ball b;
    cluster_radius(a, gather(a, t.pick[m]), delta, &b);
    c.balls.push_back(b);
  }
  c.value = t.best.back();
  return c;
}

double hausdorff_outer(const PointSet& a, double s, double delta, CoverMode mode) {
  return hausdorff_cover(a, s, delta, mode).value;
}

std::vector<double> hausdorff_table(const PointSet& a, double s, double delta) {
  validate(a, delta);
  if (!(s >= 0.0)) throw std::invalid_argument("hausdorff: s must be nonnegative");
  return exact_table(a, s, delta).best;
}

double uniform_gap(const PointSet& a, double delta) {
  if (a.rho != 0.0) throw std::invalid_argument("uniform_gap: finite point sets only");
  const std::vector<double> t = hausdorff_table(a, 0.0, delta);
  double gap = 0.0;
  for (std::uint32_t m = 0; m < t.size(); ++m) gap = std::max(gap, std::popcount(m) - t[m]);
  return gap;
}

UniformDelta uniform_convergence_check(const PointSet& a, double s, double eps) {
  if (s != 0.0) throw std::invalid_argument("uniform_convergence_check: only s = 0 is supported");
  double dmin = kInfDelta;
  for (std::size_t i = 0; i < a.points.size(); ++i)
    for (std::size_t j = i + 1; j < a.points.size(); ++j) dmin = std::min(dmin, dist(a.points[i], a.points[j]));
  UniformDelta u{dmin / 2, 0.0};
  u.gap = uniform_gap(a, u.delta);
  if (u.gap > eps) throw std::logic_error("uniform_convergence_check: gap " + fmt(u.gap) + " exceeds eps");
  return u;
}

double brezis_merle_bound(double m, double d) {
  if (!(m >= 0.0) || !(m < 4 * std::numbers::pi))
    throw std::invalid_argument("brezis_merle_bound: mass must lie in [0, 4 pi)");
  if (!(d > 0.0)) throw std::invalid_argument("brezis_merle_bound: d must be positive");
  return std::numbers::pi * d * d / (1.0 - m / (4 * std::numbers::pi));
}

}  // namespace emlab
