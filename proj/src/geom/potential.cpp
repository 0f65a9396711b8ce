#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "emlab/geom.hpp"

namespace emlab {

namespace {

double dist(const Point& a, const Point& b) {
  return std::hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2]);
}

// int_a^b r^q dr
double power_integral(double a, double b, double q) {
  if (q == -1.0) return std::log(b / a);
  return (std::pow(b, q + 1) - std::pow(a, q + 1)) / (q + 1);
}

// int_a^b r^{1-N} dr; log form for N = 2
double newton_piece(double a, double b, int n) { return n == 2 ? std::log(b / a) : power_integral(a, b, 1.0 - n); }

std::vector<double> atom_distances(const PointMeasure& mu, const Point& x, double d) {
  if (mu.dim < 2 || mu.dim > 3) throw std::invalid_argument("potential: dim must be 2 or 3");
  if (mu.points.size() != mu.weights.size()) throw std::invalid_argument("potential: points and weights differ");
  if (!(d > 0.0)) throw std::invalid_argument("potential: d must be positive");
  std::vector<double> r;
  for (std::size_t k = 0; k < mu.points.size(); ++k) {
    const double rk = dist(x, mu.points[k]);
    if (rk == 0.0 && mu.weights[k] != 0.0) throw std::domain_error("potential: x sits on an atom");
    if (rk > d) throw std::invalid_argument("potential: d must reach every atom from x");
    r.push_back(rk);
  }
  return r;
}

}  // namespace

double radial_potential(const PointMeasure& mu, const Point& x, double d) {
  const std::vector<double> r = atom_distances(mu, x, d);
  const int n = mu.dim;
  std::vector<std::size_t> order(r.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return r[a] < r[b]; });
  // mu(B(x, t)) is constant between consecutive atom distances
  double mass = 0.0, v = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    mass += mu.weights[order[k]];
    const double a = r[order[k]];
    const double b = k + 1 < order.size() ? r[order[k + 1]] : d;
    if (b > a) v += mass * newton_piece(a, b, n);
  }
  return v / (n * omega(n));
}

double kernel_potential(const PointMeasure& mu, const Point& x, double d) {
  const std::vector<double> r = atom_distances(mu, x, d);
  const int n = mu.dim;
  double v = 0.0;
  for (std::size_t k = 0; k < r.size(); ++k) {
    const double kern = n == 2 ? std::log(d / r[k]) : (std::pow(r[k], 2.0 - n) - std::pow(d, 2.0 - n)) / (n - 2);
    v += mu.weights[k] * kern;
  }
  return v / (n * omega(n));
}

RadialProfile RadialProfile::step(std::vector<double> breaks, std::vector<double> values) {
  std::vector<double> expo(values.size(), 0.0);
  return {std::move(breaks), std::move(values), std::move(expo)};
}

RadialProfile RadialProfile::cut_power(double alpha, double s, double eps, double d) {
  return {{0.0, eps, d}, {0.0, alpha}, {0.0, s}};
}

double RadialProfile::operator()(double r) const {
  std::size_t k = 0;
  while (k + 1 < coef.size() && r >= breaks[k + 1]) ++k;
  return coef[k] * std::pow(r, expo[k]);
}

double blop_constant(const RadialProfile& f, double s) {
  const double fd = f(f.d());
  if (fd <= 0.0) throw std::invalid_argument("blop_constant: f(d) must be positive");
  return s * std::pow(f.d(), s) / fd + 1.0;
}

Check blop_1d_check(const RadialProfile& f, double alpha, double s) {
  const std::size_t m = f.coef.size();
  if (m == 0 || f.breaks.size() != m + 1 || f.expo.size() != m)
    throw std::invalid_argument("blop_1d_check: malformed profile");
  if (f.breaks[0] != 0.0) throw std::invalid_argument("blop_1d_check: profile must start at 0");
  if (!(alpha > 0.0) || !(s >= 0.0)) throw std::invalid_argument("blop_1d_check: need alpha > 0 and s >= 0");
  for (std::size_t k = 0; k < m; ++k) {
    const double a = f.breaks[k], b = f.breaks[k + 1], c = f.coef[k], e = f.expo[k];
    if (!(b > a)) throw std::invalid_argument("blop_1d_check: breaks must increase");
    if (!(c >= 0.0) || !(e >= 0.0)) throw std::invalid_argument("blop_1d_check: f must be nonnegative and nondecreasing");
    if (k + 1 < m && c * std::pow(b, e) > f.coef[k + 1] * std::pow(b, f.expo[k + 1]) * (1 + 1e-12))
      throw std::invalid_argument("blop_1d_check: f must be nondecreasing");
    if (c > 0.0) {
      // sup of f / r^s over the piece sits at an end point
      const double ratio = e >= s ? c * std::pow(b, e - s) : (a > 0.0 ? c * std::pow(a, e - s) : kInfDelta);
      if (ratio > alpha * (1 + 1e-12)) throw std::invalid_argument("blop_1d_check: f exceeds alpha r^s");
    }
  }
  double lhs = 0.0, inner = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    if (f.coef[k] == 0.0) continue;
    const double a = f.breaks[k], b = f.breaks[k + 1], c = f.coef[k], e = f.expo[k];
    lhs += c * power_integral(a, b, e - s - 1);
    inner += c * power_integral(a, b, e - s - 1 - alpha);
  }
  const double d = f.d();
  const double rhs = inner == 0.0 ? 0.0 : std::log1p(blop_constant(f, s) * std::pow(d, alpha) * inner);
  return make_check("blop_1d", lhs, rhs, 1e-12 * std::max(1.0, std::abs(rhs)));
}

}  // namespace emlab
