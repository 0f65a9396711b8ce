#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "emlab/geom.hpp"

using namespace emlab;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

PointMeasure random_measure(std::mt19937_64& rng, int n, int dim, double wmax) {
  std::uniform_real_distribution<double> x(0.0, 1.0), w(0.05, wmax);
  PointMeasure m;
  m.dim = dim;
  for (int k = 0; k < n; ++k) {
    Point p{0, 0, 0};
    for (int a = 0; a < dim; ++a) p[a] = x(rng);
    m.points.push_back(p);
    m.weights.push_back(w(rng));
  }
  return m;
}

PointSet support(const PointMeasure& m) { return {m.dim, m.points, 0.0}; }

// nu(B) <= alpha H^s_delta(B) on every subset
bool subset_oracle(const PointMeasure& nu, double alpha, double s, double delta) {
  const std::vector<double> h = hausdorff_table(support(nu), s, delta);
  for (std::uint32_t m = 1; m < h.size(); ++m)
    if (nu.mass(m) > alpha * h[m] * (1 + 1e-12)) return false;
  return true;
}

}  // namespace

TEST_CASE("omega") {
  CHECK(omega(0) == 1.0);
  CHECK(omega(1) == Approx(2.0).epsilon(1e-15));
  CHECK(omega(2) == Approx(kPi).epsilon(1e-15));
  CHECK(omega(3) == Approx(4 * kPi / 3).epsilon(1e-15));
  CHECK_THROWS_AS(omega(-0.5), std::invalid_argument);
}

TEST_CASE("enclosing ball") {
  const std::vector<Point> tri{{0, 0, 0}, {2, 0, 0}, {1, 0.1, 0}};
  const Ball b = enclosing_ball(tri);
  CHECK(b.r == Approx(1.0));
  CHECK(b.center[0] == Approx(1.0));
  const std::vector<Point> eq{{0, 0, 0}, {1, 0, 0}, {0.5, std::sqrt(3.0) / 2, 0}};
  CHECK(enclosing_ball(eq).r == Approx(1 / std::sqrt(3.0)));
  const std::vector<Point> tet{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, -1}, {0.2, 0.2, 0.2}};
  CHECK(enclosing_ball(tet).r == Approx(1.0));
}

TEST_CASE("balls") {
  for (double s : {0.0, 0.5, 1.0, 2.0}) {
    const PointSet ball{2, {{0.3, 0.4, 0}}, 0.25};
    CHECK(hausdorff_outer(ball, s, 0.25) == Approx(omega(s) * std::pow(0.25, s)).epsilon(1e-15));
    CHECK(hausdorff_outer(ball, s, kInfDelta, CoverMode::greedy) ==
          Approx(omega(s) * std::pow(0.25, s)).epsilon(1e-15));
  }
  CHECK_THROWS_AS(hausdorff_outer(PointSet{2, {{0, 0, 0}}, 0.5}, 1.0, 0.25), std::invalid_argument);
}

TEST_CASE("counting") {
  const PointSet three{2, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, 0.0};
  CHECK(hausdorff_outer(three, 0.0, 0.4) == 3.0);
  CHECK(hausdorff_outer(three, 0.0, kInfDelta) == 1.0);
  CHECK(hausdorff_outer(three, 1.0, 0.4) == 0.0);
  const Cover c = hausdorff_cover(three, 0.0, 0.4);
  CHECK(c.balls.size() == 3);
}

TEST_CASE("segment samples") {
  const double len = 2.0;
  const int n = 33;
  PointSet seg{2, {}, len / (2 * (n - 1))};
  for (int k = 0; k < n; ++k) seg.points.push_back({len * k / (n - 1), 0, 0});
  const Cover c = hausdorff_cover(seg, 1.0, kInfDelta, CoverMode::greedy);
  // any cover projects onto the line over [-rho, len + rho]
  CHECK(c.value >= len + 2 * seg.rho - 1e-12);
  CHECK(c.value == Approx(len + 2 * seg.rho));
  CHECK(std::abs(c.value - len) <= 0.05 * len);
  for (const Point& p : seg.points) {
    bool in = false;
    for (const Ball& b : c.balls) in = in || std::hypot(p[0] - b.center[0], p[1] - b.center[1]) + seg.rho <= b.r + 1e-12;
    CHECK(in);
  }
  CHECK_THROWS_AS(hausdorff_outer(seg, 1.0, kInfDelta, CoverMode::exact), std::invalid_argument);
}

TEST_CASE("greedy is an upper bound") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    const PointSet a = support(random_measure(rng, 7, 2, 1.0));
    for (double s : {0.0, 0.5, 1.0}) {
      for (double delta : {0.2, 0.5, kInfDelta}) {
        const double ex = hausdorff_outer(a, s, delta);
        CHECK(hausdorff_outer(a, s, delta, CoverMode::greedy) >= ex - 1e-12);
      }
    }
  }
}

TEST_CASE("monotonicity") {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 20; ++t) {
    const PointSet a = support(random_measure(rng, 6, 2, 1.0));
    const std::vector<double> tab = hausdorff_table(a, 0.7, 0.3);
    for (std::uint32_t m = 0; m < tab.size(); ++m)
      for (std::uint32_t k = 0; k < 6; ++k) CHECK(tab[m] <= tab[m | (1u << k)] + 1e-15);
    double prev = 0.0;
    for (double delta : {kInfDelta, 1.0, 0.5, 0.25, 0.1, 0.01}) {
      const double v = hausdorff_outer(a, 0.0, delta);
      CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("metric additivity") {
  const double delta = 0.25;
  const PointSet a1{2, {{0, 0, 0}, {0.1, 0.1, 0}}, 0.0};
  PointSet far = a1, near = a1;
  for (const Point& p : a1.points) {
    far.points.push_back({p[0] + 0.1 + 2 * delta, p[1], 0});
    near.points.push_back({p[0] + 0.1 + delta, p[1], 0});
  }
  PointSet a2 = far;
  a2.points.erase(a2.points.begin(), a2.points.begin() + 2);
  for (double s : {0.0, 1.0}) {
    CHECK(hausdorff_outer(far, s, delta) ==
          Approx(hausdorff_outer(a1, s, delta) + hausdorff_outer(a2, s, delta)).epsilon(1e-14));
  }
  // a gap of delta alone is not enough: one ball reaches both groups
  CHECK(hausdorff_outer(near, 0.0, delta) < 2 * hausdorff_outer(a1, 0.0, delta));
}

TEST_CASE("frostman") {
  PointMeasure one{2, {{0.5, 0.5, 0}}, {1.0}};
  CHECK(frostman_check(one, 1.0, 0.0, 0.1));
  one.weights[0] = 2.0;
  CHECK_FALSE(frostman_check(one, 1.0, 0.0, 0.1));

  std::mt19937_64 rng(9);
  int agreements = 0, holds = 0;
  for (int t = 0; t < 40; ++t) {
    const PointMeasure nu = random_measure(rng, 6, 2, 0.6);
    const double s = t % 2 ? 0.0 : 1.0;
    const double alpha = s == 0.0 ? 1.5 : 3.0;
    const double delta = t % 3 == 0 ? kInfDelta : 0.3;
    const bool f = frostman_check(nu, alpha, s, delta);
    agreements += f == subset_oracle(nu, alpha, s, delta);
    holds += f;
  }
  CHECK(agreements == 40);
  // both outcomes occur
  CHECK(holds > 0);
  CHECK(holds < 40);
}

TEST_CASE("greedy decomposition") {
  const PointMeasure dirac{2, {{0, 0, 0}}, {2.0}};
  CHECK(greedy_decompose(dirac, hausdorff_oracle(dirac, 1.0, 0.0, kInfDelta)).empty());

  const PointMeasure small{2, {{0, 0, 0}, {1, 0, 0}}, {0.2, 0.3}};
  CHECK(greedy_decompose(small, hausdorff_oracle(small, 1.0, 0.0, kInfDelta)).size() == 2);

  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const PointMeasure mu = random_measure(rng, 6, 2, 1.0);
    const SetOracle tt = hausdorff_oracle(mu, 0.8, 0.0, 0.25);
    const auto kept = greedy_decompose(mu, tt);
    std::uint32_t e = 0;
    for (std::size_t k : kept) e |= 1u << k;
    for (std::uint32_t f = e; f; f = (f - 1) & e) CHECK(mu.mass(f) <= tt(f) + 1e-12);
    const std::uint32_t rest = ((1u << 6) - 1) & ~e;
    CHECK(tt(rest) <= mu.mass(rest) + 1e-12);
  }

  const SetOracle bad = [](std::uint32_t m) { return m == 1 ? 5.0 : 0.0; };
  CHECK_THROWS_AS(greedy_decompose(small, bad), std::invalid_argument);
}

TEST_CASE("strong approximation") {
  // small atoms, large beta: nothing is removed
  const PointMeasure light{2, {{0, 0, 0}, {0.5, 0, 0}, {0, 0.5, 0}}, {0.1, 0.1, 0.1}};
  const StrongApprox all = strong_approx(light, 0.2, 0.0, 0.01, 1.0);
  CHECK(all.reached);
  CHECK(all.kept.size() == 3);

  // clustered atoms: delta must shrink below the cluster scale
  const PointMeasure cloud{2, {{0, 0, 0}, {0.01, 0, 0}, {0, 0.01, 0}, {0.7, 0.7, 0}}, {0.9, 0.9, 0.9, 0.9}};
  REQUIRE_THROWS_AS(strong_approx(cloud, 0.5, 0.0, 0.01, 1.5), std::invalid_argument);
  const StrongApprox r = strong_approx(cloud, 1.0, 0.0, 0.01, 1.5);
  CHECK(r.reached);
  CHECK(r.removed_mass <= 0.01);
  CHECK(frostman_check(cloud.restricted(r.kept), 1.5, 0.0, r.delta));
  CHECK(r.delta < 0.01);

  // (alpha / beta_n) mu restricted to E_n converges to mu
  double prev = kInfDelta;
  for (int n = 1; n <= 6; ++n) {
    const double beta = 1.0 + std::ldexp(1.0, -n);
    const double eps = std::ldexp(1.0, -n);
    const StrongApprox a = strong_approx(cloud, 1.0, 0.0, eps, beta);
    REQUIRE(a.reached);
    const double dist = a.removed_mass + (1.0 - 1.0 / beta) * (cloud.mass() - a.removed_mass);
    CHECK(dist <= prev);
    prev = dist;
  }
  CHECK(prev < 0.1);
}

TEST_CASE("uniform convergence") {
  const PointSet single{1, {{0.3, 0, 0}}, 0.0};
  CHECK(uniform_gap(single, 10.0) == 0.0);
  const PointSet line{1, {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 0, 0}}, 0.0};
  const UniformDelta u = uniform_convergence_check(line, 0.0, 0.0);
  CHECK(u.delta == 0.5);
  CHECK(u.gap == 0.0);
  CHECK(uniform_gap(line, 2.0) > 0.0);
  CHECK_THROWS_AS(uniform_convergence_check(line, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("potentials") {
  const PointMeasure zero{3, {}, {}};
  CHECK(radial_potential(zero, {0.2, 0, 0}, 1.0) == 0.0);

  const PointMeasure origin{3, {{0, 0, 0}}, {1.0}};
  for (double r : {0.1, 0.3, 0.9}) {
    const double exact = (1 / r - 1) / (4 * kPi);
    CHECK(radial_potential(origin, {r, 0, 0}, 1.0) == Approx(exact).epsilon(1e-13));
    CHECK(kernel_potential(origin, {0, r, 0}, 1.0) == Approx(exact).epsilon(1e-13));
  }
  const PointMeasure two{3, {{0.1, 0, 0}, {-0.2, 0.3, 0.1}}, {0.7, 1.3}};
  const Point x{0.05, -0.2, 0.3};
  CHECK(std::abs(radial_potential(two, x, 2.0) - kernel_potential(two, x, 2.0)) <= 1e-10);
  const PointMeasure flat{2, {{0.1, 0, 0}, {-0.2, 0.3, 0}}, {0.7, 1.3}};
  CHECK(std::abs(radial_potential(flat, x, 2.0) - kernel_potential(flat, x, 2.0)) <= 1e-10);
  CHECK(radial_potential(flat, {0.3, 0.3, 0}, 2.0) > 0.0);
  CHECK_THROWS_AS(radial_potential(origin, {0, 0, 0}, 1.0), std::domain_error);
  CHECK_THROWS_AS(kernel_potential(origin, {0.5, 0, 0}, 0.25), std::invalid_argument);
}

TEST_CASE("blop") {
  const Check z = blop_1d_check(RadialProfile::step({0.0, 1.0}, {0.0}), 1.0, 1.0);
  CHECK(z.lhs == 0.0);
  CHECK(z.rhs == 0.0);
  CHECK(z.pass);

  const double alpha = 0.7, s = 1.0, d = 1.0;
  const double log_c = std::log(blop_constant(RadialProfile::cut_power(alpha, s, 0.1, d), s));
  CHECK(log_c == Approx(std::log(s / alpha + 1)));
  for (double eps : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
    const Check c = blop_1d_check(RadialProfile::cut_power(alpha, s, eps, d), alpha, s);
    CHECK(c.pass);
    CHECK(c.lhs == Approx(alpha * std::log(d / eps)).epsilon(1e-13));
    CHECK(c.rhs - c.lhs <= log_c);
  }

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> br{0.0}, val{0.0};
    double b = 0.02 + 0.1 * u(rng), v = 0.0;
    for (int k = 0; k < 8 && b < 1.0; ++k) {
      v = std::min(std::max(v, u(rng) * b * 1.5), 1.5 * b);
      br.push_back(b);
      val.push_back(v);
      b += 0.05 + 0.2 * u(rng);
    }
    br.push_back(std::max(b, 1.0));
    CHECK(blop_1d_check(RadialProfile::step(br, val), 1.5, 1.0).pass);
  }
  CHECK_THROWS_AS(blop_1d_check(RadialProfile::step({0.0, 1.0}, {1.0}), 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(blop_1d_check(RadialProfile::step({0.0, 0.5, 0.6, 1.0}, {0.0, 0.5, 0.1}), 1.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("brezis merle") {
  CHECK(brezis_merle_bound(0.0, 1.0) == Approx(kPi));
  CHECK(brezis_merle_bound(2 * kPi, 1.0) == Approx(2 * kPi));
  CHECK_THROWS_AS(brezis_merle_bound(4 * kPi, 1.0), std::invalid_argument);
}
