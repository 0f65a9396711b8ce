#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "emlab/linear.hpp"

using namespace emlab;
using doctest::Approx;

namespace {

Domain line4() { return Domain::unit_box(1, 0.25); }

GridFunction random_fn(const Domain& dom, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(dom.size());
  for (double& x : v) x = d(rng);
  return GridFunction(dom, std::move(v));
}

double green3(const Point& p) {
  const double r = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
  return (1.0 / r - 1.0) / (4.0 * std::numbers::pi);
}

double green_rel_error(double h) {
  const Domain d = Domain::centered_ball(3, 1.0, h);
  const LinearReport rep = solve_linear(d, DiscreteMeasure::dirac(d, {0, 0, 0}));
  const std::size_t origin = d.nearest_node({0, 0, 0});
  double err = 0.0, ref = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i == origin) continue;
    const double g = green3(d.coords(i));
    err += std::abs(rep.u[i] - g);
    ref += std::abs(g);
  }
  return err / ref;
}

}  // namespace

TEST_CASE("solve_linear: zero data") {
  const Domain d = Domain::unit_box(2, 0.125);
  const LinearReport r = solve_linear(d, DiscreteMeasure(d));
  for (double v : r.u.values()) CHECK(v == 0.0);
}

TEST_CASE("solve_linear: 1D Dirac by hand") {
  const Domain d = line4();
  const LinearReport r = solve_linear(d, DiscreteMeasure::dirac(d, {0.5, 0, 0}));
  CHECK(r.u[0] == Approx(0.125));
  CHECK(r.u[1] == Approx(0.25));
  CHECK(r.u[2] == Approx(0.125));
  // continuum Green function x/2 for x <= 1/2
  CHECK(r.u[0] == Approx(0.25 / 2));
  CHECK(r.residual_linf < 1e-12);
}

TEST_CASE("solve_linear: 3D Green function error shrinks") {
  const double e8 = green_rel_error(1.0 / 8), e16 = green_rel_error(1.0 / 16);
  CHECK(e16 < e8);
}

TEST_CASE("solve_linear: inverse pair, linearity, comparison") {
  std::mt19937_64 rng(11);
  const Domain d = Domain::centered_ball(2, 1.0, 0.125);
  const GridFunction u = random_fn(d, rng);
  const GridFunction back = solve_poisson(laplacian_apply(u));
  for (std::size_t i = 0; i < d.size(); ++i) CHECK(back[i] == Approx(u[i]).epsilon(1e-10));

  const DiscreteMeasure mu = DiscreteMeasure::from_density(random_fn(d, rng));
  const DiscreteMeasure nu(d, {{{0.1, 0.2, 0}, 0.5}});
  const GridFunction lhs = solve_linear(d, mu.scaled(2.0) + nu.scaled(-3.0)).u;
  const GridFunction rhs = 2.0 * solve_linear(d, mu).u - 3.0 * solve_linear(d, nu).u;
  for (std::size_t i = 0; i < d.size(); ++i) CHECK(lhs[i] == Approx(rhs[i]).epsilon(1e-10));

  for (int k = 0; k < 10; ++k) {
    const GridFunction a = random_fn(d, rng);
    const GridFunction b = a + random_fn(d, rng, 0.0, 1.0);
    const GridFunction ua = solve_linear(d, DiscreteMeasure::from_density(a)).u;
    const GridFunction ub = solve_linear(d, DiscreteMeasure::from_density(b)).u;
    for (std::size_t i = 0; i < d.size(); ++i) CHECK(ua[i] <= ub[i] + 1e-12);
  }
}

TEST_CASE("iterative path agrees with the direct path") {
  const Domain d = Domain::unit_box(2, 1.0 / 160);  // 25281 unknowns
  LaplaceSolver it(d);
  CHECK_FALSE(it.direct());
  const DiscreteMeasure mu = DiscreteMeasure::dirac(d, {0.5, 0.5, 0});
  const GridFunction u = it.solve(project_measure(mu));
  const GridFunction r = laplacian_apply(u) - project_measure(mu);
  CHECK(norms(r).l2 <= 1e-9 * norms(project_measure(mu)).l2);
}

TEST_CASE("check_stampacchia") {
  const Domain d0 = Domain::unit_box(2, 1.0 / 16);
  for (const Check& c : check_stampacchia(solve_linear(d0, DiscreteMeasure(d0)), DiscreteMeasure(d0))) {
    CHECK(c.lhs == 0.0);
    CHECK(c.pass);
  }
  std::vector<double> q1, q2, energy;
  for (double h : {1.0 / 16, 1.0 / 32, 1.0 / 64}) {
    const Domain d = Domain::centered_ball(2, 1.0, h);
    const DiscreteMeasure mu = DiscreteMeasure::dirac(d, {0, 0, 0});
    const LinearReport r = solve_linear(d, mu);
    for (const Check& c : check_stampacchia(r, mu)) CHECK(c.pass);
    q1.push_back(gradient_ratio(r, mu, 1.0));
    q2.push_back(gradient_ratio(r, mu, 2.0));
    energy.push_back(dirichlet_energy(r.u));
  }
  CHECK(check_refinement("grad_q1", q1).pass);
  // q = 2 is outside the exponent range: the energy grows by log(2)/(2 pi) per halving.
  CHECK(q2[2] > q2[1]);
  CHECK(q2[1] > q2[0]);
  CHECK(energy[2] - energy[1] == Approx(std::log(2.0) / (2 * std::numbers::pi)).epsilon(0.05));
}

TEST_CASE("check_weak_lp") {
  const Domain d = Domain::centered_ball(3, 1.0, 1.0 / 8);
  const DiscreteMeasure zero(d);
  for (const Check& c : check_weak_lp(solve_linear(d, zero), zero)) CHECK(c.lhs == 0.0);

  std::vector<double> su;
  for (double h : {1.0 / 8, 1.0 / 16}) {
    const Domain dh = Domain::centered_ball(3, 1.0, h);
    const DiscreteMeasure mu = DiscreteMeasure::dirac(dh, {0, 0, 0});
    const auto c = check_weak_lp(solve_linear(dh, mu), mu);
    CHECK(c[0].pass);
    CHECK(c[1].pass);
    su.push_back(c[0].lhs / c[0].rhs);
  }
  CHECK(check_refinement("weak_lp", su).pass);
  // continuum value of sup_t t |{u>t}|^{1/3} for c_3(1/r - 1) is about 0.128
  CHECK(su[1] == Approx(0.128).epsilon(0.15));

  const DiscreteMeasure mu = DiscreteMeasure::dirac(d, {0, 0, 0});
  const double s1 = check_weak_lp(solve_linear(d, mu), mu)[0].lhs;
  const double s2 = check_weak_lp(solve_linear(d, mu.scaled(2.0)), mu)[0].lhs;
  CHECK(s2 == Approx(2 * s1));
  CHECK_THROWS_AS(check_weak_lp(solve_linear(Domain::unit_box(2, 0.25), DiscreteMeasure(Domain::unit_box(2, 0.25))),
                                DiscreteMeasure(Domain::unit_box(2, 0.25))),
                  std::invalid_argument);
}

TEST_CASE("check_interpolation") {
  const Domain d = line4();
  const DiscreteMeasure mu = DiscreteMeasure::dirac(d, {0.5, 0, 0});
  const LinearReport r = solve_linear(d, mu);
  const Check c0 = check_interpolation(r, mu, 0.0);
  CHECK(c0.lhs == 0.0);
  CHECK(c0.pass);
  const Check c = check_interpolation(r, mu, 0.125);
  CHECK(c.lhs == Approx(0.125));  // T(u) = (1/8,1/8,1/8): 4 (1/64 + 1/64)
  CHECK(c.pass);

  std::mt19937_64 rng(12);
  const Domain sq = Domain::unit_box(2, 0.1);
  const DiscreteMeasure pos = DiscreteMeasure::from_density(random_fn(sq, rng, 0.0, 2.0));
  const LinearReport rp = solve_linear(sq, pos);
  const Check full = check_interpolation(rp, pos, norms(rp.u).linf);
  CHECK(full.pass);
  CHECK(full.lhs == Approx(dirichlet_energy(rp.u)));
}

TEST_CASE("check_boundary_decay") {
  const Domain d = line4();
  const DiscreteMeasure mu = DiscreteMeasure::dirac(d, {0.5, 0, 0});
  const auto c = check_boundary_decay(solve_linear(d, mu), mu);
  REQUIRE(c.size() == 4);
  CHECK(c[0].lhs == Approx(0.0));
  CHECK(c[1].lhs == Approx(0.25));
  CHECK(c[2].lhs == Approx(0.125));
  CHECK(c[3].lhs == Approx(1.0 / 32));
  for (const Check& x : c) CHECK(x.pass);
  const DiscreteMeasure z(d);
  for (const Check& x : check_boundary_decay(solve_linear(d, z), z)) CHECK(x.lhs == 0.0);

  std::mt19937_64 rng(13);
  const Domain sq = Domain::unit_box(2, 1.0 / 16);
  const DiscreteMeasure s = DiscreteMeasure::from_density(random_fn(sq, rng));
  const GridFunction us = solve_linear(sq, s).u, ua = solve_linear(sq, s.abs()).u;
  for (double eps : {1.0 / 16, 1.0 / 8, 0.25}) CHECK(boundary_strip_ratio(us, s, eps) <= boundary_strip_ratio(ua, s, eps));
}

TEST_CASE("check_weak_max") {
  const Domain d = Domain::unit_box(2, 0.125);
  const DiscreteMeasure neg = DiscreteMeasure::dirac(d, {0.3, 0.6, 0}, -1.0);
  const LinearReport r = solve_linear(d, neg);
  const Check c = check_weak_max(r, neg);
  CHECK(c.pass);
  CHECK(c.lhs <= 0.0);
  for (double v : r.u.values()) CHECK(v <= 0.0);
  CHECK(check_weak_max(solve_linear(d, DiscreteMeasure(d)), DiscreteMeasure(d)).pass);
}

TEST_CASE("check_kato") {
  const Domain d = line4();
  const GridFunction u(d, {-0.25, 0.0, 0.25});
  const GridFunction f = -1.0 * laplacian_apply(u);
  CHECK(f[1] == Approx(0.0));
  const GridFunction dp = -1.0 * laplacian_apply(u.map([](double t) { return std::max(t, 0.0); }));
  CHECK(dp[1] == Approx(4.0));  // (1/4) / h^2 at the crossing node
  CHECK(check_kato(u, f).pass);

  const GridFunction zero(d);
  CHECK(check_kato(zero, zero).pass);
  CHECK_THROWS_AS(check_kato(u, f + GridFunction::constant(d, 1.0)), std::invalid_argument);

  std::mt19937_64 rng(14);
  const Domain sq = Domain::unit_box(2, 0.125);
  for (int k = 0; k < 50; ++k) {
    const GridFunction a = random_fn(sq, rng), b = random_fn(sq, rng);
    const GridFunction fa = -1.0 * laplacian_apply(a), fb = -1.0 * laplacian_apply(b);
    CHECK(check_kato(a, fa).pass);
    CHECK(check_kato(a, fa, b, fb).pass);
    CHECK(check_kato(a, fa, a, fa).pass);
  }
}

TEST_CASE("check_refinement") {
  CHECK(check_refinement("flat", {1.0, 1.1, 1.2}).pass);
  CHECK_FALSE(check_refinement("grows", {1.0, 2.0, 4.0}).pass);
  CHECK(check_refinement("zero", {0.0, 0.0}).pass);
}
