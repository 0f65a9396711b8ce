#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "emlab/semilinear.hpp"

using namespace emlab;
using doctest::Approx;

namespace {

Domain line4() { return Domain::unit_box(1, 0.25); }

GridFunction random_fn(const Domain& dom, std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(dom.size());
  for (double& x : v) x = d(rng);
  return GridFunction(dom, std::move(v));
}

double l1_diff(const GridFunction& a, const GridFunction& b) { return norms(a - b).l1; }

Nonlinearity wiggly() {
  Nonlinearity::Spec s;
  s.name = "t+2sin";
  s.g = [](double t) { return t + 2.0 * std::sin(t); };
  s.G = [](double t) { return 0.5 * t * t + 2.0 * (1.0 - std::cos(t)); };
  s.sign_condition = true;
  return Nonlinearity(s);
}

}  // namespace

TEST_CASE("energy") {
  const Domain d = line4();
  const DiscreteMeasure mu = DiscreteMeasure::dirac(d, {0.5, 0, 0});
  const SemilinearProblem p(d, Nonlinearity::zero(), mu);
  CHECK(energy(GridFunction(d), p) == 0.0);
  const GridFunction u(d, {0.125, 0.25, 0.125});
  CHECK(energy(u, p) == Approx(-0.125));

  std::mt19937_64 rng(21);
  const SemilinearProblem q(d, Nonlinearity::power(3), mu);
  for (int k = 0; k < 20; ++k) {
    const GridFunction v = random_fn(d, rng, -2, 2);
    CHECK(energy(v, q) >= -pairing(mu, v));
  }
  const SemilinearProblem e(d, Nonlinearity::exponential(), mu);
  CHECK(energy(GridFunction::constant(d, 800.0), e) == std::numeric_limits<double>::infinity());
}

TEST_CASE("problem validation") {
  const Domain d = line4();
  SolverKnobs k;
  k.theta = 0.0;
  CHECK_THROWS_AS(SemilinearProblem(d, Nonlinearity::zero(), DiscreteMeasure(d), k), std::invalid_argument);
  k.theta = 0.5;
  k.tol = -1.0;
  CHECK_THROWS_AS(SemilinearProblem(d, Nonlinearity::zero(), DiscreteMeasure(d), k), std::invalid_argument);
  const SemilinearProblem p(d, Nonlinearity::zero(), DiscreteMeasure::dirac(d, {0.5, 0, 0}, 2.0));
  CHECK(p.tolerance() == Approx(3e-8));
}

TEST_CASE("minimize_energy") {
  const Domain d = line4();
  const SolveTrace z = minimize_energy(SemilinearProblem(d, Nonlinearity::power(3), DiscreteMeasure(d)));
  CHECK(z.converged);
  for (double v : z.u.values()) CHECK(v == 0.0);

  // (L + I) u = 1 on three nodes: u = (49, 65, 49) / 577
  const SemilinearProblem lin(d, Nonlinearity::linear(), DiscreteMeasure::from_density(GridFunction::constant(d, 1.0)));
  const SolveTrace t = minimize_energy(lin);
  REQUIRE(t.converged);
  CHECK(t.u[0] == Approx(49.0 / 577));
  CHECK(t.u[1] == Approx(65.0 / 577));
  CHECK(t.u[2] == Approx(49.0 / 577));
  CHECK(t.residual <= lin.tolerance());

  // discrete local minimality under coordinate perturbations of size tol
  const double e0 = energy(t.u, lin);
  const double delta = lin.tolerance();
  for (std::size_t i = 0; i < d.size(); ++i)
    for (double s : {-1.0, 1.0}) {
      std::vector<double> v(t.u.values().begin(), t.u.values().end());
      v[i] += s * delta;
      CHECK(e0 <= energy(GridFunction(d, v), lin) + 64 * std::numeric_limits<double>::epsilon() * (1 + std::abs(e0)));
    }

  CHECK_THROWS_AS(minimize_energy(SemilinearProblem(d, Nonlinearity::linear(-1.0), DiscreteMeasure(d))),
                  std::invalid_argument);
}

TEST_CASE("sub_super_solve") {
  const Domain d = line4();
  const DiscreteMeasure one = DiscreteMeasure::from_density(GridFunction::constant(d, 1.0));
  const SemilinearProblem lin(d, Nonlinearity::linear(), one);
  const GridFunction ulin = solve_linear(d, one).u;
  const SolveTrace t = sub_super_solve(lin, GridFunction(d), ulin);
  REQUIRE(t.converged);
  CHECK(t.u[0] == Approx(49.0 / 577));
  CHECK(t.u[1] == Approx(65.0 / 577));

  // exact solution as both brackets: returned unchanged
  const SolveTrace again = sub_super_solve(lin, t.u, t.u);
  for (std::size_t i = 0; i < d.size(); ++i) CHECK(again.u[i] == t.u[i]);

  CHECK_THROWS_AS(sub_super_solve(lin, ulin, GridFunction(d)), std::invalid_argument);
  CHECK_THROWS_AS(sub_super_solve(lin, GridFunction(d), GridFunction::constant(d, 1e-3)), std::invalid_argument);

  // sign condition, mu >= 0: 0 and the linear solution bracket the solution
  const Domain sq = Domain::unit_box(2, 0.125);
  const DiscreteMeasure mu = DiscreteMeasure::dirac(sq, {0.5, 0.5, 0}, 3.0);
  const SemilinearProblem p(sq, Nonlinearity::power(3), mu);
  const SolveTrace s = sub_super_solve(p, GridFunction(sq), solve_linear(sq, mu).u);
  CHECK(s.converged);
  for (std::size_t i = 0; i < sq.size(); ++i) CHECK(s.u[i] >= 0.0);
  const auto [lo, hi] = default_brackets(sq, mu);
  CHECK(l1_diff(sub_super_solve(p, lo, hi).u, s.u) <= 10 * p.tolerance());
}

TEST_CASE("contraction_solve") {
  const Domain d = line4();
  const SolveTrace z = contraction_solve(SemilinearProblem(d, Nonlinearity::linear(), DiscreteMeasure(d)));
  for (double v : z.u.values()) CHECK(v == 0.0);
  const SolveTrace t = contraction_solve(
      SemilinearProblem(d, Nonlinearity::linear(), DiscreteMeasure::from_density(GridFunction::constant(d, 1.0))));
  REQUIRE(t.converged);
  CHECK(t.u[1] == Approx(65.0 / 577));
  for (std::size_t k = 2; k < t.rows.size(); ++k) CHECK(t.rows[k].residual <= t.rows[k - 1].residual);

  CHECK_THROWS_AS(contraction_solve(SemilinearProblem(d, wiggly(), DiscreteMeasure(d))), std::invalid_argument);

  std::mt19937_64 rng(22);
  const Domain sq = Domain::unit_box(2, 0.125);
  for (int k = 0; k < 5; ++k) {
    const DiscreteMeasure m = DiscreteMeasure::from_density(random_fn(sq, rng, -5, 5));
    const DiscreteMeasure n = DiscreteMeasure::from_density(random_fn(sq, rng, -5, 5));
    const SemilinearProblem pm(sq, Nonlinearity::power(3), m), pn(sq, Nonlinearity::power(3), n);
    const SolveTrace um = contraction_solve(pm), un = contraction_solve(pn);
    REQUIRE(um.converged);
    REQUIRE(un.converged);
    CHECK(norms(um.g_u - un.g_u).l1 <= (m - n).tv_norm() + pm.tolerance() + pn.tolerance());
  }
}

TEST_CASE("route agreement and comparison") {
  std::mt19937_64 rng(23);
  const Domain sq = Domain::centered_ball(2, 1.0, 0.125);
  const DiscreteMeasure mu = DiscreteMeasure::from_density(random_fn(sq, rng, -3, 3));
  const SemilinearProblem p(sq, Nonlinearity::power(3), mu);
  const SolveTrace a = minimize_energy(p), c = contraction_solve(p);
  const auto [lo, hi] = default_brackets(sq, mu);
  const SolveTrace b = sub_super_solve(p, lo, hi);
  REQUIRE(a.converged);
  REQUIRE(b.converged);
  REQUIRE(c.converged);
  CHECK(l1_diff(a.u, c.u) <= 10 * p.tolerance());
  CHECK(l1_diff(a.u, b.u) <= 10 * p.tolerance());

  // non-monotone g: both routes reach the residual, values need not agree
  const SemilinearProblem w(sq, wiggly(), mu);
  CHECK(minimize_energy(w).residual <= w.tolerance());
  CHECK(sub_super_solve(w, lo, hi).residual <= w.tolerance());

  const DiscreteMeasure pos = DiscreteMeasure::from_density(random_fn(sq, rng, 0, 3));
  const SolveTrace sp = minimize_energy(SemilinearProblem(sq, Nonlinearity::exponential(), pos));
  for (double v : sp.u.values()) CHECK(v >= -p.tolerance());
  const SolveTrace sn = minimize_energy(SemilinearProblem(sq, Nonlinearity::exponential(), pos.scaled(-1.0)));
  for (double v : sn.u.values()) CHECK(v <= p.tolerance());

  const DiscreteMeasure bigger = pos + DiscreteMeasure::from_density(random_fn(sq, rng, 0, 1));
  const SemilinearProblem p1(sq, Nonlinearity::power(2), pos), p2(sq, Nonlinearity::power(2), bigger);
  const GridFunction u1 = contraction_solve(p1).u, u2 = contraction_solve(p2).u;
  for (std::size_t i = 0; i < sq.size(); ++i) CHECK(u1[i] <= u2[i] + p1.tolerance());
}

TEST_CASE("check_absorption") {
  const Domain d = Domain::centered_ball(2, 1.0, 1.0 / 16);
  const DiscreteMeasure zero(d);
  const SolveTrace tz = minimize_energy(SemilinearProblem(d, Nonlinearity::exponential(), zero));
  CHECK(check_absorption(tz, zero).lhs == 0.0);

  const DiscreteMeasure mu = DiscreteMeasure::dirac(d, {0, 0, 0}, 0.5);
  const SolveTrace t = minimize_energy(SemilinearProblem(d, Nonlinearity::exponential(), mu));
  const Check c = check_absorption(t, mu);
  CHECK(c.pass);
  CHECK(c.lhs < c.rhs);

  std::mt19937_64 rng(24);
  const DiscreteMeasure s = DiscreteMeasure::from_density(random_fn(d, rng, -4, 4));
  const SolveTrace ts = minimize_energy(SemilinearProblem(d, Nonlinearity::power(2), s));
  CHECK(check_absorption(ts, s).pass);
  CHECK(check_subsolution_absorption(ts.u, Nonlinearity::power(2), s).pass);
}
