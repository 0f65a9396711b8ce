#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "emlab/grid_ops.hpp"
#include "emlab/measure_io.hpp"
#include "emlab/nonlinearity.hpp"

using namespace emlab;
using doctest::Approx;

namespace {

Domain line4() { return Domain::unit_box(1, 0.25); }

GridFunction random_fn(const Domain& dom, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> d(-scale, scale);
  std::vector<double> v(dom.size());
  for (double& x : v) x = d(rng);
  return GridFunction(dom, std::move(v));
}

}  // namespace

TEST_CASE("domain classification") {
  const Domain d = line4();
  CHECK(d.size() == 3);
  CHECK(d.points_per_axis(0) == 5);
  CHECK(d.coords(1)[0] == Approx(0.5));
  CHECK(d.neighbors(0)[0] == Domain::kBoundary);
  CHECK(d.neighbors(0)[1] == 1);

  const Domain sq = Domain::unit_box(2, 0.25);
  CHECK(sq.size() == 9);
  CHECK(sq.cell_volume() == Approx(1.0 / 16));

  const Domain ball = Domain::centered_ball(2, 1.0, 0.25);
  for (std::size_t i = 0; i < ball.size(); ++i) {
    const Point p = ball.coords(i);
    CHECK(p[0] * p[0] + p[1] * p[1] < 1.0);
  }
  CHECK(ball.nearest_node({0.0, 0.0, 0.0}) == ball.find({4, 4, 0}));

  CHECK_THROWS_AS(Domain(1, {{0, 1}}, 1.0), std::invalid_argument);   // 3 points needed
  CHECK_THROWS_AS(Domain(1, {{0, 1}}, 0.3), std::invalid_argument);   // not a multiple
  CHECK_THROWS_AS(Domain(4, {{0, 1}}, 0.25), std::invalid_argument);
  CHECK_THROWS_AS(Domain(1, {{0, 1}}, -0.25), std::invalid_argument);
}

TEST_CASE("nearest node ties go to the lower index") {
  const Domain d = line4();
  CHECK(d.nearest_node({0.375, 0, 0}) == 0);  // halfway between 1/4 and 1/2
  CHECK(d.nearest_node({0.376, 0, 0}) == 1);
  CHECK_THROWS_AS(d.nearest_node({1.0, 0, 0}), std::invalid_argument);
}

TEST_CASE("laplacian_apply") {
  const Domain d = line4();
  const GridFunction zero(d);
  for (double v : laplacian_apply(zero).values()) CHECK(v == 0.0);

  const GridFunction u(d, {0.125, 0.25, 0.125});
  const GridFunction f = laplacian_apply(u);
  CHECK(f[0] == Approx(0.0).epsilon(1e-14));
  CHECK(f[1] == Approx(4.0));
  CHECK(f[2] == Approx(0.0).epsilon(1e-14));
}

TEST_CASE("laplacian_apply second order on a smooth 2D sample") {
  auto err = [](double h) {
    const Domain d = Domain::unit_box(2, h);
    const auto u = GridFunction::sample(d, [](const Point& p) { return p[0] * (1 - p[0]) * p[1] * (1 - p[1]); });
    const GridFunction f = laplacian_apply(u);
    double e = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      const Point p = d.coords(i);
      e = std::max(e, std::abs(f[i] - 2.0 * (p[0] * (1 - p[0]) + p[1] * (1 - p[1]))));
    }
    return e;
  };
  // x(1-x) is quadratic, so the stencil is exact; the error is rounding only.
  CHECK(err(1.0 / 8) < 1e-10);
  CHECK(err(1.0 / 16) < 1e-9);
}

TEST_CASE("laplacian_apply is symmetric positive definite") {
  std::mt19937_64 rng(1);
  for (int dim = 1; dim <= 3; ++dim) {
    const Domain d = Domain::unit_box(dim, 0.25);
    for (int k = 0; k < 20; ++k) {
      const GridFunction u = random_fn(d, rng), v = random_fn(d, rng);
      CHECK(inner(laplacian_apply(u), v) == Approx(inner(u, laplacian_apply(v))).epsilon(1e-12));
      CHECK(inner(laplacian_apply(u), u) > 0.0);
    }
  }
}

TEST_CASE("integration by parts equals the Dirichlet energy") {
  std::mt19937_64 rng(2);
  for (int dim = 1; dim <= 3; ++dim) {
    const Domain d = dim == 2 ? Domain::centered_ball(2, 1.0, 0.125) : Domain::unit_box(dim, 0.125);
    const GridFunction u = random_fn(d, rng);
    CHECK(inner(laplacian_apply(u), u) == Approx(dirichlet_energy(u)).epsilon(1e-12));
  }
}

TEST_CASE("truncate") {
  const Domain d = line4();
  const GridFunction u(d, {-2.0, 0.5, 3.0});
  const GridFunction t = truncate(u, 1.0);
  CHECK(t[0] == -1.0);
  CHECK(t[1] == 0.5);
  CHECK(t[2] == 1.0);
  for (double v : truncate(GridFunction(d), 2.0).values()) CHECK(v == 0.0);
  CHECK_THROWS_AS(truncate(u, -1.0), std::invalid_argument);

  std::mt19937_64 rng(3);
  const GridFunction r = random_fn(Domain::unit_box(2, 0.125), rng, 5.0);
  const GridFunction once = truncate(r, 1.5);
  const GridFunction twice = truncate(once, 1.5);
  for (std::size_t i = 0; i < r.size(); ++i) CHECK(once[i] == twice[i]);
  for (double t : {0.0, 0.3, 1.0, 1.49}) CHECK(dist_fn(once, t) == dist_fn(r, t));
}

TEST_CASE("norms and dist_fn") {
  const Domain d = Domain::unit_box(2, 0.25);
  const Norms z = norms(GridFunction(d));
  CHECK(z.l1 == 0.0);
  CHECK(z.l2 == 0.0);
  CHECK(z.linf == 0.0);

  std::vector<double> ind(d.size(), 0.0);
  ind[0] = ind[4] = ind[8] = 1.0;
  const GridFunction u(d, ind);
  CHECK(dist_fn(u, 0.5) == Approx(3.0 / 16));
  CHECK(dist_fn(u, 1.0) == 0.0);
  const Norms n1 = norms(u), n2 = norms(2.0 * u);
  CHECK(n2.l1 == Approx(2 * n1.l1));
  CHECK(n2.l2 == Approx(2 * n1.l2));
  CHECK(n2.linf == Approx(2 * n1.linf));
}

TEST_CASE("project_measure") {
  const Domain d = line4();
  const GridFunction f = project_measure(DiscreteMeasure::dirac(d, {0.5, 0, 0}));
  CHECK(f[0] == 0.0);
  CHECK(f[1] == Approx(4.0));
  CHECK(f[2] == 0.0);
  for (double v : project_measure(DiscreteMeasure(d)).values()) CHECK(v == 0.0);

  const Domain sq = Domain::unit_box(2, 0.125);
  const DiscreteMeasure a = DiscreteMeasure::dirac(sq, {0.31, 0.62, 0});
  const GridFunction pa = project_measure(a), p2 = project_measure(a.scaled(2.0));
  for (std::size_t i = 0; i < sq.size(); ++i) CHECK(p2[i] == 2.0 * pa[i]);

  std::mt19937_64 rng(4);
  const DiscreteMeasure mixed(sq, {{{0.2, 0.3, 0}, 0.7}, {{0.9, 0.1, 0}, -1.3, true}}, random_fn(sq, rng));
  double mass = 0.0;
  for (double v : project_measure(mixed).values()) mass += v;
  CHECK(mass * sq.cell_volume() == Approx(mixed.total_mass()).epsilon(1e-13));
  CHECK_THROWS_AS(DiscreteMeasure::dirac(sq, {1.0, 0.5, 0}), std::invalid_argument);
}

TEST_CASE("measure parts and arithmetic") {
  const Domain d = Domain::unit_box(2, 0.25);
  const DiscreteMeasure mu(d, {{{0.5, 0.5, 0}, 2.0, true}, {{0.25, 0.25, 0}, -1.0}},
                           GridFunction::constant(d, 0.5));
  CHECK(mu.tv_norm() == Approx(3.0 + 9 * 0.5 / 16));
  CHECK(mu.concentrated_part().tv_norm() == Approx(2.0));
  CHECK((mu.diffuse_part() + mu.concentrated_part()).total_mass() == Approx(mu.total_mass()));
  CHECK((mu.positive_part() - mu.negative_part() - mu).is_zero());
  CHECK(mu.abs().tv_norm() == Approx(mu.tv_norm()));
  CHECK((mu - mu).atoms().empty());
}

TEST_CASE("mollify") {
  const Domain d = Domain::unit_box(2, 1.0 / 16);
  CHECK(mollify(DiscreteMeasure(d), 0.1).tv_norm() == 0.0);
  for (double eps : {1.0 / 16, 0.1, 0.2, 0.3}) {
    const DiscreteMeasure m = mollify(DiscreteMeasure::dirac(d, {0.4, 0.55, 0}), eps);
    CHECK(m.total_mass() == Approx(1.0).epsilon(1e-13));
    CHECK(m.atoms().empty());
  }
  const DiscreteMeasure dipole(d, {{{0.5, 0.5, 0}, 1.0}, {{0.5 + 1.0 / 16, 0.5, 0}, -1.0}});
  CHECK(mollify(dipole, 1.0 / 16).tv_norm() == Approx(2.0));
  CHECK(mollify(dipole, 0.25).tv_norm() < 2.0 - 1e-3);
  CHECK_THROWS_AS(mollify(dipole, 0.01), std::invalid_argument);

  // Pairing with a smooth function converges as eps shrinks.
  const auto zeta = GridFunction::sample(d, [](const Point& p) { return std::sin(3 * p[0]) * p[1]; });
  const DiscreteMeasure a = DiscreteMeasure::dirac(d, {0.5, 0.5, 0});
  const double exact = pairing(a, zeta);
  CHECK(std::abs(pairing(mollify(a, 0.1), zeta) - exact) < std::abs(pairing(mollify(a, 0.4), zeta) - exact));
}

TEST_CASE("measure_lattice") {
  const Domain d = Domain::unit_box(2, 0.25);
  const Point a{0.5, 0.5, 0};
  const DiscreteMeasure da = DiscreteMeasure::dirac(d, a);
  const DiscreteMeasure mx = measure_lattice(da, da.scaled(-1.0), LatticeOp::max);
  REQUIRE(mx.atoms().size() == 1);
  CHECK(mx.atoms()[0].weight == 1.0);

  std::mt19937_64 rng(5);
  const DiscreteMeasure mu(d, {{a, 1.5}, {{0.25, 0.75, 0}, -0.5, true}}, random_fn(d, rng));
  const DiscreteMeasure zero(d);
  const DiscreteMeasure same = measure_lattice(mu, mu, LatticeOp::max);
  CHECK((same - mu).is_zero());
  const DiscreteMeasure plus = measure_lattice(mu, zero, LatticeOp::max);
  const DiscreteMeasure minus = measure_lattice(mu, zero, LatticeOp::min);
  CHECK((plus + minus - mu).is_zero());
  CHECK((plus - mu + minus).is_zero());
  CHECK(plus.atoms().back().singular == false);
  CHECK(minus.atoms()[0].singular == true);
  CHECK_THROWS_AS(measure_lattice(mu, DiscreteMeasure(Domain::unit_box(2, 0.125)), LatticeOp::max),
                  std::invalid_argument);
}

TEST_CASE("nonlinearity flags and primitives") {
  for (const auto& g : {Nonlinearity::zero(), Nonlinearity::linear(), Nonlinearity::power(3), Nonlinearity::power(2),
                        Nonlinearity::exponential(), Nonlinearity::bounded_tanh()}) {
    CHECK(g.primitive(0.0) == 0.0);
    CHECK(g.sign_condition());
    for (double t : Nonlinearity::test_lattice()) CHECK(g(t) * t >= 0.0);
  }
  const Nonlinearity p2 = Nonlinearity::power(2);
  CHECK(p2(-3.0) == Approx(-9.0));
  CHECK(p2.primitive(-3.0) == Approx(9.0));

  const Nonlinearity c = Nonlinearity::power(3).capped(8.0);
  CHECK(c(3.0) == 8.0);
  CHECK(c.primitive(3.0) == Approx(4.0 + 8.0));  // 2^4/4 + 8 (3 - 2)
  CHECK(c.lipschitz(1.0, 5.0) == Approx(12.0));
  CHECK(c.lipschitz(2.5, 5.0) == 0.0);
  CHECK(Nonlinearity::exponential().capped(4.0).bounded());

  const Nonlinearity f = Nonlinearity::power(3).frozen(1.0);
  CHECK(f(2.0) == 1.0);
  CHECK(f.primitive(2.0) == Approx(0.25 + 1.0));

  Nonlinearity::Spec bad;
  bad.name = "bad";
  bad.g = [](double t) { return -t; };
  bad.G = [](double t) { return -0.5 * t * t; };
  bad.sign_condition = true;
  CHECK_THROWS_AS(Nonlinearity{bad}, std::invalid_argument);
  bad.sign_condition = false;
  bad.G = [](double t) { return t * t; };
  CHECK_THROWS_AS(Nonlinearity{bad}, std::invalid_argument);

  CHECK(parse_nonlinearity("power:3").exponent() == 3.0);
  CHECK_THROWS_AS(parse_nonlinearity("cubic"), std::invalid_argument);
}

TEST_CASE("measure text round trip") {
  std::istringstream in(
      "# comment\n2 1/8 0 1 0 1\natom 0.5 0.5 2 singular\natom 0.25 0.75 -1\n");
  const DiscreteMeasure mu = read_measure(in);
  CHECK(mu.domain().h() == 0.125);
  CHECK(mu.atoms().size() == 2);
  CHECK(mu.concentrated_part().total_mass() == 2.0);
  std::ostringstream out;
  write_measure(out, mu);
  std::istringstream back(out.str());
  const DiscreteMeasure again = read_measure(back);
  CHECK((again - mu).is_zero());

  std::istringstream dens("1 0.25 0 1\ndensity 1 2\n3\n");
  CHECK(read_measure(dens).density()[2] == 3.0);
  std::istringstream shortd("1 0.25 0 1\ndensity 1 2\n");
  CHECK_THROWS_AS(read_measure(shortd), std::invalid_argument);
  std::istringstream junk("1 0.25 0 1\nblob 1\n");
  CHECK_THROWS_AS(read_measure(junk), std::invalid_argument);
  CHECK(parse_real("2pi") == Approx(2 * M_PI));
  CHECK(parse_real("1/4") == 0.25);
}
