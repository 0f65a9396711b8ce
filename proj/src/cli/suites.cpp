#include "suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "config.hpp"
#include "emlab/capacity.hpp"
#include "emlab/geom.hpp"
#include "emlab/reduced.hpp"
#include "emlab/semilinear.hpp"
#include "fixtures.hpp"
#include "parallel.hpp"

namespace emlab::cli {

namespace {

constexpr double kPi = std::numbers::pi;
// offset added to one exact comparison under --inject-fault
constexpr double kFault = 1e-3;

double max_diff(const GridFunction& a, const GridFunction& b) {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, a[i] - b[i]);
  return a.size() ? m : 0.0;
}

std::vector<Check> linear_suite(const SuiteOptions& o) {
  Rng rng = make_rng(o.seed, "linear");
  std::vector<Check> out;

  {
    const Domain d = Domain::unit_box(1, 0.25);
    const GridFunction u = solve_linear(d, DiscreteMeasure::dirac(d, {0.5, 0, 0})).u;
    const double want[] = {0.125, 0.25, 0.125};
    double err = 0.0;
    for (std::size_t i = 0; i < 3; ++i) err = std::max(err, std::abs(u[i] + (o.inject_fault && i == 1 ? kFault : 0.0) - want[i]));
    out.push_back(make_check("dirac_1d_exact", err, 1e-12));
  }

  Tally single("kato_single"), pair("kato_pair");
  const Domain sq8 = Domain::unit_box(2, 0.125);
  for (int k = 0; k < 200; ++k) {
    const GridFunction a = random_fn(sq8, rng, -1, 1), b = random_fn(sq8, rng, -1, 1);
    const GridFunction fa = -1.0 * laplacian_apply(a) - random_fn(sq8, rng, 0, 1);
    const GridFunction fb = -1.0 * laplacian_apply(b) - random_fn(sq8, rng, 0, 1);
    single.add(check_kato(a, fa));
    pair.add(check_kato(a, fa, b, fb));
  }
  out.push_back(single.row());
  out.push_back(pair.row());

  const Domain sq16 = Domain::unit_box(2, 1.0 / 16);
  Tally interp("interpolation"), lin("linearity"), cmp("comparison"), wmax("weak_max");
  std::uniform_real_distribution<double> unit(0.0, 1.0), coef(-2.0, 2.0);
  for (int k = 0; k < 40; ++k) {
    const DiscreteMeasure mu = random_measure(sq16, rng, -2, 2, 3);
    const LinearReport rep = solve_linear(sq16, mu);
    interp.add(check_interpolation(rep, mu, 1.2 * unit(rng) * norms(rep.u).linf));
  }
  for (int k = 0; k < 10; ++k) {
    const DiscreteMeasure mu = random_measure(sq16, rng, -2, 2, 2), nu = random_measure(sq16, rng, -2, 2, 2);
    const double a = coef(rng), b = coef(rng);
    const GridFunction um = solve_linear(sq16, mu).u, un = solve_linear(sq16, nu).u;
    const GridFunction uab = solve_linear(sq16, mu.scaled(a) + nu.scaled(b)).u;
    const double err = norms(uab - (a * um + b * un)).linf;
    const double tol = 1e-9 * std::max(1.0, norms(uab).linf);
    lin.add(err, tol, err <= tol);

    const DiscreteMeasure bigger = mu + DiscreteMeasure::from_density(random_fn(sq16, rng, 0, 1));
    const double viol = max_diff(um, solve_linear(sq16, bigger).u);
    const double ctol = 1e-12 * std::max(1.0, norms(um).linf);
    cmp.add(viol, ctol, viol <= ctol);

    const DiscreteMeasure neg = random_measure(sq16, rng, -2, 0, 2);
    wmax.add(check_weak_max(solve_linear(sq16, neg), neg));
  }
  for (const Tally* t : {&interp, &lin, &cmp, &wmax}) out.push_back(t->row());

  std::vector<double> q1, q12;
  Tally decay("boundary_decay");
  for (double h : {1.0 / 16, 1.0 / 32, 1.0 / 64}) {
    const Domain d = Domain::unit_box(2, h);
    const DiscreteMeasure mu = DiscreteMeasure::dirac(d, d.center());
    const LinearReport rep = solve_linear(d, mu);
    q1.push_back(gradient_ratio(rep, mu, 1.0));
    q12.push_back(gradient_ratio(rep, mu, 1.2));
    for (const Check& c : check_boundary_decay(rep, mu)) decay.add(c);
  }
  out.push_back(check_refinement("gradient_q1_refinement", q1));
  out.push_back(check_refinement("gradient_q1.2_refinement", q12));
  out.push_back(decay.row());
  return out;
}

std::vector<Check> semilinear_suite(const SuiteOptions& o) {
  Rng rng = make_rng(o.seed, "semilinear");
  std::vector<Check> out;

  {
    const Domain d = Domain::unit_box(1, 0.25);
    const SemilinearProblem p(d, Nonlinearity::linear(), DiscreteMeasure::from_density(GridFunction::constant(d, 1.0)));
    const SolveTrace t = contraction_solve(p);
    const double err = std::abs(t.u[1] + (o.inject_fault ? kFault : 0.0) - 65.0 / 577);
    out.push_back(make_check("linear_1d_exact", err, 10 * p.tolerance()));
  }

  Tally absorb("absorption"), conv("routes_converged"), agree("route_agreement");
  const Domain disk = Domain::centered_ball(2, 1.0, 1.0 / 16);
  const std::vector<Nonlinearity> gs{Nonlinearity::power(2), Nonlinearity::power(3), Nonlinearity::exponential(),
                                     Nonlinearity::bounded_tanh()};
  for (const Nonlinearity& g : gs) {
    for (int k = 0; k < 2; ++k) {
      const DiscreteMeasure mu = random_measure(disk, rng, -3, 3, 2);
      const SemilinearProblem p(disk, g, mu);
      const auto [lo, hi] = default_brackets(disk, mu);
      const SolveTrace a = minimize_energy(p), b = sub_super_solve(p, lo, hi), c = contraction_solve(p);
      for (const SolveTrace* t : {&a, &b, &c}) {
        conv.add(t->converged ? 0.0 : 1.0, 0.0, t->converged);
        if (t->converged) absorb.add(check_absorption(*t, mu));
      }
      const double d = std::max(norms(a.u - c.u).l1, norms(b.u - c.u).l1);
      agree.add(d, 10 * p.tolerance(), d <= 10 * p.tolerance());
    }
  }
  out.push_back(absorb.row());
  out.push_back(conv.row());
  out.push_back(agree.row());

  Tally contr("contraction");
  const Domain sq = Domain::unit_box(2, 0.125);
  for (int k = 0; k < 10; ++k) {
    const DiscreteMeasure m = random_measure(sq, rng, -5, 5, 2), n = random_measure(sq, rng, -5, 5, 2);
    const SemilinearProblem pm(sq, Nonlinearity::power(3), m), pn(sq, Nonlinearity::power(3), n);
    const SolveTrace um = contraction_solve(pm), un = contraction_solve(pn);
    const double lhs = norms(um.g_u - un.g_u).l1;
    const double rhs = (m - n).tv_norm() + pm.tolerance() + pn.tolerance();
    contr.add(lhs, rhs, um.converged && un.converged && lhs <= rhs);
  }
  out.push_back(contr.row());
  return out;
}

std::vector<Check> reduced_suite(const SuiteOptions& o) {
  Rng rng = make_rng(o.seed, "reduced");
  std::vector<Check> out;
  const Domain disk = Domain::centered_ball(2, 1.0, 1.0 / 16);
  const DiscreteMeasure dirac = DiscreteMeasure::dirac(disk, {0, 0, 0}, 1.0, true);

  {
    const ReducedResult r = reduced_measure(disk, Nonlinearity::bounded_tanh(), dirac);
    out.push_back(make_check("bounded_g_keeps_all", r.gamma.tv_norm() + (o.inject_fault ? kFault : 0.0), r.tol));
  }
  {
    const DiscreteMeasure pos = DiscreteMeasure::from_density(random_fn(disk, rng, 0, 5));
    const ReducedResult r = reduced_measure(disk, Nonlinearity::power(3), pos);
    out.push_back(Check{"diffuse_good", (pos - r.mu_star).tv_norm(), r.tol, good_measure_test(r, pos)});
  }
  {
    const ReducedResult r = reduced_measure(disk, Nonlinearity::power(3), dirac);
    double worst = 0.0;
    for (std::size_t k = 1; k < r.levels.size(); ++k)
      worst = std::max(worst, max_diff(r.levels[k].u, r.levels[k - 1].u));
    out.push_back(make_check("ladder_nonincreasing", worst, 10 * r.tol));
  }
  {
    const DiscreteMeasure m1 = DiscreteMeasure::from_density(random_fn(disk, rng, -3, 3));
    const DiscreteMeasure m2 = DiscreteMeasure::from_density(random_fn(disk, rng, -3, 3));
    Check c = lattice_corollaries(disk, Nonlinearity::power(2), m1, m2);
    c.name = "lattice_corollaries";
    out.push_back(c);
  }
  {
    const Domain ball = Domain::centered_ball(3, 1.0, 0.125);
    const DiscreteMeasure mu = DiscreteMeasure::dirac(ball, {0, 0, 0}, 1.0, true);
    const ReducedResult r = reduced_measure(ball, Nonlinearity::power(2), mu);
    out.push_back(make_check("subcritical_persistence", r.gamma.tv_norm(), 0.1 * mu.tv_norm()));
  }
  for (double c : {kPi, 2 * kPi, 3 * kPi}) {
    const double i = exponential_integral(c, 1.0 / 32);
    out.push_back(make_check("brezis_merle_" + fmt(c / kPi) + "pi", i, 1.1 * brezis_merle_bound(c, 2.0)));
  }
  return out;
}

std::vector<Check> geom_suite(const SuiteOptions& o) {
  Rng rng = make_rng(o.seed, "geom");
  std::vector<Check> out;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> count(2, 8);

  Tally balls("single_ball_exact");
  for (double s : {0.0, 0.5, 1.0, 2.0, 3.0}) {
    const double r = 0.05 + 0.4 * unit(rng);
    const PointSet b{3, {{unit(rng), unit(rng), unit(rng)}}, r};
    const double want = omega(s) * std::pow(r, s);
    const double err = std::abs(hausdorff_outer(b, s, r) + (o.inject_fault ? kFault : 0.0) - want);
    balls.add(err, 4 * std::numeric_limits<double>::epsilon() * want, err <= 4 * std::numeric_limits<double>::epsilon() * want);
  }
  out.push_back(balls.row());

  const PointSet three{2, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, 0.0};
  out.push_back(Check{"counting_three", hausdorff_outer(three, 0.0, 0.4), 3.0, hausdorff_outer(three, 0.0, 0.4) == 3.0});

  {
    const double len = 1.0;
    const int n = 33;
    PointSet seg{2, {}, len / (2 * (n - 1))};
    for (int k = 0; k < n; ++k) seg.points.push_back({len * k / (n - 1), 0, 0});
    const double v = hausdorff_outer(seg, 1.0, kInfDelta, CoverMode::greedy);
    out.push_back(make_check("segment_length", std::abs(v - len), 0.05 * len));
  }

  Tally frost("frostman_equivalence");
  for (int t = 0; t < 30; ++t) {
    const PointMeasure nu = random_point_measure(rng, count(rng), 2, 0.05, 0.6);
    const double s = t % 2 ? 0.0 : 1.0;
    const double alpha = s == 0.0 ? 1.5 : 3.0;
    const double delta = t % 3 == 0 ? kInfDelta : 0.3;
    const bool same = frostman_check(nu, alpha, s, delta) == frostman_by_subsets(nu, alpha, s, delta);
    frost.add(same ? 0.0 : 1.0, 0.0, same);
  }
  out.push_back(frost.row());

  Tally kept_le("decompose_kept_below"), removed_ge("decompose_removed_above");
  std::uniform_int_distribution<int> big(2, 10);
  for (int t = 0; t < 20; ++t) {
    const int n = big(rng);
    const PointMeasure mu = random_point_measure(rng, n, 2, 0.05, 1.0);
    const SetOracle tt = hausdorff_oracle(mu, 0.8, t % 2 ? 0.0 : 1.0, 0.25);
    std::uint32_t e = 0;
    for (std::size_t k : greedy_decompose(mu, tt)) e |= 1u << k;
    double worst = -std::numeric_limits<double>::infinity();
    for (std::uint32_t f = e; f; f = (f - 1) & e) worst = std::max(worst, mu.mass(f) - tt(f));
    if (e) kept_le.add(worst, 1e-12, worst <= 1e-12);
    const std::uint32_t rest = ((1u << n) - 1) & ~e;
    const double gap = tt(rest) - mu.mass(rest);
    removed_ge.add(gap, 1e-12, gap <= 1e-12);
  }
  out.push_back(kept_le.row());
  out.push_back(removed_ge.row());

  Tally blop("blop_cut_power");
  const double alpha = 0.7, s = 1.0, d = 1.0;
  const double log_c = std::log(blop_constant(RadialProfile::cut_power(alpha, s, 0.1, d), s));
  for (double eps : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
    const Check c = blop_1d_check(RadialProfile::cut_power(alpha, s, eps, d), alpha, s);
    const double exact = alpha * std::log(d / eps);
    blop.add(c.rhs - c.lhs, log_c, c.pass && std::abs(c.lhs - exact) <= 1e-13 * exact && c.rhs - c.lhs <= log_c);
  }
  out.push_back(blop.row());

  Tally pot("potential_radial_vs_kernel");
  for (int t = 0; t < 10; ++t) {
    const PointMeasure mu = random_point_measure(rng, 3, 2 + t % 2, 0.1, 1.0);
    Point x{0, 0, 0};
    for (int a = 0; a < mu.dim; ++a) x[a] = unit(rng);
    const double diff = std::abs(radial_potential(mu, x, 2.0) - kernel_potential(mu, x, 2.0));
    pot.add(diff, 1e-10, diff <= 1e-10);
  }
  out.push_back(pot.row());
  return out;
}

std::vector<Check> capacity_suite(const SuiteOptions& o) {
  Rng rng = make_rng(o.seed, "capacity");
  std::vector<Check> out;
  {
    const Domain d = Domain::unit_box(2, 0.25);
    std::vector<std::size_t> all(d.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    const double cap = capacitary_potential(d, all).cap + (o.inject_fault ? kFault : 0.0);
    out.push_back(make_check("all_nodes_3x3", std::abs(cap - 12.0), 1e-12));
  }

  Tally mono("monotone"), sub("subadditive"), gauss("gauss_identity"), range("potential_range");
  const Domain d = Domain::unit_box(2, 1.0 / 16);
  std::uniform_int_distribution<std::size_t> pick(0, d.size() - 1);
  for (int t = 0; t < 10; ++t) {
    std::vector<std::size_t> k1, k2;
    for (int j = 0; j < 5; ++j) k1.push_back(pick(rng));
    for (int j = 0; j < 5; ++j) k2.push_back(pick(rng));
    std::vector<std::size_t> both = k1;
    both.insert(both.end(), k2.begin(), k2.end());
    const CapacityResult a = capacitary_potential(d, k1), b = capacitary_potential(d, k2),
                         ab = capacitary_potential(d, both);
    mono.add(make_check("", a.cap, ab.cap, 1e-12));
    sub.add(make_check("", ab.cap, a.cap + b.cap, 1e-12));
    const double g = std::abs(ab.nu.total_mass() - ab.cap);
    gauss.add(g, 1e-9 * ab.cap, g <= 1e-9 * ab.cap && ab.nu.is_nonnegative());
    const Norms n = norms(ab.u);
    double lo = 0.0;
    for (double v : ab.u.values()) lo = std::min(lo, v);
    range.add(n.linf - 1.0, 0.0, n.linf <= 1.0 && lo >= 0.0);
  }
  for (const Tally* t : {&mono, &sub, &gauss, &range}) out.push_back(t->row());

  const Domain d32 = Domain::unit_box(2, 1.0 / 32);
  const Point c = d32.center();
  for (int rad : {0, 1}) {
    const double r = rad * d32.h() + 1e-9;
    const CapacityResult res = capacitary_potential(d32, nodes_in_box(d32, {c[0] - r, c[1] - r, 0}, {c[0] + r, c[1] + r, 0}));
    for (double eps : {0.1, 0.25, 0.5}) {
      Check ch = cap_equivalence_check(res, eps);
      ch.name = "cap_equivalence_" + std::string(rad ? "block" : "node") + "_eps" + fmt(eps);
      out.push_back(ch);
    }
  }

  const std::vector<double> ss{0.05, 0.1, 0.2, 0.3, 0.4};
  std::vector<std::vector<LevelRow>> tables;
  for (double h : {1.0 / 16, 1.0 / 32}) {
    const Domain dh = Domain::unit_box(2, h);
    const DiscreteMeasure mu = DiscreteMeasure::dirac(dh, dh.center());
    tables.push_back(capacitary_level_estimate(solve_linear(dh, mu).u, mu, ss));
  }
  out.push_back(check_level_refinement(tables));
  return out;
}

using SuiteFn = std::vector<Check> (*)(const SuiteOptions&);

SuiteFn suite_fn(const std::string& name) {
  if (name == "linear") return linear_suite;
  if (name == "semilinear") return semilinear_suite;
  if (name == "reduced") return reduced_suite;
  if (name == "geom") return geom_suite;
  if (name == "capacity") return capacity_suite;
  throw ConfigError("unknown suite '" + name + "' (linear|semilinear|reduced|geom|capacity|all)");
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> n{"linear", "semilinear", "reduced", "geom", "capacity"};
  return n;
}

std::vector<Check> run_suite(const std::string& name, const SuiteOptions& opts) {
  const std::vector<std::string> names = name == "all" ? suite_names() : std::vector<std::string>{name};
  std::vector<SuiteFn> fns;
  for (const std::string& n : names) fns.push_back(suite_fn(n));
  const auto parts = parallel_map<std::vector<Check>>(fns.size(), opts.jobs, [&](std::size_t i) {
    std::vector<Check> rows = fns[i](opts);
    for (Check& c : rows) c.name = names[i] + "/" + c.name;
    return rows;
  });
  std::vector<Check> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace emlab::cli
