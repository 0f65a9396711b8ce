#include "acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "emlab/capacity.hpp"
#include "emlab/geom.hpp"
#include "emlab/reduced.hpp"
#include "emlab/semilinear.hpp"
#include "fixtures.hpp"

namespace emlab::cli {

namespace {

constexpr double kPi = std::numbers::pi;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string join(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : "/") + fmt(x);
  return s;
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t k = 1; k < v.size(); ++k)
    if (!(v[k] < v[k - 1])) return false;
  return true;
}

CriterionResult green_3d(const AcceptanceOptions&) {
  const auto t0 = Clock::now();
  std::vector<double> errs;
  for (double h : {1.0 / 8, 1.0 / 16, 1.0 / 32}) {
    const Domain d = Domain::centered_ball(3, 1.0, h);
    const LinearReport rep = solve_linear(d, DiscreteMeasure::dirac(d, {0, 0, 0}));
    const std::size_t origin = d.nearest_node({0, 0, 0});
    double err = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (i == origin) continue;
      const Point p = d.coords(i);
      const double g = (1.0 / std::hypot(p[0], p[1], p[2]) - 1.0) / (4 * kPi);
      err += std::abs(rep.u[i] - g);
      ref += std::abs(g);
    }
    errs.push_back(err / ref);
  }
  const double t = seconds_since(t0);
  CriterionResult r;
  r.pass = errs.back() <= 0.08 && strictly_decreasing(errs) && t <= 60.0;
  r.detail = "rel_l1=" + join(errs) + " bound=0.08 runtime_s=" + fmt(t);
  return r;
}

std::vector<ReducedResult> dirac_ladders(double p) {
  std::vector<ReducedResult> out;
  for (double h : {1.0 / 8, 1.0 / 16, 1.0 / 32}) {
    const Domain d = Domain::centered_ball(3, 1.0, h);
    out.push_back(reduced_measure(d, Nonlinearity::power(p), DiscreteMeasure::dirac(d, {0, 0, 0}, 1.0, true)));
  }
  return out;
}

CriterionResult supercritical(const AcceptanceOptions&) {
  const auto runs = dirac_ladders(3.0);
  std::vector<double> l1;
  for (const auto& r : runs) l1.push_back(norms(r.u_star).l1);
  const double tv_star = runs.back().mu_star.tv_norm();
  CriterionResult r;
  r.pass = strictly_decreasing(l1) && l1.back() <= 0.5 * l1.front() && tv_star <= 0.5;
  r.detail = "l1_u*=" + join(l1) + " last/first=" + fmt(l1.back() / l1.front()) + " tv_mu*=" + fmt(tv_star) +
             " tv_mu=1";
  return r;
}

CriterionResult subcritical(const AcceptanceOptions&) {
  const Domain d = Domain::centered_ball(3, 1.0, 1.0 / 32);
  const DiscreteMeasure mu = DiscreteMeasure::dirac(d, {0, 0, 0}, 1.0, true);
  const ReducedResult res = reduced_measure(d, Nonlinearity::power(2), mu);
  const double lost = (mu - res.mu_star).tv_norm();
  CriterionResult r;
  r.pass = lost <= 0.1 * mu.tv_norm();
  r.detail = "tv(mu-mu*)=" + fmt(lost) + " bound=" + fmt(0.1 * mu.tv_norm());
  return r;
}

CriterionResult exp_threshold(const AcceptanceOptions&) {
  auto t0 = Clock::now();
  const double i2pi = exponential_integral(2 * kPi, 1.0 / 128);
  const double t_single = seconds_since(t0);
  std::vector<double> masses;
  for (int k = 8; k <= 24; ++k) masses.push_back(k * kPi / 4);
  t0 = Clock::now();
  const ThresholdTable tab = threshold_scan_exponential(masses, {1.0 / 16, 1.0 / 32, 1.0 / 64, 1.0 / 128});
  const double t_scan = seconds_since(t0);
  const double rel = std::abs(i2pi - 2 * kPi) / (2 * kPi);
  CriterionResult r;
  r.pass = rel <= 0.1 && tab.critical >= 3.4 * kPi && tab.critical <= 4.6 * kPi && t_single <= 120 && t_scan <= 120;
  r.detail = "I(2pi,1/128)=" + fmt(i2pi) + " rel_err=" + fmt(rel) + " critical/pi=" + fmt(tab.critical / kPi) +
             " runtime_s=" + fmt(t_single) + "/" + fmt(t_scan);
  return r;
}

CriterionResult brezis_merle(const AcceptanceOptions&) {
  CriterionResult r;
  r.pass = true;
  for (double c : {kPi, 2 * kPi, 3 * kPi}) {
    const double bound = 1.1 * brezis_merle_bound(c, 2.0);
    double worst = 0.0;
    for (double h : {1.0 / 16, 1.0 / 32, 1.0 / 64, 1.0 / 128}) worst = std::max(worst, exponential_integral(c, h));
    r.pass = r.pass && worst <= bound;
    r.detail += "c/pi=" + fmt(c / kPi) + ":I=" + fmt(worst) + "<=" + fmt(bound) + " ";
  }
  r.detail += "d=2";
  return r;
}

CriterionResult kato(const AcceptanceOptions& o) {
  Rng rng = make_rng(o.seed, "acceptance/kato");
  Tally single("single"), pair("pair");
  const Domain doms[] = {Domain::unit_box(1, 1.0 / 16), Domain::unit_box(2, 0.125), Domain::unit_box(3, 0.25)};
  for (int k = 0; k < 1000; ++k) {
    const Domain& d = doms[k % 3];
    const GridFunction a = random_fn(d, rng, -1, 1), b = random_fn(d, rng, -1, 1);
    const GridFunction fa = -1.0 * laplacian_apply(a) - random_fn(d, rng, 0, 1);
    const GridFunction fb = -1.0 * laplacian_apply(b) - random_fn(d, rng, 0, 1);
    single.add(check_kato(a, fa));
    pair.add(check_kato(a, fa, b, fb));
  }
  CriterionResult r;
  r.pass = single.row().pass && pair.row().pass;
  r.detail = "instances=1000 worst_single=" + fmt(single.row().lhs) + " worst_pair=" + fmt(pair.row().lhs);
  return r;
}

CriterionResult interpolation(const AcceptanceOptions& o) {
  Rng rng = make_rng(o.seed, "acceptance/interpolation");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Tally t("interpolation");
  for (int k = 0; k < 200; ++k) {
    const Domain d = k % 2 ? Domain::unit_box(2, 1.0 / 16) : Domain::centered_ball(2, 1.0, 0.1);
    const DiscreteMeasure mu = random_measure(d, rng, -2, 2, 1 + k % 4);
    const LinearReport rep = solve_linear(d, mu);
    t.add(check_interpolation(rep, mu, 1.2 * unit(rng) * norms(rep.u).linf, 1e-12));
  }
  CriterionResult r;
  r.pass = t.row().pass;
  r.detail = "instances=200 worst_lhs-rhs=" + fmt(t.row().lhs) + " slack=1e-12";
  return r;
}

CriterionResult absorption(const AcceptanceOptions& o) {
  Rng rng = make_rng(o.seed, "acceptance/absorption");
  Tally t("absorption");
  int converged = 0, total = 0;
  const Domain disk = Domain::centered_ball(2, 1.0, 1.0 / 16);
  const Domain ball = Domain::centered_ball(3, 1.0, 0.125);
  for (const Nonlinearity& g : {Nonlinearity::power(2), Nonlinearity::power(3), Nonlinearity::exponential(),
                                Nonlinearity::bounded_tanh(), Nonlinearity::linear(2.0)}) {
    for (const Domain* d : {&disk, &ball}) {
      const DiscreteMeasure mu = random_measure(*d, rng, -3, 3, 2);
      const SemilinearProblem p(*d, g, mu);
      const auto [lo, hi] = default_brackets(*d, mu);
      for (const SolveTrace& tr : {minimize_energy(p), sub_super_solve(p, lo, hi), contraction_solve(p)}) {
        ++total;
        if (!tr.converged) continue;
        ++converged;
        t.add(check_absorption(tr, mu, 1e-6));
      }
    }
  }
  CriterionResult r;
  r.pass = converged > 0 && t.row().pass;
  r.detail = "converged=" + std::to_string(converged) + "/" + std::to_string(total) +
             " worst_lhs-rhs=" + fmt(t.row().lhs) + " slack=1e-6";
  return r;
}

CriterionResult contraction(const AcceptanceOptions& o) {
  Rng rng = make_rng(o.seed, "acceptance/contraction");
  Tally t("contraction");
  const Domain sq = Domain::unit_box(2, 0.125);
  const Nonlinearity gs[] = {Nonlinearity::power(3), Nonlinearity::exponential(), Nonlinearity::bounded_tanh()};
  for (int k = 0; k < 50; ++k) {
    const Nonlinearity& g = gs[k % 3];
    const DiscreteMeasure m = random_measure(sq, rng, -4, 4, 2), n = random_measure(sq, rng, -4, 4, 2);
    const SemilinearProblem pm(sq, g, m), pn(sq, g, n);
    const SolveTrace um = contraction_solve(pm), un = contraction_solve(pn);
    const double tol = std::max(pm.tolerance(), pn.tolerance());
    const double lhs = norms(um.g_u - un.g_u).l1, rhs = (m - n).tv_norm() + 2 * tol;
    t.add(lhs, rhs, um.converged && un.converged && lhs <= rhs);
  }
  CriterionResult r;
  r.pass = t.row().pass;
  r.detail = "pairs=50 worst_lhs-rhs=" + fmt(t.row().lhs);
  return r;
}

CriterionResult hausdorff_balls(const AcceptanceOptions& o) {
  Rng rng = make_rng(o.seed, "acceptance/balls");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (double s : {0.0, 0.5, 1.0, 1.5, 2.0, 3.0}) {
    const double rad = 0.01 + unit(rng);
    const double want = omega(s) * std::pow(rad, s);
    const double v = hausdorff_outer(PointSet{3, {{unit(rng), unit(rng), unit(rng)}}, rad}, s, rad);
    worst = std::max(worst, std::abs(v - want) / want);
  }
  const PointSet three{2, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, 0.0};
  const double count = hausdorff_outer(three, 0.0, 0.1);
  const double len = 1.0;
  const int n = 33;
  PointSet seg{2, {}, len / (2 * (n - 1))};
  for (int k = 0; k < n; ++k) seg.points.push_back({len * k / (n - 1), 0, 0});
  const double segv = hausdorff_outer(seg, 1.0, kInfDelta, CoverMode::greedy);
  CriterionResult r;
  r.pass = worst <= 2 * std::numeric_limits<double>::epsilon() && count == 3.0 && std::abs(segv - len) <= 0.05 * len;
  r.detail = "ball_rel_err=" + fmt(worst) + " H0(3pts)=" + fmt(count) + " segment_H1=" + fmt(segv) + " L=1";
  return r;
}

CriterionResult frostman(const AcceptanceOptions& o) {
  Rng rng = make_rng(o.seed, "acceptance/frostman");
  std::uniform_int_distribution<int> count(1, 8);
  int agree = 0, holds = 0;
  for (int t = 0; t < 100; ++t) {
    const PointMeasure nu = random_point_measure(rng, count(rng), 2, 0.05, 0.6);
    const double s = t % 2 ? 0.0 : 1.0;
    const double alpha = s == 0.0 ? 1.5 : 3.0;
    const double delta = t % 3 == 0 ? kInfDelta : 0.3;
    const bool f = frostman_check(nu, alpha, s, delta);
    agree += f == frostman_by_subsets(nu, alpha, s, delta);
    holds += f;
  }
  CriterionResult r;
  r.pass = agree == 100;
  r.detail = "agree=" + std::to_string(agree) + "/100 holds=" + std::to_string(holds);
  return r;
}

CriterionResult decomposition(const AcceptanceOptions& o) {
  Rng rng = make_rng(o.seed, "acceptance/decompose");
  std::uniform_int_distribution<int> count(1, 12);
  Tally kept("kept"), removed("removed");
  int nonempty_removal = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = count(rng);
    const PointMeasure mu = random_point_measure(rng, n, 2, 0.05, 1.0);
    const SetOracle tt = hausdorff_oracle(mu, 0.8, t % 2 ? 0.0 : 1.0, t % 3 ? 0.25 : kInfDelta);
    std::uint32_t e = 0;
    for (std::size_t k : greedy_decompose(mu, tt)) e |= 1u << k;
    for (std::uint32_t f = e; f; f = (f - 1) & e) kept.add(make_check("", mu.mass(f), tt(f), 1e-12));
    const std::uint32_t rest = ((1u << n) - 1) & ~e;
    nonempty_removal += rest != 0;
    removed.add(make_check("", tt(rest), mu.mass(rest), 1e-12));
  }
  CriterionResult r;
  r.pass = kept.row().pass && removed.row().pass;
  r.detail = "instances=100 nonempty_removals=" + std::to_string(nonempty_removal) +
             " worst_kept=" + fmt(kept.row().lhs) + " worst_removed=" + fmt(removed.row().lhs);
  return r;
}

CriterionResult blop(const AcceptanceOptions&) {
  const double alpha = 0.7, s = 1.0, d = 1.0;
  const double log_c = std::log(blop_constant(RadialProfile::cut_power(alpha, s, 0.1, d), s));
  bool ok = true;
  double worst_lhs = 0.0, max_gap = 0.0;
  for (double eps : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
    const Check c = blop_1d_check(RadialProfile::cut_power(alpha, s, eps, d), alpha, s);
    const double exact = alpha * std::log(d / eps);
    worst_lhs = std::max(worst_lhs, std::abs(c.lhs - exact) / exact);
    max_gap = std::max(max_gap, c.rhs - c.lhs);
    ok = ok && c.pass;
  }
  CriterionResult r;
  r.pass = ok && worst_lhs <= 1e-13 && max_gap <= log_c;
  r.detail = "lhs_rel_err=" + fmt(worst_lhs) + " max(rhs-lhs)=" + fmt(max_gap) + " logC=" + fmt(log_c);
  return r;
}

CriterionResult capacity(const AcceptanceOptions&) {
  const Domain d = Domain::unit_box(2, 1.0 / 32);
  const Point c = d.center();
  CriterionResult r;
  r.pass = true;
  for (int rad : {0, 1}) {
    const double e = rad * d.h() + 1e-9;
    const CapacityResult res = capacitary_potential(d, nodes_in_box(d, {c[0] - e, c[1] - e, 0}, {c[0] + e, c[1] + e, 0}));
    r.pass = r.pass && res.K.size() == (rad ? 9u : 1u);
    for (double eps : {0.1, 0.25, 0.5}) {
      const Check ch = cap_equivalence_check(res, eps, 0.2);
      r.pass = r.pass && ch.pass;
      r.detail += std::string(rad ? "block" : "node") + "@" + fmt(eps) + ":" + fmt(ch.lhs / res.cap) + " ";
    }
  }
  r.detail += "(mass/cap, target 2 +- 0.2)";
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return {};
  return std::string(std::istreambuf_iterator<char>(in), {});
}

CriterionResult determinism(const AcceptanceOptions& o) {
  CriterionResult r;
  if (o.tool_path.empty()) {
    r.detail = "no emlab executable configured";
    return r;
  }
  std::vector<std::string> outputs;
  std::vector<int> codes;
  for (int run = 0; run < 2; ++run) {
    const std::filesystem::path dir = std::filesystem::path(o.work_dir) / ("determinism_run" + std::to_string(run));
    std::filesystem::remove_all(dir);
    const std::string cmd = "\"" + o.tool_path + "\" suite all --seed 7 --out \"" + dir.string() + "\" > \"" +
                            (dir.string() + ".log") + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    codes.push_back(status);
    outputs.push_back(slurp(dir / "suite.csv"));
  }
  r.pass = !outputs[0].empty() && outputs[0] == outputs[1];
  r.detail = "bytes=" + std::to_string(outputs[0].size()) + "/" + std::to_string(outputs[1].size()) +
             " identical=" + (outputs[0] == outputs[1] ? "yes" : "no") + " status=" + std::to_string(codes[0]) + "/" +
             std::to_string(codes[1]);
  return r;
}

}  // namespace

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> c{
      {1, "green_3d", green_3d},
      {2, "supercritical_collapse", supercritical},
      {3, "subcritical_persistence", subcritical},
      {4, "exponential_threshold", exp_threshold},
      {5, "brezis_merle_bound", brezis_merle},
      {6, "kato_inequalities", kato},
      {7, "interpolation_inequality", interpolation},
      {8, "absorption", absorption},
      {9, "contraction", contraction},
      {10, "hausdorff_balls", hausdorff_balls},
      {11, "frostman_equivalence", frostman},
      {12, "greedy_decomposition", decomposition},
      {13, "blop_1d", blop},
      {14, "capacity_equivalence", capacity},
      {15, "determinism", determinism},
  };
  return c;
}

CriterionResult run_criterion(int id, const AcceptanceOptions& opts) {
  for (const Criterion& c : criteria()) {
    if (c.id != id) continue;
    const auto t0 = Clock::now();
    CriterionResult r;
    try {
      r = c.run(opts);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.id = c.id;
    r.name = c.name;
    r.seconds = seconds_since(t0);
    return r;
  }
  throw std::out_of_range("no criterion " + std::to_string(id));
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.pass ? "PASS " : "FAIL ") << r.id << ' ' << r.name << " (" << fmt(std::round(r.seconds * 100) / 100)
     << "s) " << r.detail;
  return os.str();
}

}  // namespace emlab::cli
