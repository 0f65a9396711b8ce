#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>

#include "acceptance.hpp"
#include "emlab/capacity.hpp"
#include "emlab/geom.hpp"
#include "emlab/measure_io.hpp"
#include "emlab/reduced.hpp"
#include "emlab/semilinear.hpp"
#include "parallel.hpp"
#include "suites.hpp"

namespace emlab::cli {

namespace {

constexpr double kPi = std::numbers::pi;

std::ostream& log_of(const RunOptions& o) {
  static std::ofstream null;
  return o.log ? *o.log : null;
}

std::ofstream open_csv(const RunOptions& o, const std::string& name) {
  std::filesystem::create_directories(o.out_dir);
  const auto path = std::filesystem::path(o.out_dir) / name;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path.string());
  return f;
}

void write_checks(const RunOptions& o, const std::vector<Check>& checks) {
  std::ofstream f = open_csv(o, "checks.csv");
  write_checks_csv(f, checks);
}

std::string tag(const std::string& name, double h) { return name + "[h=" + fmt(h) + "]"; }

std::set<std::string> merge(std::initializer_list<std::set<std::string>> parts) {
  std::set<std::string> out;
  for (const auto& p : parts) out.insert(p.begin(), p.end());
  return out;
}

// Domain and measure; a measure_file carries its own grid.
std::pair<Domain, DiscreteMeasure> setup(const Config& c, std::optional<double> h) {
  if (c.has("measure_file")) {
    if (h) throw ConfigError("config: measure_file fixes the grid; drop 'h'/'hs'");
    std::filesystem::path p = c.str("measure_file");
    if (p.is_relative()) p = std::filesystem::path(c.base_dir) / p;
    try {
      DiscreteMeasure mu = read_measure_file(p.string());
      return {mu.domain(), mu};
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
  }
  if (!h) throw ConfigError("config: need 'h' or 'hs'");
  Domain d = domain_from(c, *h);
  return {d, measure_from(c, d)};
}

std::vector<std::optional<double>> grid_list(const Config& c) {
  std::vector<std::optional<double>> out;
  if (c.has("measure_file") && !c.has("h") && !c.has("hs")) return {std::nullopt};
  for (double h : grid_sizes(c)) out.push_back(h);
  return out;
}

// ---- solve-linear ----

std::vector<Check> solve_linear_cmd(const Config& c, const RunOptions& o) {
  std::vector<Check> checks;
  std::vector<double> q1;
  const auto grids = grid_list(c);
  for (std::size_t k = 0; k < grids.size(); ++k) {
    const auto [dom, mu] = setup(c, grids[k]);
    const LinearReport rep = solve_linear(dom, mu);
    const double h = dom.h();
    const double scale = std::max(1.0, norms(project_measure(mu)).linf);
    checks.push_back(make_check(tag("residual_linf", h), rep.residual_linf, 1e-8 * scale));
    for (Check ch : rep.estimates) {
      ch.name = tag(ch.name, h);
      checks.push_back(ch);
    }
    Check wm = check_weak_max(rep, mu, 1e-12 * std::max(1.0, norms(rep.u).linf));
    wm.name = tag(wm.name, h);
    checks.push_back(wm);
    Check it = check_interpolation(rep, mu, c.real("kappa", norms(rep.u).linf));
    it.name = tag(it.name, h);
    checks.push_back(it);
    for (Check ch : check_boundary_decay(rep, mu)) {
      ch.name = tag(ch.name, h);
      checks.push_back(ch);
    }
    if (dom.dim() == 3)
      for (Check ch : check_weak_lp(rep, mu)) {
        ch.name = tag(ch.name, h);
        checks.push_back(ch);
      }
    q1.push_back(gradient_ratio(rep, mu, 1.0));
    if (k + 1 == grids.size()) {
      std::ofstream f = open_csv(o, "u.csv");
      write_grid_csv(f, rep.u);
    }
    log_of(o) << "h=" << fmt(h) << " nodes=" << dom.size() << " max|u|=" << fmt(norms(rep.u).linf) << '\n';
  }
  if (q1.size() > 1) checks.push_back(check_refinement("gradient_q1_refinement", q1));
  write_checks(o, checks);
  return checks;
}

// ---- solve-nonlinear ----

std::vector<Check> solve_nonlinear_cmd(const Config& c, const RunOptions& o) {
  const auto grids = grid_list(c);
  if (grids.size() != 1) throw ConfigError("config: solve-nonlinear takes a single 'h'");
  const auto [dom, mu] = setup(c, grids.front());
  const std::string route = c.str("route", "energy");
  if (route != "energy" && route != "bracket" && route != "contraction")
    throw ConfigError("config: route must be energy, bracket or contraction");
  try {
    const SemilinearProblem p(dom, nonlinearity_from(c), mu, knobs_from(c));
    const SolveTrace tr = [&] {
      if (route == "energy") return minimize_energy(p);
      if (route == "contraction") return contraction_solve(p);
      const auto [lo, hi] = default_brackets(dom, mu);
      return sub_super_solve(p, lo, hi);
    }();
    std::ofstream f = open_csv(o, "trace.csv");
    f << "iter,residual,energy\n";
    for (const TraceRow& r : tr.rows) f << r.iter << ',' << fmt(r.residual) << ',' << fmt(r.energy) << '\n';
    std::ofstream fu = open_csv(o, "u.csv");
    write_grid_csv(fu, tr.u);
    std::vector<Check> checks{Check{"converged", tr.residual, p.tolerance(), tr.converged}};
    if (tr.converged) checks.push_back(check_absorption(tr, mu));
    write_checks(o, checks);
    log_of(o) << "route=" << route << " iterations=" << tr.rows.size() << " residual=" << fmt(tr.residual)
              << (tr.note.empty() ? "" : " note=" + tr.note) << '\n';
    return checks;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

// ---- reduced-measure ----

struct ReducedRun {
  double h;
  ReducedResult res;
  DiscreteMeasure mu;
};

std::vector<Check> reduced_cmd(const Config& c, const RunOptions& o) {
  const auto grids = grid_list(c);
  const Nonlinearity g = nonlinearity_from(c);
  ReducedOptions ro;
  ro.rel_tol = c.real("rel_tol", ro.rel_tol);
  ro.max_iter = c.integer("max_iter", ro.max_iter);
  const std::vector<double> levels = c.reals("levels", default_levels());
  const auto runs = parallel_map<ReducedRun>(grids.size(), o.jobs, [&](std::size_t k) {
    auto [dom, mu] = setup(c, grids[k]);
    ReducedResult r = reduced_measure(dom, g, mu, levels, ro);
    return ReducedRun{dom.h(), std::move(r), std::move(mu)};
  });

  std::ofstream f = open_csv(o, "reduced.csv");
  f << "h,level,l1_u,tv_mu_star,tv_gamma\n";
  std::ofstream s = open_csv(o, "summary.csv");
  s << "h,complete,good,tv_mu,tv_mu_star,tv_gamma,diffuse_defect\n";
  std::vector<Check> checks;
  for (const ReducedRun& run : runs) {
    const ReducedResult& r = run.res;
    for (const ReducedLevel& l : r.levels)
      f << fmt(run.h) << ',' << fmt(l.n) << ',' << fmt(l.l1_u) << ',' << fmt(l.tv_mu_star) << ',' << fmt(l.tv_gamma)
        << '\n';
    const bool good = good_measure_test(r, run.mu);
    s << fmt(run.h) << ',' << r.complete << ',' << good << ',' << fmt(run.mu.tv_norm()) << ','
      << fmt(r.mu_star.tv_norm()) << ',' << fmt(r.gamma.tv_norm()) << ',' << fmt(r.diffuse_defect) << '\n';
    double worst = 0.0;
    for (std::size_t k = 1; k < r.levels.size(); ++k)
      for (std::size_t i = 0; i < r.u_star.size(); ++i) worst = std::max(worst, r.levels[k].u[i] - r.levels[k - 1].u[i]);
    checks.push_back(make_check(tag("ladder_nonincreasing", run.h), worst, 10 * r.tol));
    checks.push_back(make_check(tag("diffuse_defect", run.h), r.diffuse_defect, 10 * r.tol));
    log_of(o) << "h=" << fmt(run.h) << " levels=" << r.levels.size() << " complete=" << r.complete
              << " good=" << good << " tv(mu*)=" << fmt(r.mu_star.tv_norm()) << " tv(gamma)=" << fmt(r.gamma.tv_norm())
              << '\n';
  }
  write_checks(o, checks);
  return checks;
}

// ---- threshold-scan ----

std::vector<Check> threshold_cmd(const Config& c, const RunOptions& o) {
  const std::string family = c.str("family", "exp");
  ThresholdTable tab;
  std::vector<Check> checks;
  if (family == "exp") {
    const std::vector<double> hs = c.reals("hs", {1.0 / 16, 1.0 / 32, 1.0 / 64, 1.0 / 128});
    const std::vector<double> masses = c.reals("masses", {2 * kPi});
    try {
      if (hs.size() >= 3) {
        tab = threshold_scan_exponential(masses, hs);
      } else {
        // too short for classification: statistics only
        tab.critical = std::numeric_limits<double>::quiet_NaN();
        for (double m : masses)
          for (double h : hs) tab.rows.push_back({m, h, exponential_integral(m, h), "unclassified"});
      }
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
    for (const ScanRow& r : tab.rows)
      if (r.param < 4 * kPi)
        checks.push_back(make_check("brezis_merle[c=" + fmt(r.param) + ",h=" + fmt(r.h) + "]", r.statistic,
                                    1.1 * brezis_merle_bound(r.param, 2.0)));
  } else if (family == "poly") {
    const std::vector<double> hs = c.reals("hs", {1.0 / 8, 1.0 / 16});
    const std::vector<double> ps = c.reals("ps", {2.0, 3.0});
    ReducedOptions ro;
    ro.rel_tol = c.real("rel_tol", ro.rel_tol);
    try {
      const auto parts = parallel_map<ThresholdTable>(
          ps.size(), o.jobs, [&](std::size_t k) { return threshold_scan_polynomial({ps[k]}, hs, ro); });
      tab.critical = std::numeric_limits<double>::quiet_NaN();
      for (const ThresholdTable& t : parts) {
        tab.rows.insert(tab.rows.end(), t.rows.begin(), t.rows.end());
        if (std::isnan(tab.critical) && !std::isnan(t.critical)) tab.critical = t.critical;
      }
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
  } else {
    throw ConfigError("config: family must be exp or poly");
  }
  std::ofstream f = open_csv(o, "threshold.csv");
  f << "param,h,statistic,classification\n";
  for (const ScanRow& r : tab.rows)
    f << fmt(r.param) << ',' << fmt(r.h) << ',' << fmt(r.statistic) << ',' << r.classification << '\n';
  write_checks(o, checks);
  for (const ScanRow& r : tab.rows)
    log_of(o) << "param=" << fmt(r.param) << " h=" << fmt(r.h) << " statistic=" << fmt(r.statistic) << ' '
              << r.classification << '\n';
  log_of(o) << "critical=" << fmt(tab.critical) << '\n';
  return checks;
}

// ---- geometry ----

PointMeasure point_measure_from(const Config& c, bool weighted) {
  PointMeasure m;
  if (c.has("measure_file")) {
    std::filesystem::path p = c.str("measure_file");
    if (p.is_relative()) p = std::filesystem::path(c.base_dir) / p;
    try {
      const DiscreteMeasure mu = read_measure_file(p.string());
      if (mu.has_density()) throw ConfigError("config: point measures carry atoms only");
      m.dim = mu.domain().dim();
      for (const Atom& a : mu.atoms()) {
        m.points.push_back(a.point);
        m.weights.push_back(a.weight);
      }
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
  } else {
    m.dim = c.integer("dim", 2);
    if (m.dim < 1 || m.dim > 3) throw ConfigError("config: 'dim' must be 1, 2 or 3");
    for (const std::string& line : c.all("atom")) {
      const std::vector<std::string> w = split_words(line);
      if (w.size() != static_cast<std::size_t>(m.dim + 1)) throw ConfigError("config: 'atom' needs dim coordinates and a weight");
      Point p{0, 0, 0};
      for (int a = 0; a < m.dim; ++a) p[a] = parse_value(w[a], "atom");
      m.points.push_back(p);
      m.weights.push_back(parse_value(w.back(), "atom"));
    }
    for (const std::string& line : c.all("point")) {
      const std::vector<std::string> w = split_words(line);
      if (w.size() != static_cast<std::size_t>(m.dim)) throw ConfigError("config: 'point' needs dim coordinates");
      Point p{0, 0, 0};
      for (int a = 0; a < m.dim; ++a) p[a] = parse_value(w[a], "point");
      m.points.push_back(p);
      m.weights.push_back(1.0);
    }
  }
  if (m.points.empty()) throw ConfigError("config: no points given");
  if (weighted)
    for (double w : m.weights)
      if (!(w >= 0.0)) throw ConfigError("config: atom weights must be nonnegative");
  return m;
}

CoverMode mode_from(const Config& c) {
  const std::string m = c.str("mode", "exact");
  if (m == "exact") return CoverMode::exact;
  if (m == "greedy") return CoverMode::greedy;
  throw ConfigError("config: mode must be exact or greedy");
}

std::vector<Check> hausdorff_cmd(const Config& c, const RunOptions& o) {
  const PointMeasure m = point_measure_from(c, false);
  const PointSet a{m.dim, m.points, c.real("rho", 0.0)};
  const double s = c.real("s", 0.0), delta = c.real("delta", kInfDelta);
  Cover cov;
  try {
    cov = hausdorff_cover(a, s, delta, mode_from(c));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  std::ofstream f = open_csv(o, "cover.csv");
  f << "cx,cy,cz,r\n";
  for (const Ball& b : cov.balls)
    f << fmt(b.center[0]) << ',' << fmt(b.center[1]) << ',' << fmt(b.center[2]) << ',' << fmt(b.r) << '\n';
  double worst = -std::numeric_limits<double>::infinity();
  for (const Point& p : a.points) {
    double best = std::numeric_limits<double>::infinity();
    for (const Ball& b : cov.balls)
      best = std::min(best, std::hypot(p[0] - b.center[0], p[1] - b.center[1], p[2] - b.center[2]) + a.rho - b.r);
    worst = std::max(worst, best);
  }
  std::vector<Check> checks{make_check("cover_contains_points", worst, 1e-12)};
  write_checks(o, checks);
  log_of(o) << "value=" << fmt(cov.value) << " balls=" << cov.balls.size() << '\n';
  return checks;
}

std::vector<Check> frostman_cmd(const Config& c, const RunOptions& o) {
  const PointMeasure nu = point_measure_from(c, true);
  const double alpha = c.real("alpha", 1.0), s = c.real("s", 0.0), delta = c.real("delta", kInfDelta);
  if (!(alpha > 0.0) || !(s >= 0.0) || !(delta > 0.0)) throw ConfigError("config: need alpha > 0, s >= 0, delta > 0");
  const bool holds = frostman_check(nu, alpha, s, delta);
  std::ofstream f = open_csv(o, "frostman.csv");
  f << "alpha,s,delta,holds\n" << fmt(alpha) << ',' << fmt(s) << ',' << fmt(delta) << ',' << holds << '\n';
  std::vector<Check> checks;
  if (nu.points.size() <= kExactLimit) {
    const std::vector<double> tab = hausdorff_table(PointSet{nu.dim, nu.points, 0.0}, s, delta);
    double worst = -std::numeric_limits<double>::infinity();
    for (std::uint32_t m = 1; m < tab.size(); ++m) worst = std::max(worst, nu.mass(m) - alpha * tab[m]);
    const bool subsets = worst <= 1e-12 * std::max(1.0, nu.mass());
    checks.push_back(Check{"frostman_matches_subsets", holds ? 1.0 : 0.0, subsets ? 1.0 : 0.0, holds == subsets});
  }
  write_checks(o, checks);
  log_of(o) << "frostman=" << (holds ? "holds" : "fails") << '\n';
  return checks;
}

std::vector<Check> decompose_cmd(const Config& c, const RunOptions& o) {
  const PointMeasure mu = point_measure_from(c, true);
  const double alpha = c.real("alpha", 1.0), s = c.real("s", 0.0), delta = c.real("delta", kInfDelta);
  std::vector<std::size_t> kept;
  SetOracle t;
  try {
    t = hausdorff_oracle(mu, alpha, s, delta);
    kept = greedy_decompose(mu, t, c.real("theta", 0.5));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  std::uint32_t e = 0;
  for (std::size_t k : kept) e |= 1u << k;
  std::ofstream f = open_csv(o, "decompose.csv");
  f << "atom,x,y,z,weight,kept\n";
  for (std::size_t k = 0; k < mu.points.size(); ++k)
    f << k << ',' << fmt(mu.points[k][0]) << ',' << fmt(mu.points[k][1]) << ',' << fmt(mu.points[k][2]) << ','
      << fmt(mu.weights[k]) << ',' << (e >> k & 1u) << '\n';
  double worst = -std::numeric_limits<double>::infinity();
  for (std::uint32_t fm = e; fm; fm = (fm - 1) & e) worst = std::max(worst, mu.mass(fm) - t(fm));
  const std::uint32_t rest = ((1u << mu.points.size()) - 1) & ~e;
  std::vector<Check> checks{make_check("kept_below_oracle", e ? worst : 0.0, 1e-12),
                            make_check("removed_above_oracle", t(rest), mu.mass(rest), 1e-12)};
  write_checks(o, checks);
  log_of(o) << "kept=" << kept.size() << "/" << mu.points.size() << " removed_mass=" << fmt(mu.mass(rest)) << '\n';
  return checks;
}

// ---- capacity ----

std::vector<std::size_t> node_set(const Config& c, const Domain& dom, bool single) {
  std::vector<std::size_t> k;
  if (c.has("K") && !single) throw ConfigError("config: index lists 'K' need a single 'h'; use K_box");
  for (double v : c.has("K") ? c.reals("K") : std::vector<double>{}) {
    if (v < 0 || v != std::floor(v) || v >= static_cast<double>(dom.size()))
      throw ConfigError("config: K holds interior node ids below " + std::to_string(dom.size()));
    k.push_back(static_cast<std::size_t>(v));
  }
  for (const std::string& line : c.all("K_box")) {
    std::vector<double> v;
    for (const std::string& w : split_words(line)) v.push_back(parse_value(w, "K_box"));
    if (v.size() != static_cast<std::size_t>(2 * dom.dim())) throw ConfigError("config: 'K_box' needs lo and hi corners");
    Point lo{0, 0, 0}, hi{0, 0, 0};
    for (int a = 0; a < dom.dim(); ++a) {
      lo[a] = v[a];
      hi[a] = v[dom.dim() + a];
    }
    const auto in = nodes_in_box(dom, lo, hi);
    k.insert(k.end(), in.begin(), in.end());
  }
  return k;
}

std::vector<Check> capacity_cmd(const Config& c, const RunOptions& o) {
  const std::vector<double> hs = grid_sizes(c);
  const std::vector<double> eps = c.reals("eps", {0.1, 0.25, 0.5});
  const double rel = c.real("rel_tol", 0.2);
  for (double e : eps)
    if (!(e > 0.0 && e < 1.0)) throw ConfigError("config: eps values must lie in (0, 1)");
  std::vector<double> s_values;
  if (c.has("s_values")) s_values = c.reals("s_values");

  struct Out {
    CapacityResult res;
    std::vector<LevelRow> level;
  };
  const auto outs = parallel_map<Out>(hs.size(), o.jobs, [&](std::size_t k) {
    const Domain dom = domain_from(c, hs[k]);
    Out out{capacitary_potential(dom, node_set(c, dom, hs.size() == 1)), {}};
    if (!s_values.empty()) {
      const DiscreteMeasure mu = measure_from(c, dom);
      out.level = capacitary_level_estimate(solve_linear(dom, mu).u, mu, s_values);
    }
    return out;
  });

  std::vector<Check> checks;
  std::ofstream f = open_csv(o, "capacity.csv");
  f << "h,nodes,cap,nu_mass\n";
  std::ofstream lv;
  if (!s_values.empty()) {
    lv = open_csv(o, "level.csv");
    lv << "h,s,cap,statistic\n";
  }
  std::vector<std::vector<LevelRow>> tables;
  for (std::size_t k = 0; k < hs.size(); ++k) {
    const CapacityResult& r = outs[k].res;
    f << fmt(hs[k]) << ',' << r.K.size() << ',' << fmt(r.cap) << ',' << fmt(r.nu.total_mass()) << '\n';
    checks.push_back(make_check(tag("gauss_identity", hs[k]), std::abs(r.nu.total_mass() - r.cap), 1e-9 * std::max(1.0, r.cap)));
    if (!r.K.empty())
      for (double e : eps) {
        Check ch = cap_equivalence_check(r, e, rel);
        ch.name = "cap_equivalence[eps=" + fmt(e) + ",h=" + fmt(hs[k]) + "]";
        checks.push_back(ch);
      }
    for (const LevelRow& row : outs[k].level)
      lv << fmt(hs[k]) << ',' << fmt(row.s) << ',' << fmt(row.cap) << ',' << fmt(row.statistic) << '\n';
    if (!outs[k].level.empty()) tables.push_back(outs[k].level);
    log_of(o) << "h=" << fmt(hs[k]) << " |K|=" << r.K.size() << " cap=" << fmt(r.cap) << '\n';
  }
  if (tables.size() > 1) checks.push_back(check_level_refinement(tables));
  write_checks(o, checks);
  return checks;
}

// ---- suite / acceptance ----

std::vector<Check> suite_cmd(const Config& c, const RunOptions& o) {
  SuiteOptions so;
  so.seed = o.seed;
  so.jobs = o.jobs;
  so.inject_fault = c.str("inject_fault", "false") == "true";
  const std::vector<Check> checks = run_suite(c.str("suite", "all"), so);
  std::ofstream f = open_csv(o, "suite.csv");
  write_checks_csv(f, checks);
  for (const Check& ch : checks)
    if (!ch.pass) log_of(o) << "FAIL " << ch.name << " lhs=" << fmt(ch.lhs) << " rhs=" << fmt(ch.rhs) << '\n';
  return checks;
}

std::vector<Check> acceptance_cmd(const Config& c, const RunOptions& o) {
  AcceptanceOptions ao;
  ao.seed = o.seed;
  std::error_code ec;
  ao.tool_path = std::filesystem::read_symlink("/proc/self/exe", ec).string();
  ao.work_dir = o.out_dir;
  std::filesystem::create_directories(o.out_dir);
  std::vector<int> ids;
  if (c.has("criteria"))
    for (double v : c.reals("criteria")) ids.push_back(static_cast<int>(v));
  else
    for (const Criterion& cr : criteria()) ids.push_back(cr.id);
  std::vector<Check> checks;
  for (int id : ids) {
    CriterionResult r;
    try {
      r = run_criterion(id, ao);
    } catch (const std::out_of_range& e) {
      throw ConfigError(e.what());
    }
    log_of(o) << format_result(r) << std::endl;
    checks.push_back(Check{std::to_string(r.id) + "_" + r.name, r.pass ? 0.0 : 1.0, 0.0, r.pass});
  }
  write_checks(o, checks);
  return checks;
}

struct Entry {
  const char* name;
  Command fn;
};

const std::vector<Entry>& table() {
  static const std::vector<Entry> t{
      {"solve-linear", solve_linear_cmd},  {"solve-nonlinear", solve_nonlinear_cmd},
      {"reduced-measure", reduced_cmd},    {"threshold-scan", threshold_cmd},
      {"hausdorff", hausdorff_cmd},        {"frostman", frostman_cmd},
      {"decompose", decompose_cmd},        {"capacity", capacity_cmd},
      {"suite", suite_cmd},                {"acceptance", acceptance_cmd},
  };
  return t;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> n = [] {
    std::vector<std::string> v;
    for (const Entry& e : table()) v.push_back(e.name);
    return v;
  }();
  return n;
}

Command find_command(const std::string& name) {
  for (const Entry& e : table())
    if (name == e.name) return e.fn;
  throw ConfigError("unknown subcommand '" + name + "'");
}

const std::set<std::string>& command_keys(const std::string& name) {
  static const std::set<std::string> grid = merge({domain_keys(), measure_keys(), {"kappa"}});
  static const std::set<std::string> nonlinear = merge({domain_keys(), measure_keys(), {"g", "tol", "max_iter", "theta", "route"}});
  static const std::set<std::string> reduced = merge({domain_keys(), measure_keys(), {"g", "rel_tol", "max_iter", "levels"}});
  static const std::set<std::string> scan{"family", "masses", "ps", "hs", "rel_tol"};
  static const std::set<std::string> points{"dim", "atom", "point", "measure_file", "rho", "s", "delta", "mode"};
  static const std::set<std::string> weighted{"dim", "atom", "measure_file", "alpha", "s", "delta", "theta"};
  static const std::set<std::string> cap = merge({domain_keys(), measure_keys(), {"K", "K_box", "eps", "rel_tol", "s_values"}});
  static const std::set<std::string> suite{"suite", "inject_fault"};
  static const std::set<std::string> acc{"criteria"};
  if (name == "solve-linear") return grid;
  if (name == "solve-nonlinear") return nonlinear;
  if (name == "reduced-measure") return reduced;
  if (name == "threshold-scan") return scan;
  if (name == "hausdorff") return points;
  if (name == "frostman" || name == "decompose") return weighted;
  if (name == "capacity") return cap;
  if (name == "suite") return suite;
  if (name == "acceptance") return acc;
  throw ConfigError("unknown subcommand '" + name + "'");
}

int exit_code(const std::vector<Check>& checks) { return all_pass(checks) ? 0 : 2; }

}  // namespace emlab::cli
