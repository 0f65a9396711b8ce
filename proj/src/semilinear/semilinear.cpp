#include "emlab/semilinear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace emlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxKappaSteps = 60;

using Vec = std::vector<double>;

// Lu + g(u) - f, nodewise; may contain inf on overflow.
Vec residual_vec(const GridFunction& u, const Nonlinearity& g, const GridFunction& f) {
  Vec r = std::move(laplacian_apply(u)).values();
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += g(u[i]) - f[i];
  return r;
}

double l1(const Vec& r, double w) {
  double s = 0.0;
  for (double v : r) s += std::abs(v);
  return std::isnan(s) ? kInf : s * w;
}

double energy_with(const GridFunction& u, const Nonlinearity& g, const GridFunction& f) {
  double gsum = 0.0;
  for (double v : u.values()) gsum += g.primitive(v);
  if (!std::isfinite(gsum)) return kInf;
  const double w = u.domain().cell_volume();
  return 0.5 * dirichlet_energy(u) + w * gsum - inner(u, f);
}

GridFunction apply_g(const GridFunction& u, const Nonlinearity& g) {
  Vec v(u.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = g(u[i]);
  for (double x : v)
    if (!std::isfinite(x)) throw ConvergenceError("g(u) overflowed");
  return GridFunction(u.domain(), std::move(v));
}

bool finite_all(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

SolveTrace finish(SolveTrace t, const SemilinearProblem& prob) {
  t.g_u = apply_g(t.u, prob.g);
  return t;
}

}  // namespace

SemilinearProblem::SemilinearProblem(Domain d, Nonlinearity gg, DiscreteMeasure m, SolverKnobs k)
    : dom(std::move(d)), g(std::move(gg)), mu(std::move(m)), knobs(k) {
  require_same_domain(dom, mu.domain(), "semilinear problem");
  if (!(knobs.theta > 0.0 && knobs.theta <= 1.0)) throw std::invalid_argument("semilinear: theta must lie in (0,1]");
  if (knobs.tol < 0.0 || std::isnan(knobs.tol)) throw std::invalid_argument("semilinear: negative tolerance");
  if (knobs.max_iter < 1) throw std::invalid_argument("semilinear: max_iter must be positive");
}

double SemilinearProblem::tolerance() const { return knobs.tol > 0.0 ? knobs.tol : 1e-8 * (1.0 + mu.tv_norm()); }

double energy(const GridFunction& u, const SemilinearProblem& prob) {
  require_same_domain(u.domain(), prob.dom, "energy");
  return energy_with(u, prob.g, project_measure(prob.mu));
}

double residual_l1(const GridFunction& u, const Nonlinearity& g, const GridFunction& f) {
  require_same_domain(u.domain(), f.domain(), "residual");
  return l1(residual_vec(u, g, f), u.domain().cell_volume());
}

double residual_l1(const GridFunction& u, const SemilinearProblem& prob) {
  return residual_l1(u, prob.g, project_measure(prob.mu));
}

SolveTrace minimize_energy(const SemilinearProblem& prob) {
  if (!prob.g.sign_condition()) throw std::invalid_argument("minimize_energy: g must satisfy the sign condition");
  const Domain& dom = prob.dom;
  const GridFunction f = project_measure(prob.mu);
  const double tol = prob.tolerance();
  const double w = dom.cell_volume();
  SolveTrace t{{}, GridFunction(dom), GridFunction(dom), false, 0.0, ""};

  LaplaceSolver solver(dom);
  const double kappa0 = norms(solver.solve(f)).linf;
  t.residual = residual_l1(t.u, prob.g, f);
  t.rows.push_back({0, t.residual, energy_with(t.u, prob.g, f)});
  if (t.residual <= tol) {
    t.converged = true;
    return finish(std::move(t), prob);
  }

  int iter = 0;
  GridFunction u = t.u;
  for (int k = 0; k < kMaxKappaSteps; ++k) {
    const double kappa = kappa0 * std::ldexp(1.0, k);
    const Nonlinearity gk = prob.g.frozen(kappa);
    Vec r = residual_vec(u, gk, f);
    double res = l1(r, w);
    double ek = energy_with(u, gk, f);
    bool stalled = false;
    for (int it = 0; it < prob.knobs.max_iter && res > tol; ++it) {
      Vec shift(dom.size());
      for (std::size_t i = 0; i < shift.size(); ++i) shift[i] = std::max(gk.derivative(u[i]), 0.0);
      solver.set_shift(shift);
      Vec neg(r.size());
      for (std::size_t i = 0; i < r.size(); ++i) neg[i] = -r[i];
      const GridFunction d = solver.solve(GridFunction(dom, std::move(neg)));
      // grad E . d, negative along a descent direction
      double slope = 0.0;
      for (std::size_t i = 0; i < r.size(); ++i) slope += r[i] * d[i];
      slope *= w;
      double step = 1.0;
      bool accepted = false;
      GridFunction cand = u;
      for (int ls = 0; ls < 40; ++ls, step *= 0.5) {
        cand = u + step * d;
        const double ec = energy_with(cand, gk, f);
        if (ec <= ek + 1e-4 * step * slope) {
          accepted = true;
          break;
        }
      }
      if (!accepted) {
        // energy differences lost in rounding: fall back to residual decrease
        step = 1.0;
        for (int ls = 0; ls < 40; ++ls, step *= 0.5) {
          cand = u + step * d;
          if (l1(residual_vec(cand, gk, f), w) < res) {
            accepted = true;
            break;
          }
        }
      }
      if (!accepted) {
        stalled = true;
        break;
      }
      u = cand;
      r = residual_vec(u, gk, f);
      res = l1(r, w);
      ek = energy_with(u, gk, f);
      t.rows.push_back({++iter, residual_l1(u, prob.g, f), energy_with(u, prob.g, f)});
    }
    if (norms(u).linf <= kappa) {
      t.u = u;
      t.residual = residual_l1(u, prob.g, f);
      t.converged = t.residual <= tol;
      if (!t.converged) t.note = stalled ? "line search stalled" : "iteration budget exhausted";
      return finish(std::move(t), prob);
    }
  }
  t.u = u;
  t.residual = residual_l1(u, prob.g, f);
  t.note = "truncation level budget exhausted";
  throw ConvergenceError("minimize_energy: truncation level budget exhausted");
}

std::pair<GridFunction, GridFunction> default_brackets(const Domain& dom, const DiscreteMeasure& mu) {
  LaplaceSolver solver(dom);
  GridFunction hi = solver.solve(project_measure(mu.positive_part()));
  GridFunction lo = -1.0 * solver.solve(project_measure(mu.negative_part()));
  return {std::move(lo), std::move(hi)};
}

SolveTrace sub_super_solve(const SemilinearProblem& prob, const GridFunction& v_lo, const GridFunction& v_hi) {
  const Domain& dom = prob.dom;
  require_same_domain(dom, v_lo.domain(), "sub_super_solve");
  require_same_domain(dom, v_hi.domain(), "sub_super_solve");
  for (std::size_t i = 0; i < dom.size(); ++i)
    if (v_lo[i] > v_hi[i]) throw std::invalid_argument("sub_super_solve: v_lo > v_hi at some node");
  const GridFunction f = project_measure(prob.mu);
  const double tol = prob.tolerance();
  const double w = dom.cell_volume();
  {
    const Vec rl = residual_vec(v_lo, prob.g, f), rh = residual_vec(v_hi, prob.g, f);
    double over = 0.0, under = 0.0;
    for (double x : rl) over += std::max(x, 0.0);
    for (double x : rh) under += std::max(-x, 0.0);
    if (!(over * w <= tol)) throw std::invalid_argument("sub_super_solve: v_lo is not a subsolution");
    if (!(under * w <= tol)) throw std::invalid_argument("sub_super_solve: v_hi is not a supersolution");
  }

  const auto lo = v_lo.values(), hi = v_hi.values();
  const Nonlinearity& g = prob.g;
  auto gt = [&](std::size_t i, double t) { return g(std::clamp(t, lo[i], hi[i])); };
  auto residual_of = [&](const GridFunction& v) {
    const GridFunction lv = laplacian_apply(v);
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += std::abs(lv[i] + gt(i, v[i]) - f[i]);
    return std::isnan(s) ? kInf : s * w;
  };

  SolveTrace t{{}, v_hi, GridFunction(dom), false, 0.0, ""};
  GridFunction v = v_hi;
  double res = residual_of(v);
  t.rows.push_back({0, res, energy_with(v, g, f)});
  LaplaceSolver solver(dom);
  Vec shift;
  for (int it = 1; it <= prob.knobs.max_iter && res > tol; ++it) {
    Vec lam(dom.size());
    for (std::size_t i = 0; i < lam.size(); ++i) {
      lam[i] = g.lipschitz(lo[i], std::clamp(v[i], lo[i], hi[i]));
      if (!std::isfinite(lam[i])) throw std::invalid_argument("sub_super_solve: g is not Lipschitz on the bracket");
    }
    if (lam != shift) {
      solver.set_shift(lam);
      shift = lam;
    }
    Vec rhs(dom.size());
    for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = f[i] + lam[i] * v[i] - gt(i, v[i]);
    if (!finite_all(rhs)) throw ConvergenceError("sub_super_solve: overflow in the iteration");
    v = solver.solve(GridFunction(dom, std::move(rhs)), v);
    res = residual_of(v);
    t.rows.push_back({it, res, energy_with(v, g, f)});
  }
  t.u = v;
  t.residual = residual_l1(v, g, f);
  t.converged = res <= tol && t.residual <= tol;
  if (!t.converged) t.note = "iteration budget exhausted";
  return finish(std::move(t), prob);
}

SolveTrace contraction_solve(const SemilinearProblem& prob) {
  if (!prob.g.nondecreasing()) throw std::invalid_argument("contraction_solve: g must be nondecreasing");
  const Domain& dom = prob.dom;
  const GridFunction f = project_measure(prob.mu);
  const double tol = prob.tolerance();
  const double w = dom.cell_volume();
  LaplaceSolver solver(dom);

  SolveTrace t{{}, GridFunction(dom), GridFunction(dom), false, 0.0, ""};
  GridFunction u(dom);
  double res = l1(residual_vec(u, prob.g, f), w);
  t.rows.push_back({0, res, energy_with(u, prob.g, f)});
  double theta = prob.knobs.theta;
  for (int it = 1; it <= prob.knobs.max_iter && res > tol; ++it) {
    Vec rhs(dom.size());
    for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = f[i] - prob.g(u[i]);
    if (!finite_all(rhs)) throw ConvergenceError("contraction_solve: g(u) overflowed");
    const GridFunction target = solver.solve(GridFunction(dom, std::move(rhs)), u);
    GridFunction cand = u + theta * (target - u);
    const double rc = l1(residual_vec(cand, prob.g, f), w);
    if (!(rc <= res)) {
      theta *= 0.5;
      if (theta < 1e-10) {
        t.note = "damping underflow";
        break;
      }
      continue;
    }
    u = std::move(cand);
    res = rc;
    t.rows.push_back({it, res, energy_with(u, prob.g, f)});
  }
  t.u = u;
  t.residual = res;
  t.converged = res <= tol;
  if (!t.converged && t.note.empty()) t.note = "iteration budget exhausted";
  return finish(std::move(t), prob);
}

Check check_absorption(const SolveTrace& trace, const DiscreteMeasure& mu, double slack) {
  return make_check("absorption", norms(trace.g_u).l1, mu.tv_norm(), slack);
}

Check check_subsolution_absorption(const GridFunction& u, const Nonlinearity& g, const DiscreteMeasure& mu,
                                   double slack) {
  double s = 0.0;
  for (double v : u.values()) s += std::max(g(v), 0.0);
  return make_check("absorption_subsolution", s * u.domain().cell_volume(), mu.positive_part().tv_norm(), slack);
}

}  // namespace emlab
