#include "emlab/reduced.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace emlab {

std::vector<double> default_levels() {
  std::vector<double> v;
  for (int k = 0; k <= 20; ++k) v.push_back(std::ldexp(1.0, k));
  return v;
}

void extract_reduced(const GridFunction& u, const Nonlinearity& g, const DiscreteMeasure& mu, double tol, bool strict,
                     ReducedResult& out) {
  const Domain& dom = mu.domain();
  const double w = dom.cell_volume();
  const GridFunction f = project_measure(mu);
  const GridFunction lu = laplacian_apply(u);

  // singular atoms grouped by their node
  std::map<std::size_t, std::vector<std::size_t>> by_node;
  const auto& atoms = mu.atoms();
  for (std::size_t k = 0; k < atoms.size(); ++k)
    if (atoms[k].singular) by_node[dom.nearest_node(atoms[k].point)].push_back(k);

  double diffuse = 0.0;
  for (std::size_t i = 0; i < dom.size(); ++i) {
    if (by_node.count(i)) continue;
    diffuse += std::abs(lu[i] + g(u[i]) - f[i]);
  }
  diffuse *= w;

  std::vector<Atom> kept, defect;
  for (const Atom& a : atoms)
    if (!a.singular) kept.push_back(a);
  double clamped = 0.0;
  for (const auto& [node, ids] : by_node) {
    const double d = (f[node] - lu[node] - g(u[node])) * w;
    double total = 0.0;
    for (std::size_t k : ids) total += std::abs(atoms[k].weight);
    double placed = 0.0;
    for (std::size_t k : ids) {
      const Atom& a = atoms[k];
      const double share = d * std::abs(a.weight) / total;
      const double gk = std::clamp(share, std::min(0.0, a.weight), std::max(0.0, a.weight));
      placed += gk;
      kept.push_back({a.point, a.weight - gk, true});
      defect.push_back({a.point, gk, true});
    }
    clamped += std::abs(d - placed);
  }
  out.u_star = u;
  out.mu_star = DiscreteMeasure(dom, std::move(kept), mu.has_density() ? std::optional(mu.density()) : std::nullopt);
  out.gamma = DiscreteMeasure(dom, std::move(defect));
  out.diffuse_defect = diffuse;
  out.clamped_defect = clamped;
  if (strict && diffuse > 10.0 * tol)
    throw ConvergenceError("reduced_measure: residual away from singular atoms exceeds the tolerance (" +
                           fmt(diffuse) + " > " + fmt(10.0 * tol) + ")");
}

ReducedResult reduced_measure(const Domain& dom, const Nonlinearity& g, const DiscreteMeasure& mu,
                              const std::vector<double>& levels, ReducedOptions opts) {
  require_same_domain(dom, mu.domain(), "reduced_measure");
  if (!g.sign_condition()) throw std::invalid_argument("reduced_measure: g must satisfy the sign condition");
  if (levels.empty()) throw std::invalid_argument("reduced_measure: empty level list");
  for (std::size_t k = 1; k < levels.size(); ++k)
    if (!(levels[k] > levels[k - 1])) throw std::invalid_argument("reduced_measure: levels must increase");
  if (!(levels[0] >= 0.0)) throw std::invalid_argument("reduced_measure: levels must be nonnegative");

  const double tol = opts.rel_tol * (1.0 + mu.tv_norm());
  SolverKnobs knobs;
  knobs.tol = tol;
  knobs.max_iter = opts.max_iter;

  ReducedResult res{{}, GridFunction(dom), DiscreteMeasure(dom), DiscreteMeasure(dom), false, tol, 0.0, 0.0};
  auto [lo, hi] = default_brackets(dom, mu);
  for (double n : levels) {
    const SemilinearProblem prob(dom, g.capped(n), mu, knobs);
    SolveTrace t = sub_super_solve(prob, lo, hi);
    if (!t.converged)
      throw ConvergenceError("reduced_measure: level " + fmt(n) + " did not converge (" + t.note + ")");
    ReducedLevel lvl{n, t.u, t.residual, static_cast<int>(t.rows.size()) - 1, norms(t.u).l1, 0.0, 0.0};
    ReducedResult probe = res;
    extract_reduced(t.u, g, mu, tol, false, probe);
    lvl.tv_mu_star = probe.mu_star.tv_norm();
    lvl.tv_gamma = probe.gamma.tv_norm();
    const bool cauchy = !res.levels.empty() && norms(t.u - hi).l1 < tol;
    res.levels.push_back(std::move(lvl));
    hi = t.u;
    if (cauchy) {
      res.complete = true;
      break;
    }
  }
  extract_reduced(hi, g, mu, tol, res.complete, res);
  return res;
}

bool good_measure_test(const ReducedResult& result, const DiscreteMeasure& mu) {
  return result.complete && (mu - result.mu_star).tv_norm() <= result.tol;
}

bool good_measure_test(const Domain& dom, const Nonlinearity& g, const DiscreteMeasure& mu, ReducedOptions opts) {
  return good_measure_test(reduced_measure(dom, g, mu, default_levels(), opts), mu);
}

Check lattice_corollaries(const Domain& dom, const Nonlinearity& g, const DiscreteMeasure& mu1,
                          const DiscreteMeasure& mu2, ReducedOptions opts) {
  if (!good_measure_test(dom, g, mu1, opts) || !good_measure_test(dom, g, mu2, opts))
    throw std::invalid_argument("lattice_corollaries: mu1 and mu2 must both be good");
  const DiscreteMeasure zero(dom);
  int failures = 0;
  for (const DiscreteMeasure& m : {measure_lattice(mu1, mu2, LatticeOp::max), measure_lattice(mu1, mu2, LatticeOp::min),
                                   measure_lattice(mu1, zero, LatticeOp::max), measure_lattice(mu1, zero, LatticeOp::min)})
    if (!good_measure_test(dom, g, m, opts)) ++failures;
  return Check{"lattice_corollaries", static_cast<double>(failures), 0.0, failures == 0};
}

}  // namespace emlab
