#include "emlab/capacity.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>

namespace emlab {

namespace {

using SpMat = Eigen::SparseMatrix<double>;

// Solves the Laplacian restricted to the free nodes with u = 1 on K.
std::vector<double> harmonic_extension(const Domain& dom, const std::vector<char>& in_k) {
  const std::size_t n = dom.size();
  std::vector<std::ptrdiff_t> slot(n, -1);
  std::ptrdiff_t m = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (!in_k[i]) slot[i] = m++;

  std::vector<double> u(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    if (in_k[i]) u[i] = 1.0;
  if (m == 0) return u;

  const double ih2 = 1.0 / (dom.h() * dom.h());
  std::vector<Eigen::Triplet<double>> trip;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  for (std::size_t i = 0; i < n; ++i) {
    if (in_k[i]) continue;
    trip.emplace_back(slot[i], slot[i], 2.0 * dom.dim() * ih2);
    for (std::ptrdiff_t j : dom.neighbors(i)) {
      if (j == Domain::kBoundary) continue;
      if (in_k[static_cast<std::size_t>(j)])
        rhs(slot[i]) += ih2;
      else
        trip.emplace_back(slot[i], slot[static_cast<std::size_t>(j)], -ih2);
    }
  }
  SpMat a(m, m);
  a.setFromTriplets(trip.begin(), trip.end());

  Eigen::VectorXd x;
  if (static_cast<std::size_t>(m) <= LaplaceSolver::direct_limit(dom.dim())) {
    Eigen::SimplicialLDLT<SpMat> ldlt(a);
    if (ldlt.info() != Eigen::Success) throw ConvergenceError("capacitary_potential: factorization failed");
    x = ldlt.solve(rhs);
  } else {
    Eigen::ConjugateGradient<SpMat, Eigen::Lower | Eigen::Upper, Eigen::IncompleteCholesky<double>> cg;
    cg.setTolerance(1e-12);
    cg.compute(a);
    x = cg.solve(rhs);
    if (cg.info() != Eigen::Success) throw ConvergenceError("capacitary_potential: CG did not converge");
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!in_k[i]) u[i] = std::clamp(x(slot[i]), 0.0, 1.0);
  return u;
}

}  // namespace

CapacityResult capacitary_potential(const Domain& dom, std::vector<std::size_t> K) {
  std::vector<char> in_k(dom.size(), 0);
  for (std::size_t i : K) {
    if (i >= dom.size()) throw std::invalid_argument("capacitary_potential: node " + std::to_string(i) + " is not interior");
    in_k[i] = 1;
  }
  std::sort(K.begin(), K.end());
  K.erase(std::unique(K.begin(), K.end()), K.end());

  GridFunction u(dom, harmonic_extension(dom, in_k));
  const double cap = dirichlet_energy(u);
  // -Delta u vanishes off K; keep only K so nu is exactly supported there
  const GridFunction lu = laplacian_apply(u);
  std::vector<double> dens(dom.size(), 0.0);
  for (std::size_t i : K) dens[i] = lu[i];
  DiscreteMeasure nu = DiscreteMeasure::from_density(GridFunction(dom, std::move(dens)));
  return CapacityResult{std::move(K), std::move(u), cap, std::move(nu)};
}

double level_laplacian_mass(const CapacityResult& result, double eps) {
  const Domain& dom = result.u.domain();
  const GridFunction v = result.u.map([eps](double t) { return std::max(t - eps, 0.0); });
  const GridFunction lv = laplacian_apply(v);
  const double ih2 = 1.0 / (dom.h() * dom.h());
  double mass = 0.0;
  for (std::size_t i = 0; i < dom.size(); ++i) {
    mass += std::abs(lv[i]);
    // boundary nodes next to i see -v_i / h^2 from this edge
    for (std::ptrdiff_t j : dom.neighbors(i))
      if (j == Domain::kBoundary) mass += v[i] * ih2;
  }
  return mass * dom.cell_volume();
}

Check cap_equivalence_check(const CapacityResult& result, double eps, double rel_tol) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("cap_equivalence_check: eps must lie in (0, 1)");
  const double lhs = level_laplacian_mass(result, eps);
  const double rhs = 2.0 * result.cap;
  const double rel = result.cap > 0.0 ? std::abs(lhs - rhs) / result.cap : std::abs(lhs);
  return Check{"cap_equivalence", lhs, rhs, rel <= rel_tol};
}

std::vector<LevelRow> capacitary_level_estimate(const GridFunction& u, const DiscreteMeasure& mu,
                                                const std::vector<double>& s_values) {
  require_same_domain(u.domain(), mu.domain(), "capacitary_level_estimate");
  const double tv = mu.tv_norm();
  std::vector<LevelRow> rows;
  for (double s : s_values) {
    if (!(s > 0.0)) throw std::invalid_argument("capacitary_level_estimate: levels must be positive");
    std::vector<std::size_t> k;
    for (std::size_t i = 0; i < u.size(); ++i)
      if (std::abs(u[i]) > s) k.push_back(i);
    const double cap = capacitary_potential(u.domain(), std::move(k)).cap;
    rows.push_back({s, cap, tv > 0.0 ? s * cap / tv : 0.0});
  }
  return rows;
}

Check check_level_refinement(const std::vector<std::vector<LevelRow>>& tables, double factor) {
  std::vector<double> sups;
  for (const auto& t : tables) {
    double m = 0.0;
    for (const LevelRow& r : t) m = std::max(m, r.statistic);
    sups.push_back(m);
  }
  return check_refinement("capacitary_level_estimate", sups, factor);
}

std::vector<std::size_t> nodes_in_box(const Domain& dom, const Point& lo, const Point& hi) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < dom.size(); ++i) {
    const Point p = dom.coords(i);
    bool in = true;
    for (int a = 0; a < dom.dim(); ++a) in = in && p[a] >= lo[a] && p[a] <= hi[a];
    if (in) out.push_back(i);
  }
  return out;
}

}  // namespace emlab
