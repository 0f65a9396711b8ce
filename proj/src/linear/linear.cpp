#include "emlab/linear.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>
#include <algorithm>
#include <cmath>
#include <limits>

namespace emlab {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;

SpMat assemble(const Domain& dom, std::span<const double> shift) {
  const double inv_h2 = 1.0 / (dom.h() * dom.h());
  const double diag = 2.0 * dom.dim() * inv_h2;
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(dom.size() * (2 * dom.dim() + 1));
  for (std::size_t i = 0; i < dom.size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    t.emplace_back(ii, ii, diag + (shift.empty() ? 0.0 : shift[i]));
    for (std::ptrdiff_t j : dom.neighbors(i))
      if (j != Domain::kBoundary) t.emplace_back(ii, static_cast<Eigen::Index>(j), -inv_h2);
  }
  SpMat A(static_cast<Eigen::Index>(dom.size()), static_cast<Eigen::Index>(dom.size()));
  A.setFromTriplets(t.begin(), t.end());
  return A;
}

Vec to_vec(const GridFunction& f) {
  const auto v = f.values();
  return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

GridFunction from_vec(const Domain& dom, const Vec& x) {
  return GridFunction(dom, std::vector<double>(x.data(), x.data() + x.size()));
}

double tv_or_zero_ratio(double num, double tv) { return tv > 0.0 ? num / tv : 0.0; }

}  // namespace

struct LaplaceSolver::Impl {
  Domain dom;
  bool direct = true;
  SpMat A;
  Eigen::SimplicialLDLT<SpMat> ldlt;
  Eigen::ConjugateGradient<SpMat, Eigen::Lower | Eigen::Upper, Eigen::IncompleteCholesky<double>> cg;
  bool analyzed = false;

  explicit Impl(Domain d) : dom(std::move(d)), direct(dom.size() <= direct_limit(dom.dim())) {}

  void factor(std::span<const double> shift) {
    if (!shift.empty()) {
      if (shift.size() != dom.size()) throw std::invalid_argument("solver: shift has the wrong length");
      for (double s : shift)
        if (!(s >= 0.0) || !std::isfinite(s)) throw std::invalid_argument("solver: shift must be finite and >= 0");
    }
    A = assemble(dom, shift);
    if (direct) {
      if (!analyzed) {
        ldlt.analyzePattern(A);
        analyzed = true;
      }
      ldlt.factorize(A);
      if (ldlt.info() != Eigen::Success) throw ConvergenceError("solver: LDL^T factorization failed");
    } else {
      cg.setTolerance(1e-10);
      cg.setMaxIterations(std::max<Eigen::Index>(1000, 4 * static_cast<Eigen::Index>(std::cbrt(dom.size()) * 50)));
      cg.compute(A);
      if (cg.info() != Eigen::Success) throw ConvergenceError("solver: preconditioner setup failed");
    }
  }

  Vec run(const Vec& b, const Vec* guess) const {
    if (b.size() != A.rows()) throw std::invalid_argument("solver: right-hand side on another domain");
    if (b.isZero(0.0)) return Vec::Zero(b.size());
    if (direct) return ldlt.solve(b);
    Vec x = guess ? cg.solveWithGuess(b, *guess) : Vec(cg.solve(b));
    if (cg.info() != Eigen::Success)
      throw ConvergenceError("solver: CG did not reach relative residual 1e-10 in " +
                             std::to_string(cg.maxIterations()) + " iterations");
    return x;
  }
};

LaplaceSolver::LaplaceSolver(Domain dom, std::span<const double> shift) : impl_(std::make_unique<Impl>(std::move(dom))) {
  impl_->factor(shift);
}
LaplaceSolver::~LaplaceSolver() = default;
LaplaceSolver::LaplaceSolver(LaplaceSolver&&) noexcept = default;
LaplaceSolver& LaplaceSolver::operator=(LaplaceSolver&&) noexcept = default;

void LaplaceSolver::set_shift(std::span<const double> shift) { impl_->factor(shift); }

GridFunction LaplaceSolver::solve(const GridFunction& f) const {
  require_same_domain(f.domain(), impl_->dom, "solve");
  return from_vec(impl_->dom, impl_->run(to_vec(f), nullptr));
}

GridFunction LaplaceSolver::solve(const GridFunction& f, const GridFunction& guess) const {
  require_same_domain(f.domain(), impl_->dom, "solve");
  const Vec g = to_vec(guess);
  return from_vec(impl_->dom, impl_->run(to_vec(f), &g));
}

const Domain& LaplaceSolver::domain() const noexcept { return impl_->dom; }
bool LaplaceSolver::direct() const noexcept { return impl_->direct; }

GridFunction solve_poisson(const GridFunction& f) { return LaplaceSolver(f.domain()).solve(f); }

LinearReport solve_linear(const Domain& dom, const DiscreteMeasure& mu) {
  require_same_domain(dom, mu.domain(), "solve_linear");
  const GridFunction f = project_measure(mu);
  GridFunction u = solve_poisson(f);
  const GridFunction r = laplacian_apply(u) - f;
  return LinearReport{std::move(u), norms(r).linf, {}};
}

double gradient_ratio(const LinearReport& report, const DiscreteMeasure& mu, double q) {
  return tv_or_zero_ratio(gradient_norm(report.u, q), mu.tv_norm());
}

std::vector<Check> check_stampacchia(const LinearReport& report, const DiscreteMeasure& mu) {
  const int n = report.u.domain().dim();
  const double tv = mu.tv_norm();
  std::vector<Check> out;
  const double l1 = norms(report.u).l1;
  out.push_back(Check{"stampacchia_l1", l1, tv, std::isfinite(tv_or_zero_ratio(l1, tv))});
  std::vector<double> qs{1.0, 1.2};
  if (n >= 2) qs.push_back(static_cast<double>(n) / (n - 1) - 0.05);
  for (double q : qs) {
    const double g = gradient_norm(report.u, q);
    out.push_back(Check{"stampacchia_grad_q" + fmt(q), g, tv, std::isfinite(tv_or_zero_ratio(g, tv))});
  }
  return out;
}

namespace {

// sup_t t * (count{|x| > t} * w)^e over the sample set.
double weak_sup(std::vector<double> x, double w, double e) {
  for (double& v : x) v = std::abs(v);
  std::sort(x.begin(), x.end(), std::greater<>());
  double best = 0.0;
  std::size_t k = 0;
  while (k < x.size() && x[k] > 0.0) {
    std::size_t j = k;
    while (j < x.size() && x[j] == x[k]) ++j;
    best = std::max(best, x[k] * std::pow(static_cast<double>(j) * w, e));
    k = j;
  }
  return best;
}

}  // namespace

std::vector<Check> check_weak_lp(const LinearReport& report, const DiscreteMeasure& mu) {
  const Domain& dom = report.u.domain();
  if (dom.dim() != 3) throw std::invalid_argument("check_weak_lp: needs a three-dimensional domain");
  const double n = 3.0;
  const double tv = mu.tv_norm();
  const double w = dom.cell_volume();
  std::vector<double> vals(report.u.values().begin(), report.u.values().end());
  std::vector<double> grads;
  for_each_edge(dom, [&](std::size_t i, std::ptrdiff_t j) {
    const double uj = j == Domain::kBoundary ? 0.0 : report.u[static_cast<std::size_t>(j)];
    grads.push_back((report.u[i] - uj) / dom.h());
  });
  const double s1 = weak_sup(std::move(vals), w, (n - 2) / n);
  const double s2 = weak_sup(std::move(grads), w, (n - 1) / n);
  return {Check{"weak_lp_u", s1, tv, std::isfinite(tv_or_zero_ratio(s1, tv))},
          Check{"weak_lp_grad", s2, tv, std::isfinite(tv_or_zero_ratio(s2, tv))}};
}

Check check_interpolation(const LinearReport& report, const DiscreteMeasure& mu, double kappa, double slack) {
  const double lhs = dirichlet_energy(truncate(report.u, kappa));
  return make_check("interpolation_kappa" + fmt(kappa), lhs, kappa * mu.tv_norm(), slack);
}

double boundary_strip_ratio(const GridFunction& u, const DiscreteMeasure& mu, double eps) {
  const Domain& dom = u.domain();
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (dom.boundary_distance(dom.coords(i)) < eps * (1.0 - 1e-12)) s += std::abs(u[i]);
  return tv_or_zero_ratio(s * dom.cell_volume() / (eps * eps), mu.tv_norm());
}

std::vector<Check> check_boundary_decay(const LinearReport& report, const DiscreteMeasure& mu, double C) {
  const double h = report.u.domain().h();
  std::vector<Check> out;
  for (int k : {1, 2, 4, 8}) {
    const double r = boundary_strip_ratio(report.u, mu, k * h);
    out.push_back(make_check("boundary_decay_eps" + std::to_string(k) + "h", r, C));
  }
  return out;
}

Check check_weak_max(const LinearReport& report, const DiscreteMeasure& mu, double tol) {
  const auto v = report.u.values();
  if (v.empty()) return Check{"weak_max", 0, tol, true};
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  if (mu.is_nonpositive()) return make_check("weak_max_nonpositive", *hi, tol);
  if (mu.is_nonnegative()) return make_check("weak_max_nonnegative", -*lo, tol);
  return Check{"weak_max_signed", 0.0, 0.0, true};
}

Check check_kato(const GridFunction& u1, const GridFunction& f1, const std::optional<GridFunction>& u2,
                 const std::optional<GridFunction>& f2) {
  require_same_domain(u1.domain(), f1.domain(), "check_kato");
  if (u2.has_value() != f2.has_value()) throw std::invalid_argument("check_kato: u2 and f2 go together");
  const GridFunction d1 = -1.0 * laplacian_apply(u1);
  for (std::size_t i = 0; i < u1.size(); ++i)
    if (d1[i] < f1[i]) throw std::invalid_argument("check_kato: precondition Delta u1 >= f1 fails");
  double worst = -std::numeric_limits<double>::infinity();
  if (!u2) {
    const GridFunction dp = -1.0 * laplacian_apply(u1.map([](double t) { return std::max(t, 0.0); }));
    for (std::size_t i = 0; i < u1.size(); ++i) worst = std::max(worst, (u1[i] > 0.0 ? f1[i] : 0.0) - dp[i]);
    return Check{"kato_positive_part", worst, 0.0, worst <= 0.0};
  }
  require_same_domain(u1.domain(), u2->domain(), "check_kato");
  const GridFunction d2 = -1.0 * laplacian_apply(*u2);
  for (std::size_t i = 0; i < u2->size(); ++i)
    if (d2[i] < (*f2)[i]) throw std::invalid_argument("check_kato: precondition Delta u2 >= f2 fails");
  std::vector<double> m(u1.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::max(u1[i], (*u2)[i]);
  const GridFunction dm = -1.0 * laplacian_apply(GridFunction(u1.domain(), std::move(m)));
  for (std::size_t i = 0; i < u1.size(); ++i) {
    double rhs = 0.0;
    if (u1[i] > (*u2)[i])
      rhs = f1[i];
    else if ((*u2)[i] > u1[i])
      rhs = (*f2)[i];
    else
      rhs = (f1[i] + (*f2)[i]) / 2.0;
    worst = std::max(worst, rhs - dm[i]);
  }
  return Check{"kato_max", worst, 0.0, worst <= 0.0};
}

Check check_refinement(std::string name, const std::vector<double>& ratios, double factor) {
  double growth = 0.0;
  for (std::size_t k = 1; k < ratios.size(); ++k) {
    const double a = ratios[k - 1], b = ratios[k];
    double g = 0.0;
    if (a > 0.0)
      g = b / a;
    else if (b > 0.0)
      g = std::numeric_limits<double>::infinity();
    growth = std::max(growth, g);
  }
  return Check{std::move(name), growth, factor, growth < factor};
}

}  // namespace emlab
