#pragma once

#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "emlab/check.hpp"
#include "emlab/grid_ops.hpp"

namespace emlab {

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sparse solver for L + diag(shift) on a domain, L the stencil of
/// laplacian_apply. Direct LDL^T up to direct_limit(dim) unknowns (3D fill-in
/// makes it slow earlier), incomplete Cholesky preconditioned CG (relative
/// residual 1e-10) above.
class LaplaceSolver {
 public:
  static constexpr std::size_t direct_limit(int dim) { return dim < 3 ? 20000 : 3000; }

  explicit LaplaceSolver(Domain dom, std::span<const double> shift = {});
  ~LaplaceSolver();
  LaplaceSolver(LaplaceSolver&&) noexcept;
  LaplaceSolver& operator=(LaplaceSolver&&) noexcept;

  /// Refactor with a new nonnegative diagonal shift (empty means zero).
  void set_shift(std::span<const double> shift);

  GridFunction solve(const GridFunction& f) const;
  /// Iterative mode starts from the guess; direct mode ignores it.
  GridFunction solve(const GridFunction& f, const GridFunction& guess) const;

  const Domain& domain() const noexcept;
  bool direct() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// L^{-1} f.
GridFunction solve_poisson(const GridFunction& f);

struct LinearReport {
  GridFunction u;
  /// max |Lu - mu_h|.
  double residual_linf = 0.0;
  std::vector<Check> estimates;
};

LinearReport solve_linear(const Domain& dom, const DiscreteMeasure& mu);

/// ||u||_1 and ||Du||_q for q in {1, 1.2, N/(N-1) - 0.05}, each against
/// tv(mu). Pass means the statistic is finite; use check_refinement for
/// stability across h.
std::vector<Check> check_stampacchia(const LinearReport& report, const DiscreteMeasure& mu);
/// ||Du||_q / tv(mu) for an arbitrary q.
double gradient_ratio(const LinearReport& report, const DiscreteMeasure& mu, double q);

/// sup_t t |{|u|>t}|^{(N-2)/N} / tv and the gradient analog with exponent
/// (N-1)/N. Three-dimensional domains only.
std::vector<Check> check_weak_lp(const LinearReport& report, const DiscreteMeasure& mu);

/// ||D T_kappa u||^2 <= kappa tv(mu).
Check check_interpolation(const LinearReport& report, const DiscreteMeasure& mu, double kappa,
                          double slack = 1e-12);

/// (1/eps^2) h^N sum_{d(x) < eps} |u| against C tv(mu), eps in {h, 2h, 4h, 8h}.
std::vector<Check> check_boundary_decay(const LinearReport& report, const DiscreteMeasure& mu, double C = 4.0);
/// The strip statistic alone, divided by tv(mu).
double boundary_strip_ratio(const GridFunction& u, const DiscreteMeasure& mu, double eps);

/// mu <= 0 gives max u <= tol, mu >= 0 gives min u >= -tol.
Check check_weak_max(const LinearReport& report, const DiscreteMeasure& mu, double tol = 0.0);

/// Discrete Kato inequalities, Delta = -laplacian_apply. Requires
/// Delta u_i >= f_i at every node; throws otherwise. lhs is the largest
/// nodewise violation, pass iff it is <= 0.
Check check_kato(const GridFunction& u1, const GridFunction& f1, const std::optional<GridFunction>& u2 = {},
                 const std::optional<GridFunction>& f2 = {});

/// Largest successive growth ratios[k+1]/ratios[k] against factor.
Check check_refinement(std::string name, const std::vector<double>& ratios, double factor = 1.5);

}  // namespace emlab
