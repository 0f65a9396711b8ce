#pragma once

#include <string>
#include <utility>
#include <vector>

#include "emlab/linear.hpp"
#include "emlab/nonlinearity.hpp"

namespace emlab {

struct SolverKnobs {
  /// Residual tolerance; <= 0 selects 1e-8 (1 + tv(mu)).
  double tol = 0.0;
  int max_iter = 500;
  /// Damping of the contraction route, in (0, 1].
  double theta = 0.5;
};

/// -Delta u + g(u) = mu with zero boundary values.
struct SemilinearProblem {
  SemilinearProblem(Domain dom, Nonlinearity g, DiscreteMeasure mu, SolverKnobs knobs = {});

  double tolerance() const;

  Domain dom;
  Nonlinearity g;
  DiscreteMeasure mu;
  SolverKnobs knobs;
};

struct TraceRow {
  int iter = 0;
  double residual = 0.0;
  double energy = 0.0;
};

struct SolveTrace {
  std::vector<TraceRow> rows;
  GridFunction u;
  GridFunction g_u;
  bool converged = false;
  double residual = 0.0;
  std::string note;
};

/// 1/2 dirichlet_energy(u) + h^N sum G(u_i) - <mu, u>; +inf on overflow.
double energy(const GridFunction& u, const SemilinearProblem& prob);
/// h^N sum |Lu + g(u) - mu_h|.
double residual_l1(const GridFunction& u, const SemilinearProblem& prob);
/// Same residual for an arbitrary g.
double residual_l1(const GridFunction& u, const Nonlinearity& g, const GridFunction& f);

/// Damped Newton on the energy with g frozen at level kappa; kappa climbs the
/// ladder ||L^{-1} mu||_inf 2^k until the minimizer stays below it.
SolveTrace minimize_energy(const SemilinearProblem& prob);

/// Monotone iteration from the supersolution v_hi with g frozen outside
/// [v_lo, v_hi]. Each step solves (L + Lambda) v' = mu + Lambda v - g(v), where
/// Lambda is the nodewise Lipschitz constant of g on [v_lo, v].
SolveTrace sub_super_solve(const SemilinearProblem& prob, const GridFunction& v_lo, const GridFunction& v_hi);

/// u <- u + theta (L^{-1}(mu - g(u)) - u); theta halves and the step is
/// rejected whenever the residual grows. Requires nondecreasing g.
SolveTrace contraction_solve(const SemilinearProblem& prob);

/// (-L^{-1} mu^-, L^{-1} mu^+): sub- and supersolution under the sign condition.
std::pair<GridFunction, GridFunction> default_brackets(const Domain& dom, const DiscreteMeasure& mu);

/// h^N sum |g(u)| <= tv(mu) + slack.
Check check_absorption(const SolveTrace& trace, const DiscreteMeasure& mu, double slack = 1e-6);
/// h^N sum max{g(u), 0} <= tv(mu^+) + slack for a subsolution u.
Check check_subsolution_absorption(const GridFunction& u, const Nonlinearity& g, const DiscreteMeasure& mu,
                                   double slack = 1e-6);

}  // namespace emlab
