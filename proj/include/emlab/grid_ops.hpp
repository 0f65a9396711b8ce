#pragma once

#include "emlab/measure.hpp"

namespace emlab {

/// -Delta with zero boundary values: (2 dim u_i - sum of neighbours) / h^2.
GridFunction laplacian_apply(const GridFunction& u);

/// Clamp to [-kappa, kappa].
GridFunction truncate(const GridFunction& u, double kappa);

struct Norms {
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
};

/// Discrete L^p norms with node weight h^dim.
Norms norms(const GridFunction& u);
/// Measure of {|u| > t}.
double dist_fn(const GridFunction& u, double t);
/// h^dim sum u_i v_i.
double inner(const GridFunction& u, const GridFunction& v);

/// Visits every grid edge with at least one interior endpoint. The second id
/// is Domain::kBoundary for edges reaching the boundary.
template <class F>
void for_each_edge(const Domain& dom, F&& f) {
  const std::size_t n = dom.size();
  const int stencil = 2 * dom.dim();
  for (std::size_t i = 0; i < n; ++i) {
    const auto nb = dom.neighbors(i);
    for (int k = 0; k < stencil; ++k) {
      const std::ptrdiff_t j = nb[static_cast<std::size_t>(k)];
      if (j == Domain::kBoundary)
        f(i, j);
      else if (k % 2 == 1)
        f(i, j);
    }
  }
}

/// h^{dim-2} sum over edges of (u_i - u_j)^2, equal to h^dim <Lu, u>.
double dirichlet_energy(const GridFunction& u);
/// (h^dim sum over edges |(u_i - u_j)/h|^q)^{1/q}.
double gradient_norm(const GridFunction& u, double q);
/// Measure of {|Du| > t} with each edge carrying h^dim.
double gradient_dist_fn(const GridFunction& u, double t);

/// Atom weights move to the nearest interior node as density w/h^dim.
GridFunction project_measure(const DiscreteMeasure& mu);
/// <mu, u> with atoms paired through their nearest node.
double pairing(const DiscreteMeasure& mu, const GridFunction& u);

/// Bump-kernel smoothing at radius eps (eps >= h). Mass is preserved exactly.
DiscreteMeasure mollify(const DiscreteMeasure& mu, double eps);

enum class LatticeOp { max, min };
/// Atomwise and nodewise max/min; a missing atom counts as zero weight.
DiscreteMeasure measure_lattice(const DiscreteMeasure& mu, const DiscreteMeasure& nu, LatticeOp op);

}  // namespace emlab
