#pragma once

#include <cstddef>
#include <vector>

#include "emlab/linear.hpp"

namespace emlab {

struct CapacityResult {
  /// Sorted interior node ids.
  std::vector<std::size_t> K;
  /// Capacitary potential: 1 on K, discrete harmonic off K, 0 on the boundary.
  GridFunction u;
  /// dirichlet_energy(u).
  double cap = 0.0;
  /// -Delta u as a density; supported on K, total mass cap.
  DiscreteMeasure nu;
};

/// Harmonic extension of the indicator of K. Throws std::invalid_argument
/// for ids that are not interior nodes.
CapacityResult capacitary_potential(const Domain& dom, std::vector<std::size_t> K);

/// l1 mass of Delta (u_K - eps)^+ against 2 cap, relative error <= rel_tol.
/// The mass includes boundary nodes, where (u_K - eps)^+ extends by zero.
Check cap_equivalence_check(const CapacityResult& result, double eps, double rel_tol = 0.2);
/// The l1 mass above.
double level_laplacian_mass(const CapacityResult& result, double eps);

struct LevelRow {
  double s = 0.0;
  double cap = 0.0;
  /// s cap({|u| > s}) / tv(mu); 0 when mu = 0.
  double statistic = 0.0;
};

std::vector<LevelRow> capacitary_level_estimate(const GridFunction& u, const DiscreteMeasure& mu,
                                                const std::vector<double>& s_values);

/// check_refinement on the largest statistic of each table (coarse to fine).
Check check_level_refinement(const std::vector<std::vector<LevelRow>>& tables, double factor = 1.5);

/// Interior ids whose coordinates lie in the closed box [lo, hi].
std::vector<std::size_t> nodes_in_box(const Domain& dom, const Point& lo, const Point& hi);

}  // namespace emlab
