#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "emlab/check.hpp"
#include "emlab/domain.hpp"

namespace emlab {

inline constexpr double kInfDelta = std::numeric_limits<double>::infinity();
/// Largest finite set handled by exact covers and subset enumeration.
inline constexpr std::size_t kExactLimit = 12;

/// Finite set of points, or a union of open balls of common radius rho
/// around them when rho > 0.
struct PointSet {
  int dim = 2;
  std::vector<Point> points;
  double rho = 0.0;
};

/// Nonnegative weights on finitely many points.
struct PointMeasure {
  int dim = 2;
  std::vector<Point> points;
  std::vector<double> weights;

  double mass() const;
  double mass(std::uint32_t mask) const;
  /// Restriction to the listed atoms.
  PointMeasure restricted(std::span<const std::size_t> ids) const;
};

/// pi^{s/2} / Gamma(s/2 + 1).
double omega(double s);

struct Ball {
  Point center{0, 0, 0};
  double r = 0.0;
};

/// Smallest closed ball containing the points (Welzl).
Ball enclosing_ball(std::span<const Point> pts);

struct Cover {
  std::vector<Ball> balls;
  /// sum omega_s r^s.
  double value = 0.0;
};

enum class CoverMode { exact, greedy };

/// Hausdorff content H^s_delta by covers with open balls of radius <= delta.
/// Exact mode minimizes over all partitions (at most kExactLimit points);
/// greedy mode merges clusters while the value does not grow and is an upper
/// bound for the exact one.
Cover hausdorff_cover(const PointSet& a, double s, double delta, CoverMode mode = CoverMode::exact);
double hausdorff_outer(const PointSet& a, double s, double delta, CoverMode mode = CoverMode::exact);
/// Exact H^s_delta of every subset, indexed by bit mask.
std::vector<double> hausdorff_table(const PointSet& a, double s, double delta);

/// nu(B(x, r)) <= alpha omega_s r^s for every open ball with r <= delta.
/// Candidate centers are circumcenters of up to dim + 1 atoms, which
/// include the center of the smallest ball around any subset.
bool frostman_check(const PointMeasure& nu, double alpha, double s, double delta);

/// Set function on subsets of the support, indexed by bit mask.
using SetOracle = std::function<double(std::uint32_t)>;

/// alpha H^s_delta on the support of mu as an oracle.
SetOracle hausdorff_oracle(const PointMeasure& mu, double alpha, double s, double delta);

/// Removes violating sets F (mu(F) > T(F)) with mu(F) >= theta sup until none
/// is left. Returns the kept atom ids E; then mu restricted to E is <= T and
/// T(removed) <= mu(removed). Throws std::invalid_argument when T is not
/// monotone on the support.
std::vector<std::size_t> greedy_decompose(const PointMeasure& mu, const SetOracle& t, double theta = 0.5);

struct StrongApprox {
  std::vector<std::size_t> kept;
  double delta = 0.0;
  double removed_mass = 0.0;
  /// False when the halving budget ran out before removed_mass <= eps.
  bool reached = false;
  int steps = 0;
};

/// For mu <= alpha H^s at the scale of the support and beta > alpha: halve
/// delta until greedy_decompose against beta H^s_delta drops at most eps.
StrongApprox strong_approx(const PointMeasure& mu, double alpha, double s, double eps, double beta);

/// (H^0 - H^0_delta)(B) maximized over subsets B.
double uniform_gap(const PointSet& a, double delta);

struct UniformDelta {
  double delta = 0.0;
  double gap = 0.0;
};

/// s = 0: delta = half the smallest pairwise distance; the gap there is 0.
UniformDelta uniform_convergence_check(const PointSet& a, double s, double eps);

/// Newtonian potential from the radial formula, integrated exactly between
/// atom distances. N = 2 uses log(d / r). Throws std::domain_error when x
/// sits on an atom.
double radial_potential(const PointMeasure& mu, const Point& x, double d);
/// Same potential summed from the kernel.
double kernel_potential(const PointMeasure& mu, const Point& x, double d);

/// Nondecreasing profile on [0, d]: coef[k] r^expo[k] on [breaks[k], breaks[k+1]).
struct RadialProfile {
  std::vector<double> breaks;
  std::vector<double> coef;
  std::vector<double> expo;

  static RadialProfile step(std::vector<double> breaks, std::vector<double> values);
  /// alpha r^s on [eps, d], zero below.
  static RadialProfile cut_power(double alpha, double s, double eps, double d);
  double operator()(double r) const;
  double d() const { return breaks.back(); }
};

/// s d^s / f(d) + 1.
double blop_constant(const RadialProfile& f, double s);
/// int f / r^{s+1} <= log(1 + C d^alpha int f / r^{s+1+alpha}) for
/// 0 <= f <= alpha r^s; both sides in closed form. Throws
/// std::invalid_argument when f is not admissible.
Check blop_1d_check(const RadialProfile& f, double alpha, double s);

/// pi d^2 / (1 - m / 4 pi) for 0 <= m < 4 pi.
double brezis_merle_bound(double m, double d);

}  // namespace emlab
