#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "emlab/check.hpp"
#include "emlab/geom.hpp"
#include "emlab/measure.hpp"

namespace emlab::cli {

using Rng = std::mt19937_64;

/// Independent stream per (seed, tag); the same pair always gives the same
/// sequence.
Rng make_rng(std::uint64_t seed, const std::string& tag);

GridFunction random_fn(const Domain& dom, Rng& rng, double lo, double hi);
/// Density in [lo, hi] plus up to `atoms` atoms with weights in [lo, hi].
DiscreteMeasure random_measure(const Domain& dom, Rng& rng, double lo, double hi, int atoms = 0);
/// n atoms in [0,1]^dim with weights in [wmin, wmax].
PointMeasure random_point_measure(Rng& rng, int n, int dim, double wmin, double wmax);
PointSet support(const PointMeasure& m);

/// nu(B) <= alpha H^s_delta(B) over every subset of the support.
bool frostman_by_subsets(const PointMeasure& nu, double alpha, double s, double delta);

/// Folds many instance checks into one row: lhs = worst lhs - rhs,
/// rhs = 0, pass iff all passed.
class Tally {
 public:
  explicit Tally(std::string name) : name_(std::move(name)) {}
  void add(const Check& c);
  void add(double lhs, double rhs, bool pass);
  int count() const { return count_; }
  Check row() const;

 private:
  std::string name_;
  double worst_ = -std::numeric_limits<double>::infinity();
  bool pass_ = true;
  int count_ = 0;
};

}  // namespace emlab::cli
