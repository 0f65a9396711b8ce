#pragma once

#include <optional>
#include <vector>

#include "emlab/grid_function.hpp"

namespace emlab {

struct Atom {
  Point point{0, 0, 0};
  double weight = 0.0;
  /// Marks the atom as part of the concentrated (zero-capacity) component.
  bool singular = false;
};

/// Finite signed measure: weighted atoms plus a density on interior nodes.
/// Atoms are kept canonical: equal (point, flag) pairs merged, zero weights
/// dropped, sorted lexicographically.
class DiscreteMeasure {
 public:
  explicit DiscreteMeasure(Domain dom, std::vector<Atom> atoms = {}, std::optional<GridFunction> density = {});

  static DiscreteMeasure dirac(const Domain& dom, const Point& p, double weight = 1.0, bool singular = false);
  static DiscreteMeasure from_density(GridFunction density);

  const Domain& domain() const noexcept { return dom_; }
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  bool has_density() const noexcept { return density_.has_value(); }
  /// Density values; the zero function when absent.
  GridFunction density() const;

  double tv_norm() const;
  double total_mass() const;

  /// Everything except singular atoms.
  DiscreteMeasure diffuse_part() const;
  /// Singular atoms only.
  DiscreteMeasure concentrated_part() const;
  DiscreteMeasure positive_part() const;
  /// mu^- as a nonnegative measure, so mu = mu^+ - mu^-.
  DiscreteMeasure negative_part() const;
  DiscreteMeasure abs() const;
  DiscreteMeasure scaled(double c) const;

  bool is_nonnegative() const;
  bool is_nonpositive() const;
  bool is_zero() const;

  friend DiscreteMeasure operator+(const DiscreteMeasure& a, const DiscreteMeasure& b);
  friend DiscreteMeasure operator-(const DiscreteMeasure& a, const DiscreteMeasure& b);

 private:
  DiscreteMeasure map_parts(double (*f)(double)) const;

  Domain dom_;
  std::vector<Atom> atoms_;
  std::optional<GridFunction> density_;
};

}  // namespace emlab
