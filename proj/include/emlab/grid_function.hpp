#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "emlab/domain.hpp"

namespace emlab {

/// Real values on the interior nodes of a Domain. Boundary values are zero
/// and never stored.
class GridFunction {
 public:
  /// Zero function.
  explicit GridFunction(Domain dom);
  GridFunction(Domain dom, std::vector<double> values);

  static GridFunction sample(const Domain& dom, const std::function<double(const Point&)>& f);
  static GridFunction constant(const Domain& dom, double c);

  const Domain& domain() const noexcept { return dom_; }
  std::span<const double> values() const& noexcept { return values_; }
  /// Temporaries hand over their storage, so range-for over them is safe.
  std::vector<double> values() && noexcept { return std::move(values_); }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  GridFunction map(const std::function<double(double)>& f) const;

  friend GridFunction operator+(const GridFunction& a, const GridFunction& b);
  friend GridFunction operator-(const GridFunction& a, const GridFunction& b);
  friend GridFunction operator*(double c, const GridFunction& a);

 private:
  Domain dom_;
  std::vector<double> values_;
};

/// Throws std::invalid_argument unless both live on equal domains.
void require_same_domain(const Domain& a, const Domain& b, const char* what);

}  // namespace emlab
