#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace emlab {

using Point = std::array<double, 3>;
using NodeIndex = std::array<int, 3>;

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

enum class Shape { box, ball };

/// Uniform Cartesian grid over an axis-aligned box, optionally masked to the
/// ball inscribed in a cube. Nodes are either interior (unknowns) or boundary
/// (structurally zero). Interior nodes are numbered in lexicographic order of
/// their grid index, first axis slowest.
class Domain {
 public:
  static constexpr std::ptrdiff_t kBoundary = -1;

  Domain(int dim, std::vector<Interval> bounds, double h, Shape shape = Shape::box);

  /// [0,1]^dim.
  static Domain unit_box(int dim, double h);
  /// Ball of the given radius centered at the origin, gridded on [-R,R]^dim.
  static Domain centered_ball(int dim, double radius, double h);

  int dim() const noexcept;
  double h() const noexcept;
  Shape shape() const noexcept;
  std::span<const Interval> bounds() const noexcept;
  /// h^dim, the Lebesgue weight carried by one node.
  double cell_volume() const noexcept;
  /// Number of interior nodes.
  std::size_t size() const noexcept;
  /// Grid points along an axis, both ends included.
  int points_per_axis(int axis) const noexcept;

  const NodeIndex& index(std::size_t node) const;
  Point coords(std::size_t node) const;
  Point coords_of(const NodeIndex& idx) const;
  /// Interior id of a grid index, or kBoundary for boundary/outside indices.
  std::ptrdiff_t find(const NodeIndex& idx) const;
  /// Interior ids of the 2*dim stencil neighbours (-x,+x,-y,+y,-z,+z);
  /// kBoundary marks a boundary neighbour.
  std::span<const std::ptrdiff_t> neighbors(std::size_t node) const;

  /// True for points of the open domain.
  bool contains(const Point& p) const;
  double boundary_distance(const Point& p) const;
  /// Interior node nearest to p; ties go to the lexicographically smaller index.
  std::size_t nearest_node(const Point& p) const;

  Point center() const;
  /// Ball radius (ball shape) or half the smallest side (box shape).
  double radius() const;
  double diameter() const;

  friend bool operator==(const Domain& a, const Domain& b);

 private:
  struct Grid;
  std::shared_ptr<const Grid> grid_;
};

}  // namespace emlab
