#include "emlab/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace emlab {

struct Domain::Grid {
  int dim = 1;
  std::vector<Interval> bounds;
  double h = 0.0;
  Shape shape = Shape::box;
  std::array<int, 3> n{1, 1, 1};  // points per axis
  std::vector<std::ptrdiff_t> lookup;  // flat grid index -> interior id
  std::vector<NodeIndex> nodes;
  std::vector<std::ptrdiff_t> nbrs;  // 2*dim per node
  Point center{0, 0, 0};
  double radius = 0.0;

  std::size_t flat(const NodeIndex& idx) const {
    std::size_t f = 0;
    for (int a = 0; a < dim; ++a) f = f * static_cast<std::size_t>(n[a]) + static_cast<std::size_t>(idx[a]);
    return f;
  }

  bool inside_bounds(const NodeIndex& idx) const {
    for (int a = 0; a < dim; ++a)
      if (idx[a] < 0 || idx[a] >= n[a]) return false;
    return true;
  }

  Point coords(const NodeIndex& idx) const {
    Point p{0, 0, 0};
    for (int a = 0; a < dim; ++a) p[a] = bounds[a].lo + h * idx[a];
    return p;
  }

  bool is_interior(const NodeIndex& idx) const {
    for (int a = 0; a < dim; ++a)
      if (idx[a] <= 0 || idx[a] >= n[a] - 1) return false;
    if (shape == Shape::ball) {
      const Point p = coords(idx);
      double r2 = 0.0;
      for (int a = 0; a < dim; ++a) r2 += (p[a] - center[a]) * (p[a] - center[a]);
      return r2 < radius * radius * (1.0 - 1e-12);
    }
    return true;
  }
};

namespace {

void fail(const std::string& msg) { throw std::invalid_argument("domain: " + msg); }

}  // namespace

Domain::Domain(int dim, std::vector<Interval> bounds, double h, Shape shape) {
  if (dim < 1 || dim > 3) fail("dim must be 1, 2 or 3");
  if (static_cast<int>(bounds.size()) != dim) fail("need one interval per axis");
  if (!(h > 0.0) || !std::isfinite(h)) fail("h must be positive");

  auto g = std::make_shared<Grid>();
  g->dim = dim;
  g->bounds = std::move(bounds);
  g->h = h;
  g->shape = shape;
  for (int a = 0; a < dim; ++a) {
    const double len = g->bounds[a].hi - g->bounds[a].lo;
    if (!(len > 0.0)) fail("empty interval on axis " + std::to_string(a));
    const double cells = len / h;
    const double rounded = std::round(cells);
    if (std::abs(cells - rounded) > 1e-9 * std::max(1.0, cells))
      fail("interval length is not a multiple of h on axis " + std::to_string(a));
    g->n[a] = static_cast<int>(rounded) + 1;
    if (g->n[a] < 3) fail("fewer than 3 nodes on axis " + std::to_string(a));
    g->center[a] = 0.5 * (g->bounds[a].lo + g->bounds[a].hi);
  }
  if (shape == Shape::ball) {
    const double len0 = g->bounds[0].hi - g->bounds[0].lo;
    for (int a = 1; a < dim; ++a)
      if (std::abs((g->bounds[a].hi - g->bounds[a].lo) - len0) > 1e-12 * len0)
        fail("ball shape needs a cube of bounds");
    g->radius = 0.5 * len0;
  } else {
    g->radius = std::numeric_limits<double>::infinity();
    for (int a = 0; a < dim; ++a)
      g->radius = std::min(g->radius, 0.5 * (g->bounds[a].hi - g->bounds[a].lo));
  }

  std::size_t total = 1;
  for (int a = 0; a < dim; ++a) total *= static_cast<std::size_t>(g->n[a]);
  g->lookup.assign(total, kBoundary);

  NodeIndex idx{0, 0, 0};
  for (std::size_t f = 0; f < total; ++f) {
    std::size_t rem = f;
    for (int a = dim - 1; a >= 0; --a) {
      idx[a] = static_cast<int>(rem % static_cast<std::size_t>(g->n[a]));
      rem /= static_cast<std::size_t>(g->n[a]);
    }
    if (g->is_interior(idx)) {
      g->lookup[f] = static_cast<std::ptrdiff_t>(g->nodes.size());
      g->nodes.push_back(idx);
    }
  }
  if (g->nodes.empty()) fail("no interior node");

  const int stencil = 2 * dim;
  g->nbrs.resize(g->nodes.size() * static_cast<std::size_t>(stencil));
  for (std::size_t k = 0; k < g->nodes.size(); ++k) {
    for (int a = 0; a < dim; ++a) {
      for (int s = 0; s < 2; ++s) {
        NodeIndex j = g->nodes[k];
        j[a] += s == 0 ? -1 : 1;
        g->nbrs[k * stencil + 2 * a + s] = g->inside_bounds(j) ? g->lookup[g->flat(j)] : kBoundary;
      }
    }
  }
  grid_ = std::move(g);
}

Domain Domain::unit_box(int dim, double h) {
  return Domain(dim, std::vector<Interval>(static_cast<std::size_t>(dim), Interval{0.0, 1.0}), h);
}

Domain Domain::centered_ball(int dim, double radius, double h) {
  return Domain(dim, std::vector<Interval>(static_cast<std::size_t>(dim), Interval{-radius, radius}), h,
                Shape::ball);
}

int Domain::dim() const noexcept { return grid_->dim; }
double Domain::h() const noexcept { return grid_->h; }
Shape Domain::shape() const noexcept { return grid_->shape; }
std::span<const Interval> Domain::bounds() const noexcept { return grid_->bounds; }
double Domain::cell_volume() const noexcept { return std::pow(grid_->h, grid_->dim); }
std::size_t Domain::size() const noexcept { return grid_->nodes.size(); }
int Domain::points_per_axis(int axis) const noexcept { return grid_->n[static_cast<std::size_t>(axis)]; }

const NodeIndex& Domain::index(std::size_t node) const { return grid_->nodes.at(node); }

Point Domain::coords(std::size_t node) const { return grid_->coords(grid_->nodes.at(node)); }

Point Domain::coords_of(const NodeIndex& idx) const { return grid_->coords(idx); }

std::ptrdiff_t Domain::find(const NodeIndex& idx) const {
  if (!grid_->inside_bounds(idx)) return kBoundary;
  return grid_->lookup[grid_->flat(idx)];
}

std::span<const std::ptrdiff_t> Domain::neighbors(std::size_t node) const {
  const std::size_t stencil = 2 * static_cast<std::size_t>(grid_->dim);
  return {grid_->nbrs.data() + node * stencil, stencil};
}

bool Domain::contains(const Point& p) const {
  const Grid& g = *grid_;
  for (int a = 0; a < g.dim; ++a)
    if (!(p[a] > g.bounds[a].lo && p[a] < g.bounds[a].hi)) return false;
  if (g.shape == Shape::ball) {
    double r2 = 0.0;
    for (int a = 0; a < g.dim; ++a) r2 += (p[a] - g.center[a]) * (p[a] - g.center[a]);
    return r2 < g.radius * g.radius;
  }
  return true;
}

double Domain::boundary_distance(const Point& p) const {
  const Grid& g = *grid_;
  if (g.shape == Shape::ball) {
    double r2 = 0.0;
    for (int a = 0; a < g.dim; ++a) r2 += (p[a] - g.center[a]) * (p[a] - g.center[a]);
    return std::max(0.0, g.radius - std::sqrt(r2));
  }
  double d = std::numeric_limits<double>::infinity();
  for (int a = 0; a < g.dim; ++a) d = std::min({d, p[a] - g.bounds[a].lo, g.bounds[a].hi - p[a]});
  return std::max(0.0, d);
}

std::size_t Domain::nearest_node(const Point& p) const {
  if (!contains(p)) throw std::invalid_argument("domain: point is on or outside the boundary");
  const Grid& g = *grid_;
  // Rounding with ties to the lower index, then a small window search for
  // the nearest interior node (needed only near a curved boundary).
  NodeIndex base{0, 0, 0};
  for (int a = 0; a < g.dim; ++a) {
    const double t = (p[a] - g.bounds[a].lo) / g.h;
    base[a] = static_cast<int>(std::ceil(t - 0.5));
  }
  if (const auto id = find(base); id != kBoundary) return static_cast<std::size_t>(id);

  double best = std::numeric_limits<double>::infinity();
  std::ptrdiff_t best_id = kBoundary;
  for (int w = 1; w <= 4 && best_id == kBoundary; ++w) {
    NodeIndex lo{0, 0, 0}, hi{0, 0, 0};
    for (int a = 0; a < 3; ++a) {
      lo[a] = a < g.dim ? base[a] - w : 0;
      hi[a] = a < g.dim ? base[a] + w : 0;
    }
    for (int i = lo[0]; i <= hi[0]; ++i)
      for (int j = lo[1]; j <= hi[1]; ++j)
        for (int k = lo[2]; k <= hi[2]; ++k) {
          const NodeIndex q{i, j, k};
          const auto id = find(q);
          if (id == kBoundary) continue;
          const Point c = g.coords(q);
          double d2 = 0.0;
          for (int a = 0; a < g.dim; ++a) d2 += (c[a] - p[a]) * (c[a] - p[a]);
          if (d2 < best) {  // loop order is lexicographic, strict '<' keeps the first
            best = d2;
            best_id = id;
          }
        }
  }
  if (best_id == kBoundary) throw std::invalid_argument("domain: no interior node near point");
  return static_cast<std::size_t>(best_id);
}

Point Domain::center() const { return grid_->center; }

double Domain::radius() const { return grid_->radius; }

double Domain::diameter() const {
  if (grid_->shape == Shape::ball) return 2.0 * grid_->radius;
  double s = 0.0;
  for (int a = 0; a < grid_->dim; ++a) {
    const double len = grid_->bounds[a].hi - grid_->bounds[a].lo;
    s += len * len;
  }
  return std::sqrt(s);
}

bool operator==(const Domain& a, const Domain& b) {
  if (a.grid_ == b.grid_) return true;
  const auto& x = *a.grid_;
  const auto& y = *b.grid_;
  if (x.dim != y.dim || x.shape != y.shape || x.h != y.h) return false;
  for (int i = 0; i < x.dim; ++i)
    if (x.bounds[i].lo != y.bounds[i].lo || x.bounds[i].hi != y.bounds[i].hi) return false;
  return true;
}

}  // namespace emlab
