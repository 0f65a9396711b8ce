#include "emlab/grid_ops.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace emlab {

GridFunction laplacian_apply(const GridFunction& u) {
  const Domain& dom = u.domain();
  const double inv_h2 = 1.0 / (dom.h() * dom.h());
  const double diag = 2.0 * dom.dim();
  const auto v = u.values();
  std::vector<double> f(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double s = diag * v[i];
    for (std::ptrdiff_t j : dom.neighbors(i))
      if (j != Domain::kBoundary) s -= v[static_cast<std::size_t>(j)];
    f[i] = s * inv_h2;
  }
  return GridFunction(dom, std::move(f));
}

GridFunction truncate(const GridFunction& u, double kappa) {
  if (!(kappa >= 0.0)) throw std::invalid_argument("truncate: negative level");
  return u.map([kappa](double t) { return std::clamp(t, -kappa, kappa); });
}

Norms norms(const GridFunction& u) {
  Norms n;
  for (double v : u.values()) {
    n.l1 += std::abs(v);
    n.l2 += v * v;
    n.linf = std::max(n.linf, std::abs(v));
  }
  const double w = u.domain().cell_volume();
  n.l1 *= w;
  n.l2 = std::sqrt(n.l2 * w);
  return n;
}

double dist_fn(const GridFunction& u, double t) {
  std::size_t count = 0;
  for (double v : u.values())
    if (std::abs(v) > t) ++count;
  return static_cast<double>(count) * u.domain().cell_volume();
}

double inner(const GridFunction& u, const GridFunction& v) {
  require_same_domain(u.domain(), v.domain(), "inner");
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s * u.domain().cell_volume();
}

namespace {

double edge_value(const GridFunction& u, std::ptrdiff_t j) {
  return j == Domain::kBoundary ? 0.0 : u[static_cast<std::size_t>(j)];
}

}  // namespace

double dirichlet_energy(const GridFunction& u) {
  const Domain& dom = u.domain();
  double s = 0.0;
  for_each_edge(dom, [&](std::size_t i, std::ptrdiff_t j) {
    const double d = u[i] - edge_value(u, j);
    s += d * d;
  });
  return s * std::pow(dom.h(), dom.dim() - 2);
}

double gradient_norm(const GridFunction& u, double q) {
  if (!(q >= 1.0)) throw std::invalid_argument("gradient_norm: q must be >= 1");
  const Domain& dom = u.domain();
  const double h = dom.h();
  double s = 0.0;
  for_each_edge(dom, [&](std::size_t i, std::ptrdiff_t j) { s += std::pow(std::abs(u[i] - edge_value(u, j)) / h, q); });
  return std::pow(s * dom.cell_volume(), 1.0 / q);
}

double gradient_dist_fn(const GridFunction& u, double t) {
  const Domain& dom = u.domain();
  const double h = dom.h();
  std::size_t count = 0;
  for_each_edge(dom, [&](std::size_t i, std::ptrdiff_t j) {
    if (std::abs(u[i] - edge_value(u, j)) / h > t) ++count;
  });
  return static_cast<double>(count) * dom.cell_volume();
}

GridFunction project_measure(const DiscreteMeasure& mu) {
  const Domain& dom = mu.domain();
  const GridFunction dens = mu.density();
  std::vector<double> f(dens.values().begin(), dens.values().end());
  const double inv_vol = 1.0 / dom.cell_volume();
  for (const Atom& a : mu.atoms()) f[dom.nearest_node(a.point)] += a.weight * inv_vol;
  return GridFunction(dom, std::move(f));
}

double pairing(const DiscreteMeasure& mu, const GridFunction& u) {
  require_same_domain(mu.domain(), u.domain(), "pairing");
  return inner(project_measure(mu), u);
}

namespace {

double bump(double r, double eps) {
  const double x = r / eps;
  return x < 1.0 ? std::exp(-1.0 / (1.0 - x * x)) : 0.0;
}

// Adds mass m spread with the normalized kernel around p into f (values are
// node masses, not densities).
void spread(const Domain& dom, const Point& p, double m, double eps, std::vector<double>& f) {
  const int dim = dom.dim();
  const double h = dom.h();
  const auto bounds = dom.bounds();
  NodeIndex lo{0, 0, 0}, hi{0, 0, 0};
  for (int a = 0; a < dim; ++a) {
    lo[a] = static_cast<int>(std::floor((p[a] - eps - bounds[a].lo) / h));
    hi[a] = static_cast<int>(std::ceil((p[a] + eps - bounds[a].lo) / h));
  }
  std::vector<std::pair<std::size_t, double>> w;
  double total = 0.0;
  for (int i = lo[0]; i <= hi[0]; ++i)
    for (int j = lo[1]; j <= hi[1]; ++j)
      for (int k = lo[2]; k <= hi[2]; ++k) {
        const auto id = dom.find({i, j, k});
        if (id == Domain::kBoundary) continue;
        const Point c = dom.coords(static_cast<std::size_t>(id));
        double r2 = 0.0;
        for (int a = 0; a < dim; ++a) r2 += (c[a] - p[a]) * (c[a] - p[a]);
        const double b = bump(std::sqrt(r2), eps);
        if (b > 0.0) {
          w.emplace_back(static_cast<std::size_t>(id), b);
          total += b;
        }
      }
  if (w.empty() || !(total > 0.0)) {
    f[dom.nearest_node(p)] += m;
    return;
  }
  for (const auto& [id, b] : w) f[id] += m * b / total;
}

}  // namespace

DiscreteMeasure mollify(const DiscreteMeasure& mu, double eps) {
  const Domain& dom = mu.domain();
  if (!(eps >= dom.h())) throw std::invalid_argument("mollify: eps must be >= h");
  const double vol = dom.cell_volume();
  std::vector<double> mass(dom.size(), 0.0);
  for (const Atom& a : mu.atoms()) spread(dom, a.point, a.weight, eps, mass);
  if (mu.has_density()) {
    const GridFunction d = mu.density();
    for (std::size_t i = 0; i < d.size(); ++i)
      if (d[i] != 0.0) spread(dom, dom.coords(i), d[i] * vol, eps, mass);
  }
  for (double& v : mass) v /= vol;
  return DiscreteMeasure::from_density(GridFunction(dom, std::move(mass)));
}

DiscreteMeasure measure_lattice(const DiscreteMeasure& mu, const DiscreteMeasure& nu, LatticeOp op) {
  require_same_domain(mu.domain(), nu.domain(), "measure_lattice");
  auto pick = [op](double a, double b) { return op == LatticeOp::max ? std::max(a, b) : std::min(a, b); };

  // Align atoms by point; weights of equal points are summed per side.
  struct Side {
    double w = 0.0;
    bool singular = false;
    bool present = false;
  };
  std::map<Point, std::pair<Side, Side>> table;
  for (const Atom& a : mu.atoms()) {
    Side& s = table[a.point].first;
    s.w += a.weight;
    s.singular = s.singular || a.singular;
    s.present = true;
  }
  for (const Atom& a : nu.atoms()) {
    Side& s = table[a.point].second;
    s.w += a.weight;
    s.singular = s.singular || a.singular;
    s.present = true;
  }
  std::vector<Atom> atoms;
  for (const auto& [p, sides] : table) {
    const auto& [x, y] = sides;
    const double w = pick(x.w, y.w);
    bool singular = false;
    if (x.present && w == x.w)
      singular = x.singular;
    else if (y.present && w == y.w)
      singular = y.singular;
    atoms.push_back({p, w, singular});
  }

  std::optional<GridFunction> dens;
  if (mu.has_density() || nu.has_density()) {
    const GridFunction a = mu.density();
    const GridFunction b = nu.density();
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = pick(a[i], b[i]);
    dens = GridFunction(mu.domain(), std::move(v));
  }
  return DiscreteMeasure(mu.domain(), std::move(atoms), std::move(dens));
}

}  // namespace emlab
