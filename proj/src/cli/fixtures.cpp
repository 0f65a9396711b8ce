#include "fixtures.hpp"

#include <algorithm>

namespace emlab::cli {

Rng make_rng(std::uint64_t seed, const std::string& tag) {
  std::vector<std::uint32_t> words{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  for (unsigned char ch : tag) words.push_back(ch);
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

GridFunction random_fn(const Domain& dom, Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(dom.size());
  for (double& x : v) x = d(rng);
  return GridFunction(dom, std::move(v));
}

DiscreteMeasure random_measure(const Domain& dom, Rng& rng, double lo, double hi, int atoms) {
  GridFunction dens = random_fn(dom, rng, lo, hi);
  std::uniform_int_distribution<std::size_t> node(0, dom.size() - 1);
  std::uniform_real_distribution<double> w(lo, hi);
  std::vector<Atom> at;
  for (int k = 0; k < atoms; ++k) at.push_back({dom.coords(node(rng)), w(rng), false});
  return DiscreteMeasure(dom, std::move(at), std::move(dens));
}

PointMeasure random_point_measure(Rng& rng, int n, int dim, double wmin, double wmax) {
  std::uniform_real_distribution<double> x(0.0, 1.0), w(wmin, wmax);
  PointMeasure m;
  m.dim = dim;
  for (int k = 0; k < n; ++k) {
    Point p{0, 0, 0};
    for (int a = 0; a < dim; ++a) p[a] = x(rng);
    m.points.push_back(p);
    m.weights.push_back(w(rng));
  }
  return m;
}

PointSet support(const PointMeasure& m) { return {m.dim, m.points, 0.0}; }

bool frostman_by_subsets(const PointMeasure& nu, double alpha, double s, double delta) {
  const std::vector<double> h = hausdorff_table(support(nu), s, delta);
  for (std::uint32_t m = 1; m < h.size(); ++m)
    if (nu.mass(m) > alpha * h[m] * (1 + 1e-12)) return false;
  return true;
}

void Tally::add(const Check& c) { add(c.lhs, c.rhs, c.pass); }

void Tally::add(double lhs, double rhs, bool pass) {
  ++count_;
  worst_ = std::max(worst_, lhs - rhs);
  pass_ = pass_ && pass;
}

Check Tally::row() const { return Check{name_, count_ ? worst_ : 0.0, 0.0, pass_ && count_ > 0}; }

}  // namespace emlab::cli
