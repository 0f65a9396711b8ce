#include "emlab/grid_function.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace emlab {

void require_same_domain(const Domain& a, const Domain& b, const char* what) {
  if (!(a == b)) throw std::invalid_argument(std::string(what) + ": mismatched domains");
}

GridFunction::GridFunction(Domain dom) : dom_(std::move(dom)), values_(dom_.size(), 0.0) {}

GridFunction::GridFunction(Domain dom, std::vector<double> values)
    : dom_(std::move(dom)), values_(std::move(values)) {
  if (values_.size() != dom_.size())
    throw std::invalid_argument("grid function: expected " + std::to_string(dom_.size()) + " values, got " +
                                std::to_string(values_.size()));
  for (double v : values_)
    if (!std::isfinite(v)) throw std::invalid_argument("grid function: non-finite value");
}

GridFunction GridFunction::sample(const Domain& dom, const std::function<double(const Point&)>& f) {
  std::vector<double> v(dom.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(dom.coords(i));
  return GridFunction(dom, std::move(v));
}

GridFunction GridFunction::constant(const Domain& dom, double c) {
  return GridFunction(dom, std::vector<double>(dom.size(), c));
}

GridFunction GridFunction::map(const std::function<double(double)>& f) const {
  std::vector<double> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(values_[i]);
  return GridFunction(dom_, std::move(v));
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  require_same_domain(a.dom_, b.dom_, "grid function +");
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values_[i] + b.values_[i];
  return GridFunction(a.dom_, std::move(v));
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
  require_same_domain(a.dom_, b.dom_, "grid function -");
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values_[i] - b.values_[i];
  return GridFunction(a.dom_, std::move(v));
}

GridFunction operator*(double c, const GridFunction& a) {
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = c * a.values_[i];
  return GridFunction(a.dom_, std::move(v));
}

}  // namespace emlab
