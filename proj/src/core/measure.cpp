#include "emlab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace emlab {

namespace {

bool atom_less(const Atom& a, const Atom& b) {
  return std::tie(a.point, a.singular) < std::tie(b.point, b.singular);
}

std::vector<Atom> canonical(std::vector<Atom> atoms) {
  std::stable_sort(atoms.begin(), atoms.end(), atom_less);
  std::vector<Atom> out;
  for (const Atom& a : atoms) {
    if (!out.empty() && out.back().point == a.point && out.back().singular == a.singular)
      out.back().weight += a.weight;
    else
      out.push_back(a);
  }
  std::erase_if(out, [](const Atom& a) { return a.weight == 0.0; });
  return out;
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(Domain dom, std::vector<Atom> atoms, std::optional<GridFunction> density)
    : dom_(std::move(dom)), density_(std::move(density)) {
  for (const Atom& a : atoms) {
    if (!std::isfinite(a.weight)) throw std::invalid_argument("measure: non-finite atom weight");
    if (!dom_.contains(a.point)) throw std::invalid_argument("measure: atom on or outside the boundary");
  }
  if (density_) require_same_domain(dom_, density_->domain(), "measure density");
  atoms_ = canonical(std::move(atoms));
}

DiscreteMeasure DiscreteMeasure::dirac(const Domain& dom, const Point& p, double weight, bool singular) {
  return DiscreteMeasure(dom, {Atom{p, weight, singular}});
}

DiscreteMeasure DiscreteMeasure::from_density(GridFunction density) {
  Domain dom = density.domain();
  return DiscreteMeasure(std::move(dom), {}, std::move(density));
}

GridFunction DiscreteMeasure::density() const { return density_ ? *density_ : GridFunction(dom_); }

double DiscreteMeasure::tv_norm() const {
  double s = 0.0;
  for (const Atom& a : atoms_) s += std::abs(a.weight);
  if (density_) {
    double d = 0.0;
    for (double v : density_->values()) d += std::abs(v);
    s += d * dom_.cell_volume();
  }
  return s;
}

double DiscreteMeasure::total_mass() const {
  double s = 0.0;
  for (const Atom& a : atoms_) s += a.weight;
  if (density_) {
    double d = 0.0;
    for (double v : density_->values()) d += v;
    s += d * dom_.cell_volume();
  }
  return s;
}

DiscreteMeasure DiscreteMeasure::diffuse_part() const {
  std::vector<Atom> keep;
  for (const Atom& a : atoms_)
    if (!a.singular) keep.push_back(a);
  return DiscreteMeasure(dom_, std::move(keep), density_);
}

DiscreteMeasure DiscreteMeasure::concentrated_part() const {
  std::vector<Atom> keep;
  for (const Atom& a : atoms_)
    if (a.singular) keep.push_back(a);
  return DiscreteMeasure(dom_, std::move(keep));
}

DiscreteMeasure DiscreteMeasure::map_parts(double (*f)(double)) const {
  std::vector<Atom> atoms = atoms_;
  for (Atom& a : atoms) a.weight = f(a.weight);
  std::optional<GridFunction> dens;
  if (density_) dens = density_->map(f);
  return DiscreteMeasure(dom_, std::move(atoms), std::move(dens));
}

DiscreteMeasure DiscreteMeasure::positive_part() const {
  return map_parts([](double w) { return std::max(w, 0.0); });
}

DiscreteMeasure DiscreteMeasure::negative_part() const {
  return map_parts([](double w) { return std::max(-w, 0.0); });
}

DiscreteMeasure DiscreteMeasure::abs() const {
  return map_parts([](double w) { return std::abs(w); });
}

DiscreteMeasure DiscreteMeasure::scaled(double c) const {
  std::vector<Atom> atoms = atoms_;
  for (Atom& a : atoms) a.weight *= c;
  std::optional<GridFunction> dens;
  if (density_) dens = c * *density_;
  return DiscreteMeasure(dom_, std::move(atoms), std::move(dens));
}

bool DiscreteMeasure::is_nonnegative() const {
  for (const Atom& a : atoms_)
    if (a.weight < 0) return false;
  if (density_)
    for (double v : density_->values())
      if (v < 0) return false;
  return true;
}

bool DiscreteMeasure::is_nonpositive() const {
  for (const Atom& a : atoms_)
    if (a.weight > 0) return false;
  if (density_)
    for (double v : density_->values())
      if (v > 0) return false;
  return true;
}

bool DiscreteMeasure::is_zero() const { return is_nonnegative() && is_nonpositive(); }

DiscreteMeasure operator+(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  require_same_domain(a.dom_, b.dom_, "measure +");
  std::vector<Atom> atoms = a.atoms_;
  atoms.insert(atoms.end(), b.atoms_.begin(), b.atoms_.end());
  std::optional<GridFunction> dens;
  if (a.density_ && b.density_)
    dens = *a.density_ + *b.density_;
  else if (a.density_)
    dens = a.density_;
  else if (b.density_)
    dens = b.density_;
  return DiscreteMeasure(a.dom_, std::move(atoms), std::move(dens));
}

DiscreteMeasure operator-(const DiscreteMeasure& a, const DiscreteMeasure& b) { return a + b.scaled(-1.0); }

}  // namespace emlab
