#include "emlab/measure_io.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "emlab/check.hpp"

namespace emlab {

namespace {

double plain_number(const std::string& s) {
  if (s.empty()) return 1.0;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

}  // namespace

double parse_real(const std::string& text) {
  std::string s = text;
  double factor = 1.0;
  if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
    factor = std::numbers::pi;
    s.resize(s.size() - 2);
    if (!s.empty() && s.back() == '*') s.pop_back();
  } else if (s.empty()) {
    throw std::invalid_argument("not a number: ''");
  }
  const auto slash = s.find('/');
  if (slash == std::string::npos) return factor * plain_number(s);
  const double den = plain_number(s.substr(slash + 1));
  if (den == 0.0) throw std::invalid_argument("division by zero in '" + text + "'");
  return factor * plain_number(s.substr(0, slash)) / den;
}

DiscreteMeasure read_measure(std::istream& is) {
  std::vector<std::string> header;
  std::vector<std::string> body;
  std::string line;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string tok;
    std::vector<std::string> toks;
    while (ls >> tok) toks.push_back(tok);
    if (toks.empty()) continue;
    if (header.empty())
      header = toks;
    else
      body.insert(body.end(), toks.begin(), toks.end());
  }
  if (header.empty()) throw std::invalid_argument("measure file: missing header");
  const int dim = static_cast<int>(parse_real(header[0]));
  if (dim < 1 || dim > 3 || std::to_string(dim) != header[0])
    throw std::invalid_argument("measure file: dim must be 1, 2 or 3");
  const std::size_t need = 2 + 2 * static_cast<std::size_t>(dim);
  if (header.size() != need && !(header.size() == need + 1 && header.back() == "ball"))
    throw std::invalid_argument("measure file: header must be 'dim h lo hi ... [ball]'");
  const double h = parse_real(header[1]);
  std::vector<Interval> bounds;
  for (int a = 0; a < dim; ++a)
    bounds.push_back({parse_real(header[2 + 2 * a]), parse_real(header[3 + 2 * a])});
  Domain dom(dim, bounds, h, header.size() == need + 1 ? Shape::ball : Shape::box);

  std::vector<Atom> atoms;
  std::optional<std::vector<double>> density;
  std::size_t k = 0;
  while (k < body.size()) {
    if (body[k] == "atom") {
      if (k + 1 + dim + 1 > body.size()) throw std::invalid_argument("measure file: truncated atom line");
      Atom a;
      for (int d = 0; d < dim; ++d) a.point[d] = parse_real(body[k + 1 + d]);
      a.weight = parse_real(body[k + 1 + dim]);
      k += 2 + dim;
      if (k < body.size() && body[k] == "singular") {
        a.singular = true;
        ++k;
      }
      atoms.push_back(a);
    } else if (body[k] == "density") {
      if (density) throw std::invalid_argument("measure file: more than one density block");
      density.emplace();
      ++k;
      while (k < body.size() && body[k] != "atom" && body[k] != "density") density->push_back(parse_real(body[k++]));
      if (density->size() != dom.size())
        throw std::invalid_argument("measure file: density needs " + std::to_string(dom.size()) + " values, got " +
                                    std::to_string(density->size()));
    } else {
      throw std::invalid_argument("measure file: unexpected token '" + body[k] + "'");
    }
  }
  std::optional<GridFunction> dens;
  if (density) dens = GridFunction(dom, std::move(*density));
  return DiscreteMeasure(dom, std::move(atoms), std::move(dens));
}

DiscreteMeasure read_measure_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open measure file '" + path + "'");
  return read_measure(in);
}

void write_measure(std::ostream& os, const DiscreteMeasure& mu) {
  const Domain& dom = mu.domain();
  os << dom.dim() << ' ' << fmt(dom.h());
  for (const Interval& b : dom.bounds()) os << ' ' << fmt(b.lo) << ' ' << fmt(b.hi);
  if (dom.shape() == Shape::ball) os << " ball";
  os << '\n';
  for (const Atom& a : mu.atoms()) {
    os << "atom";
    for (int d = 0; d < dom.dim(); ++d) os << ' ' << fmt(a.point[d]);
    os << ' ' << fmt(a.weight);
    if (a.singular) os << " singular";
    os << '\n';
  }
  if (mu.has_density()) {
    os << "density";
    const GridFunction d = mu.density();
    for (std::size_t i = 0; i < d.size(); ++i) os << (i % 8 == 0 ? "\n" : " ") << fmt(d[i]);
    os << '\n';
  }
}

void write_grid_csv(std::ostream& os, const GridFunction& u) {
  const Domain& dom = u.domain();
  static const char* axis[] = {"x", "y", "z"};
  for (int d = 0; d < dom.dim(); ++d) os << axis[d] << ',';
  os << "value\n";
  for (std::size_t i = 0; i < u.size(); ++i) {
    const Point p = dom.coords(i);
    for (int d = 0; d < dom.dim(); ++d) os << fmt(p[d]) << ',';
    os << fmt(u[i]) << '\n';
  }
}

}  // namespace emlab
