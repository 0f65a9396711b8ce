#include "config.hpp"

#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "emlab/measure_io.hpp"

namespace emlab::cli {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

std::vector<std::string> split_words(const std::string& text) {
  std::string t = text;
  for (char& ch : t)
    if (ch == ',') ch = ' ';
  std::istringstream is(t);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

double parse_value(const std::string& text, const std::string& key) {
  const std::string t = trim(text);
  if (t == "inf") return std::numeric_limits<double>::infinity();
  try {
    return parse_real(t);
  } catch (const std::exception&) {
    throw ConfigError("config: '" + key + "' expects a number, got '" + t + "'");
  }
}

Config Config::parse(std::istream& is, const std::string& origin) {
  Config c;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty() || key.find(' ') != std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": bad key '" + key + "'");
    c.add(key, trim(line.substr(eq + 1)));
  }
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  Config c = parse(in, path);
  c.base_dir = std::filesystem::path(path).parent_path().string();
  if (c.base_dir.empty()) c.base_dir = ".";
  return c;
}

void Config::set(const std::string& key, const std::string& value) { values_[key] = {value}; }
void Config::add(const std::string& key, const std::string& value) { values_[key].push_back(value); }
bool Config::has(const std::string& key) const { return values_.count(key) > 0; }

const std::vector<std::string>& Config::all(const std::string& key) const {
  static const std::vector<std::string> none;
  const auto it = values_.find(key);
  return it == values_.end() ? none : it->second;
}

std::string Config::str(const std::string& key) const {
  const auto& v = all(key);
  if (v.empty()) throw ConfigError("config: missing '" + key + "'");
  if (v.size() > 1) throw ConfigError("config: '" + key + "' given more than once");
  return v.front();
}

std::string Config::str(const std::string& key, const std::string& fallback) const {
  return has(key) ? str(key) : fallback;
}

double Config::real(const std::string& key) const { return parse_value(str(key), key); }
double Config::real(const std::string& key, double fallback) const { return has(key) ? real(key) : fallback; }

int Config::integer(const std::string& key, int fallback) const {
  if (!has(key)) return fallback;
  const std::string s = str(key);
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: '" + key + "' expects an integer, got '" + s + "'");
  }
}

std::vector<double> Config::reals(const std::string& key) const {
  std::vector<double> out;
  for (const std::string& line : all(key))
    for (const std::string& w : split_words(line)) out.push_back(parse_value(w, key));
  if (out.empty()) throw ConfigError("config: missing '" + key + "'");
  return out;
}

std::vector<double> Config::reals(const std::string& key, std::vector<double> fallback) const {
  return has(key) ? reals(key) : fallback;
}

void Config::require_known(const std::set<std::string>& keys) const {
  for (const auto& [k, v] : values_)
    if (!keys.count(k)) throw ConfigError("config: unknown key '" + k + "'");
}

const std::set<std::string>& domain_keys() {
  static const std::set<std::string> k{"dim", "shape", "bounds", "radius", "h", "hs"};
  return k;
}

const std::set<std::string>& measure_keys() {
  static const std::set<std::string> k{"measure_file", "atom", "density"};
  return k;
}

std::vector<double> grid_sizes(const Config& c) {
  std::vector<double> hs;
  if (c.has("hs"))
    hs = c.reals("hs");
  else if (c.has("h"))
    hs = {c.real("h")};
  else if (!c.has("measure_file"))
    throw ConfigError("config: need 'h' or 'hs'");
  for (double h : hs)
    if (!(h > 0.0)) throw ConfigError("config: grid sizes must be positive");
  return hs;
}

Domain domain_from(const Config& c, double h) {
  const int dim = c.integer("dim", 0);
  if (dim < 1 || dim > 3) throw ConfigError("config: 'dim' must be 1, 2 or 3");
  const std::string shape = c.str("shape", "box");
  try {
    if (shape == "ball") return Domain::centered_ball(dim, c.real("radius", 1.0), h);
    if (shape != "box") throw ConfigError("config: 'shape' must be box or ball");
    std::vector<Interval> b;
    if (c.has("bounds")) {
      const std::vector<double> v = c.reals("bounds");
      if (v.size() != static_cast<std::size_t>(2 * dim)) throw ConfigError("config: 'bounds' needs 2*dim numbers");
      for (int a = 0; a < dim; ++a) b.push_back({v[2 * a], v[2 * a + 1]});
    } else {
      b.assign(dim, Interval{0.0, 1.0});
    }
    return Domain(dim, b, h);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

DiscreteMeasure measure_from(const Config& c, const Domain& dom) {
  if (c.has("measure_file")) {
    std::filesystem::path p = c.str("measure_file");
    if (p.is_relative()) p = std::filesystem::path(c.base_dir) / p;
    try {
      DiscreteMeasure mu = read_measure_file(p.string());
      if (!(mu.domain() == dom)) throw ConfigError("config: measure_file grid differs from the configured grid");
      return mu;
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
  }
  std::vector<Atom> atoms;
  for (const std::string& line : c.all("atom")) {
    std::vector<std::string> w = split_words(line);
    bool singular = false;
    if (!w.empty() && w.back() == "singular") {
      singular = true;
      w.pop_back();
    }
    if (w.size() != static_cast<std::size_t>(dom.dim() + 1))
      throw ConfigError("config: 'atom' needs dim coordinates and a weight");
    Atom a;
    for (int k = 0; k < dom.dim(); ++k) a.point[k] = parse_value(w[k], "atom");
    a.weight = parse_value(w.back(), "atom");
    a.singular = singular;
    if (!dom.contains(a.point)) throw ConfigError("config: atom outside the domain");
    atoms.push_back(a);
  }
  std::optional<GridFunction> dens;
  if (c.has("density")) dens = GridFunction::constant(dom, c.real("density"));
  return DiscreteMeasure(dom, std::move(atoms), std::move(dens));
}

Nonlinearity nonlinearity_from(const Config& c) {
  try {
    return parse_nonlinearity(c.str("g", "zero"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

SolverKnobs knobs_from(const Config& c) {
  SolverKnobs k;
  k.tol = c.real("tol", 0.0);
  k.max_iter = c.integer("max_iter", k.max_iter);
  k.theta = c.real("theta", k.theta);
  return k;
}

}  // namespace emlab::cli
