#pragma once

#include <istream>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "emlab/measure.hpp"
#include "emlab/nonlinearity.hpp"
#include "emlab/semilinear.hpp"

namespace emlab::cli {

/// Bad config text or values; maps to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// key = value lines; '#' starts a comment. Repeated keys accumulate.
class Config {
 public:
  static Config parse(std::istream& is, const std::string& origin = "<config>");
  static Config load(const std::string& path);

  /// Replaces every value of key.
  void set(const std::string& key, const std::string& value);
  void add(const std::string& key, const std::string& value);

  bool has(const std::string& key) const;
  const std::vector<std::string>& all(const std::string& key) const;
  std::string str(const std::string& key) const;
  std::string str(const std::string& key, const std::string& fallback) const;
  double real(const std::string& key) const;
  double real(const std::string& key, double fallback) const;
  int integer(const std::string& key, int fallback) const;
  /// Whitespace or comma separated reals.
  std::vector<double> reals(const std::string& key) const;
  std::vector<double> reals(const std::string& key, std::vector<double> fallback) const;

  void require_known(const std::set<std::string>& keys) const;

  /// Directory of the config file; relative paths resolve against it.
  std::string base_dir = ".";

 private:
  std::map<std::string, std::vector<std::string>> values_;
};

/// Real with "inf", fractions and "pi" factors.
double parse_value(const std::string& text, const std::string& key);
std::vector<std::string> split_words(const std::string& text);

/// Keys read by the helpers below.
const std::set<std::string>& domain_keys();
const std::set<std::string>& measure_keys();

/// h list from "hs", else the single "h".
std::vector<double> grid_sizes(const Config& c);
/// dim, shape = box | ball, bounds = lo hi ..., radius.
Domain domain_from(const Config& c, double h);
/// measure_file, or atom lines "x [y [z]] w [singular]" plus a constant
/// density.
DiscreteMeasure measure_from(const Config& c, const Domain& dom);
Nonlinearity nonlinearity_from(const Config& c);
SolverKnobs knobs_from(const Config& c);

}  // namespace emlab::cli
