#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

namespace emlab {

enum class Family { polynomial, exponential, custom };

/// Scalar nonlinearity g with primitive G (G(0) = 0) and declared structure.
class Nonlinearity {
 public:
  struct Spec {
    std::string name;
    std::function<double(double)> g;
    std::function<double(double)> G;
    /// Optional exact derivative; central differences otherwise.
    std::function<double(double)> dg;
    /// Optional exact Lipschitz constant of g on [a, b].
    std::function<double(double, double)> lipschitz;
    Family family = Family::custom;
    double exponent = 0.0;
    bool sign_condition = false;
    bool nondecreasing = false;
    /// sup |g|, infinite when unbounded.
    double bound = std::numeric_limits<double>::infinity();
  };

  /// Validates the declared flags on the test lattice; throws on mismatch.
  explicit Nonlinearity(Spec spec);

  static Nonlinearity zero();
  static Nonlinearity linear(double c = 1.0);
  /// |t|^{p-1} t.
  static Nonlinearity power(double p);
  /// e^t - 1.
  static Nonlinearity exponential();
  /// tanh t, bounded.
  static Nonlinearity bounded_tanh();

  /// min{g, n}.
  Nonlinearity capped(double n) const;
  /// g(clamp(t, -kappa, kappa)).
  Nonlinearity frozen(double kappa) const;

  double operator()(double t) const { return s_->g(t); }
  double primitive(double t) const { return s_->G(t); }
  double derivative(double t) const;
  /// Upper bound for the Lipschitz constant of g on [a, b]; exact for the
  /// built-in families, sampled with a safety factor otherwise.
  double lipschitz(double a, double b) const;

  const std::string& name() const noexcept { return s_->name; }
  Family family() const noexcept { return s_->family; }
  double exponent() const noexcept { return s_->exponent; }
  bool sign_condition() const noexcept { return s_->sign_condition; }
  bool nondecreasing() const noexcept { return s_->nondecreasing; }
  double bound() const noexcept { return s_->bound; }
  bool bounded() const noexcept;

  /// Points at which the declared flags are checked.
  static const std::vector<double>& test_lattice();

 private:
  std::shared_ptr<const Spec> s_;
};

/// Parses "zero", "linear", "linear:c", "power:p", "exp", "tanh".
Nonlinearity parse_nonlinearity(const std::string& text);

}  // namespace emlab
