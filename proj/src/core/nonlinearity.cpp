#include "emlab/nonlinearity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace emlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double central_diff(const std::function<double(double)>& f, double t) {
  const double eta = 1e-5 * std::max(1.0, std::abs(t));
  return (f(t + eta) - f(t - eta)) / (2.0 * eta);
}

// Composite 8-point Gauss-Legendre on [0, t].
double integrate(const std::function<double(double)>& f, double t) {
  static constexpr std::array<double, 4> x{0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                                           0.9602898564975363};
  static constexpr std::array<double, 4> w{0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                                           0.1012285362903763};
  const int panels = 256;
  const double step = t / panels;
  double s = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double mid = (k + 0.5) * step;
    for (std::size_t j = 0; j < 4; ++j) s += w[j] * (f(mid - 0.5 * step * x[j]) + f(mid + 0.5 * step * x[j]));
  }
  return 0.5 * step * s;
}

double sampled_lipschitz(const std::function<double(double)>& dg, double a, double b) {
  if (a > b) std::swap(a, b);
  double m = 0.0;
  const int n = 64;
  for (int k = 0; k <= n; ++k) m = std::max(m, std::abs(dg(a + (b - a) * k / n)));
  return 1.25 * m;
}

// Largest c with g(c) <= n for nondecreasing g; +inf when g never exceeds n.
double crossing(const std::function<double(double)>& g, double n) {
  double a = 0.0, b = 0.0;
  if (g(0.0) <= n) {
    b = 1.0;
    while (g(b) <= n) {
      a = b;
      b *= 2.0;
      if (b > 1e300) return kInf;
    }
  } else {
    a = -1.0;
    while (g(a) > n) {
      b = a;
      a *= 2.0;
      if (a < -1e300) return -kInf;
    }
  }
  for (int it = 0; it < 2000 && b - a > 0.0; ++it) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    (g(m) <= n ? a : b) = m;
  }
  return a;
}

}  // namespace

const std::vector<double>& Nonlinearity::test_lattice() {
  static const std::vector<double> lattice = [] {
    std::vector<double> t{0.0};
    for (double v : {1e-3, 0.01, 0.1, 0.25, 0.5, 1.0, 2.0, 3.0, 5.0, 8.0, 12.0, 20.0}) {
      t.push_back(v);
      t.push_back(-v);
    }
    std::sort(t.begin(), t.end());
    return t;
  }();
  return lattice;
}

Nonlinearity::Nonlinearity(Spec spec) {
  if (!spec.g || !spec.G) throw std::invalid_argument("nonlinearity: g and G are required");
  if (spec.G(0.0) != 0.0) throw std::invalid_argument("nonlinearity " + spec.name + ": G(0) != 0");
  const auto& lat = test_lattice();
  double prev = -kInf;
  for (double t : lat) {
    const double gt = spec.g(t);
    if (std::isnan(gt)) throw std::invalid_argument("nonlinearity " + spec.name + ": g is NaN on the lattice");
    if (spec.sign_condition && gt * t < 0.0)
      throw std::invalid_argument("nonlinearity " + spec.name + ": sign condition fails at t=" + std::to_string(t));
    if (spec.nondecreasing && gt < prev)
      throw std::invalid_argument("nonlinearity " + spec.name + ": not nondecreasing at t=" + std::to_string(t));
    prev = gt;
    // the central quotient is a mean of g over [t - eta, t + eta]; bracketing
    // it by samples there also accepts kinks such as min{g, n}
    const double dG = central_diff(spec.G, t);
    const double eta = 1e-5 * std::max(1.0, std::abs(t));
    const double a = spec.g(t - eta), b = spec.g(t + eta);
    const double scale = 1e-5 * std::max(1.0, std::abs(gt));
    if (std::isfinite(gt) && (dG < std::min({a, b, gt}) - scale || dG > std::max({a, b, gt}) + scale))
      throw std::invalid_argument("nonlinearity " + spec.name + ": G' != g at t=" + std::to_string(t));
  }
  s_ = std::make_shared<const Spec>(std::move(spec));
}

double Nonlinearity::derivative(double t) const { return s_->dg ? s_->dg(t) : central_diff(s_->g, t); }

double Nonlinearity::lipschitz(double a, double b) const {
  if (a > b) std::swap(a, b);
  if (s_->lipschitz) return s_->lipschitz(a, b);
  return sampled_lipschitz([this](double t) { return derivative(t); }, a, b);
}

bool Nonlinearity::bounded() const noexcept { return std::isfinite(s_->bound); }

Nonlinearity Nonlinearity::zero() {
  Spec s;
  s.name = "zero";
  s.g = [](double) { return 0.0; };
  s.G = [](double) { return 0.0; };
  s.dg = [](double) { return 0.0; };
  s.lipschitz = [](double, double) { return 0.0; };
  s.sign_condition = true;
  s.nondecreasing = true;
  s.bound = 0.0;
  s.family = Family::polynomial;
  s.exponent = 0.0;
  return Nonlinearity(std::move(s));
}

Nonlinearity Nonlinearity::linear(double c) {
  Spec s;
  std::ostringstream name;
  name << "linear:" << c;
  s.name = name.str();
  s.g = [c](double t) { return c * t; };
  s.G = [c](double t) { return 0.5 * c * t * t; };
  s.dg = [c](double) { return c; };
  s.lipschitz = [c](double, double) { return std::abs(c); };
  s.sign_condition = c >= 0.0;
  s.nondecreasing = c >= 0.0;
  s.family = Family::polynomial;
  s.exponent = 1.0;
  if (c == 0.0) s.bound = 0.0;
  return Nonlinearity(std::move(s));
}

Nonlinearity Nonlinearity::power(double p) {
  if (!(p > 0.0)) throw std::invalid_argument("nonlinearity: power exponent must be positive");
  Spec s;
  std::ostringstream name;
  name << "power:" << p;
  s.name = name.str();
  s.g = [p](double t) { return std::copysign(std::pow(std::abs(t), p), t); };
  s.G = [p](double t) { return std::pow(std::abs(t), p + 1.0) / (p + 1.0); };
  s.dg = [p](double t) { return t == 0.0 && p < 1.0 ? kInf : p * std::pow(std::abs(t), p - 1.0); };
  s.lipschitz = [p](double a, double b) {
    if (p < 1.0) {
      if (a <= 0.0 && b >= 0.0) return kInf;
      const double m = std::min(std::abs(a), std::abs(b));
      return p * std::pow(m, p - 1.0);
    }
    return p * std::pow(std::max(std::abs(a), std::abs(b)), p - 1.0);
  };
  s.sign_condition = true;
  s.nondecreasing = true;
  s.family = Family::polynomial;
  s.exponent = p;
  return Nonlinearity(std::move(s));
}

Nonlinearity Nonlinearity::exponential() {
  Spec s;
  s.name = "exp";
  s.g = [](double t) { return std::expm1(t); };
  s.G = [](double t) { return std::expm1(t) - t; };
  s.dg = [](double t) { return std::exp(t); };
  s.lipschitz = [](double, double b) { return std::exp(b); };
  s.sign_condition = true;
  s.nondecreasing = true;
  s.family = Family::exponential;
  return Nonlinearity(std::move(s));
}

Nonlinearity Nonlinearity::bounded_tanh() {
  Spec s;
  s.name = "tanh";
  s.g = [](double t) { return std::tanh(t); };
  s.G = [](double t) {
    // log cosh t, written to avoid overflow
    const double a = std::abs(t);
    if (a == 0.0) return 0.0;
    return a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
  };
  s.dg = [](double t) {
    const double c = std::tanh(t);
    return 1.0 - c * c;
  };
  s.lipschitz = [](double a, double b) {
    const double m = (a <= 0.0 && b >= 0.0) ? 0.0 : std::min(std::abs(a), std::abs(b));
    const double c = std::tanh(m);
    return 1.0 - c * c;
  };
  s.sign_condition = true;
  s.nondecreasing = true;
  s.bound = 1.0;
  return Nonlinearity(std::move(s));
}

Nonlinearity Nonlinearity::capped(double n) const {
  auto base = s_;
  Spec s;
  std::ostringstream name;
  name << "min(" << base->name << "," << n << ")";
  s.name = name.str();
  s.g = [base, n](double t) { return std::min(base->g(t), n); };
  s.family = base->family;
  s.exponent = base->exponent;
  s.sign_condition = base->sign_condition && n >= 0.0;
  s.nondecreasing = base->nondecreasing;
  s.bound = base->bound;
  if (base->nondecreasing) s.bound = std::max(std::abs(base->g(-1e300)), std::abs(n));
  Nonlinearity self = *this;
  if (base->nondecreasing) {
    const double c = crossing(base->g, n);
    s.G = [base, n, c](double t) { return t <= c ? base->G(t) : base->G(c) + n * (t - c); };
    s.dg = [self, c](double t) { return t < c ? self.derivative(t) : 0.0; };
    s.lipschitz = [self, c](double a, double b) { return a >= c ? 0.0 : self.lipschitz(a, std::min(b, c)); };
  } else {
    auto gn = s.g;
    s.G = [gn](double t) { return integrate(gn, t); };
    s.dg = [self, n](double t) { return self(t) < n ? self.derivative(t) : 0.0; };
  }
  return Nonlinearity(std::move(s));
}

Nonlinearity Nonlinearity::frozen(double kappa) const {
  if (!(kappa >= 0.0)) throw std::invalid_argument("nonlinearity: negative freezing level");
  auto base = s_;
  Nonlinearity self = *this;
  Spec s;
  std::ostringstream name;
  name << "frozen(" << base->name << "," << kappa << ")";
  s.name = name.str();
  s.g = [base, kappa](double t) { return base->g(std::clamp(t, -kappa, kappa)); };
  s.G = [base, kappa](double t) {
    if (t > kappa) return base->G(kappa) + base->g(kappa) * (t - kappa);
    if (t < -kappa) return base->G(-kappa) + base->g(-kappa) * (t + kappa);
    return base->G(t);
  };
  s.dg = [self, kappa](double t) { return std::abs(t) < kappa ? self.derivative(t) : 0.0; };
  s.lipschitz = [self, kappa](double a, double b) {
    if (b <= -kappa || a >= kappa) return 0.0;
    return self.lipschitz(std::clamp(a, -kappa, kappa), std::clamp(b, -kappa, kappa));
  };
  s.family = base->family;
  s.exponent = base->exponent;
  s.sign_condition = base->sign_condition;
  s.nondecreasing = base->nondecreasing;
  s.bound = std::max(std::abs(base->g(kappa)), std::abs(base->g(-kappa)));
  return Nonlinearity(std::move(s));
}

Nonlinearity parse_nonlinearity(const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  auto number = [&](double fallback) {
    if (arg.empty()) return fallback;
    std::size_t used = 0;
    const double v = std::stod(arg, &used);
    if (used != arg.size()) throw std::invalid_argument("nonlinearity: bad parameter '" + arg + "'");
    return v;
  };
  if (head == "zero") return Nonlinearity::zero();
  if (head == "linear") return Nonlinearity::linear(number(1.0));
  if (head == "power") {
    if (arg.empty()) throw std::invalid_argument("nonlinearity: power needs an exponent, e.g. power:3");
    return Nonlinearity::power(number(0.0));
  }
  if (head == "exp") return Nonlinearity::exponential();
  if (head == "tanh") return Nonlinearity::bounded_tanh();
  throw std::invalid_argument("nonlinearity: unknown family '" + text + "'");
}

}  // namespace emlab
