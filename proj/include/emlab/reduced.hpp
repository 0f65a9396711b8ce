#pragma once

#include <string>
#include <vector>

#include "emlab/semilinear.hpp"

namespace emlab {

struct ReducedOptions {
  /// Residual and Cauchy tolerance relative to 1 + tv(mu).
  double rel_tol = 1e-8;
  int max_iter = 500;
};

struct ReducedLevel {
  double n = 0.0;
  GridFunction u;
  double residual = 0.0;
  int iterations = 0;
  double l1_u = 0.0;
  /// tv of the extraction applied to u_n.
  double tv_mu_star = 0.0;
  double tv_gamma = 0.0;
};

struct ReducedResult {
  std::vector<ReducedLevel> levels;
  GridFunction u_star;
  DiscreteMeasure mu_star;
  DiscreteMeasure gamma;
  /// False when the ladder ran out before the Cauchy criterion held.
  bool complete = false;
  double tol = 0.0;
  /// h^N sum |rho - mu_h| away from singular atoms, rho = L u* + g(u*).
  double diffuse_defect = 0.0;
  /// Part of the singular-node defect that did not fit in [0, w].
  double clamped_defect = 0.0;
};

/// {2^k : k = 0..20}.
std::vector<double> default_levels();

/// Truncation ladder g_n = min{g, n}. Each level is the largest solution,
/// reached by monotone iteration from the supersolution (the previous level,
/// or L^{-1} mu^+ first). mu* keeps the diffuse part of mu; the remaining
/// defect on singular-atom nodes becomes gamma = mu - mu*.
ReducedResult reduced_measure(const Domain& dom, const Nonlinearity& g, const DiscreteMeasure& mu,
                              const std::vector<double>& levels = default_levels(), ReducedOptions opts = {});

/// Splits rho = L u + g(u) into (mu*, gamma) as described above; throws when
/// strict and the diffuse defect exceeds the tolerance.
void extract_reduced(const GridFunction& u, const Nonlinearity& g, const DiscreteMeasure& mu, double tol,
                     bool strict, ReducedResult& out);

/// tv(mu - mu*) <= tol (1 + tv(mu)).
bool good_measure_test(const ReducedResult& result, const DiscreteMeasure& mu);
bool good_measure_test(const Domain& dom, const Nonlinearity& g, const DiscreteMeasure& mu, ReducedOptions opts = {});

/// For good mu1, mu2: max, min, max{mu1, 0} and min{mu1, 0} are good.
/// Throws std::invalid_argument when mu1 or mu2 is not good.
Check lattice_corollaries(const Domain& dom, const Nonlinearity& g, const DiscreteMeasure& mu1,
                          const DiscreteMeasure& mu2, ReducedOptions opts = {});

struct ScanRow {
  double param = 0.0;
  double h = 0.0;
  double statistic = 0.0;
  std::string classification;
};

struct ThresholdTable {
  std::vector<ScanRow> rows;
  /// Estimated critical parameter; NaN when no transition was seen.
  double critical = 0.0;
};

/// h^2 sum over interior nodes of exp(c G_h), G_h the discrete Green function
/// of the disk of the given radius with pole at the center.
double exponential_integral(double c, double h, double radius = 1.0);

/// mu = c delta_0 on the unit disk. Classification uses the last two
/// increments of I(c, h) along hs (at least three values, decreasing):
/// convergent when |D_last| < |D_prev|. The critical mass interpolates
/// log(|D_last| / |D_prev|) across the last convergent -> divergent switch
/// (masses are taken increasing).
ThresholdTable threshold_scan_exponential(const std::vector<double>& masses, const std::vector<double>& hs);

/// mu = delta_0 (singular) on the unit ball in 3D with g = |t|^{p-1} t.
/// A p is "collapsing" when ||u*||_1 decreases along hs and the last value is
/// at most half the first.
ThresholdTable threshold_scan_polynomial(const std::vector<double>& ps, const std::vector<double>& hs,
                                         ReducedOptions opts = {});

}  // namespace emlab
