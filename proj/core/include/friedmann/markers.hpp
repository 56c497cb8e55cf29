#pragma once

#include <friedmann/cubic.hpp>
#include <friedmann/params.hpp>

namespace friedmann {

/// Closed-form quantities of the accelerating spherical regime (D > 0).
struct MarkerSet {
  double r_w;         ///< turning point of R(.): (alpha/2beta)^(1/3)
  double r_min;       ///< location of the Hubble minimum: 3alpha/2gamma
  double r_wh;        ///< turning point of H(.): 9alpha/4gamma
  double h_min_sq;    ///< minimal H^2: beta - 4gamma^3/27alpha^2
  double h_w_sq;      ///< H^2 at r_w: 3beta - gamma (alpha/2beta)^(-2/3)
  double h_inf;       ///< asymptotic Hubble value: sqrt(beta)
  double speed_bound; ///< lower bound for R' on expanding solutions: sqrt(beta) y0
};

/// H^2 as a function of R with its R-derivative, bound to one parameter set.
struct HubbleLaw {
  ReducedParams params;

  /// beta + alpha/R^3 + delta/R^4 - gamma/R^2 (may be negative in
  /// forbidden regions; the caller interprets).
  double operator()(double r) const;

  /// d(H^2)/dR = (2 gamma R - 3 alpha - 4 delta / R) / R^4; vanishes at
  /// R = 3alpha/2gamma when delta = 0.
  double slope(double r) const;
};

double hubble_sq(double r, const ReducedParams& params);

/// All seven markers. Requires classify(params) == case_ii_ii and delta = 0;
/// throws WrongRegime otherwise.
MarkerSet marker_set(const ReducedParams& params);

enum class Ordering { below, equal, above };

/// Position of H at the R-turning point relative to the asymptote sqrt(beta),
/// decided by direct comparison of the two closed forms (threshold family:
/// 2 alpha^2 beta vs gamma^3).
Ordering h_at_turning_vs_asymptote(const ReducedParams& params);

/// Lower bound on the cosmological constant for the accelerating regime:
/// pi^2 c^4 / (4 (G M)^2). Requires epsilon = +1.
double lambda_lower_bound(const PhysicalParams& phys);

/// Hubble-minimum location in physical form: 2 G M / (pi c^2).
/// Requires the accelerating regime after reduction.
double r_min_physical(const PhysicalParams& phys);

/// Inversion of the minimal Hubble value:
/// Lambda = 3 h_min^2 / c^2 + pi^2 c^4 / (4 (G M)^2).
double lambda_from_hmin(double h_min, double G, double c, double mass);

/// Location of the Hubble minimum with the radiation term included: the
/// positive root of 2 gamma R^2 - 3 alpha R - 4 delta = 0. Reduces to
/// 3alpha/2gamma as delta -> 0. Requires gamma > 0.
double radiation_corrected_rmin(const ReducedParams& params);

} // namespace friedmann
