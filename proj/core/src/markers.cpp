#include <friedmann/markers.hpp>

#include <cmath>
#include <limits>
#include <numbers>

namespace friedmann {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double eps = std::numeric_limits<double>::epsilon();

double sq(double x) { return x * x; }
double cube(double x) { return x * x * x; }

void require_accelerating(const ReducedParams& params) {
  if (classify(params).tag != RegimeTag::case_ii_ii)
    throw WrongRegime("markers exist only in the accelerating spherical "
                      "regime (epsilon = +1, D > 0)");
}

} // namespace

double HubbleLaw::operator()(double r) const {
  if (!(std::isfinite(r) && r > 0.0))
    throw InvalidParameter("R must be finite and > 0");
  return params.beta + (params.alpha + params.delta / r) / cube(r) -
         params.gamma / sq(r);
}

double HubbleLaw::slope(double r) const {
  if (!(std::isfinite(r) && r > 0.0))
    throw InvalidParameter("R must be finite and > 0");
  return (2.0 * params.gamma * r - 3.0 * params.alpha -
          4.0 * params.delta / r) /
         sq(sq(r));
}

double hubble_sq(double r, const ReducedParams& params) {
  return HubbleLaw{params}(r);
}

MarkerSet marker_set(const ReducedParams& params) {
  require_accelerating(params);
  const double alpha = params.alpha;
  const double beta = params.beta;
  const double gamma = params.gamma;
  MarkerSet m;
  m.r_w = std::cbrt(alpha / (2.0 * beta));
  m.r_min = 3.0 * alpha / (2.0 * gamma);
  m.r_wh = 9.0 * alpha / (4.0 * gamma);
  m.h_min_sq = beta - 4.0 * cube(gamma) / (27.0 * sq(alpha));
  m.h_w_sq = 3.0 * beta - gamma / std::cbrt(sq(alpha / (2.0 * beta)));
  m.h_inf = std::sqrt(beta);
  m.speed_bound = m.h_inf * complex_pair(params).y0;
  return m;
}

Ordering h_at_turning_vs_asymptote(const ReducedParams& params) {
  require_accelerating(params);
  // h_w_sq - beta = 2 beta - gamma (alpha/2beta)^(-2/3); sign flips on the
  // surface 2 alpha^2 beta = gamma^3.
  const double curv_term =
      params.gamma / std::cbrt(sq(params.alpha / (2.0 * params.beta)));
  const double diff = 2.0 * params.beta - curv_term;
  const double tol = 64.0 * eps * std::max(2.0 * params.beta, curv_term);
  if (std::abs(diff) <= tol) return Ordering::equal;
  return diff > 0.0 ? Ordering::above : Ordering::below;
}

double lambda_lower_bound(const PhysicalParams& phys) {
  phys.validate();
  if (phys.epsilon != Curvature::closed)
    throw InvalidParameter("the lower bound applies to epsilon = +1 only");
  return sq(pi * phys.c * phys.c / (2.0 * phys.G * phys.mass));
}

double r_min_physical(const PhysicalParams& phys) {
  if (classify(reduce(phys)).tag != RegimeTag::case_ii_ii)
    throw WrongRegime("the Hubble minimum exists only in the accelerating "
                      "spherical regime");
  return 2.0 * phys.G * phys.mass / (pi * phys.c * phys.c);
}

double lambda_from_hmin(double h_min, double G, double c, double mass) {
  if (!(std::isfinite(h_min) && h_min >= 0.0))
    throw InvalidParameter("h_min must be finite and >= 0");
  if (!(G > 0.0 && c > 0.0 && mass > 0.0) ||
      !(std::isfinite(G) && std::isfinite(c) && std::isfinite(mass)))
    throw InvalidParameter("G, c and mass must be finite and > 0");
  return 3.0 * sq(h_min) / sq(c) + sq(pi * c * c / (2.0 * G * mass));
}

double radiation_corrected_rmin(const ReducedParams& params) {
  params.validate();
  if (!(params.gamma > 0.0))
    throw WrongRegime("radiation-corrected minimum requires epsilon = +1");
  const double alpha = params.alpha;
  if (params.delta == 0.0) return 3.0 * alpha / (2.0 * params.gamma);
  const double disc =
      std::sqrt(9.0 * sq(alpha) + 32.0 * params.gamma * params.delta);
  return (3.0 * alpha + disc) / (4.0 * params.gamma);
}

} // namespace friedmann
