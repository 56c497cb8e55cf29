#include <friedmann/cubic.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace friedmann {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double eps = std::numeric_limits<double>::epsilon();

double sq(double x) { return x * x; }
double cube(double x) { return x * x * x; }

struct DepressedCubic {
  double p;
  double q;
  double d;
  double tol;
};

DepressedCubic depressed(const ReducedParams& params) {
  params.validate();
  if (params.delta != 0.0)
    throw RadiationNotSupported(
        "cubic analysis is matter-only; delta must be 0");
  const double p = -params.gamma / params.beta;
  const double q = params.alpha / params.beta;
  // D = (alpha/2beta)^2 - (gamma/3beta)^3, written in p, q.
  const double d = sq(0.5 * q) + cube(p / 3.0);
  return {p, q, d, degeneracy_tolerance(p, q)};
}

double cubic_value(double p, double q, double r) {
  return (r * r + p) * r + q;
}

double cubic_slope(double p, double r) { return 3.0 * r * r + p; }

// One guarded Newton correction; keeps residuals at rounding level without
// risking a jump near close roots.
double polish_root(double p, double q, double r) {
  for (int i = 0; i < 2; ++i) {
    const double df = cubic_slope(p, r);
    if (df == 0.0) return r;
    const double step = cubic_value(p, q, r) / df;
    if (!(std::abs(step) < 1e-6 * (1.0 + std::abs(r)))) return r;
    r -= step;
  }
  return r;
}

// The unique negative root for D > 0. f(0) = q > 0 and the Cauchy bound
// confines every root to |r| < 1 + max(|p|, |q|), so [-bound, 0] brackets it.
double solve_negative_root(double p, double q) {
  double hi = 0.0;
  double lo = -(1.0 + std::max(std::abs(p), std::abs(q)));
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 160; ++it) {
    const double fx = cubic_value(p, q, x);
    if (fx > 0.0)
      hi = x;
    else if (fx < 0.0)
      lo = x;
    else
      return x;
    const double dfx = cubic_slope(p, x);
    double next = (dfx != 0.0) ? x - fx / dfx : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 2.0 * eps * std::abs(next)) return next;
    x = next;
  }
  return x;
}

ThreeRealRoots trig_roots_impl(const DepressedCubic& dc,
                               const ReducedParams& params) {
  const double s = std::sqrt(params.gamma / (3.0 * params.beta));
  double cos_phi = -(params.alpha / (2.0 * params.beta)) / cube(s);
  if (cos_phi < -1.0 - 1e-14 || cos_phi > 1.0 + 1e-14)
    throw WrongRegime("cos(phi) outside [-1, 1]: not a three-real-root cubic");
  cos_phi = std::clamp(cos_phi, -1.0, 1.0);
  const double phi = std::acos(cos_phi); // in (pi/2, pi) for D < 0
  const double third = phi / 3.0;
  const double c3 = std::cos(third);
  const double s3 = std::sin(third);
  const double r2 = polish_root(dc.p, dc.q, 2.0 * s * c3);
  const double r1 = polish_root(dc.p, dc.q, s * (std::sqrt(3.0) * s3 - c3));
  return {-(r1 + r2), r1, r2, phi};
}

ComplexPairRoots complex_pair_impl(const DepressedCubic& dc) {
  const double r0 = -polish_root(dc.p, dc.q, solve_negative_root(dc.p, dc.q));
  const double x0 = 0.5 * r0;           // zero root sum of the depressed cubic
  const double y0sq = dc.q / r0 - x0 * x0; // product of roots = -q
  return {r0, x0, std::sqrt(std::max(y0sq, 0.0))};
}

} // namespace

const char* to_string(RegimeTag tag) noexcept {
  switch (tag) {
  case RegimeTag::case_i: return "case-I";
  case RegimeTag::case_ii_i: return "case-IIi";
  case RegimeTag::case_ii_ii: return "case-IIii";
  case RegimeTag::degenerate: return "degenerate";
  }
  return "?";
}

double degeneracy_tolerance(double p, double q) {
  return 1e-12 * std::max({1.0, sq(0.5 * q), std::abs(cube(p / 3.0))});
}

double discriminant(const ReducedParams& params) {
  return depressed(params).d;
}

CubicAnalysis analyze(const ReducedParams& params) {
  const auto dc = depressed(params);
  if (std::abs(dc.d) <= dc.tol)
    throw DegenerateDiscriminant("discriminant inside the degeneracy band",
                                 dc.d);
  CubicAnalysis out{dc.p, dc.q, dc.d, DegenerateRoots{}};
  if (dc.d > 0.0)
    out.roots = complex_pair_impl(dc);
  else
    out.roots = trig_roots_impl(dc, params); // D < 0 forces gamma > 0
  return out;
}

ThreeRealRoots trig_roots(const ReducedParams& params) {
  const auto dc = depressed(params);
  if (params.epsilon != Curvature::closed)
    throw WrongRegime("three real roots require epsilon = +1");
  if (!(dc.d < -dc.tol))
    throw WrongRegime("three real roots require D < 0");
  return trig_roots_impl(dc, params);
}

ComplexPairRoots complex_pair(const ReducedParams& params) {
  const auto dc = depressed(params);
  if (!(dc.d > dc.tol))
    throw WrongRegime("complex pair requires D > 0");
  return complex_pair_impl(dc);
}

Regime classify(const ReducedParams& params) {
  const auto dc = depressed(params);
  Regime out;
  if (params.epsilon != Curvature::closed) {
    // gamma <= 0 makes D > 0 automatic: no restriction on R.
    out.tag = RegimeTag::case_i;
    out.admissible_regions = {Interval{0.0, inf, false, false}};
    return out;
  }
  if (std::abs(dc.d) <= dc.tol) {
    // Branching case: detected and reported only.
    out.tag = RegimeTag::degenerate;
    return out;
  }
  if (dc.d < 0.0) {
    const auto roots = trig_roots_impl(dc, params);
    out.tag = RegimeTag::case_ii_i;
    // Endpoints carry R' = 0 and stay admissible.
    out.admissible_regions = {Interval{0.0, roots.r1, false, true},
                              Interval{roots.r2, inf, true, false}};
    out.forbidden_interval = Interval{roots.r1, roots.r2, false, false};
    return out;
  }
  out.tag = RegimeTag::case_ii_ii;
  out.admissible_regions = {Interval{0.0, inf, false, false}};
  return out;
}

} // namespace friedmann
