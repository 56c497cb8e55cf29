#pragma once

#include <friedmann/params.hpp>

#include <optional>
#include <variant>
#include <vector>

namespace friedmann {

/// One negative real root -r0 plus the conjugate pair x0 +/- i y0.
struct ComplexPairRoots {
  double r0; // magnitude of the negative real root, > 0
  double x0; // real part of the pair, = r0/2 (zero root sum)
  double y0; // imaginary part, > 0
};

/// Three real roots r0neg < 0 < r1 < r2 in the trigonometric form, with the
/// auxiliary angle phi in (pi/2, pi).
struct ThreeRealRoots {
  double r0neg;
  double r1;
  double r2;
  double phi;
};

struct DegenerateRoots {};

using RootStructure =
    std::variant<ComplexPairRoots, ThreeRealRoots, DegenerateRoots>;

/// Coefficients and resolved root structure of R^3 + pR + q = 0 with
/// p = -gamma/beta, q = alpha/beta and discriminant
/// D = (alpha/2beta)^2 - (gamma/3beta)^3.
struct CubicAnalysis {
  double p;
  double q;
  double discriminant;
  RootStructure roots;
};

enum class RegimeTag { case_i, case_ii_i, case_ii_ii, degenerate };

const char* to_string(RegimeTag tag) noexcept;

/// Interval on the R axis. Endpoints may be infinite.
struct Interval {
  double lo;
  double hi;
  bool lo_inclusive = false;
  bool hi_inclusive = false;
};

/// Classification of the solution structure, with the R regions where the
/// right side of the evolution equation is nonnegative.
struct Regime {
  RegimeTag tag;
  std::vector<Interval> admissible_regions;
  std::optional<Interval> forbidden_interval;
};

/// Relative degeneracy band for the discriminant:
/// |D| <= 1e-12 * max(1, (q/2)^2, |p/3|^3).
double degeneracy_tolerance(double p, double q);

/// Discriminant of the associated cubic (matter-only coefficients).
double discriminant(const ReducedParams& params);

/// Full cubic analysis. Throws RadiationNotSupported if delta != 0 and
/// DegenerateDiscriminant if |D| falls inside the degeneracy band (the
/// computed D rides along in the exception).
CubicAnalysis analyze(const ReducedParams& params);

/// Trigonometric three-real-root form, valid for D < 0 strictly
/// (epsilon = +1). Throws WrongRegime otherwise.
ThreeRealRoots trig_roots(const ReducedParams& params);

/// Negative-root / complex-pair form, valid for D > 0 strictly.
/// Throws WrongRegime otherwise.
ComplexPairRoots complex_pair(const ReducedParams& params);

/// Regime classification. Degenerate is a valid result here, not an error.
Regime classify(const ReducedParams& params);

} // namespace friedmann
