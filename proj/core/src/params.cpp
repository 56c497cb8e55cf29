#include <friedmann/params.hpp>

#include <cmath>
#include <numbers>
#include <string>

namespace friedmann {

namespace {

constexpr double pi = std::numbers::pi;

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

} // namespace

Curvature curvature_from_int(int epsilon) {
  switch (epsilon) {
  case -1: return Curvature::open;
  case 0: return Curvature::flat;
  case +1: return Curvature::closed;
  default:
    throw InvalidParameter("curvature parameter must be -1, 0 or +1, got " +
                           std::to_string(epsilon));
  }
}

void PhysicalParams::validate() const {
  if (!finite_positive(G)) throw InvalidParameter("G must be finite and > 0");
  if (!finite_positive(c)) throw InvalidParameter("c must be finite and > 0");
  if (!finite_positive(mass)) throw InvalidParameter("mass must be finite and > 0");
  if (!finite_positive(lambda))
    throw InvalidParameter("lambda must be finite and > 0");
}

void ReducedParams::validate() const {
  if (!finite_positive(alpha)) throw InvalidParameter("alpha must be finite and > 0");
  if (!finite_positive(beta)) throw InvalidParameter("beta must be finite and > 0");
  if (!std::isfinite(gamma)) throw InvalidParameter("gamma must be finite");
  if (!std::isfinite(delta) || delta < 0.0)
    throw InvalidParameter("delta must be finite and >= 0");
  // gamma's sign is required to match epsilon exactly; classification never
  // infers curvature from a floating-point sign test.
  const bool consistent = (epsilon == Curvature::flat && gamma == 0.0) ||
                          (epsilon == Curvature::closed && gamma > 0.0) ||
                          (epsilon == Curvature::open && gamma < 0.0);
  if (!consistent)
    throw InvalidParameter("sign(gamma) must equal the curvature parameter");
}

ReducedParams reduce(const PhysicalParams& phys) {
  phys.validate();
  const double a_const = phys.mass / (2.0 * pi * pi);
  ReducedParams out;
  out.alpha = (8.0 * pi * phys.G / 3.0) * a_const;
  out.beta = phys.lambda * phys.c * phys.c / 3.0;
  out.gamma = static_cast<double>(to_int(phys.epsilon)) * phys.c * phys.c;
  out.epsilon = phys.epsilon;
  out.delta = 0.0;
  out.validate();
  return out;
}

double sphere_volume(double r) {
  if (!finite_positive(r)) throw InvalidParameter("R must be finite and > 0");
  return 2.0 * pi * pi * (r * r * r);
}

double density_at(double r, double mass) {
  if (!finite_positive(mass)) throw InvalidParameter("mass must be finite and > 0");
  return mass / sphere_volume(r);
}

} // namespace friedmann
