#pragma once

#include <friedmann/errors.hpp>

namespace friedmann {

/// Spatial curvature sign of the Robertson-Walker metric.
enum class Curvature : int { open = -1, flat = 0, closed = +1 };

Curvature curvature_from_int(int epsilon);
constexpr int to_int(Curvature eps) noexcept { return static_cast<int>(eps); }

/// Physical inputs: gravitational constant, speed of light, cosmological
/// constant, total mass, curvature sign. Units must be mutually consistent;
/// the library never converts them.
struct PhysicalParams {
  double G;
  double c;
  double lambda;
  double mass;
  Curvature epsilon = Curvature::closed;

  void validate() const; // throws InvalidParameter
};

/// Reduced coefficients of the evolution equation
///   R'^2 = alpha/R + delta/R^2 + beta R^2 - gamma.
/// alpha carries the matter content, beta the vacuum term, gamma the
/// curvature (its sign equals epsilon), delta an optional radiation term.
/// The canonical currency of every other module.
struct ReducedParams {
  double alpha;
  double beta;
  double gamma;
  Curvature epsilon;
  double delta = 0.0;

  void validate() const; // throws InvalidParameter
};

/// alpha = (8 pi G / 3) * (M / 2 pi^2), beta = Lambda c^2 / 3,
/// gamma = epsilon c^2, delta = 0.
ReducedParams reduce(const PhysicalParams& phys);

/// Volume of the 3-sphere of radius R: 2 pi^2 R^3.
double sphere_volume(double r);

/// Matter density on the 3-sphere: M / (2 pi^2 R^3). Product with
/// sphere_volume(R) recovers M up to rounding.
double density_at(double r, double mass);

} // namespace friedmann
