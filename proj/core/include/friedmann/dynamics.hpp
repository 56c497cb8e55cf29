#pragma once

#include <friedmann/cubic.hpp>
#include <friedmann/params.hpp>

#include <memory>
#include <vector>

namespace friedmann {

enum class Direction { expanding, contracting };

const char* to_string(Direction dir) noexcept;

struct IntegrationConfig {
  double r_start = 0.1;
  double t_span = 10.0;
  Direction direction = Direction::expanding;
  double rel_tol = 1e-10;
  double abs_tol = 1e-10;
  /// Step cap; 0 selects t_span / 100.
  double max_step = 0.0;
  /// Bisection tolerance for event times; 0 selects 1e-12 * t_span.
  double event_refinement_tol = 0.0;
  /// Contraction stops below this scale factor; 0 selects 1e-8 * r_min
  /// when the Hubble minimum exists, else 1e-8.
  double r_floor = 0.0;

  void validate() const;
};

enum class EventKind {
  hubble_minimum,
  r_turning_point,
  h_turning_point,
  recollapse,
  singularity_approach,
};

const char* to_string(EventKind kind) noexcept;

struct Event {
  EventKind kind;
  double t;
  double r;
};

struct Sample {
  double t;
  double r;
  double rdot;
  double h;
};

class DenseOutput;

/// Integrated samples (accepted steps, t strictly increasing) plus detected
/// events. Immutable once produced; safe to share across threads.
struct Trajectory {
  std::vector<Sample> samples;
  std::vector<Event> events;
  ReducedParams params{};
  Direction direction = Direction::expanding;

  /// Continuous extension produced by integrate(); locate_* use it to refine
  /// event positions below sample resolution.
  std::shared_ptr<const DenseOutput> dense;

  /// Interpolated state at any time the trajectory covers.
  Sample state_at(double t) const;
};

/// Integration gave up before t_span; carries the trajectory up to the last
/// good state.
class StepFailure : public Error {
public:
  StepFailure(std::string msg, Trajectory partial)
      : Error(std::move(msg)), partial_(std::move(partial)) {}
  const Trajectory& partial() const noexcept { return partial_; }

private:
  Trajectory partial_;
};

/// Contraction crossed the configured scale-factor floor. The partial
/// trajectory ends at the crossing and carries a singularity_approach event.
class SingularityFloor : public Error {
public:
  SingularityFloor(std::string msg, Trajectory partial)
      : Error(std::move(msg)), partial_(std::move(partial)) {}
  const Trajectory& partial() const noexcept { return partial_; }

private:
  Trajectory partial_;
};

/// Right side of the evolution equation:
/// alpha/R + delta/R^2 + beta R^2 - gamma. Negative values mark forbidden R.
double rhs_squared(double r, const ReducedParams& params);

/// Adaptive embedded RK5(4) integration of the second-order form
/// R' = v, v' = f'(R)/2 with v(0) = +/- sqrt(f(r_start)), including event
/// detection. Throws ForbiddenStart, StepFailure, SingularityFloor and
/// DegenerateDiscriminant (matter-only inputs on the branching surface).
Trajectory integrate(const ReducedParams& params,
                     const IntegrationConfig& config);

/// Hubble-minimum event recomputed from a trajectory. Throws
/// NoExtremumInSpan when the sampled H is monotone.
Event locate_h_minimum(const Trajectory& traj);

/// Turning points of R (sign change of R'') and of H (inflection of H(t)),
/// ordered by time. Throws NoExtremumInSpan when neither is present.
std::vector<Event> locate_turning_points(const Trajectory& traj,
                                         const ReducedParams& params);

} // namespace friedmann
