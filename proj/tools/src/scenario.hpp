#pragma once

#include <friedmann/dynamics.hpp>
#include <friedmann/params.hpp>

#include <optional>
#include <string>
#include <vector>

namespace flab {

/// Everything a command can consume, merged from a scenario file and
/// command-line flags (flags win). Scenario files are flat `key = value`
/// text with `#` comments.
struct ScenarioConfig {
  // reduced parameter group
  std::optional<double> alpha, beta, gamma;
  // physical parameter group
  std::optional<double> G, c, lambda, mass;
  // shared
  std::optional<int> epsilon;
  std::optional<double> delta;
  std::optional<bool> radiation;

  // integration settings
  std::optional<double> r_start, t_span, rel_tol, abs_tol, max_step,
      event_tol, r_floor;
  std::optional<std::string> direction;

  // inversion input
  std::optional<double> h_min;

  // sweep axes, each "name=lo:hi:n"
  std::vector<std::string> sweep;

  // output settings
  std::optional<std::string> format, out;
  std::optional<int> precision;
};

/// Parse a scenario file. Unknown keys and malformed lines are errors.
ScenarioConfig load_scenario_file(const std::string& path);

/// Overlay `overrides` (CLI flags) on top of `base` (scenario file).
ScenarioConfig merge(ScenarioConfig base, const ScenarioConfig& overrides);

bool has_reduced_group(const ScenarioConfig& sc);
bool has_physical_group(const ScenarioConfig& sc);

/// Exactly one parameter group must be present; reduced inputs come back
/// as-is, physical inputs go through reduce(). delta > 0 requires the
/// radiation gate.
friedmann::ReducedParams resolve_reduced(const ScenarioConfig& sc);

/// The physical group, when that is the one present.
friedmann::PhysicalParams resolve_physical(const ScenarioConfig& sc);

friedmann::IntegrationConfig resolve_integration(const ScenarioConfig& sc);

int resolve_precision(const ScenarioConfig& sc);
std::string resolve_format_name(const ScenarioConfig& sc);

} // namespace flab
