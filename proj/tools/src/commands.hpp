#pragma once

#include "scenario.hpp"

#include <iosfwd>

namespace flab {

// Exit-code contract of the CLI.
inline constexpr int exit_ok = 0;
inline constexpr int exit_invalid = 2;
inline constexpr int exit_degenerate = 3;
inline constexpr int exit_wrong_regime = 4;
inline constexpr int exit_forbidden_start = 5;
inline constexpr int exit_integration_failure = 6;

using Command = int (*)(const ScenarioConfig&, std::ostream&, std::ostream&);

int cmd_classify(const ScenarioConfig& sc, std::ostream& out,
                 std::ostream& err);
int cmd_markers(const ScenarioConfig& sc, std::ostream& out,
                std::ostream& err);
int cmd_evolve(const ScenarioConfig& sc, std::ostream& out, std::ostream& err);
int cmd_invert(const ScenarioConfig& sc, std::ostream& out, std::ostream& err);
int cmd_sweep(const ScenarioConfig& sc, std::ostream& out, std::ostream& err);

/// Runs a command, mapping library exceptions onto the exit-code contract.
int run_command(Command fn, const ScenarioConfig& sc, std::ostream& out,
                std::ostream& err);

} // namespace flab
