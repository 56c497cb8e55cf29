#include "commands.hpp"
#include "log.hpp"
#include "scenario.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

namespace {

struct CliState {
  std::string config_path;
  flab::ScenarioConfig flags;
};

void add_parameter_options(CLI::App* sub, CliState& st) {
  sub->add_option("--config", st.config_path,
                  "Scenario file (key = value lines, # comments)");
  sub->add_option("--alpha", st.flags.alpha, "Reduced matter coefficient");
  sub->add_option("--beta", st.flags.beta, "Reduced vacuum coefficient");
  sub->add_option("--gamma", st.flags.gamma, "Reduced curvature coefficient");
  sub->add_option("--epsilon", st.flags.epsilon,
                  "Curvature parameter (-1, 0, +1)");
  sub->add_option("--G", st.flags.G, "Gravitational constant");
  sub->add_option("--c", st.flags.c, "Speed of light");
  sub->add_option("--lambda", st.flags.lambda, "Cosmological constant");
  sub->add_option("--mass", st.flags.mass, "Total mass");
  sub->add_option("--delta", st.flags.delta, "Radiation coefficient");
  sub->add_flag_callback(
      "--radiation", [&st] { st.flags.radiation = true; },
      "Enable the radiation term (required when delta != 0)");
}

void add_output_options(CLI::App* sub, CliState& st) {
  sub->add_option("--format", st.flags.format, "Report format: kv, json, csv");
  sub->add_option("--out", st.flags.out, "Output file for samples/grids");
  sub->add_option("--precision", st.flags.precision,
                  "Significant digits (1-17, default 17)");
}

void add_integration_options(CLI::App* sub, CliState& st) {
  sub->add_option("--r-start", st.flags.r_start, "Initial scale factor");
  sub->add_option("--t-span", st.flags.t_span, "Integration span");
  sub->add_option("--direction", st.flags.direction,
                  "expanding or contracting");
  sub->add_option("--rel-tol", st.flags.rel_tol, "Relative tolerance");
  sub->add_option("--abs-tol", st.flags.abs_tol, "Absolute tolerance");
  sub->add_option("--max-step", st.flags.max_step, "Step cap (0 = auto)");
  sub->add_option("--event-tol", st.flags.event_tol,
                  "Event refinement tolerance (0 = auto)");
  sub->add_option("--r-floor", st.flags.r_floor,
                  "Scale-factor floor (0 = auto)");
}

int dispatch(flab::Command fn, const CliState& st) {
  flab::ScenarioConfig merged;
  try {
    if (!st.config_path.empty())
      merged = flab::merge(flab::load_scenario_file(st.config_path), st.flags);
    else
      merged = st.flags;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return flab::exit_invalid;
  }
  return flab::run_command(fn, merged, std::cout, std::cerr);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "friedmann-lab: regime classification, closed-form markers and "
      "numerical evolution for closed-universe scale-factor dynamics"};
  app.require_subcommand(1);

  CliState st;

  auto* classify = app.add_subcommand(
      "classify", "Classify the solution regime of a parameter set");
  add_parameter_options(classify, st);
  add_output_options(classify, st);

  auto* markers = app.add_subcommand(
      "markers", "Closed-form turning points, Hubble minimum and bounds");
  add_parameter_options(markers, st);
  add_output_options(markers, st);

  auto* evolve = app.add_subcommand(
      "evolve", "Numerically integrate R(t) and detect events");
  add_parameter_options(evolve, st);
  add_integration_options(evolve, st);
  add_output_options(evolve, st);

  auto* invert = app.add_subcommand(
      "invert", "Recover the cosmological constant from a minimal Hubble "
                "value, G, c and mass");
  invert->add_option("--h-min", st.flags.h_min, "Minimal Hubble value");
  invert->add_option("--config", st.config_path, "Scenario file");
  invert->add_option("--G", st.flags.G, "Gravitational constant");
  invert->add_option("--c", st.flags.c, "Speed of light");
  invert->add_option("--mass", st.flags.mass, "Total mass");
  add_output_options(invert, st);

  auto* sweep = app.add_subcommand(
      "sweep", "Classify a 2D parameter grid (--sweep name=lo:hi:n, twice)");
  add_parameter_options(sweep, st);
  add_output_options(sweep, st);
  sweep->add_option("--sweep", st.flags.sweep,
                    "Axis spec name=lo:hi:n (give exactly twice)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : flab::exit_invalid;
  }

  flab::log_debug("parsed command line");

  if (app.got_subcommand(classify)) return dispatch(flab::cmd_classify, st);
  if (app.got_subcommand(markers)) return dispatch(flab::cmd_markers, st);
  if (app.got_subcommand(evolve)) return dispatch(flab::cmd_evolve, st);
  if (app.got_subcommand(invert)) return dispatch(flab::cmd_invert, st);
  if (app.got_subcommand(sweep)) return dispatch(flab::cmd_sweep, st);
  return flab::exit_invalid;
}
