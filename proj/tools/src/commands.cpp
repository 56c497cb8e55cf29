#include "commands.hpp"

#include "log.hpp"
#include "report.hpp"

#include <friedmann/cubic.hpp>
#include <friedmann/dynamics.hpp>
#include <friedmann/markers.hpp>

#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <variant>

namespace flab {

using namespace friedmann;

namespace {

std::string interval_str(const Interval& iv, int precision) {
  const auto endpoint = [&](double x) {
    return std::isinf(x) ? std::string("inf") : fmt_num(x, precision);
  };
  std::string s = iv.lo_inclusive ? "[" : "(";
  s += endpoint(iv.lo);
  s += ", ";
  s += endpoint(iv.hi);
  s += iv.hi_inclusive ? "]" : ")";
  return s;
}

void add_reduced_inputs(Report& rep, const ReducedParams& params) {
  rep.number("alpha", params.alpha);
  rep.number("beta", params.beta);
  rep.number("gamma", params.gamma);
  rep.integer("epsilon", to_int(params.epsilon));
  rep.number("delta", params.delta);
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj,
                          int precision) {
  std::ofstream file(path);
  if (!file)
    throw InvalidParameter("cannot open output file '" + path + "'");
  file << "t,R,Rdot,H\n";
  for (const auto& s : traj.samples)
    file << fmt_num(s.t, precision) << ',' << fmt_num(s.r, precision) << ','
         << fmt_num(s.rdot, precision) << ',' << fmt_num(s.h, precision)
         << "\n";
  if (!file) throw InvalidParameter("short write to '" + path + "'");
}

struct SweepAxis {
  std::string name;
  double lo = 0.0;
  double hi = 0.0;
  int n = 0;

  double value(int k) const {
    if (n == 1) return lo;
    return lo + (hi - lo) * (static_cast<double>(k) / (n - 1));
  }
};

SweepAxis parse_axis(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos)
    throw InvalidParameter("sweep axis must look like name=lo:hi:n, got '" +
                           spec + "'");
  SweepAxis axis;
  axis.name = spec.substr(0, eq);
  const std::string range = spec.substr(eq + 1);
  const auto c1 = range.find(':');
  const auto c2 = range.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw InvalidParameter("sweep axis must look like name=lo:hi:n, got '" +
                           spec + "'");
  try {
    axis.lo = std::stod(range.substr(0, c1));
    axis.hi = std::stod(range.substr(c1 + 1, c2 - c1 - 1));
    axis.n = std::stoi(range.substr(c2 + 1));
  } catch (const std::exception&) {
    throw InvalidParameter("cannot parse sweep axis '" + spec + "'");
  }
  if (axis.n < 1) throw InvalidParameter("sweep axis needs n >= 1");
  if (axis.n > 1 && !(axis.hi > axis.lo))
    throw InvalidParameter("sweep axis needs hi > lo for n > 1");
  return axis;
}

bool is_reduced_axis(const std::string& name) {
  return name == "alpha" || name == "beta" || name == "gamma";
}

bool is_physical_axis(const std::string& name) {
  return name == "lambda" || name == "mass" || name == "G" || name == "c";
}

void set_axis_value(ScenarioConfig& sc, const std::string& name, double v) {
  if (name == "alpha") sc.alpha = v;
  else if (name == "beta") sc.beta = v;
  else if (name == "gamma") sc.gamma = v;
  else if (name == "lambda") sc.lambda = v;
  else if (name == "mass") sc.mass = v;
  else if (name == "G") sc.G = v;
  else if (name == "c") sc.c = v;
  else
    throw InvalidParameter("unknown sweep axis '" + name + "'");
}

} // namespace

int cmd_classify(const ScenarioConfig& sc, std::ostream& out,
                 std::ostream& err) {
  (void)err;
  const auto params = resolve_reduced(sc);
  const int precision = resolve_precision(sc);
  const auto format = parse_format(resolve_format_name(sc));

  const auto regime = classify(params);
  const double p = -params.gamma / params.beta;
  const double q = params.alpha / params.beta;

  Report rep(precision);
  rep.text("regime", to_string(regime.tag));
  add_reduced_inputs(rep, params);
  rep.number("p", p);
  rep.number("q", q);
  rep.number("D", discriminant(params));
  rep.number("degeneracy_tol", degeneracy_tolerance(p, q));

  if (regime.tag == RegimeTag::degenerate) {
    rep.text("root_structure", "degenerate");
  } else {
    const auto analysis = analyze(params);
    if (const auto* pair = std::get_if<ComplexPairRoots>(&analysis.roots)) {
      rep.text("root_structure", "one-real-plus-pair");
      rep.number("r0", pair->r0);
      rep.number("x0", pair->x0);
      rep.number("y0", pair->y0);
    } else if (const auto* three =
                   std::get_if<ThreeRealRoots>(&analysis.roots)) {
      rep.text("root_structure", "three-real");
      rep.number("r0neg", three->r0neg);
      rep.number("r1", three->r1);
      rep.number("r2", three->r2);
      rep.number("phi", three->phi);
    }
  }

  for (size_t i = 0; i < regime.admissible_regions.size(); ++i)
    rep.text("admissible_region_" + std::to_string(i),
             interval_str(regime.admissible_regions[i], precision));
  if (regime.forbidden_interval)
    rep.text("forbidden_interval",
             interval_str(*regime.forbidden_interval, precision));

  rep.emit(out, format);
  return regime.tag == RegimeTag::degenerate ? exit_degenerate : exit_ok;
}

int cmd_markers(const ScenarioConfig& sc, std::ostream& out,
                std::ostream& err) {
  (void)err;
  const auto params = resolve_reduced(sc);
  const int precision = resolve_precision(sc);
  const auto format = parse_format(resolve_format_name(sc));

  ReducedParams matter = params;
  matter.delta = 0.0;
  const auto markers = marker_set(matter);

  Report rep(precision);
  rep.text("regime", to_string(RegimeTag::case_ii_ii));
  add_reduced_inputs(rep, params);
  rep.number("r_w", markers.r_w);
  rep.number("r_min", markers.r_min);
  rep.number("r_wh", markers.r_wh);
  rep.number("h_min_sq", markers.h_min_sq);
  rep.number("h_min", std::sqrt(markers.h_min_sq));
  rep.number("h_w_sq", markers.h_w_sq);
  rep.number("h_inf", markers.h_inf);
  rep.number("speed_bound", markers.speed_bound);
  const auto ordering = h_at_turning_vs_asymptote(matter);
  rep.text("h_w_vs_asymptote", ordering == Ordering::above   ? "above"
                               : ordering == Ordering::below ? "below"
                                                             : "equal");

  if (has_physical_group(sc)) {
    const auto phys = resolve_physical(sc);
    rep.number("lambda_min", lambda_lower_bound(phys));
    rep.number("r_min_physical", r_min_physical(phys));
  }
  if (params.delta > 0.0)
    rep.number("r_min_rad", radiation_corrected_rmin(params));

  rep.emit(out, format);
  return exit_ok;
}

int cmd_evolve(const ScenarioConfig& sc, std::ostream& out,
               std::ostream& err) {
  (void)err;
  const auto params = resolve_reduced(sc);
  const auto cfg = resolve_integration(sc);
  const int precision = resolve_precision(sc);
  const auto format = parse_format(resolve_format_name(sc));
  const std::string path = sc.out.value_or("trajectory.csv");

  Trajectory traj;
  std::string status = "ok";
  std::string note;
  int code = exit_ok;
  try {
    traj = integrate(params, cfg);
  } catch (const SingularityFloor& e) {
    traj = e.partial();
    status = "singularity-floor";
    note = e.what();
    code = exit_integration_failure;
  } catch (const StepFailure& e) {
    traj = e.partial();
    status = "step-failure";
    note = e.what();
    code = exit_integration_failure;
  }
  log_info("integrated " + std::to_string(traj.samples.size()) +
           " samples, " + std::to_string(traj.events.size()) + " events");

  write_trajectory_csv(path, traj, precision);

  Report rep(precision);
  rep.text("status", status);
  if (!note.empty()) rep.text("note", note);
  add_reduced_inputs(rep, params);
  rep.text("direction", to_string(cfg.direction));
  rep.number("r_start", cfg.r_start);
  rep.number("t_span", cfg.t_span);
  rep.number("rel_tol", cfg.rel_tol);
  rep.number("abs_tol", cfg.abs_tol);
  rep.integer("samples", static_cast<long long>(traj.samples.size()));
  if (!traj.samples.empty()) {
    const auto& last = traj.samples.back();
    rep.number("final_t", last.t);
    rep.number("final_R", last.r);
    rep.number("final_Rdot", last.rdot);
    rep.number("final_H", last.h);
  }
  rep.text("samples_file", path);
  rep.begin_list("events");
  for (const auto& e : traj.events) {
    rep.list_row();
    rep.row_text("kind", to_string(e.kind));
    rep.row_number("t", e.t);
    rep.row_number("R", e.r);
  }
  rep.emit(out, format);
  return code;
}

int cmd_invert(const ScenarioConfig& sc, std::ostream& out,
               std::ostream& err) {
  (void)err;
  const int precision = resolve_precision(sc);
  const auto format = parse_format(resolve_format_name(sc));
  if (!sc.h_min) throw InvalidParameter("invert needs h_min");
  if (!(sc.G && sc.c && sc.mass))
    throw InvalidParameter("invert needs G, c and mass");

  const double lambda = lambda_from_hmin(*sc.h_min, *sc.G, *sc.c, *sc.mass);
  const PhysicalParams phys{*sc.G, *sc.c, lambda, *sc.mass,
                            Curvature::closed};
  const double lambda_min = lambda_lower_bound(phys);

  Report rep(precision);
  rep.number("h_min", *sc.h_min);
  rep.number("G", *sc.G);
  rep.number("c", *sc.c);
  rep.number("mass", *sc.mass);
  rep.number("lambda", lambda);
  rep.number("lambda_min", lambda_min);
  rep.emit(out, format);
  return exit_ok;
}

int cmd_sweep(const ScenarioConfig& sc, std::ostream& out,
              std::ostream& err) {
  (void)err;
  const int precision = resolve_precision(sc);
  const auto format = parse_format(resolve_format_name(sc));
  const std::string path = sc.out.value_or("sweep.csv");

  if (sc.sweep.size() != 2)
    throw InvalidParameter("sweep needs exactly two axes (--sweep name=lo:hi:n)");
  const SweepAxis ax = parse_axis(sc.sweep[0]);
  const SweepAxis ay = parse_axis(sc.sweep[1]);
  if (ax.name == ay.name)
    throw InvalidParameter("sweep axes must differ");

  const bool reduced_axes =
      is_reduced_axis(ax.name) && is_reduced_axis(ay.name);
  const bool physical_axes =
      is_physical_axis(ax.name) && is_physical_axis(ay.name);
  if (!reduced_axes && !physical_axes)
    throw InvalidParameter(
        "sweep axes must both be reduced (alpha, beta, gamma) or both "
        "physical (lambda, mass, G, c)");
  if (reduced_axes && has_physical_group(sc))
    throw InvalidParameter("reduced sweep axes with physical base parameters");
  if (physical_axes && has_reduced_group(sc))
    throw InvalidParameter("physical sweep axes with reduced base parameters");

  std::ofstream file(path);
  if (!file)
    throw InvalidParameter("cannot open output file '" + path + "'");
  file << "i,j," << ax.name << ',' << ay.name << ",p,q,D,regime\n";

  std::map<std::string, long long> counts;
  for (int i = 0; i < ax.n; ++i) {
    for (int j = 0; j < ay.n; ++j) {
      ScenarioConfig point = sc;
      set_axis_value(point, ax.name, ax.value(i));
      set_axis_value(point, ay.name, ay.value(j));
      std::string tag = "invalid";
      double p = std::numeric_limits<double>::quiet_NaN();
      double q = p;
      double d = p;
      try {
        const auto params = resolve_reduced(point);
        p = -params.gamma / params.beta;
        q = params.alpha / params.beta;
        d = discriminant(params);
        tag = to_string(classify(params).tag);
      } catch (const Error&) {
        // recorded as an invalid grid point
      }
      file << i << ',' << j << ',' << fmt_num(ax.value(i), precision) << ','
           << fmt_num(ay.value(j), precision) << ',' << fmt_num(p, precision)
           << ',' << fmt_num(q, precision) << ',' << fmt_num(d, precision)
           << ',' << tag << "\n";
      ++counts[tag];
    }
  }
  if (!file) throw InvalidParameter("short write to '" + path + "'");

  Report rep(precision);
  rep.text("axis_1", ax.name);
  rep.integer("axis_1_points", ax.n);
  rep.text("axis_2", ay.name);
  rep.integer("axis_2_points", ay.n);
  rep.integer("grid_points", static_cast<long long>(ax.n) * ay.n);
  for (const auto& [tag, n] : counts) rep.integer("count_" + tag, n);
  rep.text("grid_file", path);
  rep.emit(out, format);
  return exit_ok;
}

int run_command(Command fn, const ScenarioConfig& sc, std::ostream& out,
                std::ostream& err) {
  try {
    return fn(sc, out, err);
  } catch (const DegenerateDiscriminant& e) {
    err << "error: " << e.what()
        << " (D = " << fmt_num(e.discriminant(), 17) << ")\n";
    return exit_degenerate;
  } catch (const WrongRegime& e) {
    err << "error: " << e.what() << "\n";
    return exit_wrong_regime;
  } catch (const ForbiddenStart& e) {
    err << "error: " << e.what() << "\n";
    return exit_forbidden_start;
  } catch (const StepFailure& e) {
    err << "error: " << e.what() << "\n";
    return exit_integration_failure;
  } catch (const SingularityFloor& e) {
    err << "error: " << e.what() << "\n";
    return exit_integration_failure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_invalid;
  }
}

} // namespace flab
