#include "scenario.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace flab {

using friedmann::InvalidParameter;

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0')
    throw InvalidParameter("scenario key '" + key + "': cannot parse number '" +
                           value + "'");
  return v;
}

int parse_int(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const long v = std::strtol(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0')
    throw InvalidParameter("scenario key '" + key +
                           "': cannot parse integer '" + value + "'");
  return static_cast<int>(v);
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw InvalidParameter("scenario key '" + key + "': cannot parse flag '" +
                         value + "'");
}

} // namespace

ScenarioConfig load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cannot open scenario file '" + path + "'");
  ScenarioConfig sc;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidParameter("scenario file " + path + ":" +
                             std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw InvalidParameter("scenario file " + path + ":" +
                             std::to_string(lineno) + ": empty key or value");

    if (key == "alpha") sc.alpha = parse_double(key, value);
    else if (key == "beta") sc.beta = parse_double(key, value);
    else if (key == "gamma") sc.gamma = parse_double(key, value);
    else if (key == "G") sc.G = parse_double(key, value);
    else if (key == "c") sc.c = parse_double(key, value);
    else if (key == "lambda") sc.lambda = parse_double(key, value);
    else if (key == "mass") sc.mass = parse_double(key, value);
    else if (key == "epsilon") sc.epsilon = parse_int(key, value);
    else if (key == "delta") sc.delta = parse_double(key, value);
    else if (key == "radiation") sc.radiation = parse_bool(key, value);
    else if (key == "r_start") sc.r_start = parse_double(key, value);
    else if (key == "t_span") sc.t_span = parse_double(key, value);
    else if (key == "rel_tol") sc.rel_tol = parse_double(key, value);
    else if (key == "abs_tol") sc.abs_tol = parse_double(key, value);
    else if (key == "max_step") sc.max_step = parse_double(key, value);
    else if (key == "event_tol") sc.event_tol = parse_double(key, value);
    else if (key == "r_floor") sc.r_floor = parse_double(key, value);
    else if (key == "direction") sc.direction = value;
    else if (key == "h_min") sc.h_min = parse_double(key, value);
    else if (key == "sweep") sc.sweep.push_back(value);
    else if (key == "format") sc.format = value;
    else if (key == "out") sc.out = value;
    else if (key == "precision") sc.precision = parse_int(key, value);
    else
      throw InvalidParameter("scenario file " + path + ":" +
                             std::to_string(lineno) + ": unknown key '" + key +
                             "'");
  }
  return sc;
}

ScenarioConfig merge(ScenarioConfig base, const ScenarioConfig& overrides) {
  const auto take = [](auto& dst, const auto& src) {
    if (src.has_value()) dst = src;
  };
  take(base.alpha, overrides.alpha);
  take(base.beta, overrides.beta);
  take(base.gamma, overrides.gamma);
  take(base.G, overrides.G);
  take(base.c, overrides.c);
  take(base.lambda, overrides.lambda);
  take(base.mass, overrides.mass);
  take(base.epsilon, overrides.epsilon);
  take(base.delta, overrides.delta);
  take(base.radiation, overrides.radiation);
  take(base.r_start, overrides.r_start);
  take(base.t_span, overrides.t_span);
  take(base.rel_tol, overrides.rel_tol);
  take(base.abs_tol, overrides.abs_tol);
  take(base.max_step, overrides.max_step);
  take(base.event_tol, overrides.event_tol);
  take(base.r_floor, overrides.r_floor);
  take(base.direction, overrides.direction);
  take(base.h_min, overrides.h_min);
  take(base.format, overrides.format);
  take(base.out, overrides.out);
  take(base.precision, overrides.precision);
  if (!overrides.sweep.empty()) base.sweep = overrides.sweep;
  return base;
}

bool has_reduced_group(const ScenarioConfig& sc) {
  return sc.alpha || sc.beta || sc.gamma;
}

bool has_physical_group(const ScenarioConfig& sc) {
  return sc.G || sc.c || sc.lambda || sc.mass;
}

namespace {

double resolved_delta(const ScenarioConfig& sc) {
  const double delta = sc.delta.value_or(0.0);
  if (delta != 0.0 && !sc.radiation.value_or(false))
    throw InvalidParameter(
        "delta != 0 requires the radiation gate (--radiation)");
  if (sc.radiation.value_or(false) && !sc.delta)
    throw InvalidParameter("--radiation requires a delta value");
  return delta;
}

} // namespace

friedmann::PhysicalParams resolve_physical(const ScenarioConfig& sc) {
  if (has_reduced_group(sc))
    throw InvalidParameter("physical parameters required, got reduced ones");
  if (!(sc.G && sc.c && sc.lambda && sc.mass))
    throw InvalidParameter("physical group needs G, c, lambda and mass");
  friedmann::PhysicalParams phys{
      *sc.G, *sc.c, *sc.lambda, *sc.mass,
      friedmann::curvature_from_int(sc.epsilon.value_or(+1))};
  phys.validate();
  return phys;
}

friedmann::ReducedParams resolve_reduced(const ScenarioConfig& sc) {
  const bool reduced = has_reduced_group(sc);
  const bool physical = has_physical_group(sc);
  if (reduced && physical)
    throw InvalidParameter(
        "give either reduced (alpha, beta, gamma) or physical "
        "(G, c, lambda, mass) parameters, not both");
  if (!reduced && !physical)
    throw InvalidParameter("no parameters given");
  if (physical) {
    auto rp = reduce(resolve_physical(sc));
    rp.delta = resolved_delta(sc);
    rp.validate();
    return rp;
  }
  if (!(sc.alpha && sc.beta && sc.gamma))
    throw InvalidParameter("reduced group needs alpha, beta and gamma");
  if (!sc.epsilon)
    throw InvalidParameter(
        "reduced parameters need an explicit epsilon (-1, 0 or +1)");
  friedmann::ReducedParams rp{*sc.alpha, *sc.beta, *sc.gamma,
                              friedmann::curvature_from_int(*sc.epsilon),
                              resolved_delta(sc)};
  rp.validate();
  return rp;
}

friedmann::IntegrationConfig resolve_integration(const ScenarioConfig& sc) {
  friedmann::IntegrationConfig cfg;
  if (sc.r_start) cfg.r_start = *sc.r_start;
  if (sc.t_span) cfg.t_span = *sc.t_span;
  if (sc.rel_tol) cfg.rel_tol = *sc.rel_tol;
  if (sc.abs_tol) cfg.abs_tol = *sc.abs_tol;
  if (sc.max_step) cfg.max_step = *sc.max_step;
  if (sc.event_tol) cfg.event_refinement_tol = *sc.event_tol;
  if (sc.r_floor) cfg.r_floor = *sc.r_floor;
  if (sc.direction) {
    if (*sc.direction == "expanding")
      cfg.direction = friedmann::Direction::expanding;
    else if (*sc.direction == "contracting")
      cfg.direction = friedmann::Direction::contracting;
    else
      throw InvalidParameter("direction must be expanding or contracting");
  }
  cfg.validate();
  return cfg;
}

int resolve_precision(const ScenarioConfig& sc) {
  const int p = sc.precision.value_or(17);
  if (p < 1 || p > 17)
    throw InvalidParameter("precision must be between 1 and 17");
  return p;
}

std::string resolve_format_name(const ScenarioConfig& sc) {
  return sc.format.value_or("kv");
}

} // namespace flab
