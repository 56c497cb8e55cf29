#include <friedmann/dynamics.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>

namespace friedmann {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

double sq(double x) { return x * x; }
double cube(double x) { return x * x * x; }

using Vec2 = std::array<double, 2>; // (R, R')

// Magnitude scale of the right side; bounds rounding noise of f(R) near 0.
double magnitude_scale(double r, const ReducedParams& p) {
  return p.alpha / r + p.delta / sq(r) + p.beta * sq(r) + std::abs(p.gamma);
}

// Second-order form of the evolution equation: R'' = f'(R)/2.
struct Ode {
  double alpha, beta, gamma, delta;

  bool operator()(const Vec2& y, Vec2& dydt) const {
    const double r = y[0];
    if (!(r > 0.0) || !std::isfinite(r) || !std::isfinite(y[1])) return false;
    const double r2 = sq(r);
    dydt[0] = y[1];
    dydt[1] = beta * r - 0.5 * alpha / r2 - delta / (r2 * r);
    return std::isfinite(dydt[1]);
  }
};

// Dormand-Prince 5(4) tableau.
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187,
                 A53 = 64448.0 / 6561, A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247,
                 A64 = 49.0 / 176, A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192,
                 B5 = -2187.0 / 6784, B6 = 11.0 / 84;
constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920,
                 E5 = -17253.0 / 339200, E6 = 22.0 / 525, E7 = -1.0 / 40;
// Dense-output weights of the standard DOPRI5 continuous extension.
constexpr double D1 = -12715105075.0 / 11282082432.0;
constexpr double D3 = 87487479700.0 / 32700410799.0;
constexpr double D4 = -10690763975.0 / 1880347072.0;
constexpr double D5 = 701980252875.0 / 199316789632.0;
constexpr double D6 = -1453857185.0 / 822651844.0;
constexpr double D7 = 69997945.0 / 29380423.0;

} // namespace

/// Piecewise-quartic continuous extension of one integration run, plus the
/// numeric context event refinement needs.
class DenseOutput {
public:
  struct StepRecord {
    double t0;
    double h;
    std::array<Vec2, 5> rcont;
  };

  std::vector<StepRecord> steps;
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double event_tol = 1e-12;

  double t_begin() const { return steps.empty() ? 0.0 : steps.front().t0; }
  double t_end() const {
    return steps.empty() ? 0.0 : steps.back().t0 + steps.back().h;
  }

  Vec2 eval(double t) const {
    if (steps.empty()) throw InvalidParameter("empty dense output");
    const double slack = 16.0 * eps * (std::abs(t_end()) + 1.0);
    if (t < t_begin() - slack || t > t_end() + slack)
      throw InvalidParameter("time outside the integrated span");
    t = std::clamp(t, t_begin(), t_end());
    auto it = std::upper_bound(
        steps.begin(), steps.end(), t,
        [](double value, const StepRecord& s) { return value < s.t0; });
    if (it != steps.begin()) --it;
    const StepRecord& s = *it;
    const double theta = std::clamp((t - s.t0) / s.h, 0.0, 1.0);
    const double theta1 = 1.0 - theta;
    Vec2 out;
    for (int i = 0; i < 2; ++i) {
      out[i] = s.rcont[0][i] +
               theta * (s.rcont[1][i] +
                        theta1 * (s.rcont[2][i] +
                                  theta * (s.rcont[3][i] +
                                           theta1 * s.rcont[4][i])));
    }
    return out;
  }
};

namespace {

// -------------------------------------------------------------------------
// Stepper
// -------------------------------------------------------------------------

struct StepResult {
  Vec2 y1;
  Vec2 k7;
  double err = 0.0;
  DenseOutput::StepRecord record;
};

// One trial step. Returns false if any stage left the valid state space.
bool try_step(const Ode& ode, double t, const Vec2& y, double h,
              const Vec2& k1, double atol, double rtol, StepResult& out) {
  Vec2 k2, k3, k4, k5, k6, k7, yt, y1;

  for (int i = 0; i < 2; ++i) yt[i] = y[i] + h * A21 * k1[i];
  if (!ode(yt, k2)) return false;
  for (int i = 0; i < 2; ++i)
    yt[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i]);
  if (!ode(yt, k3)) return false;
  for (int i = 0; i < 2; ++i)
    yt[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
  if (!ode(yt, k4)) return false;
  for (int i = 0; i < 2; ++i)
    yt[i] = y[i] +
            h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
  if (!ode(yt, k5)) return false;
  for (int i = 0; i < 2; ++i)
    yt[i] = y[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] +
                        A64 * k4[i] + A65 * k5[i]);
  if (!ode(yt, k6)) return false;
  for (int i = 0; i < 2; ++i)
    y1[i] = y[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] +
                        B6 * k6[i]);
  if (!ode(y1, k7)) return false;

  double err_sq = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] +
                          E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
    const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(y1[i]));
    err_sq += sq(e / sc);
  }

  out.y1 = y1;
  out.k7 = k7;
  out.err = std::sqrt(0.5 * err_sq);

  DenseOutput::StepRecord& rec = out.record;
  rec.t0 = t;
  rec.h = h;
  for (int i = 0; i < 2; ++i) {
    const double ydiff = y1[i] - y[i];
    const double bspl = h * k1[i] - ydiff;
    rec.rcont[0][i] = y[i];
    rec.rcont[1][i] = ydiff;
    rec.rcont[2][i] = bspl;
    rec.rcont[3][i] = ydiff - h * k7[i] - bspl;
    rec.rcont[4][i] = h * (D1 * k1[i] + D3 * k3[i] + D4 * k4[i] +
                           D5 * k5[i] + D6 * k6[i] + D7 * k7[i]);
  }
  return true;
}

double initial_step(const Ode& ode, const Vec2& y0, const Vec2& f0,
                    double atol, double rtol, double h_max) {
  const auto norm = [&](const Vec2& v, const Vec2& ref) {
    double s = 0.0;
    for (int i = 0; i < 2; ++i)
      s += sq(v[i] / (atol + rtol * std::abs(ref[i])));
    return std::sqrt(0.5 * s);
  };
  const double d0 = norm(y0, y0);
  const double d1 = norm(f0, y0);
  double h0 = (d0 >= 1e-5 && d1 >= 1e-5) ? 0.01 * d0 / d1 : 1e-6 * h_max;
  h0 = std::min(h0, h_max);
  Vec2 y1, f1;
  for (int i = 0; i < 2; ++i) y1[i] = y0[i] + h0 * f0[i];
  double d2 = 0.0;
  if (ode(y1, f1)) {
    Vec2 df;
    for (int i = 0; i < 2; ++i) df[i] = f1[i] - f0[i];
    d2 = norm(df, y0) / h0;
  }
  const double d = std::max(d1, d2);
  const double h1 = (d <= 1e-15) ? std::max(1e-6 * h_max, h0 * 1e-3)
                                 : std::pow(0.01 / d, 0.2);
  return std::min({100.0 * h0, h1, h_max});
}

// -------------------------------------------------------------------------
// Refinement utilities
// -------------------------------------------------------------------------

template <class F>
double golden_min(F&& g, double a, double b, double tol) {
  constexpr double invphi = 0.6180339887498949;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = g(x1);
  double f2 = g(x2);
  for (int it = 0; it < 240 && (b - a) > tol; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = g(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = g(x2);
    }
  }
  return 0.5 * (a + b);
}

template <class F>
double bisect_zero(F&& g, double a, double b, double tol) {
  double fa = g(a);
  if (fa == 0.0) return a;
  for (int it = 0; it < 240 && (b - a) > tol; ++it) {
    const double m = 0.5 * (a + b);
    const double fm = g(m);
    if (fm == 0.0) return m;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// Parabola vertex through three samples; falls back to the middle abscissa.
double parabola_vertex(double t0, double y0, double t1, double y1, double t2,
                       double y2) {
  const double d1 = (y1 - y0) / (t1 - t0);
  const double d2 = (y2 - y1) / (t2 - t1);
  const double curv = (d2 - d1) / (t2 - t0);
  if (curv == 0.0) return t1;
  const double v = 0.5 * (t0 + t1) - 0.5 * d1 / curv;
  return std::clamp(v, t0, t2);
}

// -------------------------------------------------------------------------
// Event detection (signal-based: only sampled R, R', H are consulted, so the
// detected positions stay independent of the closed-form markers)
// -------------------------------------------------------------------------

struct EventScan {
  const Trajectory& traj;
  const DenseOutput* dense; // may be null
  double atol = 1e-10;
  double rtol = 1e-10;
  double event_tol = 0.0;

  explicit EventScan(const Trajectory& t)
      : traj(t), dense(t.dense.get()) {
    if (dense) {
      atol = dense->abs_tol;
      rtol = dense->rel_tol;
      event_tol = dense->event_tol;
    }
    if (event_tol <= 0.0 && !traj.samples.empty())
      event_tol = 1e-12 * (traj.samples.back().t - traj.samples.front().t);
    if (event_tol <= 0.0) event_tol = 1e-15;
  }

  double r_at(double t) const {
    if (dense) return dense->eval(t)[0];
    return interp_samples(t).r;
  }

  double signal_h(double t) const {
    const auto y = dense->eval(t);
    return y[1] / y[0];
  }

  double signal_v(double t) const { return dense->eval(t)[1]; }

  Sample interp_samples(double t) const {
    const auto& s = traj.samples;
    auto it = std::lower_bound(
        s.begin(), s.end(), t,
        [](const Sample& a, double value) { return a.t < value; });
    if (it == s.begin()) return s.front();
    if (it == s.end()) return s.back();
    const Sample& b = *it;
    const Sample& a = *(it - 1);
    const double w = (t - a.t) / (b.t - a.t);
    const double r = a.r + w * (b.r - a.r);
    const double v = a.rdot + w * (b.rdot - a.rdot);
    return {t, r, v, v / r};
  }

  // Discrete local extrema above the numerical noise floor, refined against
  // the continuous extension when available.
  template <class Get>
  std::vector<Event> extrema(EventKind kind, Get&& get, bool minima,
                             bool maxima) const {
    std::vector<Event> out;
    const auto& s = traj.samples;
    for (size_t i = 1; i + 1 < s.size(); ++i) {
      const double prev = get(s[i - 1]);
      const double here = get(s[i]);
      const double next = get(s[i + 1]);
      const double prominence =
          8.0 * (atol + rtol * std::max(1.0, std::abs(here)));
      const bool is_min =
          prev - here >= prominence && next - here >= prominence;
      const bool is_max =
          here - prev >= prominence && here - next >= prominence;
      if (!((minima && is_min) || (maxima && is_max))) continue;
      double t_star;
      if (dense) {
        const auto g = [&](double t) {
          const auto y = dense->eval(t);
          const double val = (kind == EventKind::hubble_minimum)
                                 ? y[1] / y[0]
                                 : y[1];
          return is_min ? val : -val;
        };
        t_star = golden_min(g, s[i - 1].t, s[i + 1].t, event_tol);
      } else {
        t_star = parabola_vertex(s[i - 1].t, prev, s[i].t, here, s[i + 1].t,
                                 next);
      }
      out.push_back({kind, t_star, r_at(t_star)});
    }
    return out;
  }

  std::vector<Event> recollapse_events() const {
    std::vector<Event> out;
    const auto& s = traj.samples;
    for (size_t i = 0; i + 1 < s.size(); ++i) {
      const double a = s[i].rdot;
      const double b = s[i + 1].rdot;
      if (!(a * b < 0.0)) continue;
      double t_star;
      if (dense) {
        t_star = bisect_zero([&](double t) { return signal_v(t); }, s[i].t,
                             s[i + 1].t, event_tol);
      } else {
        t_star = s[i].t + (s[i + 1].t - s[i].t) * (a / (a - b));
      }
      out.push_back({EventKind::recollapse, t_star, r_at(t_star)});
    }
    return out;
  }

  std::optional<Event> best_h_minimum() const {
    auto mins = extrema(EventKind::hubble_minimum,
                        [](const Sample& s) { return s.h; }, true, false);
    if (mins.empty()) return std::nullopt;
    const auto lowest = std::min_element(
        mins.begin(), mins.end(), [&](const Event& a, const Event& b) {
          return h_value(a.t) < h_value(b.t);
        });
    return *lowest;
  }

  double h_value(double t) const {
    if (dense) return signal_h(t);
    return interp_samples(t).h;
  }

  std::vector<Event> r_turning_events() const {
    return extrema(EventKind::r_turning_point,
                   [](const Sample& s) { return s.rdot; }, true, true);
  }

  // Inflections of H(t): sign changes of a centered five-point second
  // difference on a uniform grid over the dense output.
  std::vector<Event> h_inflection_events() const {
    std::vector<Event> out;
    const auto& s = traj.samples;
    if (s.size() < 5) return out;
    const double t_lo = s.front().t;
    const double t_hi = s.back().t;
    if (!(t_hi > t_lo)) return out;

    if (!dense) return h_inflection_fallback();

    const int n = 4001;
    const double hg = (t_hi - t_lo) / (n - 1);
    std::vector<double> hh(n);
    for (int k = 0; k < n; ++k) hh[k] = signal_h(t_lo + k * hg);

    const auto stencil = [&](double t) {
      const double f0 = signal_h(t - 2.0 * hg);
      const double f1 = signal_h(t - hg);
      const double f2 = signal_h(t);
      const double f3 = signal_h(t + hg);
      const double f4 = signal_h(t + 2.0 * hg);
      return (-f0 + 16.0 * f1 - 30.0 * f2 + 16.0 * f3 - f4) /
             (12.0 * hg * hg);
    };

    std::vector<double> d2(n, 0.0);
    for (int k = 2; k + 2 < n; ++k) {
      d2[k] = (-hh[k - 2] + 16.0 * hh[k - 1] - 30.0 * hh[k] +
               16.0 * hh[k + 1] - hh[k + 2]) /
              (12.0 * hg * hg);
    }

    for (int k = 2; k + 3 < n; ++k) {
      if (!(d2[k] * d2[k + 1] < 0.0)) continue;
      double local_h = 0.0;
      double local_mag = 0.0;
      for (int m = std::max(2, k - 5); m <= std::min(n - 3, k + 6); ++m) {
        local_h = std::max(local_h, std::abs(hh[m]));
        local_mag = std::max(local_mag, std::abs(d2[m]));
      }
      const double noise = 16.0 * eps * std::max(local_h, 1.0) / (hg * hg);
      if (local_mag < 50.0 * noise) continue; // rounding wiggle, not physics
      const double a = t_lo + k * hg;
      const double b = t_lo + (k + 1) * hg;
      const double t_star = bisect_zero(stencil, a, b, event_tol);
      out.push_back({EventKind::h_turning_point, t_star, r_at(t_star)});
      k += 5;
    }
    return out;
  }

  // Non-uniform three-point curvature when no dense output is attached.
  std::vector<Event> h_inflection_fallback() const {
    std::vector<Event> out;
    const auto& s = traj.samples;
    std::vector<double> curv(s.size(), 0.0);
    for (size_t i = 1; i + 1 < s.size(); ++i) {
      const double dl = s[i].t - s[i - 1].t;
      const double dr = s[i + 1].t - s[i].t;
      curv[i] = 2.0 *
                (s[i - 1].h * dr - s[i].h * (dl + dr) + s[i + 1].h * dl) /
                (dl * dr * (dl + dr));
    }
    for (size_t i = 1; i + 2 < s.size(); ++i) {
      if (!(curv[i] * curv[i + 1] < 0.0)) continue;
      const double w = curv[i] / (curv[i] - curv[i + 1]);
      const double t_star = s[i].t + w * (s[i + 1].t - s[i].t);
      out.push_back({EventKind::h_turning_point, t_star, r_at(t_star)});
    }
    return out;
  }
};

void finalize_events(Trajectory& traj) {
  EventScan scan(traj);
  std::vector<Event> events = std::move(traj.events);
  for (const auto& e : scan.recollapse_events()) events.push_back(e);
  for (const auto& e : scan.r_turning_events()) events.push_back(e);
  if (auto hm = scan.best_h_minimum()) events.push_back(*hm);
  for (const auto& e : scan.h_inflection_events()) events.push_back(e);
  std::stable_sort(events.begin(), events.end(),
                   [](const Event& a, const Event& b) { return a.t < b.t; });
  traj.events = std::move(events);
}

} // namespace

// ---------------------------------------------------------------------------
// Public surface
// ---------------------------------------------------------------------------

const char* to_string(Direction dir) noexcept {
  return dir == Direction::expanding ? "expanding" : "contracting";
}

const char* to_string(EventKind kind) noexcept {
  switch (kind) {
  case EventKind::hubble_minimum: return "hubble-minimum";
  case EventKind::r_turning_point: return "r-turning-point";
  case EventKind::h_turning_point: return "h-turning-point";
  case EventKind::recollapse: return "recollapse";
  case EventKind::singularity_approach: return "singularity-approach";
  }
  return "?";
}

void IntegrationConfig::validate() const {
  const auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
  if (!positive(r_start)) throw InvalidParameter("r_start must be > 0");
  if (!positive(t_span)) throw InvalidParameter("t_span must be > 0");
  if (!positive(rel_tol) || rel_tol >= 1.0)
    throw InvalidParameter("rel_tol must be in (0, 1)");
  if (!positive(abs_tol)) throw InvalidParameter("abs_tol must be > 0");
  if (!(std::isfinite(max_step) && max_step >= 0.0))
    throw InvalidParameter("max_step must be >= 0");
  if (!(std::isfinite(event_refinement_tol) && event_refinement_tol >= 0.0))
    throw InvalidParameter("event_refinement_tol must be >= 0");
  if (!(std::isfinite(r_floor) && r_floor >= 0.0))
    throw InvalidParameter("r_floor must be >= 0");
  if (r_floor > 0.0 && r_floor >= r_start)
    throw InvalidParameter("r_floor must lie below r_start");
}

double rhs_squared(double r, const ReducedParams& params) {
  params.validate();
  if (!(std::isfinite(r) && r > 0.0))
    throw InvalidParameter("R must be finite and > 0");
  return params.alpha / r + params.delta / sq(r) + params.beta * sq(r) -
         params.gamma;
}

Sample Trajectory::state_at(double t) const {
  if (!dense) throw InvalidParameter("trajectory has no dense output");
  const auto y = dense->eval(t);
  return {t, y[0], y[1], y[1] / y[0]};
}

Trajectory integrate(const ReducedParams& params,
                     const IntegrationConfig& config) {
  params.validate();
  config.validate();

  // Branching-surface inputs are detected and reported, never integrated.
  if (params.delta == 0.0 && params.epsilon == Curvature::closed) {
    const double p = -params.gamma / params.beta;
    const double q = params.alpha / params.beta;
    const double d = sq(0.5 * q) + cube(p / 3.0);
    if (std::abs(d) <= degeneracy_tolerance(p, q))
      throw DegenerateDiscriminant(
          "discriminant on the branching surface; trajectories undefined", d);
  }

  const double f0 = rhs_squared(config.r_start, params);
  if (f0 < -64.0 * eps * magnitude_scale(config.r_start, params))
    throw ForbiddenStart("r_start lies in the forbidden interval");

  double r_floor = config.r_floor;
  if (r_floor == 0.0) {
    r_floor = 1e-8;
    if (params.gamma > 0.0) {
      if (params.delta > 0.0) {
        r_floor = 1e-8 *
                  (3.0 * params.alpha +
                   std::sqrt(9.0 * sq(params.alpha) +
                             32.0 * params.gamma * params.delta)) /
                  (4.0 * params.gamma);
      } else {
        const double p = -params.gamma / params.beta;
        const double q = params.alpha / params.beta;
        const double d = sq(0.5 * q) + cube(p / 3.0);
        if (d > degeneracy_tolerance(p, q))
          r_floor = 1e-8 * (1.5 * params.alpha / params.gamma);
      }
    }
    r_floor = std::min(r_floor, 0.5 * config.r_start);
  }

  const Ode ode{params.alpha, params.beta, params.gamma, params.delta};
  const double sign = config.direction == Direction::expanding ? 1.0 : -1.0;
  const double max_step =
      config.max_step > 0.0 ? config.max_step : config.t_span / 100.0;
  const double event_tol = config.event_refinement_tol > 0.0
                               ? config.event_refinement_tol
                               : 1e-12 * config.t_span;
  const double h_floor = 1e-14 * config.t_span;

  Trajectory traj;
  traj.params = params;
  traj.direction = config.direction;

  auto dense = std::make_shared<DenseOutput>();
  dense->abs_tol = config.abs_tol;
  dense->rel_tol = config.rel_tol;
  dense->event_tol = event_tol;

  Vec2 y{config.r_start, sign * std::sqrt(std::max(f0, 0.0))};
  Vec2 k1;
  if (!ode(y, k1)) throw InvalidParameter("invalid initial state");

  traj.samples.push_back({0.0, y[0], y[1], y[1] / y[0]});

  double t = 0.0;
  double h = initial_step(ode, y, k1, config.abs_tol, config.rel_tol,
                          std::min(max_step, config.t_span));

  const auto fail = [&](const char* what) -> StepFailure {
    traj.dense = dense;
    finalize_events(traj);
    return StepFailure(what, traj);
  };

  bool just_rejected = false;
  while (t < config.t_span) {
    h = std::min({h, max_step, config.t_span - t});
    if (h < h_floor) throw fail("step size underflow");

    StepResult step;
    if (!try_step(ode, t, y, h, k1, config.abs_tol, config.rel_tol, step)) {
      h *= 0.5;
      just_rejected = true;
      continue;
    }
    if (!std::isfinite(step.err)) {
      h *= 0.5;
      just_rejected = true;
      continue;
    }
    if (step.err > 1.0) {
      h *= std::max(0.2, 0.8 * std::pow(step.err, -0.2));
      just_rejected = true;
      continue;
    }

    dense->steps.push_back(step.record);
    t += h;
    y = step.y1;
    k1 = step.k7;
    traj.samples.push_back({t, y[0], y[1], y[1] / y[0]});

    if (y[0] < r_floor) {
      // locate the crossing inside the last step and cut there
      const DenseOutput::StepRecord& rec = dense->steps.back();
      const double t_cross = bisect_zero(
          [&](double tc) { return dense->eval(tc)[0] - r_floor; }, rec.t0,
          rec.t0 + rec.h, event_tol);
      const auto yc = dense->eval(t_cross);
      traj.samples.back() = {t_cross, yc[0], yc[1], yc[1] / yc[0]};
      traj.events.push_back(
          {EventKind::singularity_approach, t_cross, yc[0]});
      traj.dense = dense;
      finalize_events(traj);
      throw SingularityFloor("scale factor fell below the configured floor",
                             traj);
    }

    const double grow = just_rejected ? 1.0 : 4.0;
    const double fac = step.err == 0.0
                           ? grow
                           : std::min(grow, std::max(0.2, 0.8 * std::pow(
                                                              step.err,
                                                              -0.2)));
    h *= fac;
    just_rejected = false;
  }

  traj.dense = dense;
  finalize_events(traj);
  return traj;
}

Event locate_h_minimum(const Trajectory& traj) {
  if (traj.samples.size() < 3)
    throw NoExtremumInSpan("trajectory too short to bracket an extremum");
  EventScan scan(traj);
  if (auto hm = scan.best_h_minimum()) return *hm;
  throw NoExtremumInSpan(
      "Hubble parameter is monotone over the sampled span");
}

std::vector<Event> locate_turning_points(const Trajectory& traj,
                                         const ReducedParams& params) {
  params.validate();
  if (params.alpha != traj.params.alpha || params.beta != traj.params.beta ||
      params.gamma != traj.params.gamma || params.delta != traj.params.delta)
    throw InvalidParameter(
        "parameters do not match the trajectory's generator");
  if (traj.samples.size() < 3)
    throw NoExtremumInSpan("trajectory too short to bracket a turning point");
  EventScan scan(traj);
  std::vector<Event> out = scan.r_turning_events();
  for (const auto& e : scan.h_inflection_events()) out.push_back(e);
  if (out.empty())
    throw NoExtremumInSpan("no turning point inside the sampled span");
  std::sort(out.begin(), out.end(),
            [](const Event& a, const Event& b) { return a.t < b.t; });
  return out;
}

} // namespace friedmann
