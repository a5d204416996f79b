#include "cwkb/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

#include "cwkb/errors.hpp"

namespace cwkb {

namespace {

constexpr int kOrder = 32;

struct GaussLegendre {
  std::array<double, kOrder> x{};
  std::array<double, kOrder> w{};

  GaussLegendre() {
    // Newton iteration on P_n from the Chebyshev-like initial guesses.
    for (int i = 0; i < kOrder / 2; ++i) {
      double z = std::cos(std::numbers::pi * (i + 0.75) / (kOrder + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p1 = 1.0;
        double p2 = 0.0;
        for (int k = 1; k <= kOrder; ++k) {
          const double p3 = p2;
          p2 = p1;
          p1 = ((2.0 * k - 1.0) * z * p2 - (k - 1.0) * p3) / k;
        }
        dp = kOrder * (z * p1 - p2) / (z * z - 1.0);
        const double dz = p1 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      const double wt = 2.0 / ((1.0 - z * z) * dp * dp);
      x[static_cast<std::size_t>(i)] = -z;
      x[static_cast<std::size_t>(kOrder - 1 - i)] = z;
      w[static_cast<std::size_t>(i)] = wt;
      w[static_cast<std::size_t>(kOrder - 1 - i)] = wt;
    }
  }
};

const GaussLegendre& rule() {
  static const GaussLegendre gl;
  return gl;
}

double panel(const std::function<double(double)>& f, double a, double b) {
  const auto& gl = rule();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (int i = 0; i < kOrder; ++i)
    sum += gl.w[static_cast<std::size_t>(i)] * f(mid + half * gl.x[static_cast<std::size_t>(i)]);
  return half * sum;
}

struct Panel {
  double a;
  double b;
  double left;   // rule on [a, mid]
  double right;  // rule on [mid, b]
  double error;  // |left + right - rule on [a, b]|
  int depth;

  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel make_panel(const std::function<double(double)>& f, double a, double b, double whole, int depth) {
  const double m = 0.5 * (a + b);
  const double left = panel(f, a, m);
  const double right = panel(f, m, b);
  return {a, b, left, right, std::abs(left + right - whole), depth};
}

// Globally adaptive: the panel with the largest error estimate is split next,
// so a hard spot cannot starve the rest of the interval of refinement.
double adapt(const std::function<double(double)>& f, double a, double b, const QuadratureOptions& opts) {
  std::priority_queue<Panel> open;
  std::vector<Panel> settled;
  open.push(make_panel(f, a, b, panel(f, a, b), 0));
  double total = open.top().left + open.top().right;
  double error = open.top().error;
  for (int budget = opts.max_subdivisions; budget > 0 && !open.empty(); --budget) {
    if (error <= std::max(opts.rel_tol * std::abs(total), opts.abs_floor)) break;
    const Panel p = open.top();
    open.pop();
    const double m = 0.5 * (p.a + p.b);
    const double q1 = 0.5 * (p.a + m);
    const double q3 = 0.5 * (m + p.b);
    if (p.depth >= opts.max_depth || !(q1 > p.a && m > q1 && q3 > m && p.b > q3)) {
      settled.push_back(p);
      error -= p.error;
      continue;
    }
    const Panel lo = make_panel(f, p.a, m, p.left, p.depth + 1);
    const Panel hi = make_panel(f, m, p.b, p.right, p.depth + 1);
    total += (lo.left + lo.right + hi.left + hi.right) - (p.left + p.right);
    error += lo.error + hi.error - p.error;
    open.push(lo);
    open.push(hi);
  }
  // Re-sum from the panels so the running total's rounding does not leak out.
  double sum = 0.0;
  for (const auto& p : settled) sum += p.left + p.right;
  for (; !open.empty(); open.pop()) sum += open.top().left + open.top().right;
  return sum;
}

double energy_scale(double e) { return std::max(1.0, std::abs(e)); }

// Slack on E - V_eff that is treated as rounding at a turning point.
constexpr double kGapSlack = 1e-10;
// Rounding left in E - V_eff at a turning point found to full precision.
constexpr double kRounding = 64.0 * std::numeric_limits<double>::epsilon();
// Relative gap below which an interval end counts as a turning point.
constexpr double kTurningTolerance = 1e-9;

// E - V_eff(r) on [from, to] for use inside integrands: rounding noise near an
// end is replaced by the first-order expansion about that end, a genuine sign
// violation throws. Callers pass the exact distance `offset` from the nearer
// end (`at_to` tells which); r itself carries the rounding of end +/- offset,
// which would otherwise dominate E - V_eff there.
struct AllowedGap {
  const ConfinedSystem& s;
  double e;
  double from;
  double to;
  double sign;  // +1 for E - V_eff, -1 for V_eff - E

  double operator()(double r, double offset, bool at_to) const {
    const double v = s.v_eff(r);
    const double g = sign * (e - v);
    const double slack = kGapSlack * std::max({1.0, std::abs(e), std::abs(v)});
    if (g > slack) return g;
    if (g < -slack) {
      throw InconsistentBracketError("integrand left its classical region at r = " + std::to_string(r));
    }
    const double end = at_to ? to : from;
    const double v_end = s.v_eff(end);
    double g_end = std::max(0.0, sign * (e - v_end));
    // A turning point computed to full precision still leaves this much in E - V_eff.
    if (g_end <= kRounding * std::max({1.0, std::abs(e), std::abs(v_end)})) g_end = 0.0;
    const double inward_slope = (at_to ? sign : -sign) * s.v_eff_derivative(end);
    const double model = g_end + inward_slope * offset;
    return model > 0.0 ? model : std::max(g, std::numeric_limits<double>::min());
  }
};

// Integral over [a, b] of f(r, offset, at_b) with r = a + u^2 / r = b - u^2 on
// the two halves; offset = u^2 is the exact distance from that half's end.
template <class F>
double integrate_with_offsets(const F& f, double a, double b, const QuadratureOptions& opts) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double span = std::sqrt(m - a);
  const double lower =
      integrate_smooth([&](double u) { return 2.0 * u * f(a + u * u, u * u, false); }, 0.0, span, opts);
  const double upper =
      integrate_smooth([&](double u) { return 2.0 * u * f(b - u * u, u * u, true); }, 0.0, span, opts);
  return lower + upper;
}

void check_interval(double from, double to) {
  if (!(from > 0.0 || from == 0.0) || !(to >= from))
    throw DomainError("integration interval must satisfy 0 <= from <= to");
}

bool is_turning_point(const ConfinedSystem& s, double e, double r) {
  if (r <= 0.0) return false;
  return std::abs(e - s.v_eff(r)) <= kTurningTolerance * energy_scale(e);
}

double integrate_allowed(const ConfinedSystem& s, double e, double from, double to, double sign,
                         int power, const QuadratureOptions& opts) {
  // power = +1: integral of sqrt(2m g)/hbar; power = -1: integral of hbar / (sqrt(2m g) r^2)
  check_interval(from, to);
  if (to == from) return 0.0;
  const AllowedGap gap{s, e, from, to, sign};
  const double scale = std::sqrt(2.0 * s.mass()) / s.hbar();
  if (power > 0) {
    return integrate_with_offsets(
        [&](double r, double d, bool at_to) { return scale * std::sqrt(gap(r, d, at_to)); }, from, to, opts);
  }
  return integrate_with_offsets(
      [&](double r, double d, bool at_to) { return 1.0 / (scale * std::sqrt(gap(r, d, at_to)) * r * r); }, from,
      to, opts);
}

}  // namespace

QuadratureOptions default_quadrature_options() {
  static const QuadratureOptions defaults = [] {
    QuadratureOptions o;
    if (const char* env = std::getenv("CWKB_DEFAULT_TOL")) {
      char* end = nullptr;
      const double v = std::strtod(env, &end);
      if (end != env && v > 0.0 && std::isfinite(v)) o.rel_tol = v;
    }
    return o;
  }();
  return defaults;
}

double integrate_smooth(const std::function<double(double)>& f, double a, double b,
                        const QuadratureOptions& opts) {
  if (a == b) return 0.0;
  if (b < a) return -integrate_smooth(f, b, a, opts);
  return adapt(f, a, b, opts);
}

double integrate_sqrt_endpoints(const std::function<double(double)>& f, double a, double b,
                                const QuadratureOptions& opts) {
  if (a == b) return 0.0;
  if (b < a) return -integrate_sqrt_endpoints(f, b, a, opts);
  const double m = 0.5 * (a + b);
  const double span = std::sqrt(m - a);
  const double lower = integrate_smooth([&](double u) { return 2.0 * u * f(a + u * u); }, 0.0, span, opts);
  const double upper = integrate_smooth([&](double u) { return 2.0 * u * f(b - u * u); }, 0.0, span, opts);
  return lower + upper;
}

double gamma0(const ConfinedSystem& system, double energy, double r) {
  const double g = energy - system.v_eff(r);
  if (g < 0.0) {
    if (g < -kGapSlack * energy_scale(energy))
      throw DomainError("gamma0 requires E >= V_eff(r), r = " + std::to_string(r));
    return 0.0;
  }
  return std::sqrt(2.0 * system.mass() * g) / system.hbar();
}

double kappa0(const ConfinedSystem& system, double energy, double r) {
  const double g = system.v_eff(r) - energy;
  if (g < 0.0) {
    if (g < -kGapSlack * energy_scale(energy))
      throw DomainError("kappa0 requires V_eff(r) >= E, r = " + std::to_string(r));
    return 0.0;
  }
  return std::sqrt(2.0 * system.mass() * g) / system.hbar();
}

double lambda1(const ConfinedSystem& system, double energy, double from, double to,
               const QuadratureOptions& opts) {
  return integrate_allowed(system, energy, from, to, +1.0, +1, opts);
}

double lambda2(const ConfinedSystem& system, double energy, double from, double to,
               const QuadratureOptions& opts) {
  const double l0 = system.correction_l0();
  check_interval(from, to);
  if (l0 == 0.0) return 0.0;
  return l0 / (2.0 * system.hbar()) * integrate_allowed(system, energy, from, to, +1.0, -1, opts);
}

double theta(const ConfinedSystem& system, double energy, const QuadratureOptions& opts) {
  const auto tp = turning_points(system, energy);
  if (!tp.r2) throw RegimeError("theta needs an outer turning point");
  if (*tp.r2 - tp.r1 < kDegenerateWidth) return 0.0;
  return lambda1(system, energy, tp.r1, *tp.r2, opts) - lambda2(system, energy, tp.r1, *tp.r2, opts);
}

double sigma(const ConfinedSystem& system, double energy, double r_end, const QuadratureOptions& opts) {
  const auto tp = turning_points(system, energy);
  if (!tp.r2) throw RegimeError("sigma needs an outer turning point");
  const double r2 = *tp.r2;
  if (r_end < r2) {
    throw InconsistentBracketError("sigma endpoint " + std::to_string(r_end) +
                                   " lies inside the classically allowed region");
  }
  return decay_action(system, energy, r2, r_end, opts) -
         decay_correction(system, energy, r2, r_end, opts);
}

double decay_action(const ConfinedSystem& system, double energy, double from, double to,
                    const QuadratureOptions& opts) {
  return integrate_allowed(system, energy, from, to, -1.0, +1, opts);
}

double decay_correction(const ConfinedSystem& system, double energy, double from, double to,
                        const QuadratureOptions& opts) {
  const double l0 = system.correction_l0();
  check_interval(from, to);
  if (l0 == 0.0) return 0.0;
  return l0 / (2.0 * system.hbar()) * integrate_allowed(system, energy, from, to, -1.0, -1, opts);
}

HigherOrderTerms higher_order_terms(const ConfinedSystem& system, double energy, double from,
                                    double to, std::optional<double> epsilon,
                                    const QuadratureOptions& opts) {
  check_interval(from, to);
  HigherOrderTerms out;
  if (epsilon) {
    if (!(*epsilon >= 0.0)) throw DomainError("truncation epsilon must be non-negative");
    out.epsilon = *epsilon;
  } else {
    const auto tp = turning_points(system, energy);
    const double outer = tp.r2 ? *tp.r2 : system.r0();
    out.epsilon = 1e-3 * (outer - tp.r1);
  }
  out.lower = is_turning_point(system, energy, from) ? from + out.epsilon : from;
  out.upper = is_turning_point(system, energy, to) ? to - out.epsilon : to;
  if (!(out.upper > out.lower)) {
    throw QuadratureError("interval vanished after pulling turning-point ends in by epsilon");
  }

  const double l0 = system.correction_l0();
  if (l0 == 0.0) return out;
  const double hbar = system.hbar();
  const AllowedGap gap{system, energy, out.lower, out.upper, +1.0};
  auto sample = [&](double r) {
    const double d_lower = r - out.lower;
    const double d_upper = out.upper - r;
    return d_lower <= d_upper ? gap(r, d_lower, false) : gap(r, d_upper, true);
  };
  const double scale = std::sqrt(2.0 * system.mass()) / hbar;
  const double c2 = l0 * l0 / (8.0 * hbar * hbar);
  const double c3 = l0 * l0 * l0 / (16.0 * hbar * hbar * hbar);
  out.order2 = integrate_smooth(
      [&](double r) {
        const double g = scale * std::sqrt(sample(r));
        return c2 / (g * g * g * std::pow(r, 4));
      },
      out.lower, out.upper, opts);
  out.order3 = integrate_smooth(
      [&](double r) {
        const double g = scale * std::sqrt(sample(r));
        return c3 / (std::pow(g, 5) * std::pow(r, 6));
      },
      out.lower, out.upper, opts);
  return out;
}

}  // namespace cwkb
