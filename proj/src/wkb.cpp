#include "cwkb/wkb.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "cwkb/errors.hpp"

namespace cwkb {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMinScanPoints = 400;
constexpr int kMaxScanPoints = 20000;
constexpr int kMaxBisections = 200;
// Upper-bound doublings tried when the default search window holds no root.
constexpr int kMaxWindowDoublings = 24;
// A trace is only built for energies whose residual is at least this small.
constexpr double kConvergedResidual = 1e-6;
// Bisection switches to a tighter quadrature once the bracket is this narrow.
constexpr double kPolishWidth = 1e-6;
constexpr double kPolishTightening = 1e-2;

enum class Rule { None, Small, Large };

struct PhaseEval {
  double energy = 0.0;
  Rule rule = Rule::None;
  TurningPoints tp;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double theta = 0.0;
  double sigma = 0.0;
  double phase = 0.0;  // lambda1 - lambda2 (small box) or theta (large box)
  double residual = 0.0;

  // Small-box roots sit at (n_r + 3/4) pi and large-box roots in ((n_r + 1/2) pi, (n_r + 1) pi),
  // so branch n_r covers [(n_r + 1/4) pi, (n_r + 5/4) pi) with margin on both sides.
  int branch() const { return static_cast<int>(std::floor(phase / kPi - 0.25)); }
};

Rule natural_rule(const TurningPoints& tp) {
  switch (tp.regime) {
    case TurningRegime::SingleInside: return Rule::Small;
    case TurningRegime::BothInside: return Rule::Large;
    case TurningRegime::NoClassicalRegion: return Rule::None;
  }
  return Rule::None;
}

PhaseEval evaluate(const ConfinedSystem& s, int n_r, double e, const QuadratureOptions& opts,
                   std::optional<Rule> force = std::nullopt) {
  PhaseEval ev;
  ev.energy = e;
  ev.tp = turning_points(s, e);
  ev.rule = natural_rule(ev.tp);
  if (ev.rule == Rule::None) return ev;
  if (force) ev.rule = *force;

  const double r0 = s.r0();
  const double r1 = ev.tp.r1;
  if (ev.rule == Rule::Small) {
    const double upper = ev.tp.r2 ? std::min(r0, *ev.tp.r2) : r0;
    ev.lambda1 = lambda1(s, e, r1, upper, opts);
    ev.lambda2 = lambda2(s, e, r1, upper, opts);
    ev.phase = ev.lambda1 - ev.lambda2;
    ev.residual = ev.phase - (n_r + 0.75) * kPi;
  } else {
    if (!ev.tp.r2) {
      ev.rule = Rule::None;
      return ev;
    }
    const double r2 = *ev.tp.r2;
    ev.lambda1 = lambda1(s, e, r1, r2, opts);
    ev.lambda2 = lambda2(s, e, r1, r2, opts);
    ev.theta = ev.lambda1 - ev.lambda2;
    ev.sigma = r0 > r2 ? sigma(s, e, r0, opts) : 0.0;
    ev.phase = ev.theta;
    ev.residual = 2.0 * std::cos(ev.theta) + std::sin(ev.theta) * std::exp(-2.0 * ev.sigma);
  }
  return ev;
}

void validate(const ConfinedSystem& s, const QuantumNumbers& qn) {
  if (qn.l != s.l()) throw std::invalid_argument("quantum number l does not match the system");
  if (qn.n_r < 0) throw std::invalid_argument("radial quantum number must be non-negative");
  if (s.l() < 1) throw std::invalid_argument("the perturbative WKB solvers require l >= 1");
}

double energy_scale(double e) { return std::max(1.0, std::abs(e)); }

// Narrowest pair (below, above) straddling a change of natural rule in (a, b).
std::pair<PhaseEval, PhaseEval> locate_flip(const ConfinedSystem& s, int n_r, const PhaseEval& a,
                                            const PhaseEval& b, const QuadratureOptions& opts) {
  double lo = a.energy;
  double hi = b.energy;
  for (int it = 0; it < kMaxBisections && hi - lo > 1e-13 * energy_scale(hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (natural_rule(turning_points(s, mid)) == a.rule)
      lo = mid;
    else
      hi = mid;
  }
  return {evaluate(s, n_r, lo, opts, a.rule == Rule::None ? std::nullopt : std::optional(a.rule)),
          evaluate(s, n_r, hi, opts, b.rule == Rule::None ? std::nullopt : std::optional(b.rule))};
}

struct Root {
  PhaseEval eval;
  double bracket_lo;
  double bracket_hi;
};

Root bisect_root(const ConfinedSystem& s, int n_r, PhaseEval a, PhaseEval b, const SolveOptions& opts) {
  const Rule rule = a.rule;
  const double lo0 = a.energy;
  const double hi0 = b.energy;
  if (a.residual == 0.0) return {a, lo0, hi0};
  if (b.residual == 0.0) return {b, lo0, hi0};
  PhaseEval best = std::abs(a.residual) < std::abs(b.residual) ? a : b;
  // Quadrature noise must stay well below residual_tol near the root.
  QuadratureOptions polish = opts.quadrature;
  polish.rel_tol *= kPolishTightening;
  for (int it = 0; it < kMaxBisections; ++it) {
    const double mid = 0.5 * (a.energy + b.energy);
    if (!(mid > a.energy && mid < b.energy)) break;
    const bool close = b.energy - a.energy < kPolishWidth * energy_scale(mid);
    PhaseEval m = evaluate(s, n_r, mid, close ? polish : opts.quadrature, rule);
    if (std::abs(m.residual) < std::abs(best.residual)) best = m;
    if (m.residual == 0.0) break;
    if ((m.residual < 0.0) == (a.residual < 0.0))
      a = m;
    else
      b = m;
    if (b.energy - a.energy < opts.energy_tol && std::abs(best.residual) <= opts.residual_tol) break;
  }
  return {best, lo0, hi0};
}

bool brackets(const PhaseEval& a, const PhaseEval& b) {
  return a.rule != Rule::None && a.rule == b.rule &&
         ((a.residual <= 0.0 && b.residual >= 0.0) || (a.residual >= 0.0 && b.residual <= 0.0));
}

EnergyResult package(const ConfinedSystem& s, const Root& root, Method method, const SolveOptions& opts) {
  const PhaseEval& ev = root.eval;
  EnergyResult out;
  out.energy = ev.energy;
  out.method = method;
  out.residual = ev.residual;
  out.diagnostics.lambda1 = ev.lambda1;
  out.diagnostics.lambda2 = ev.lambda2;
  out.diagnostics.bracket_lo = root.bracket_lo;
  out.diagnostics.bracket_hi = root.bracket_hi;
  if (ev.rule == Rule::Large) {
    out.regime = SolutionRegime::BothInside;
    out.diagnostics.theta = ev.theta;
    out.diagnostics.sigma_r0 = ev.sigma;
  } else {
    out.regime = ev.tp.r2 ? SolutionRegime::SingleInside : SolutionRegime::PositiveEnergySingle;
  }
  if (ev.tp.r2 && std::abs(s.r0() - *ev.tp.r2) < opts.proximity * *ev.tp.r2) {
    std::ostringstream msg;
    msg << "near-turning-point: wall at r0=" << s.r0() << " within " << opts.proximity * 100
        << "% of r2=" << *ev.tp.r2;
    out.warnings.push_back(msg.str());
  }
  if (std::abs(ev.residual) > opts.residual_tol) {
    std::ostringstream msg;
    msg << "residual " << ev.residual << " above tolerance " << opts.residual_tol;
    out.warnings.push_back(msg.str());
  }
  return out;
}

// Scans `w` for sign changes of the residual, splitting brackets where the
// regime flips, and appends the bisected roots that can carry branch n_r.
void scan_window(const ConfinedSystem& s, int n_r, const SearchWindow& w, const SolveOptions& opts,
                 std::vector<Root>& roots) {
  const auto steps = static_cast<int>(std::clamp(std::ceil((w.hi - w.lo) / w.step),
                                                 double(kMinScanPoints), double(kMaxScanPoints)));
  const double h = (w.hi - w.lo) / steps;
  auto consider = [&](const PhaseEval& a, const PhaseEval& b) {
    // The phase grows with E, so a root of branch n_r needs the branches to straddle it.
    if (brackets(a, b) && a.branch() <= n_r && b.branch() >= n_r)
      roots.push_back(bisect_root(s, n_r, a, b, opts));
  };

  PhaseEval prev = evaluate(s, n_r, w.lo, opts.quadrature);
  for (int i = 1; i <= steps; ++i) {
    const double e = i == steps ? w.hi : w.lo + h * i;
    PhaseEval cur = evaluate(s, n_r, e, opts.quadrature);
    if (cur.rule == prev.rule) {
      consider(prev, cur);
    } else {
      auto [below, above] = locate_flip(s, n_r, prev, cur, opts.quadrature);
      consider(prev, below);
      consider(above, cur);
    }
    prev = cur;
    // The phase grows with E; past this point no root can carry branch n_r.
    const bool have = std::any_of(roots.begin(), roots.end(),
                                  [&](const Root& r) { return r.eval.branch() == n_r; });
    if (have && cur.rule != Rule::None && cur.phase > (n_r + 2.0) * kPi) break;
  }
}

}  // namespace

std::string to_string(Method method) {
  switch (method) {
    case Method::Perturbative: return "perturbative";
    case Method::Langer: return "langer";
    case Method::Exact: return "exact";
  }
  return "unknown";
}

std::string to_string(SolutionRegime regime) {
  switch (regime) {
    case SolutionRegime::SingleInside: return "single-inside";
    case SolutionRegime::BothInside: return "both-inside";
    case SolutionRegime::PositiveEnergySingle: return "positive-energy-single";
  }
  return "unknown";
}

std::string to_string(WaveRegion region) {
  switch (region) {
    case WaveRegion::I: return "I";
    case WaveRegion::II: return "II";
    case WaveRegion::III: return "III";
  }
  return "?";
}

SearchWindow default_search_window(const ConfinedSystem& system) {
  const double bottom = well_bottom(system).v;
  const auto& units = system.potential().units();
  SearchWindow w;
  switch (system.potential().kind()) {
    case PotentialKind::HarmonicOscillator:
      w.lo = bottom + 1e-6;
      w.hi = 50.0;
      break;
    case PotentialKind::Hydrogen: {
      const double k = units.coulomb_strength;
      const double ground = -k * k * units.mass / (2.0 * units.hbar * units.hbar);
      w.lo = std::max(ground, bottom) + 1e-9;
      w.hi = 200.0;
      break;
    }
    case PotentialKind::Hulthen:
      w.lo = bottom + 1e-9;
      w.hi = -1e-12;
      break;
  }
  return w;
}

double residual_small_box(const ConfinedSystem& system, const QuantumNumbers& qn, double energy,
                          const QuadratureOptions& opts) {
  const auto ev = evaluate(system, qn.n_r, energy, opts);
  if (ev.rule != Rule::Small) {
    throw RegimeError("small-box rule needs r1 < r0 < r2 at E = " + std::to_string(energy) + " (regime " +
                      to_string(ev.tp.regime) + ")");
  }
  return ev.residual;
}

double residual_large_box(const ConfinedSystem& system, const QuantumNumbers& qn, double energy,
                          const QuadratureOptions& opts) {
  const auto ev = evaluate(system, qn.n_r, energy, opts);
  if (ev.rule != Rule::Large) {
    throw RegimeError("large-box rule needs r2 <= r0 at E = " + std::to_string(energy) + " (regime " +
                      to_string(ev.tp.regime) + ")");
  }
  return ev.residual;
}

EnergyResult solve_energy(const ConfinedSystem& system, const QuantumNumbers& qn, Method method,
                          std::optional<SearchWindow> search, const SolveOptions& opts) {
  if (method == Method::Exact) {
    throw std::invalid_argument("exact energies come from the Numerov oracle, not the WKB solver");
  }
  validate(system, qn);
  const ConfinedSystem s =
      method == Method::Langer ? system.with_langer()
                               : ConfinedSystem(system.potential(), system.l(), system.r0());
  const SearchWindow w = search.value_or(default_search_window(s));
  if (!(w.hi > w.lo) || !(w.step > 0.0)) throw std::invalid_argument("search window must have hi > lo, step > 0");

  const int n_r = qn.n_r;
  std::vector<Root> roots;
  auto found = [&] {
    return std::any_of(roots.begin(), roots.end(), [&](const Root& r) { return r.eval.branch() == n_r; });
  };
  scan_window(s, n_r, w, opts, roots);
  // The default upper bound is only a guess: keep doubling it while no root has turned up.
  double searched_hi = w.hi;
  if (!search) {
    double span = std::max(1.0, w.hi - w.lo);
    for (int i = 0; i < kMaxWindowDoublings && !found(); ++i) {
      const SearchWindow next{searched_hi, std::max(searched_hi, 0.0) + span, w.step};
      scan_window(s, n_r, next, opts, roots);
      searched_hi = next.hi;
      span *= 2.0;
    }
  }

  const Root* chosen = nullptr;
  for (const auto& r : roots) {
    if (r.eval.branch() != n_r) continue;
    if (!chosen || r.eval.energy < chosen->eval.energy) chosen = &r;
  }
  if (!chosen) {
    std::ostringstream msg;
    msg << "no " << to_string(method) << " eigenvalue with n_r=" << n_r << ", l=" << qn.l
        << " in [" << w.lo << ", " << searched_hi << "] for r0=" << system.r0();
    throw NoEigenvalueError(msg.str());
  }
  return package(s, *chosen, method, opts);
}

EnergyResult solve_energy_langer(const ConfinedSystem& system, const QuantumNumbers& qn,
                                 std::optional<SearchWindow> search, const SolveOptions& opts) {
  return solve_energy(system, qn, Method::Langer, search, opts);
}

int WavefunctionTrace::region_two_nodes() const {
  int nodes = 0;
  double last = 0.0;
  const double r_last = samples.empty() ? 0.0 : samples.back().r;
  for (const auto& smp : samples) {
    if (smp.region != WaveRegion::II || smp.r >= r_last || std::abs(smp.psi) < 1e-9) continue;
    if (last != 0.0 && (smp.psi < 0.0) != (last < 0.0)) ++nodes;
    last = smp.psi;
  }
  return nodes;
}

WavefunctionTrace build_wavefunction(const ConfinedSystem& system, const QuantumNumbers& qn,
                                     double energy, int sample_count, const QuadratureOptions& opts) {
  if (sample_count < 2) throw std::invalid_argument("sample_count must be at least 2");
  validate(system, qn);
  const auto ev = evaluate(system, qn.n_r, energy, opts);
  if (ev.rule == Rule::None || std::abs(ev.residual) > kConvergedResidual || ev.branch() != qn.n_r) {
    throw PreconditionError("E = " + std::to_string(energy) + " is not a converged eigenvalue for n_r = " +
                            std::to_string(qn.n_r));
  }

  const double r0 = system.r0();
  const double r1 = ev.tp.r1;
  WavefunctionTrace trace;
  trace.r1 = r1;
  trace.r2 = ev.tp.r2;
  const double outer = ev.tp.r2 ? *ev.tp.r2 : r0;
  trace.band = 0.02 * (outer - r1);
  const bool has_three = ev.rule == Rule::Large && r0 > outer;
  const double l0 = system.correction_l0();
  const double theta = ev.theta;
  const double sigma0 = ev.sigma;

  for (int i = 1; i <= sample_count; ++i) {
    const double r = i == sample_count ? r0 : r0 * i / sample_count;
    if (r1 > 0.0 && std::abs(r - r1) < trace.band) continue;
    if (has_three && std::abs(r - outer) < trace.band) continue;
    WaveSample smp{r, 0.0, WaveRegion::II};
    if (r < r1) {
      smp.region = WaveRegion::I;
      const double k = kappa0(system, energy, r);
      const double exponent = decay_action(system, energy, r, r1, opts) +
                              decay_correction(system, energy, r, r1, opts);
      smp.psi = std::exp(-exponent) / std::sqrt(k);
    } else if (has_three && r > outer) {
      smp.region = WaveRegion::III;
      const double k = kappa0(system, energy, r);
      const double sig = decay_action(system, energy, outer, r, opts) -
                         decay_correction(system, energy, outer, r, opts);
      // 2 cos(theta) = -sin(theta) exp(-2 sigma(r0)) at the eigenvalue.
      smp.psi = std::sin(theta) * (std::exp(-sig) - std::exp(sig - 2.0 * sigma0)) / std::sqrt(k);
    } else {
      const double g = gamma0(system, energy, r);
      const double phase = lambda1(system, energy, r1, r, opts) -
                           (l0 == 0.0 ? 0.0 : lambda2(system, energy, r1, r, opts));
      smp.psi = g > 0.0 ? 2.0 * std::sin(phase + 0.25 * kPi) / std::sqrt(g) : 0.0;
    }
    trace.samples.push_back(smp);
  }

  double peak = 0.0;
  for (const auto& smp : trace.samples) peak = std::max(peak, std::abs(smp.psi));
  if (peak > 0.0)
    for (auto& smp : trace.samples) smp.psi /= peak;
  return trace;
}

HigherOrderReport higher_order_shift(const ConfinedSystem& system, const QuantumNumbers& qn,
                                     double energy, std::optional<double> epsilon,
                                     const QuadratureOptions& opts) {
  validate(system, qn);
  const auto ev = evaluate(system, qn.n_r, energy, opts);
  if (ev.rule == Rule::None) throw RegimeError("no classically allowed region at E = " + std::to_string(energy));

  HigherOrderReport report;
  report.base_residual = ev.residual;
  const double r1 = ev.tp.r1;
  const double upper = ev.rule == Rule::Small ? (ev.tp.r2 ? std::min(system.r0(), *ev.tp.r2) : system.r0())
                                              : *ev.tp.r2;
  report.terms = higher_order_terms(system, energy, r1, upper, epsilon, opts);
  report.phase_shift = report.terms.order2 + report.terms.order3;

  auto shifted = [&](const PhaseEval& e) {
    const double phase = e.phase - report.phase_shift;
    if (e.rule == Rule::Small) return phase - (qn.n_r + 0.75) * kPi;
    return 2.0 * std::cos(phase) + std::sin(phase) * std::exp(-2.0 * e.sigma);
  };
  report.shifted_residual = shifted(ev);

  if (report.phase_shift != 0.0) {
    const double h = 1e-6 * energy_scale(energy);
    const auto up = evaluate(system, qn.n_r, energy + h, opts, ev.rule);
    const auto down = evaluate(system, qn.n_r, energy - h, opts, ev.rule);
    const double slope = (up.residual - down.residual) / (2.0 * h);
    if (slope != 0.0) report.energy_shift = -(report.shifted_residual - report.base_residual) / slope;
  }
  return report;
}

}  // namespace cwkb
