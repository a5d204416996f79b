#include "cwkb/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cwkb/errors.hpp"

namespace cwkb {

namespace {

constexpr double kRescaleAbove = 1e200;
constexpr int kMaxWindowDoublings = 80;
constexpr int kMaxBisections = 200;

double full_centrifugal(const ConfinedSystem& s) {
  const double l = s.l();
  return l * (l + 1.0) * s.hbar() * s.hbar() / (2.0 * s.mass());
}

void check_config(const ConfinedSystem& s, const NumerovConfig& c) {
  if (c.grid_points < 2000) throw std::invalid_argument("Numerov grid needs at least 2000 points");
  if (!(c.r_min > 0.0) || !(c.r_min < s.r0())) throw std::invalid_argument("r_min must lie in (0, r0)");
  if (!(c.tolerance > 0.0)) throw std::invalid_argument("eigenvalue tolerance must be positive");
}

}  // namespace

int RadialIntegration::zeros_through_wall() const {
  const double expected_sign = nodes % 2 == 0 ? 1.0 : -1.0;
  return nodes + (boundary_value * expected_sign <= 0.0 ? 1 : 0);
}

RadialIntegration integrate_radial(const ConfinedSystem& system, double energy, const NumerovConfig& config) {
  check_config(system, config);
  if (!std::isfinite(energy)) throw DomainError("energy must be finite");

  const int n = config.grid_points;
  const double r_min = config.r_min;
  const double h = (system.r0() - r_min) / (n - 1);
  const double h2 = h * h / 12.0;
  const double k2_scale = 2.0 * system.mass() / (system.hbar() * system.hbar());
  const double cent = full_centrifugal(system);
  const auto& pot = system.potential();
  auto k2 = [&](double r) { return k2_scale * (energy - pot.value(r) - cent / (r * r)); };

  const double l1 = system.l() + 1.0;
  double r_prev = r_min;
  double r_cur = r_min + h;
  double psi_prev = std::pow(r_prev, l1);
  double psi_cur = std::pow(r_cur, l1);
  double c_prev = 1.0 + h2 * k2(r_prev);
  double f_cur = k2(r_cur);

  RadialIntegration out;
  out.max_abs = std::max(std::abs(psi_prev), std::abs(psi_cur));
  double last_sign = psi_cur;  // sign of the most recent nonzero sample
  for (int i = 2; i < n; ++i) {
    const double r_next = i == n - 1 ? system.r0() : r_min + h * i;
    const double f_next = k2(r_next);
    const double c_next = 1.0 + h2 * f_next;
    const double psi_next = (2.0 * psi_cur * (1.0 - 5.0 * h2 * f_cur) - c_prev * psi_prev) / c_next;

    if (i < n - 1 && psi_next != 0.0) {
      if ((psi_next < 0.0) != (last_sign < 0.0)) ++out.nodes;
      last_sign = psi_next;
    }

    psi_prev = psi_cur;
    psi_cur = psi_next;
    c_prev = 1.0 + h2 * f_cur;
    f_cur = f_next;
    out.max_abs = std::max(out.max_abs, std::abs(psi_cur));
    if (out.max_abs > kRescaleAbove) {
      psi_prev /= kRescaleAbove;
      psi_cur /= kRescaleAbove;
      out.max_abs /= kRescaleAbove;
    }
  }
  out.boundary_value = psi_cur;
  return out;
}

EnergyResult solve_exact(const ConfinedSystem& system, const QuantumNumbers& qn, const NumerovConfig& config,
                         std::optional<EnergyWindow> window) {
  check_config(system, config);
  if (qn.l != system.l()) throw std::invalid_argument("quantum number l does not match the system");
  if (qn.n_r < 0) throw std::invalid_argument("radial quantum number must be non-negative");
  const int target = qn.n_r + 1;
  auto zeros = [&](double e) { return integrate_radial(system, e, config).zeros_through_wall(); };

  double lo = 0.0;
  double hi = 0.0;
  if (window) {
    lo = window->lo;
    hi = window->hi;
    if (!(hi > lo)) throw std::invalid_argument("energy window must have hi > lo");
    if (zeros(lo) >= target || zeros(hi) < target) {
      std::ostringstream msg;
      msg << "no eigenvalue with n_r=" << qn.n_r << " in [" << lo << ", " << hi << "]";
      throw NoEigenvalueError(msg.str());
    }
  } else {
    // Below the minimum of the full effective potential nothing oscillates.
    const double h = (system.r0() - config.r_min) / (config.grid_points - 1);
    const double cent = full_centrifugal(system);
    lo = system.potential().value(system.r0()) + cent / (system.r0() * system.r0());
    for (int i = 1; i < config.grid_points; ++i) {
      const double r = config.r_min + h * i;
      lo = std::min(lo, system.potential().value(r) + cent / (r * r));
    }
    double span = 1.0;
    hi = lo + span;
    int doublings = 0;
    while (zeros(hi) < target) {
      if (++doublings > kMaxWindowDoublings) throw NoEigenvalueError("energy window search diverged");
      lo = hi;
      span *= 2.0;
      hi = lo + span;
    }
  }

  const double window_lo = lo;
  const double window_hi = hi;
  for (int it = 0; it < kMaxBisections && hi - lo > config.tolerance; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    if (zeros(mid) >= target)
      hi = mid;
    else
      lo = mid;
  }

  EnergyResult out;
  out.energy = 0.5 * (lo + hi);
  out.method = Method::Exact;
  const auto run = integrate_radial(system, out.energy, config);
  out.residual = run.normalized_boundary();
  out.diagnostics.bracket_lo = window_lo;
  out.diagnostics.bracket_hi = window_hi;
  if (run.nodes != qn.n_r) {
    out.warnings.push_back("converged solution has " + std::to_string(run.nodes) + " interior nodes");
  }

  const auto tp = turning_points(ConfinedSystem(system.potential(), system.l(), system.r0()), out.energy);
  if (tp.regime == TurningRegime::BothInside)
    out.regime = SolutionRegime::BothInside;
  else if (!tp.r2 && tp.regime == TurningRegime::SingleInside)
    out.regime = SolutionRegime::PositiveEnergySingle;
  else
    out.regime = SolutionRegime::SingleInside;
  return out;
}

}  // namespace cwkb
