#include "cwkb/potentials.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "cwkb/errors.hpp"

namespace cwkb {

namespace {

void require_positive_radius(double r) {
  if (!(r > 0.0)) throw DomainError("radius must be positive, got " + std::to_string(r));
}

// Scan parameters for potentials without closed-form turning points.
constexpr int kScanPoints = 512;
constexpr double kScanStart = 1e-6;
constexpr int kMaxScanExtensions = 40;

TurningRegime classify(double r1, const std::optional<double>& r2, double r0) {
  if (r2 && *r2 - r1 < kDegenerateWidth) return TurningRegime::NoClassicalRegion;
  if (r1 >= r0) return TurningRegime::NoClassicalRegion;
  if (!r2 || *r2 > r0) return TurningRegime::SingleInside;
  return TurningRegime::BothInside;
}

TurningPoints make_points(double r1, std::optional<double> r2, double r0) {
  return {r1, r2, classify(r1, r2, r0)};
}

TurningPoints no_region_at(double r) {
  return {r, r, TurningRegime::NoClassicalRegion};
}

TurningPoints oscillator_points(const ConfinedSystem& s, double e) {
  // E = r^2/2 + C/r^2  =>  r^4 - 2E r^2 + 2C = 0
  const double two_c = 2.0 * s.centrifugal_coefficient();
  if (two_c == 0.0) {
    if (e <= 0.0) return no_region_at(0.0);
    return make_points(0.0, std::sqrt(2.0 * e), s.r0());
  }
  const double disc = e * e - two_c;
  if (e <= 0.0 || disc < 0.0) return no_region_at(std::pow(two_c, 0.25));
  const double r2_sq = e + std::sqrt(disc);
  const double r2 = std::sqrt(r2_sq);
  const double r1 = std::sqrt(two_c / r2_sq);
  return make_points(r1, r2, s.r0());
}

TurningPoints coulomb_points(const ConfinedSystem& s, double e) {
  // E = -k/r + C/r^2  =>  E r^2 + k r - C = 0
  const double k = s.potential().units().coulomb_strength;
  const double c = s.centrifugal_coefficient();
  if (e < 0.0) {
    const double b = -e;
    const double disc = k * k - 4.0 * b * c;
    if (disc < 0.0) return no_region_at(2.0 * c / k);
    const double r2 = (k + std::sqrt(disc)) / (2.0 * b);
    const double r1 = c == 0.0 ? 0.0 : c / (b * r2);
    return make_points(r1, r2, s.r0());
  }
  if (e == 0.0) return make_points(c / k, std::nullopt, s.r0());
  const double r1 = 2.0 * c / (k + std::sqrt(k * k + 4.0 * e * c));
  return make_points(r1, std::nullopt, s.r0());
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  const double a = std::log(lo);
  const double step = (std::log(hi) - a) / (n - 1);
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = std::exp(a + step * i);
  g.back() = hi;
  return g;
}

double refine_root(const ConfinedSystem& s, double e, double lo, double hi) {
  auto gap = [&](double r) { return e - s.v_eff(r); };
  // Terminate on the bracket width only; closed-form potentials never reach here.
  auto tol = [](double a, double b) { return std::abs(b - a) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(b); };
  auto [a, b] = boost::math::tools::bisect(gap, lo, hi, tol);
  return std::abs(gap(a)) <= std::abs(gap(b)) ? a : b;
}

double refine_minimum(const ConfinedSystem& s, double lo, double hi) {
  auto [r, v] = boost::math::tools::brent_find_minima(
      [&](double x) { return s.v_eff(x); }, lo, hi, std::numeric_limits<double>::digits / 2);
  (void)v;
  return r;
}

TurningPoints scanned_points(const ConfinedSystem& s, double e) {
  const double delta = s.potential().delta();
  double upper = std::max(s.r0(), 4.0 / delta);
  auto grid = log_grid(kScanStart, upper, kScanPoints);

  std::vector<double> gap(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) gap[i] = e - s.v_eff(grid[i]);
  const auto top = static_cast<std::size_t>(std::max_element(gap.begin(), gap.end()) - gap.begin());

  double r_bottom = grid[top];
  if (gap[top] <= 0.0) {
    // The grid may straddle a narrow allowed region; check the true minimum.
    const double lo = grid[top == 0 ? 0 : top - 1];
    const double hi = grid[std::min(top + 1, grid.size() - 1)];
    r_bottom = refine_minimum(s, lo, hi);
    if (e - s.v_eff(r_bottom) <= 0.0) return no_region_at(r_bottom);
  }

  double r1 = 0.0;
  if (s.centrifugal_coefficient() > 0.0) {
    std::size_t i = top;
    while (i > 0 && gap[i - 1] >= 0.0) --i;
    if (i == 0) {
      // Allowed at the scan start; the barrier sits below kScanStart.
      r1 = refine_root(s, e, std::numeric_limits<double>::min(), grid[0]);
    } else if (gap[top] > 0.0) {
      r1 = refine_root(s, e, grid[i - 1], grid[i]);
    } else {
      r1 = refine_root(s, e, grid[i - 1], r_bottom);
    }
  }

  std::optional<double> r2;
  if (gap[top] > 0.0) {
    std::size_t j = top;
    while (j + 1 < grid.size() && gap[j + 1] >= 0.0) ++j;
    if (j + 1 < grid.size()) {
      r2 = refine_root(s, e, grid[j], grid[j + 1]);
    } else {
      double lo = upper;
      for (int ext = 0; ext < kMaxScanExtensions && !r2; ++ext) {
        const double hi = 2.0 * lo;
        if (e - s.v_eff(hi) < 0.0) r2 = refine_root(s, e, lo, hi);
        lo = hi;
      }
    }
  } else {
    r2 = refine_root(s, e, r_bottom, grid[std::min(top + 1, grid.size() - 1)]);
  }
  return make_points(r1, r2, s.r0());
}

}  // namespace

std::string to_string(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::HarmonicOscillator: return "ho";
    case PotentialKind::Hydrogen: return "hydrogen";
    case PotentialKind::Hulthen: return "hulthen";
  }
  return "unknown";
}

std::string to_string(TurningRegime regime) {
  switch (regime) {
    case TurningRegime::SingleInside: return "single-inside";
    case TurningRegime::BothInside: return "both-inside";
    case TurningRegime::NoClassicalRegion: return "no-classical-region";
  }
  return "unknown";
}

PotentialModel PotentialModel::harmonic_oscillator(UnitConvention units) {
  return {PotentialKind::HarmonicOscillator, 0.0, 0.0, units};
}

PotentialModel PotentialModel::hydrogen(UnitConvention units) {
  return {PotentialKind::Hydrogen, 0.0, 0.0, units};
}

PotentialModel PotentialModel::hulthen(double delta, double z, UnitConvention units) {
  if (!(delta > 0.0)) throw std::invalid_argument("Hulthen screening delta must be positive");
  if (!(z > 0.0)) throw std::invalid_argument("Hulthen charge z must be positive");
  return {PotentialKind::Hulthen, delta, z, units};
}

double PotentialModel::value(double r) const {
  require_positive_radius(r);
  switch (kind_) {
    case PotentialKind::HarmonicOscillator:
      return 0.5 * r * r;
    case PotentialKind::Hydrogen:
      return -units_.coulomb_strength / r;
    case PotentialKind::Hulthen:
      // -z delta e^{-dr} / (1 - e^{-dr}) = -z delta / expm1(dr)
      return -z_ * delta_ / std::expm1(delta_ * r);
  }
  return 0.0;
}

double PotentialModel::derivative(double r) const {
  require_positive_radius(r);
  switch (kind_) {
    case PotentialKind::HarmonicOscillator:
      return r;
    case PotentialKind::Hydrogen:
      return units_.coulomb_strength / (r * r);
    case PotentialKind::Hulthen: {
      const double x = delta_ * r;
      if (x > 700.0) return 0.0;
      const double em1 = std::expm1(x);
      return z_ * delta_ * delta_ * (em1 + 1.0) / (em1 * em1);
    }
  }
  return 0.0;
}

ConfinedSystem::ConfinedSystem(PotentialModel potential, int l, double r0, CentrifugalForm form)
    : potential_(potential), l_(l), r0_(r0), form_(form) {
  if (l < 0) throw std::invalid_argument("angular momentum l must be non-negative");
  if (!(r0 > 0.0)) throw std::invalid_argument("confinement radius r0 must be positive");
}

ConfinedSystem ConfinedSystem::with_langer() const {
  return {potential_, l_, r0_, CentrifugalForm::Langer};
}

ConfinedSystem ConfinedSystem::with_r0(double r0) const { return {potential_, l_, r0, form_}; }

double ConfinedSystem::angular_factor() const {
  const double l = l_;
  return form_ == CentrifugalForm::Langer ? (l + 0.5) * (l + 0.5) : l * l;
}

double ConfinedSystem::centrifugal_coefficient() const {
  return angular_factor() * hbar() * hbar() / (2.0 * mass());
}

double ConfinedSystem::correction_l0() const {
  return form_ == CentrifugalForm::Langer ? 0.0 : hbar() * l_;
}

double ConfinedSystem::v_eff(double r) const {
  require_positive_radius(r);
  return potential_.value(r) + centrifugal_coefficient() / (r * r);
}

double ConfinedSystem::v_eff_derivative(double r) const {
  require_positive_radius(r);
  return potential_.derivative(r) - 2.0 * centrifugal_coefficient() / (r * r * r);
}

TurningPoints turning_points(const ConfinedSystem& system, double energy) {
  if (!std::isfinite(energy)) throw DomainError("trial energy must be finite");
  switch (system.potential().kind()) {
    case PotentialKind::HarmonicOscillator: return oscillator_points(system, energy);
    case PotentialKind::Hydrogen: return coulomb_points(system, energy);
    case PotentialKind::Hulthen: return scanned_points(system, energy);
  }
  return no_region_at(0.0);
}

WellBottom well_bottom(const ConfinedSystem& system) {
  const double c = system.centrifugal_coefficient();
  const double r0 = system.r0();
  switch (system.potential().kind()) {
    case PotentialKind::HarmonicOscillator: {
      const double r = std::min(std::pow(2.0 * c, 0.25), r0);
      return {r, r > 0.0 ? system.v_eff(r) : 0.0};
    }
    case PotentialKind::Hydrogen: {
      if (c == 0.0) return {0.0, -std::numeric_limits<double>::infinity()};
      const double r = std::min(2.0 * c / system.potential().units().coulomb_strength, r0);
      return {r, system.v_eff(r)};
    }
    case PotentialKind::Hulthen: {
      if (c == 0.0) return {0.0, -std::numeric_limits<double>::infinity()};
      auto grid = log_grid(kScanStart, r0, kScanPoints);
      std::size_t best = 0;
      for (std::size_t i = 1; i < grid.size(); ++i)
        if (system.v_eff(grid[i]) < system.v_eff(grid[best])) best = i;
      if (best + 1 == grid.size()) return {r0, system.v_eff(r0)};
      const double r = refine_minimum(system, grid[best == 0 ? 0 : best - 1], grid[best + 1]);
      return {r, system.v_eff(r)};
    }
  }
  return {0.0, 0.0};
}

}  // namespace cwkb
