#pragma once

#include <functional>
#include <optional>

#include "cwkb/potentials.hpp"

namespace cwkb {

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_floor = 1e-14;
  int max_depth = 48;
  /// Cap on panel subdivisions per integral; refinement stops once it is spent.
  int max_subdivisions = 2048;
};

/// Defaults, with rel_tol taken from CWKB_DEFAULT_TOL when that variable holds
/// a positive number.
QuadratureOptions default_quadrature_options();

/// Adaptive Gauss-Legendre (32 points per panel, bisection refinement) for a
/// smooth integrand on [a, b].
double integrate_smooth(const std::function<double(double)>& f, double a, double b,
                        const QuadratureOptions& opts = default_quadrature_options());

/// Integral over [a, b] of an integrand that may carry inverse-square-root or
/// square-root behaviour at either end. The interval is split at its midpoint
/// and r = a + u^2 / r = b - u^2 is substituted on the two halves.
double integrate_sqrt_endpoints(const std::function<double(double)>& f, double a, double b,
                                const QuadratureOptions& opts = default_quadrature_options());

/// sqrt(2 m (E - V_eff(r))) / hbar. Returns 0 within rounding of a turning point;
/// throws DomainError inside the forbidden region.
double gamma0(const ConfinedSystem& system, double energy, double r);
/// sqrt(2 m (V_eff(r) - E)) / hbar, mirror of gamma0.
double kappa0(const ConfinedSystem& system, double energy, double r);

/// Integral of gamma0 from the turning point `from` to `to`.
double lambda1(const ConfinedSystem& system, double energy, double from, double to,
               const QuadratureOptions& opts = default_quadrature_options());
/// (L0 / 2 hbar) * integral of dr / (gamma0 r^2) from `from` to `to`; exactly 0 when L0 = 0.
double lambda2(const ConfinedSystem& system, double energy, double from, double to,
               const QuadratureOptions& opts = default_quadrature_options());

/// Full-well phase lambda1(r1, r2) - lambda2(r1, r2). Throws RegimeError when
/// the outer turning point is missing or the well is degenerate.
double theta(const ConfinedSystem& system, double energy,
             const QuadratureOptions& opts = default_quadrature_options());

/// Decay exponent from the outer turning point r2 to r_end:
/// integral of kappa0 minus (L0 / 2 hbar) * integral of dr / (kappa0 r^2).
double sigma(const ConfinedSystem& system, double energy, double r_end,
             const QuadratureOptions& opts = default_quadrature_options());

/// Integral of kappa0 over [from, to] inside a classically forbidden region.
double decay_action(const ConfinedSystem& system, double energy, double from, double to,
                    const QuadratureOptions& opts = default_quadrature_options());
/// (L0 / 2 hbar) * integral of dr / (kappa0 r^2) over [from, to]; 0 when L0 = 0.
double decay_correction(const ConfinedSystem& system, double energy, double from, double to,
                        const QuadratureOptions& opts = default_quadrature_options());

/// Second and third order hbar corrections to the phase integral,
///   order2 = integral L0^2 / (8 hbar^2 gamma0^3 r^4),
///   order3 = integral L0^3 / (16 hbar^3 gamma0^5 r^6),
/// over [from, to] with each end that is a turning point pulled inwards by
/// epsilon (the integrands are not integrable there).
struct HigherOrderTerms {
  double order2 = 0.0;
  double order3 = 0.0;
  double epsilon = 0.0;
  double lower = 0.0;  ///< truncated interval actually integrated
  double upper = 0.0;
};

/// Default epsilon is 1e-3 * (r2 - r1), with r0 standing in for a missing r2.
/// Throws QuadratureError when truncation leaves no interval.
HigherOrderTerms higher_order_terms(const ConfinedSystem& system, double energy, double from,
                                    double to, std::optional<double> epsilon = std::nullopt,
                                    const QuadratureOptions& opts = default_quadrature_options());

}  // namespace cwkb
