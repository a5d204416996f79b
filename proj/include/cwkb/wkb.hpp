#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cwkb/potentials.hpp"
#include "cwkb/quadrature.hpp"

namespace cwkb {

/// Radial quantum number and angular momentum; states are labelled by n = n_r + l + 1.
struct QuantumNumbers {
  int n_r = 0;
  int l = 1;

  int principal() const { return n_r + l + 1; }
};

enum class Method { Perturbative, Langer, Exact };
enum class SolutionRegime { SingleInside, BothInside, PositiveEnergySingle };

std::string to_string(Method method);
std::string to_string(SolutionRegime regime);

/// Integral values at the returned energy. Quantities that do not apply to the
/// regime are left empty.
struct Diagnostics {
  std::optional<double> lambda1;
  std::optional<double> lambda2;
  std::optional<double> theta;
  std::optional<double> sigma_r0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

struct EnergyResult {
  double energy = 0.0;
  Method method = Method::Perturbative;
  SolutionRegime regime = SolutionRegime::SingleInside;
  double residual = 0.0;
  Diagnostics diagnostics;
  std::vector<std::string> warnings;
};

/// Energy window scanned for sign changes of the quantization residual.
struct SearchWindow {
  double lo = 0.0;
  double hi = 0.0;
  double step = 1e-2;
};

/// Per-potential default window, clipped below by the bottom of the well.
SearchWindow default_search_window(const ConfinedSystem& system);

/// Small-box rule, wall between the turning points (or beyond the single
/// turning point of a positive-energy Coulomb problem):
///   lambda1(r1, r0) - lambda2(r1, r0) - (n_r + 3/4) pi.
/// Throws RegimeError when both turning points lie inside the wall.
double residual_small_box(const ConfinedSystem& system, const QuantumNumbers& qn, double energy,
                          const QuadratureOptions& opts = default_quadrature_options());

/// Large-box rule with both turning points inside the wall, divided through by
/// exp(sigma(r0)) so it never overflows:
///   2 cos(theta) + sin(theta) exp(-2 sigma(r0)).
/// Its zeros for different n_r are told apart by the branch of theta.
double residual_large_box(const ConfinedSystem& system, const QuantumNumbers& qn, double energy,
                          const QuadratureOptions& opts = default_quadrature_options());

struct SolveOptions {
  QuadratureOptions quadrature = default_quadrature_options();
  /// Bisection stops once the bracket is narrower than this.
  double energy_tol = 1e-10;
  /// ... and the residual at the midpoint is below this.
  double residual_tol = 1e-9;
  /// Warn when |r0 - r2(E)| < proximity * r2.
  double proximity = 0.05;
};

/// Scan `search` (default window when absent), split brackets where the regime
/// flips, bisect every sign change and return the lowest root whose phase
/// branch equals qn.n_r. Without an explicit window the default upper bound is
/// doubled until such a root turns up. Method must be Perturbative or Langer.
EnergyResult solve_energy(const ConfinedSystem& system, const QuantumNumbers& qn, Method method,
                          std::optional<SearchWindow> search = std::nullopt,
                          const SolveOptions& opts = {});

/// Same machinery with (l + 1/2)^2 in V_eff and no first-order correction integrals.
EnergyResult solve_energy_langer(const ConfinedSystem& system, const QuantumNumbers& qn,
                                 std::optional<SearchWindow> search = std::nullopt,
                                 const SolveOptions& opts = {});

enum class WaveRegion { I, II, III };

std::string to_string(WaveRegion region);

struct WaveSample {
  double r;
  double psi;
  WaveRegion region;
};

struct WavefunctionTrace {
  std::vector<WaveSample> samples;
  double r1 = 0.0;
  std::optional<double> r2;
  /// Half-width of the bands left out around each turning point.
  double band = 0.0;

  /// Sign changes of psi among region II samples strictly inside the wall.
  int region_two_nodes() const;
};

/// Piecewise WKB wavefunction at a converged energy, sampled on a uniform grid
/// over (0, r0] with bands around the turning points removed and max |psi| = 1.
/// Throws std::invalid_argument for sample_count < 2 and PreconditionError when
/// `energy` does not satisfy the quantization rule.
WavefunctionTrace build_wavefunction(const ConfinedSystem& system, const QuantumNumbers& qn,
                                     double energy, int sample_count,
                                     const QuadratureOptions& opts = default_quadrature_options());

/// Diagnostic-only report of the second and third order hbar terms evaluated on
/// turning-point-truncated intervals. Never feeds the quantization.
struct HigherOrderReport {
  HigherOrderTerms terms;
  double base_residual = 0.0;
  /// Residual after subtracting order2 + order3 from the phase.
  double shifted_residual = 0.0;
  /// order2 + order3 (phase units).
  double phase_shift = 0.0;
  /// First-order estimate of the energy change the shifted phase would imply.
  double energy_shift = 0.0;
  bool diagnostic_only = true;
};

HigherOrderReport higher_order_shift(const ConfinedSystem& system, const QuantumNumbers& qn,
                                     double energy, std::optional<double> epsilon = std::nullopt,
                                     const QuadratureOptions& opts = default_quadrature_options());

}  // namespace cwkb
