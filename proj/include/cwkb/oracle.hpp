#pragma once

#include <optional>

#include "cwkb/potentials.hpp"
#include "cwkb/wkb.hpp"

namespace cwkb {

/// Uniform-grid Numerov integration of the full radial equation
///   psi'' + (2m/hbar^2) [E - V - l(l+1) hbar^2 / (2 m r^2)] psi = 0
/// from r_min to r0. The centrifugal form of the system is ignored.
struct NumerovConfig {
  int grid_points = 20000;
  double r_min = 1e-8;
  double tolerance = 1e-10;
};

struct RadialIntegration {
  double boundary_value = 0.0;  ///< psi(r0) in the running normalization
  double max_abs = 0.0;         ///< max |psi| over the grid, same normalization
  int nodes = 0;                ///< sign changes strictly inside (r_min, r0)

  /// psi(r0) / max |psi|.
  double normalized_boundary() const { return max_abs > 0.0 ? boundary_value / max_abs : 0.0; }
  /// Zeros in (0, r0]: interior nodes plus one when psi(r0) has already crossed.
  int zeros_through_wall() const;
};

/// Throws std::invalid_argument for grid_points < 2000 or r_min outside (0, r0).
RadialIntegration integrate_radial(const ConfinedSystem& system, double energy,
                                   const NumerovConfig& config = {});

struct EnergyWindow {
  double lo;
  double hi;
};

/// Eigenvalue with qn.n_r interior nodes and psi(r0) = 0, by bisection on the
/// zero count of the Numerov solution. The default window runs from the bottom
/// of the full effective potential upward, doubling until it holds the root.
/// Throws NoEigenvalueError when an explicit window does not contain the root.
EnergyResult solve_exact(const ConfinedSystem& system, const QuantumNumbers& qn,
                         const NumerovConfig& config = {},
                         std::optional<EnergyWindow> window = std::nullopt);

}  // namespace cwkb
