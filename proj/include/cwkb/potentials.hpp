#pragma once

#include <optional>
#include <string>

namespace cwkb {

/// Scales entering the radial problem. hbar is kept as a field but every
/// built-in convention fixes it to 1.
struct UnitConvention {
  double hbar = 1.0;
  double mass = 1.0;
  double coulomb_strength = 1.0;

  /// hbar = m = 1, V = -1/r for hydrogen.
  static UnitConvention atomic() { return {1.0, 1.0, 1.0}; }
  /// hbar = 1, m = 1/2, V = -2/r for hydrogen (energies in Rydberg).
  static UnitConvention rydberg() { return {1.0, 0.5, 2.0}; }

  bool operator==(const UnitConvention&) const = default;
};

enum class PotentialKind { HarmonicOscillator, Hydrogen, Hulthen };

std::string to_string(PotentialKind kind);

class PotentialModel {
 public:
  static PotentialModel harmonic_oscillator(UnitConvention units = UnitConvention::atomic());
  static PotentialModel hydrogen(UnitConvention units = UnitConvention::rydberg());
  /// Throws std::invalid_argument unless delta > 0 and z > 0.
  static PotentialModel hulthen(double delta, double z = 1.0,
                                UnitConvention units = UnitConvention::atomic());

  PotentialKind kind() const { return kind_; }
  double delta() const { return delta_; }
  double z() const { return z_; }
  const UnitConvention& units() const { return units_; }

  /// V(r). Throws DomainError for r <= 0.
  double value(double r) const;
  /// dV/dr. Throws DomainError for r <= 0.
  double derivative(double r) const;

 private:
  PotentialModel(PotentialKind kind, double delta, double z, UnitConvention units)
      : kind_(kind), delta_(delta), z_(z), units_(units) {}

  PotentialKind kind_;
  double delta_;
  double z_;
  UnitConvention units_;
};

/// How the centrifugal barrier enters V_eff.
///   Perturbative: classical L0^2 = (hbar l)^2 in V_eff, the hbar L0 remainder
///                 handled to first order by the lambda2/sigma correction integrals.
///   Langer:       (l + 1/2)^2 hbar^2 in V_eff and no correction integrals.
enum class CentrifugalForm { Perturbative, Langer };

class ConfinedSystem {
 public:
  /// Throws std::invalid_argument for l < 0 or r0 <= 0.
  ConfinedSystem(PotentialModel potential, int l, double r0,
                 CentrifugalForm form = CentrifugalForm::Perturbative);

  const PotentialModel& potential() const { return potential_; }
  int l() const { return l_; }
  double r0() const { return r0_; }
  CentrifugalForm form() const { return form_; }
  double hbar() const { return potential_.units().hbar; }
  double mass() const { return potential_.units().mass; }

  /// Same potential, l and wall with the Langer centrifugal form.
  ConfinedSystem with_langer() const;
  ConfinedSystem with_r0(double r0) const;

  /// l^2 or (l + 1/2)^2 depending on the centrifugal form.
  double angular_factor() const;
  /// C in V_eff = V + C / r^2, i.e. angular_factor * hbar^2 / (2 m).
  double centrifugal_coefficient() const;
  /// L0 = hbar l multiplying the first-order correction integrals; zero for Langer.
  double correction_l0() const;

  /// V(r) + C / r^2. Throws DomainError for r <= 0.
  double v_eff(double r) const;
  double v_eff_derivative(double r) const;

 private:
  PotentialModel potential_;
  int l_;
  double r0_;
  CentrifugalForm form_;
};

/// Where the wall sits relative to the classically allowed region.
enum class TurningRegime {
  SingleInside,       ///< r1 < r0 < r2, or no outer turning point at all
  BothInside,         ///< r2 <= r0
  NoClassicalRegion,  ///< E below the well inside the box, or a degenerate well
};

std::string to_string(TurningRegime regime);

struct TurningPoints {
  double r1 = 0.0;
  std::optional<double> r2;
  TurningRegime regime = TurningRegime::NoClassicalRegion;
};

/// Allowed-region width below which a well counts as degenerate.
inline constexpr double kDegenerateWidth = 1e-8;

/// Classical turning points of E - V_eff(r) = 0, classified against r0.
/// Closed forms for the oscillator and Coulomb potentials; bracketed bisection
/// from a logarithmic grid scan for Hulthen.
TurningPoints turning_points(const ConfinedSystem& system, double energy);

/// Location and value of the minimum of V_eff on (0, r0]. For l = 0 Coulomb-like
/// wells this is the value at the small-r cutoff of the scan.
struct WellBottom {
  double r;
  double v;
};
WellBottom well_bottom(const ConfinedSystem& system);

}  // namespace cwkb
