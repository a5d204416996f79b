#pragma once

#include <stdexcept>
#include <string>

namespace cwkb {

/// Argument outside the mathematical domain of an evaluation (r <= 0, E below V_eff, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The confinement regime at the trial energy does not match what the caller asked for.
class RegimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An integration interval crosses into the wrong classical region.
class InconsistentBracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Quadrature could not produce a usable value (e.g. interval vanished after truncation).
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Energy search found no root with the requested quantum numbers.
class NoEigenvalueError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied energy is not a converged eigenvalue.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cwkb
