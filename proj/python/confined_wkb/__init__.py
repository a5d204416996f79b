"""WKB energies of spherically confined quantum systems."""

from ._core import (
    ConfinedSystem,
    DomainError,
    EnergyResult,
    NoEigenvalueError,
    PotentialModel,
    TurningPoints,
    UnitConvention,
    published,
    solve,
    table,
    turning_points,
    wavefunction,
)

__all__ = [
    "ConfinedSystem",
    "DomainError",
    "EnergyResult",
    "NoEigenvalueError",
    "PotentialModel",
    "TurningPoints",
    "UnitConvention",
    "published",
    "solve",
    "table",
    "turning_points",
    "wavefunction",
]
