"""Effective gauge content: monopole charge, K-point doublet, and flux line.

The N conical singularities of the molecule act, after smearing over the
sphere, as a single fictitious magnetic monopole of charge ``g = N/8`` (three
halves for the fullerene's twelve pentagons).  The two-component K-spin
doublet couples to it through a potential proportional to tau^(2); a global
unitary rotation diagonalizes that coupling into two scalar problems labeled
k = +1 and k = -1.  An Aharonov-Bohm line threading the poles adds the
constant azimuthal potential Phi_B / 2 pi.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "MonopoleConfig",
    "FluxConfig",
    "KPoint",
    "TAU2",
    "monopole_charge",
    "monopole_potential",
    "ab_potential",
    "diagonalizing_rotation",
]

# K-spin coupling matrix (second Pauli matrix acting on the K-point doublet).
TAU2 = np.array([[0.0, -1.0j], [1.0j, 0.0]])


@dataclass(frozen=True)
class MonopoleConfig:
    """Monopole replacing N conical singularities; charge g = N/8 exactly.

    ``g`` is exact: N/8 is a dyadic rational, representable without rounding
    for any N below 2**52.
    """

    N: int
    g: float

    def __post_init__(self) -> None:
        if self.N < 0:
            raise ValueError(f"N must be non-negative, got {self.N}")
        if Fraction(self.g) != Fraction(self.N, 8):
            raise ValueError(f"g must equal N/8 exactly, got g={self.g} for N={self.N}")


@dataclass(frozen=True)
class FluxConfig:
    """Aharonov-Bohm flux through the polar axis.

    Stored as Phi_B (the symbol the CLI exposes); the derived fraction
    ``phi_frac = Phi_B / 2 pi`` is what every formula consumes.
    """

    Phi_B: float = 0.0

    @property
    def phi_frac(self) -> float:
        return self.Phi_B / (2.0 * np.pi)


@dataclass(frozen=True)
class KPoint:
    """Diagonalized doublet component label, k in {+1, -1}."""

    k: int = +1

    def __post_init__(self) -> None:
        if self.k not in (+1, -1):
            raise ValueError(f"k must be +1 or -1, got {self.k}")


def monopole_charge(N: int) -> MonopoleConfig:
    """Total fictitious charge of N conical singularities: g = N/8."""
    if N < 0:
        raise ValueError(f"N must be non-negative, got {N}")
    return MonopoleConfig(N=N, g=N / 8.0)


def monopole_potential(c: MonopoleConfig, k: KPoint, theta: float) -> float:
    """Diagonalized monopole potential A_phi^k = k g cos(theta).

    This is the single-string gauge in which the subsequent angular reduction
    is carried out (no (cos theta -+ 1) patch offset).
    """
    if not 0.0 < theta < np.pi:
        raise ValueError(f"theta must lie strictly inside (0, pi), got {theta}")
    return k.k * c.g * np.cos(theta)


def ab_potential(f: FluxConfig) -> float:
    """Azimuthal Aharonov-Bohm potential, theta-independent: Phi_B / 2 pi."""
    return f.phi_frac


def diagonalizing_rotation() -> np.ndarray:
    """Unitary U with U^dagger tau^(2) U = diag(+1, -1).

    Rows (1, 1) and (i, -i), scaled by 1/sqrt(2); its columns are the
    tau^(2) eigenvectors for eigenvalues +1 and -1 in that order.
    """
    return np.array([[1.0, 1.0], [1.0j, -1.0j]]) / np.sqrt(2.0)
