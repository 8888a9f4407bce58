"""Dirac quasiparticles on a rotating fullerene shell.

A rotating C60 molecule with conical disclinations realizes, for its
low-energy electrons, a spherical spacetime of Goedel type: frame dragging
from the rotation, a deficit-angle parameter from the pentagons, an
effective non-Abelian monopole from the K-point structure, and an optional
Aharonov-Bohm flux line through the poles.  This package computes the
resulting Landau-level-like spectrum, the persistent currents it carries,
and the causal structure of the underlying spacetime family, with an
independent shooting-method solver to keep the closed forms honest.
"""

from .causality import CausalityReport, classify
from .gauge import FluxConfig, KPoint, MonopoleConfig, monopole_charge
from .geometry import DomainError, GeometryParams
from .observables import CurrentResult, LevelSet, persistent_current
from .oracle import OracleEigenvalue, ShootingConfig, agreement_grid, shoot_eigenvalue
from .spectrum import (
    QuantumNumbers,
    RotationSingular,
    SpectrumResult,
    solve_spectrum,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "CausalityReport",
    "CurrentResult",
    "DomainError",
    "FluxConfig",
    "GeometryParams",
    "KPoint",
    "LevelSet",
    "MonopoleConfig",
    "OracleEigenvalue",
    "QuantumNumbers",
    "RotationSingular",
    "ShootingConfig",
    "SpectrumResult",
    "agreement_grid",
    "classify",
    "monopole_charge",
    "persistent_current",
    "shoot_eigenvalue",
    "solve_spectrum",
]
