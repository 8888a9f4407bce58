"""Persistent currents carried by the shell's quasiparticle levels.

At zero temperature a flux line through the poles drives an equilibrium
current I = -sum d(eps)/d(Phi_B) over the occupied levels.  Three routes to
that number are kept side by side on purpose:

* ``I_analytic`` differentiates the quadratic quantization condition
  implicitly, which is exact for the closed-form spectrum and is the
  reference value;
* ``I_fd`` re-solves the spectrum at shifted fluxes and differences the
  total energy numerically, validating the analytic derivative;
* ``I_printed`` evaluates a published closed-form current whose branch and
  prefactor conventions only reproduce the derivative for positive shifted
  angular momentum at zero rotation; it is retained verbatim for
  comparison, not used as a reference.

Energies carry the natural scale hbar vF / R, so currents carry
hbar vF / (2 pi alpha R^2) ... more precisely the flux derivative is taken
with respect to the dimensionless line flux Phi_B, matching the convention
in which Phi_B shifts m by Phi_B / (2 pi).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Sequence

from .gauge import FluxConfig, MonopoleConfig
from .geometry import GeometryParams
from .spectrum import (
    QuantumNumbers,
    SpectrumResult,
    solve_spectrum,
    spectrum_flux_derivative,
)

__all__ = [
    "LevelSet",
    "CurrentResult",
    "enumerate_levels",
    "persistent_current",
    "slow_rotation_current",
]

_CUSP_TOL = 1e-12


@dataclass(frozen=True)
class LevelSet:
    """Which levels participate in a current sum.

    The window holds half-integer (or integer) m from m_window[0] to
    m_window[1] inclusive in unit steps, each paired with n = 0 .. n_max.
    branch selects which energy sign is occupied; the conventional choice
    is the filled negative sea ("minus").  With skip_invalid, sub-gap
    states whose closed-form eigenvalue is complex are dropped from sums
    (they are reported in the result's warnings); otherwise they raise.
    """

    n_max: int
    m_window: tuple[float, float]
    branch: str = "minus"
    skip_invalid: bool = True

    def __post_init__(self) -> None:
        if self.n_max < 0:
            raise ValueError("n_max must be non-negative")
        lo, hi = self.m_window
        if hi < lo:
            raise ValueError(f"empty m window {self.m_window}")
        if abs(2 * lo - round(2 * lo)) > 1e-9 or abs(2 * hi - round(2 * hi)) > 1e-9:
            raise ValueError("m window ends must sit on the half-integer lattice")
        if round(2 * (hi - lo)) % 2 != 0:
            raise ValueError("m window ends must differ by an integer")
        if self.branch not in ("plus", "minus"):
            raise ValueError(f"branch must be 'plus' or 'minus', not {self.branch!r}")

    @property
    def m_values(self) -> tuple[float, ...]:
        lo, hi = self.m_window
        count = int(round(hi - lo)) + 1
        return tuple(lo + i for i in range(count))


@dataclass(frozen=True)
class CurrentResult:
    """Persistent current at one flux value, by all three routes."""

    Phi_B: float
    I_analytic: float
    I_printed: float
    I_fd: float
    n_levels_used: int
    warnings: tuple[str, ...] = field(default_factory=tuple)


def enumerate_levels(
    ls: LevelSet, p: GeometryParams, f: FluxConfig, c: MonopoleConfig
) -> list[tuple[QuantumNumbers, SpectrumResult]]:
    """The level set's states in fixed (n ascending, m ascending) order."""
    out = []
    for n in range(ls.n_max + 1):
        for m in ls.m_values:
            q = QuantumNumbers(n=n, m=m)
            out.append((q, solve_spectrum(q, p, f, c)))
    return out


def _branch_energy(res: SpectrumResult, branch: str) -> float:
    return res.eps_plus if branch == "plus" else res.eps_minus


def _printed_term(
    n: int, m: float, p: GeometryParams, f: FluxConfig, c: MonopoleConfig
) -> float | None:
    """One level's contribution to the published current formula, verbatim.

    Returns None when the radicand is non-positive, i.e. for sub-gap states
    the formula cannot describe.
    """
    gt = c.g / p.alpha
    mtt = (m - f.phi_frac) / p.alpha
    A = n + abs(mtt) + 0.5
    B = mtt + 0.5 + gt
    one = 1.0 - 8.0 * p.Omega**2
    radicand = 2.0 * (B * p.Omega) ** 2 - one * (gt * gt - A * A)
    if radicand <= 0.0:
        return None
    return 2.0 * p.Omega + (one * A + 2.0 * p.Omega**2 * B) / math.sqrt(radicand)


def persistent_current(
    ls: LevelSet,
    p: GeometryParams,
    f: FluxConfig,
    c: MonopoleConfig,
    fd_delta: float = 1e-5,
) -> CurrentResult:
    """Zero-temperature persistent current of the level set at flux f.Phi_B.

    I_analytic and I_fd both follow the Byers-Yang derivative of the
    closed-form spectrum (implicit differentiation versus a central
    difference of step fd_delta in Phi_B); I_printed evaluates the published
    summed formula for the same set.  States at the flux cusp |m - Phi_B/2pi|
    = 0 contribute the mean of their one-sided derivatives to I_analytic and
    are flagged in warnings, since no two-sided derivative exists there.
    """
    warnings: list[str] = []
    used = 0
    I_analytic = 0.0
    I_printed = 0.0

    for qn, res in enumerate_levels(ls, p, f, c):
        if not res.valid:
            msg = f"skipping sub-gap or singular state (n={qn.n}, m={qn.m})"
            if not ls.skip_invalid:
                raise ValueError(msg)
            warnings.append(msg)
            continue
        try:
            d = spectrum_flux_derivative(qn, p, f, c, branch=ls.branch)
        except ValueError as exc:  # gap-edge double root: no finite slope
            if not ls.skip_invalid:
                raise
            warnings.append(str(exc))
            continue
        used += 1
        if isinstance(d, tuple):
            warnings.append(
                f"flux cusp at (n={qn.n}, m={qn.m}): using mean one-sided derivative"
            )
            d = 0.5 * (d[0] + d[1])
        I_analytic -= d

        term = _printed_term(qn.n, qn.m, p, f, c)
        if term is None:
            warnings.append(
                f"published current formula undefined for (n={qn.n}, m={qn.m})"
            )
        else:
            I_printed += term

    I_printed *= p.hbar * p.vF / (2.0 * math.pi * p.alpha * p.R)

    def total_energy(phi: float) -> float:
        fshift = replace(f, Phi_B=phi)
        e = 0.0
        for qn, res in enumerate_levels(ls, p, fshift, c):
            if not res.valid:
                if not ls.skip_invalid:
                    raise ValueError(f"invalid state in FD stencil (n={qn.n}, m={qn.m})")
                continue
            e += _branch_energy(res, ls.branch)
        return e

    I_fd = -(total_energy(f.Phi_B + fd_delta) - total_energy(f.Phi_B - fd_delta)) / (
        2.0 * fd_delta
    )

    return CurrentResult(
        Phi_B=f.Phi_B,
        I_analytic=I_analytic,
        I_printed=I_printed,
        I_fd=I_fd,
        n_levels_used=used,
        warnings=tuple(warnings),
    )


def slow_rotation_current(
    ls: LevelSet, p: GeometryParams, f: FluxConfig, c: MonopoleConfig
) -> tuple[float, tuple[str, ...]]:
    """The published small-Omega current: per level 2 Omega + A / sqrt(A^2 - g^2/alpha^2).

    Levels with A^2 <= (g/alpha)^2 have no real closed-form energy and are
    excluded, with a warning recording each exclusion.
    """
    gt = c.g / p.alpha
    warnings: list[str] = []
    total = 0.0
    for n in range(ls.n_max + 1):
        for m in ls.m_values:
            A = n + abs((m - f.phi_frac) / p.alpha) + 0.5
            if A * A <= gt * gt:
                warnings.append(f"excluding sub-gap state (n={n}, m={m})")
                continue
            total += 2.0 * p.Omega + A / math.sqrt(A * A - gt * gt)
    total *= p.hbar * p.vF / (2.0 * math.pi * p.alpha * p.R)
    return total, tuple(warnings)
