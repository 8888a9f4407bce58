"""Causal structure of the homogeneous rotating spacetime family.

In cylindrical-type coordinates the family is characterized by a rotation
parameter Omega and a curvature parameter l^2 (of either sign), through two
profile functions

    l^2 > 0:  H = (Omega/l^2) sinh^2(l r),    D = sinh(2 l r) / (2 l)
    l^2 = 0:  H = Omega r^2,                  D = r
    l^2 < 0:  H = (Omega/|l|^2) sin^2(|l| r), D = sin(2 |l| r) / (2 |l|)

The azimuthal metric coefficient factorizes as G = (D - H)(D + H); closed
timelike curves exist exactly where G < 0.  Three causal classes follow:

* l^2 >= Omega^2        -- G > 0 for all r > 0: no closed timelike curves;
* 0 <= l^2 < Omega^2    -- one critical radius, noncausal beyond it;
* l^2 < 0               -- G oscillates: alternating causal and noncausal
                           shells, with critical radii where tan(|l| r)
                           = +/- |l| / Omega.

The l^2 < 0 member is the spherical one: with R = 1/(2|l|) and theta = r/R
its profile functions coincide with the rotating shell's dragging profile
and circumference radius, which is how the shell inherits this causal
analysis.  Homogeneity of the family is expressible locally: Omega =
H'/(2D) and l^2 = D''/(4D) at every radius.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import GeometryParams, dragging_profile

__all__ = [
    "CausalityReport",
    "metric_functions",
    "g_function",
    "classify",
    "homogeneity_residual",
    "spherical_correspondence",
    "GODEL_LR_CRITICAL",
]

# l * r_c for the original Goedel universe (l^2 = Omega^2 / 2):
# artanh(1/sqrt(2)), a fixed point of the family worth pinning in tests.
GODEL_LR_CRITICAL = math.atanh(1.0 / math.sqrt(2.0))


@dataclass(frozen=True)
class CausalityReport:
    """Causal and curvature classification of one (Omega, l^2) member."""

    Omega: float
    l2: float
    causal_class: str  # "no_ctc" | "one_noncausal_region" | "alternating_regions"
    curvature_class: str  # "flat" | "spherical" | "hyperbolic"
    critical_radii: tuple[float, ...]


def metric_functions(Omega: float, l2: float, r: float) -> tuple[float, float]:
    """Profile functions (H, D) at radius r, on the correct curvature branch.

    The flat case is a genuine branch, not a limit evaluated by division.
    """
    if r < 0.0:
        raise ValueError(f"radius must be non-negative, got {r}")
    if l2 > 0.0:
        l = math.sqrt(l2)
        return (Omega / l2) * math.sinh(l * r) ** 2, math.sinh(2.0 * l * r) / (2.0 * l)
    if l2 < 0.0:
        L = math.sqrt(-l2)
        return (Omega / (L * L)) * math.sin(L * r) ** 2, math.sin(2.0 * L * r) / (2.0 * L)
    return Omega * r * r, r


def g_function(Omega: float, l2: float, r: float) -> float:
    """Azimuthal coefficient G = (D - H)(D + H); negative means CTCs at r."""
    H, D = metric_functions(Omega, l2, r)
    return (D - H) * (D + H)


def classify(Omega: float, l2: float) -> CausalityReport:
    """Causal class, curvature class, and critical radii for one member.

    Critical radii are the sign changes of G: none when l^2 >= Omega^2, the
    single boundary of the noncausal exterior when 0 <= l^2 < Omega^2, and
    the first three noncausal shells' boundaries (six radii, up to
    3 pi / |l|) when l^2 < 0.  Omega must be non-negative; Omega = 0 never
    produces closed timelike curves.
    """
    if Omega < 0.0:
        raise ValueError("Omega must be non-negative")
    if l2 < 0.0:
        curvature = "spherical"
    elif l2 == 0.0:
        curvature = "flat"
    else:
        curvature = "hyperbolic"

    if l2 < 0.0:
        L = math.sqrt(-l2)
        if Omega == 0.0:
            # G = D^2 - H^2 with H = 0: zeros without sign change only.
            return CausalityReport(Omega, l2, "no_ctc", curvature, ())
        a = math.atan(L / Omega)
        radii = []
        for k in range(3):
            radii.append((a + k * math.pi) / L)
            radii.append(((k + 1) * math.pi - a) / L)
        return CausalityReport(Omega, l2, "alternating_regions", curvature, tuple(sorted(radii)))

    # Compare on the sqrt scale the hyperbolic branch divides on, so a pair
    # that is sub-critical in l^2 but rounds to l/Omega = 1 stays causal
    # instead of feeding atanh an out-of-domain argument.
    l = math.sqrt(l2)
    if l >= Omega:
        return CausalityReport(Omega, l2, "no_ctc", curvature, ())

    # 0 <= l < Omega (so Omega > 0 here): a single critical radius.
    if l2 == 0.0:
        r_c = 1.0 / Omega
    else:
        r_c = math.atanh(l / Omega) / l
    return CausalityReport(Omega, l2, "one_noncausal_region", curvature, (r_c,))


def homogeneity_residual(Omega: float, l2: float, r: float, h: float = 1e-5) -> float:
    """Defect of the local homogeneity identities Omega = H'/(2D), l^2 = D''/(4D).

    Central differences of step h on the profile functions; a correct branch
    implementation drives this to discretization level at any r where D != 0.
    """
    if r <= 2.0 * h:
        raise ValueError("radius too close to the axis for the stencil")
    Hm, Dm = metric_functions(Omega, l2, r - h)
    H0, D0 = metric_functions(Omega, l2, r)
    Hp, Dp = metric_functions(Omega, l2, r + h)
    if D0 == 0.0:
        raise ValueError("homogeneity identities are singular where D vanishes")
    dH = (Hp - Hm) / (2.0 * h)
    d2D = (Dp - 2.0 * D0 + Dm) / (h * h)
    return max(abs(dH / (2.0 * D0) - Omega), abs(d2D / (4.0 * D0) - l2))


def spherical_correspondence(Omega: float, l2: float, r: float) -> float:
    """How far (H, D) sit from the rotating shell's (dragging, ring radius).

    For l^2 < 0, setting R = 1/(2 |l|) and theta = r/R identifies H with the
    shell's dragging profile at unit disclination parameter and D with the
    ring circumference radius R sin(theta).  Returns the larger of the two
    absolute mismatches; meaningful only on the spherical branch.
    """
    if l2 >= 0.0:
        raise ValueError("the spherical correspondence needs l^2 < 0")
    L = math.sqrt(-l2)
    R = 1.0 / (2.0 * L)
    theta = r / R
    if not 0.0 < theta < math.pi:
        raise ValueError(f"r={r} maps to theta={theta} outside the open sphere")
    H, D = metric_functions(Omega, l2, r)
    p = GeometryParams(alpha=1.0, Omega=Omega, R=R)
    f_theta = dragging_profile(p, theta)
    return max(abs(H - f_theta), abs(D - R * math.sin(theta)))
