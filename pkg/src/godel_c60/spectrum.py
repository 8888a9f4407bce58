"""Closed-form spectral machinery for the rotating-sphere Dirac problem.

Everything here is algebra on the quantization polynomial

    Q(lambda) = (1 - 8 Omega^2) lambda^2
                - 2 Omega [1 + (2/alpha)(mtilde + g)] lambda
                - A^2 + g^2/alpha^2,

with mtilde = m - Phi_B/2pi and A = n + |mtilde|/alpha + 1/2.  The
*authoritative* spectrum is the pair of roots of Q obtained with a
numerically stable quadratic formula (``solve_spectrum``).  The historically
printed closed form (``printed_spectrum``) and its slow-rotation expansion
(``slow_rotation_spectrum``) are kept verbatim for discrepancy reporting:
the printed form's radicand carries a ``2 B^2 Omega^2`` term where the exact
solution of Q = 0 requires ``4 B^2 Omega^2``, so the two agree only at
Omega = 0.  An independent shooting solver (module ``oracle``) provides the
non-algebraic cross-check of which closed form, if any, matches the actual
boundary-value problem.

Dimensionless eigenvalues relate to energies through eps = hbar vF lambda / R.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .gauge import FluxConfig, KPoint, MonopoleConfig
from .geometry import GeometryParams

__all__ = [
    "QuantumNumbers",
    "ReducedAngular",
    "AnsatzExponents",
    "SpectrumResult",
    "RotationSingular",
    "reduced_angular",
    "ansatz_exponents",
    "quantization_residual",
    "solve_spectrum",
    "printed_spectrum",
    "slow_rotation_spectrum",
    "spectrum_flux_derivative",
]

# 1 - 8 Omega^2 below this threshold counts as the degenerate (linear) case.
_ROTATION_SINGULAR_TOL = 1e-12


class RotationSingular(ValueError):
    """The quadratic's leading coefficient 1 - 8 Omega^2 vanished."""


@dataclass(frozen=True)
class QuantumNumbers:
    """State labels: radial index n >= 0, angular index m, K-point k.

    ``m`` lives on a half-integer lattice by default; an integer lattice is
    equally accepted (enumeration policy decides which one a sweep uses, the
    two are never mixed in one result set).
    """

    n: int
    m: float
    k: KPoint = KPoint(+1)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"n must be non-negative, got {self.n}")
        if abs(2.0 * self.m - round(2.0 * self.m)) > 1e-9:
            raise ValueError(f"m must lie on a half-integer or integer lattice, got {self.m}")


@dataclass(frozen=True)
class ReducedAngular:
    """Flux-shifted angular quantities every closed form consumes.

    mtilde = m - Phi_B/2pi;  A = n + |mtilde|/alpha + 1/2;
    B = (mtilde + g)/alpha + 1/2.
    """

    mtilde: float
    A: float
    B: float


@dataclass(frozen=True)
class AnsatzExponents:
    """Exponents of the x^(C+) (1-x)^(C-) separation ansatz, x = cos^2(theta/2).

    Verbatim evaluation, absolute values and all:

        C_pm = (1/2) | mtilde/alpha pm (1/2)(k + 2g/alpha)
                      mp (Omega/2alpha)(mtilde + g) |.
    """

    C_plus: float
    C_minus: float

    def __post_init__(self) -> None:
        if self.C_plus < 0 or self.C_minus < 0:
            raise ValueError("ansatz exponents are absolute values, must be >= 0")


@dataclass(frozen=True)
class SpectrumResult:
    """Both branches of one closed-form spectrum evaluation.

    ``lambda_plus``/``lambda_minus`` order the two roots by real part
    (for a real pair, by value).  ``valid`` is set when the discriminant is
    non-negative and the rotation is regular; a negative discriminant flags a
    sub-gap (complex-eigenvalue) index combination and is reported, never
    silently dropped.  ``residual_plus``/``residual_minus`` are |Q(lambda)|
    diagnostics under the authoritative polynomial.
    """

    lambda_plus: complex
    lambda_minus: complex
    eps_plus: complex
    eps_minus: complex
    discriminant: float
    valid: bool
    residual_plus: float
    residual_minus: float

    @property
    def complex_spectrum(self) -> bool:
        return self.discriminant < 0.0


def reduced_angular(
    q: QuantumNumbers, p: GeometryParams, f: FluxConfig, c: MonopoleConfig
) -> ReducedAngular:
    """Assemble (mtilde, A, B) from raw labels and configuration."""
    mtilde = q.m - f.phi_frac
    A = q.n + abs(mtilde) / p.alpha + 0.5
    B = (mtilde + c.g) / p.alpha + 0.5
    return ReducedAngular(mtilde=mtilde, A=A, B=B)


def ansatz_exponents(
    q: QuantumNumbers, p: GeometryParams, f: FluxConfig, c: MonopoleConfig
) -> AnsatzExponents:
    """Separation-ansatz exponents, evaluated exactly as printed."""
    mtilde = q.m - f.phi_frac
    base = mtilde / p.alpha
    half_term = 0.5 * (q.k.k + 2.0 * c.g / p.alpha)
    rot_term = 0.5 * p.Omega * (mtilde + c.g) / p.alpha
    return AnsatzExponents(
        C_plus=0.5 * abs(base + half_term - rot_term),
        C_minus=0.5 * abs(base - half_term + rot_term),
    )


def _poly_coeffs(
    q: QuantumNumbers, p: GeometryParams, f: FluxConfig, c: MonopoleConfig
) -> tuple[float, float, float]:
    """Coefficients (a, b, const) of Q(lambda) = a lambda^2 + b lambda + const."""
    red = reduced_angular(q, p, f, c)
    a = 1.0 - 8.0 * p.Omega**2
    b = -4.0 * p.Omega * red.B
    const = (c.g / p.alpha) ** 2 - red.A**2
    return a, b, const


def quantization_residual(
    lam: complex, q: QuantumNumbers, p: GeometryParams, f: FluxConfig, c: MonopoleConfig
) -> complex:
    """Q(lambda): zero exactly on the authoritative spectrum."""
    a, b, const = _poly_coeffs(q, p, f, c)
    return (a * lam + b) * lam + const


def _result(
    lam_plus: complex,
    lam_minus: complex,
    discriminant: float,
    valid: bool,
    q: QuantumNumbers,
    p: GeometryParams,
    f: FluxConfig,
    c: MonopoleConfig,
) -> SpectrumResult:
    scale = p.hbar * p.vF / p.R
    lam_plus = complex(lam_plus)
    lam_minus = complex(lam_minus)
    if lam_plus.imag == 0.0:
        lam_plus = lam_plus.real
    if lam_minus.imag == 0.0:
        lam_minus = lam_minus.real
    return SpectrumResult(
        lambda_plus=lam_plus,
        lambda_minus=lam_minus,
        eps_plus=scale * lam_plus,
        eps_minus=scale * lam_minus,
        discriminant=discriminant,
        valid=valid,
        residual_plus=abs(quantization_residual(lam_plus, q, p, f, c)),
        residual_minus=abs(quantization_residual(lam_minus, q, p, f, c)),
    )


def solve_spectrum(
    q: QuantumNumbers, p: GeometryParams, f: FluxConfig, c: MonopoleConfig
) -> SpectrumResult:
    """Authoritative spectrum: the two roots of Q(lambda) = 0.

    Uses the cancellation-free quadratic formula: the larger-magnitude root
    comes from -(b + sign(b) sqrt(disc))/2a, the other from the root product.
    Raises ``RotationSingular`` when 1 - 8 Omega^2 vanishes (the condition
    degenerates to linear there and its derivation is not established);
    a negative discriminant sets ``valid=False`` with a complex-conjugate
    pair, it does not raise.
    """
    a, b, const = _poly_coeffs(q, p, f, c)
    if abs(a) < _ROTATION_SINGULAR_TOL:
        raise RotationSingular(
            f"1 - 8 Omega^2 = {a:.3e}; the quantization polynomial is not quadratic"
        )
    disc = b * b - 4.0 * a * const

    if disc < 0.0:
        root = cmath.sqrt(complex(disc))  # +i sqrt(|disc|)
        lam1 = (-b + root) / (2.0 * a)
        lam2 = (-b - root) / (2.0 * a)
        lam_plus, lam_minus = (lam1, lam2) if lam1.imag >= lam2.imag else (lam2, lam1)
        return _result(lam_plus, lam_minus, disc, False, q, p, f, c)

    sq = math.sqrt(disc)
    sign_b = 1.0 if b >= 0.0 else -1.0
    qq = -0.5 * (b + sign_b * sq)
    if qq == 0.0:
        # b = 0 and disc = 0: double root at the vertex.
        lam1 = lam2 = -b / (2.0 * a)
    else:
        lam1 = qq / a
        lam2 = const / qq
    lam_plus, lam_minus = (lam1, lam2) if lam1 >= lam2 else (lam2, lam1)
    return _result(lam_plus, lam_minus, disc, p.rotation_regular, q, p, f, c)


def printed_spectrum(
    q: QuantumNumbers, p: GeometryParams, f: FluxConfig, c: MonopoleConfig
) -> SpectrumResult:
    """The historically printed closed form, character for character.

    lambda = { 4 Omega B_half  pm  2 sqrt( 2 B_half^2 Omega^2
               - (1 - 8 Omega^2) [ g^2/alpha^2 - A^2 ] ) } / ( 2 (1 - 8 Omega^2) ),

    where B_half = mtilde/alpha + 1/2 + g/alpha.  Note the radicand's
    ``2 B_half^2 Omega^2``: the exact quadratic-formula solution of the
    quantization polynomial carries ``4 B_half^2 Omega^2`` there, so this
    form drifts from ``solve_spectrum`` at first order in Omega^2 and is
    retained only for the discrepancy report.
    """
    red = reduced_angular(q, p, f, c)
    a = 1.0 - 8.0 * p.Omega**2
    if abs(a) < _ROTATION_SINGULAR_TOL:
        raise RotationSingular(
            f"1 - 8 Omega^2 = {a:.3e}; the printed closed form divides by it"
        )
    gt2 = (c.g / p.alpha) ** 2
    radicand = 2.0 * (red.B * p.Omega) ** 2 - a * (gt2 - red.A**2)
    valid = radicand >= 0.0 and p.rotation_regular
    root = math.sqrt(radicand) if radicand >= 0.0 else cmath.sqrt(complex(radicand))
    lam1 = (4.0 * p.Omega * red.B + 2.0 * root) / (2.0 * a)
    lam2 = (4.0 * p.Omega * red.B - 2.0 * root) / (2.0 * a)
    if isinstance(lam1, complex):
        lam_plus, lam_minus = (lam1, lam2) if lam1.imag >= lam2.imag else (lam2, lam1)
    else:
        lam_plus, lam_minus = (lam1, lam2) if lam1 >= lam2 else (lam2, lam1)
    return _result(lam_plus, lam_minus, radicand, valid, q, p, f, c)


def slow_rotation_spectrum(
    q: QuantumNumbers, p: GeometryParams, f: FluxConfig, c: MonopoleConfig
) -> SpectrumResult:
    """First order in Omega: lambda = 2 Omega B pm sqrt(A^2 - g^2/alpha^2).

    Coincides with ``solve_spectrum`` at Omega = 0 exactly and deviates at
    O(Omega^2) elsewhere.
    """
    red = reduced_angular(q, p, f, c)
    gt2 = (c.g / p.alpha) ** 2
    radicand = red.A**2 - gt2
    valid = radicand >= 0.0
    root = math.sqrt(radicand) if valid else cmath.sqrt(complex(radicand))
    shift = 2.0 * p.Omega * red.B
    return _result(shift + root, shift - root, radicand, valid, q, p, f, c)


def spectrum_flux_derivative(
    q: QuantumNumbers,
    p: GeometryParams,
    f: FluxConfig,
    c: MonopoleConfig,
    branch: str = "plus",
):
    """d eps / d Phi_B of an authoritative root, by implicit differentiation.

    With Q(lambda(Phi), Phi) = 0,

        d lambda / d Phi = - (dQ/dPhi) / (dQ/dlambda),
        dQ/dPhi = [2 Omega lambda + A sign(mtilde)] / (pi alpha),
        dQ/dlambda = 2 (1 - 8 Omega^2) lambda - 4 Omega B.

    At the |mtilde| cusp (mtilde = 0) the derivative is two-valued; the pair
    (left, right) of one-sided derivatives is returned there instead of a
    float.
    """
    if branch not in ("plus", "minus"):
        raise ValueError(f"branch must be 'plus' or 'minus', got {branch!r}")
    res = solve_spectrum(q, p, f, c)
    if not res.valid:
        raise ValueError("flux derivative undefined: spectrum invalid at this point")
    lam = res.lambda_plus if branch == "plus" else res.lambda_minus
    red = reduced_angular(q, p, f, c)
    a = 1.0 - 8.0 * p.Omega**2
    dQ_dlam = 2.0 * a * lam - 4.0 * p.Omega * red.B
    if abs(dQ_dlam) < 1e-12 * max(1.0, abs(lam)):
        # double root: the level touches the gap edge and d eps / d Phi_B
        # diverges (square-root contact), so no finite derivative exists
        raise ValueError(
            f"flux derivative undefined: gap-edge double root at (n={q.n}, m={q.m})"
        )
    scale = p.hbar * p.vF / p.R

    def one_sided(sign_m: float) -> float:
        dQ_dPhi = (2.0 * p.Omega * lam + red.A * sign_m) / (math.pi * p.alpha)
        return scale * (-dQ_dPhi / dQ_dlam)

    if abs(red.mtilde) < 1e-12:
        return one_sided(-1.0), one_sided(+1.0)
    return one_sided(math.copysign(1.0, red.mtilde))
