"""Spherical rotating background: metric, tetrads, and spin connections.

The (2+1)-dimensional line element on the sphere of radius ``R`` with
disclination parameter ``alpha`` and rotation rate ``Omega`` is

    ds^2 = -[dt + f(theta) dphi]^2 + R^2 dtheta^2 + alpha^2 R^2 sin^2(theta) dphi^2,

with the frame-dragging profile ``f(theta) = 4 alpha Omega R^2 sin^2(theta/2)``.
Coordinates are ordered ``(t, theta, phi)`` everywhere; frame indices run over
``a in {0, 1, 2}`` with eta = diag(-1, +1, +1).

Two connections coexist here on purpose:

* ``spin_connection_at`` returns the components the Dirac sector is built on
  (the ones that produce the spinor connections of ``spinor_connection_at``,
  and ultimately the angular eigenproblem).
* ``levi_civita_connection_at`` returns the unique torsion-free metric
  connection of the tetrad above.

The two agree at ``Omega = 0`` and differ at first order in ``Omega``; the
difference is a genuine torsion two-form carried by the Dirac-sector
connection, measurable with ``torsion_residual``.  Structure-equation
verification (``maurer_cartan_residual``) therefore uses the Levi-Civita
forms, which satisfy d theta^a + omega^a_b ^ theta^b = 0 identically.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "GeometryParams",
    "MetricSample",
    "Tetrad",
    "SpinConnection",
    "LeviCivitaConnection",
    "SpinorConnection",
    "SIGMA1",
    "SIGMA2",
    "SIGMA3",
    "SIGMA_01",
    "SIGMA_02",
    "SIGMA_12",
    "ETA",
    "metric_at",
    "tetrad_at",
    "dragging_profile",
    "spin_connection_at",
    "levi_civita_connection_at",
    "spinor_connection_at",
    "maurer_cartan_residual",
    "torsion_residual",
]

ETA = np.diag([-1.0, 1.0, 1.0])

SIGMA1 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA2 = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA3 = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

# Frame-rotation generators, pinned so that Gamma_mu = (i/4) omega_{mu a b} Sigma^{a b}
# reproduces the closed-form spinor connections below verbatim.  The test suite
# asserts this convention; changing any sign here breaks spinor_connection_at.
SIGMA_01 = SIGMA2
SIGMA_02 = -SIGMA1
SIGMA_12 = -SIGMA3


class DomainError(ValueError):
    """Raised when an angle or step leaves the validity domain."""


@dataclass(frozen=True)
class GeometryParams:
    """Background configuration: defect strength, rotation, and scales.

    ``alpha`` is the disclination parameter (fraction of the full angular
    sector that survives the cut-and-glue construction; 0 < alpha <= 1 for
    sector removal, alpha > 1 for insertion).  ``Omega`` is the rotation
    rate, ``R`` the sphere radius.  ``hbar`` and ``vF`` are kept as explicit
    scales so physical-unit output is a formatting concern only.
    """

    alpha: float = 1.0
    Omega: float = 0.0
    R: float = 1.0
    hbar: float = 1.0
    vF: float = 1.0

    def __post_init__(self) -> None:
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if not self.R > 0:
            raise ValueError(f"R must be positive, got {self.R}")

    @property
    def rotation_regular(self) -> bool:
        """True when 1 - 8 Omega^2 > 0, the regime where the closed-form
        spectrum's quadratic keeps its sign structure."""
        return 1.0 - 8.0 * self.Omega**2 > 0.0


@dataclass(frozen=True)
class MetricSample:
    """Coordinate metric at one polar angle, ordered (t, theta, phi)."""

    theta: float
    phi: float
    g: np.ndarray

    def __post_init__(self) -> None:
        if not np.allclose(self.g, self.g.T, atol=1e-15):
            raise ValueError("metric sample must be symmetric")


@dataclass(frozen=True)
class Tetrad:
    """Orthonormal co-frame e^a_mu (rows a, columns mu) and its inverse."""

    e: np.ndarray
    einv: np.ndarray


@dataclass(frozen=True)
class SpinConnection:
    """Nonzero components of the Dirac-sector connection one-forms.

    ``omega_phi_01`` and ``omega_phi_21`` are the phi-components of
    omega^0_1 and omega^2_1; ``omega_theta_02`` is the theta-component of
    omega^0_2.  All other components vanish.
    """

    omega_phi_01: float
    omega_phi_21: float
    omega_theta_02: float


@dataclass(frozen=True)
class LeviCivitaConnection:
    """Nonzero mixed components of the torsion-free metric connection.

    One-forms: omega^0_1 = omega_phi_01 dphi, omega^0_2 = omega_theta_02 dtheta,
    omega^1_2 = omega_phi_12 dphi + omega_t_12 dt.
    """

    omega_phi_01: float
    omega_theta_02: float
    omega_phi_12: float
    omega_t_12: float


@dataclass(frozen=True)
class SpinorConnection:
    """The two 2x2 spinor-connection matrices entering the Dirac operator."""

    Gamma_phi: np.ndarray = field(repr=False)
    Gamma_theta: np.ndarray = field(repr=False)


def _check_theta(theta: float) -> None:
    if not 0.0 < theta < np.pi:
        raise DomainError(f"theta must lie strictly inside (0, pi), got {theta}")


def dragging_profile(p: GeometryParams, theta: float) -> float:
    """Frame-dragging profile f(theta) = 4 alpha Omega R^2 sin^2(theta/2)."""
    return 4.0 * p.alpha * p.Omega * p.R**2 * np.sin(theta / 2.0) ** 2


def metric_at(p: GeometryParams, theta: float, phi: float = 0.0) -> MetricSample:
    """Coordinate metric components at polar angle ``theta``.

    g_tt = -1, g_tphi = -f, g_thetatheta = R^2,
    g_phiphi = alpha^2 R^2 sin^2(theta) - f^2.
    """
    _check_theta(theta)
    f = dragging_profile(p, theta)
    g = np.zeros((3, 3))
    g[0, 0] = -1.0
    g[0, 2] = g[2, 0] = -f
    g[1, 1] = p.R**2
    g[2, 2] = (p.alpha * p.R * np.sin(theta)) ** 2 - f**2
    return MetricSample(theta=theta, phi=phi, g=g)


def tetrad_at(p: GeometryParams, theta: float) -> Tetrad:
    """Orthonormal co-frame adapted to the rotating metric.

    e^0 = dt + f dphi,  e^1 = R dtheta,  e^2 = alpha R sin(theta) dphi.
    The inverse frame is assembled in closed form.
    """
    _check_theta(theta)
    f = dragging_profile(p, theta)
    s = p.alpha * p.R * np.sin(theta)
    e = np.array(
        [
            [1.0, 0.0, f],
            [0.0, p.R, 0.0],
            [0.0, 0.0, s],
        ]
    )
    # Closed-form inverse of the upper-triangular frame matrix.
    einv = np.array(
        [
            [1.0, 0.0, -f / s],
            [0.0, 1.0 / p.R, 0.0],
            [0.0, 0.0, 1.0 / s],
        ]
    )
    return Tetrad(e=e, einv=einv)


def spin_connection_at(p: GeometryParams, theta: float) -> SpinConnection:
    """Dirac-sector connection components.

    omega_phi^0_1 = 2 alpha Omega R sin(theta), omega_phi^2_1 = alpha cos(theta),
    omega_theta^0_2 = 2 Omega R.  These are the components the spinor
    connections (and hence the angular eigenproblem) are built from; they
    carry torsion for Omega != 0, see ``torsion_residual``.
    """
    _check_theta(theta)
    return SpinConnection(
        omega_phi_01=2.0 * p.alpha * p.Omega * p.R * np.sin(theta),
        omega_phi_21=p.alpha * np.cos(theta),
        omega_theta_02=2.0 * p.Omega * p.R,
    )


def levi_civita_connection_at(p: GeometryParams, theta: float) -> LeviCivitaConnection:
    """Torsion-free metric connection of the tetrad, in closed form.

    omega^0_1 = alpha Omega R sin(theta) dphi,
    omega^0_2 = -Omega R dtheta,
    omega^1_2 = [4 alpha Omega^2 R^2 sin^2(theta/2) - alpha cos(theta)] dphi + Omega dt.

    Satisfies d theta^a + omega^a_b ^ theta^b = 0 identically (checked
    numerically by ``maurer_cartan_residual``).
    """
    _check_theta(theta)
    f = dragging_profile(p, theta)
    return LeviCivitaConnection(
        omega_phi_01=p.alpha * p.Omega * p.R * np.sin(theta),
        omega_theta_02=-p.Omega * p.R,
        omega_phi_12=p.Omega * f - p.alpha * np.cos(theta),
        omega_t_12=p.Omega,
    )


def spinor_connection_at(p: GeometryParams, theta: float) -> SpinorConnection:
    """Spinor-connection matrices in closed form.

    Gamma_phi = (i/2)(alpha cos(theta) sigma3 - 2 alpha Omega R sin(theta) sigma2),
    Gamma_theta = i Omega R sigma1.

    Equal to (i/4) omega_{mu a b} Sigma^{a b} contracted with the
    Dirac-sector connection under the pinned generator convention
    (SIGMA_01, SIGMA_02, SIGMA_12 above); the test suite enforces agreement
    to 1e-12.
    """
    _check_theta(theta)
    Gamma_phi = 0.5j * (
        p.alpha * np.cos(theta) * SIGMA3
        - 2.0 * p.alpha * p.Omega * p.R * np.sin(theta) * SIGMA2
    )
    Gamma_theta = 1.0j * p.Omega * p.R * SIGMA1
    return SpinorConnection(Gamma_phi=Gamma_phi, Gamma_theta=Gamma_theta)


def _mixed_connection_matrix(
    p: GeometryParams, theta: float, torsion_free: bool
) -> np.ndarray:
    """W[mu, a, b] = (omega^a_b)_mu for the chosen connection."""
    W = np.zeros((3, 3, 3))
    if torsion_free:
        lc = levi_civita_connection_at(p, theta)
        # phi components
        W[2, 0, 1] = lc.omega_phi_01
        W[2, 1, 0] = lc.omega_phi_01  # boost: omega^1_0 = omega^0_1
        W[2, 1, 2] = lc.omega_phi_12
        W[2, 2, 1] = -lc.omega_phi_12
        # theta components
        W[1, 0, 2] = lc.omega_theta_02
        W[1, 2, 0] = lc.omega_theta_02
        # t components
        W[0, 1, 2] = lc.omega_t_12
        W[0, 2, 1] = -lc.omega_t_12
    else:
        sc = spin_connection_at(p, theta)
        W[2, 0, 1] = sc.omega_phi_01
        W[2, 1, 0] = sc.omega_phi_01
        W[2, 2, 1] = sc.omega_phi_21
        W[2, 1, 2] = -sc.omega_phi_21
        W[1, 0, 2] = sc.omega_theta_02
        W[1, 2, 0] = sc.omega_theta_02
    return W


def _structure_residual(
    p: GeometryParams, theta: float, h: float, torsion_free: bool
) -> float:
    """Max component of d theta^a + omega^a_b ^ theta^b by central differences.

    The exterior derivative of the co-frame is taken by second-order central
    differences in theta (the only coordinate the frame depends on); the wedge
    term is evaluated in closed form at the midpoint.
    """
    _check_theta(theta)
    if h > 1e-2:
        raise DomainError(f"finite-difference step too large: {h}")
    if not (0.0 < theta - h and theta + h < np.pi):
        raise DomainError("theta +/- h leaves (0, pi)")

    e_plus = tetrad_at(p, theta + h).e
    e_minus = tetrad_at(p, theta - h).e
    de_dtheta = (e_plus - e_minus) / (2.0 * h)  # d/dtheta of e^a_mu

    e = tetrad_at(p, theta).e
    W = _mixed_connection_matrix(p, theta, torsion_free)

    # Two-form components T^a_{mu nu} for the three index pairs.
    pairs = [(0, 1), (0, 2), (1, 2)]
    worst = 0.0
    for mu, nu in pairs:
        # (d theta^a)_{mu nu} = partial_mu e^a_nu - partial_nu e^a_mu;
        # only theta-derivatives (mu or nu == 1) survive.
        d_part = np.zeros(3)
        if mu == 1:
            d_part += de_dtheta[:, nu]
        if nu == 1:
            d_part -= de_dtheta[:, mu]
        wedge = W[mu] @ e[:, nu] - W[nu] @ e[:, mu]
        worst = max(worst, float(np.max(np.abs(d_part + wedge))))
    return worst


def maurer_cartan_residual(p: GeometryParams, theta: float, h: float = 1e-4) -> float:
    """Structure-equation residual of the torsion-free connection.

    Converges to zero at second order in ``h`` for every (alpha, Omega, R):
    the only error is the finite-difference truncation of d theta^a.
    """
    return _structure_residual(p, theta, h, torsion_free=True)


def torsion_residual(p: GeometryParams, theta: float, h: float = 1e-4) -> float:
    """Structure-equation residual of the Dirac-sector connection.

    Measures the torsion two-form that connection carries: the residual
    tends to max(|2 alpha Omega R^2 sin(theta)|, |2 alpha Omega R sin(theta)|,
    |2 Omega R|, |8 alpha Omega^2 R^3 sin^2(theta/2)|) as h -> 0, vanishing
    only at Omega = 0.
    """
    return _structure_residual(p, theta, h, torsion_free=False)
