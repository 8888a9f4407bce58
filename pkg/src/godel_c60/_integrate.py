"""Adaptive phase integrator for the two-sided shooting solver.

The coupled first-order angular system, written in the log-tangent
coordinate tau = ln tan(theta/2) and realified via (psi, v) = (psi_plus,
-i psi_minus), reads

    d psi / d tau = a(tau) psi - lam sech(tau) v,
    d v   / d tau = lam sech(tau) psi + d(tau) v,

    a(tau) = (1/2 + gt) tanh(tau) + w(tau),
    d(tau) = (1/2 - gt) tanh(tau) - w(tau),
    w(tau) = mtt + 2 Omega lam (1 + tanh(tau)),

with gt = g/alpha and mtt = (m - Phi_B/2pi)/alpha.  Its Pruefer phase
phi = atan2(v, psi) obeys the scalar equation

    d phi / d tau = lam sech(tau) - [gt tanh(tau) + w(tau)] sin(2 phi),

which is what this module integrates: a Dormand-Prince 5(4) pair with PI-free
step control, first-same-as-last reuse, and a step-size cap that keeps each
step's phase advance below pi so sign changes of psi (phi crossing
pi/2 + j pi, always in the direction of sign(lam) at the crossing) can be
counted exactly from floor-window transitions.

Everything here is plain-number code so numba can compile it; without numba
the same functions run as pure Python (several hundred times slower but
identical in result).
"""

from __future__ import annotations

import math

try:  # pragma: no cover - exercised implicitly by which branch imports
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def wrap(f):
            return f

        return wrap


@njit(cache=True)
def _phase_rhs(tau: float, phi: float, lam: float, gt: float, mtt: float, Om: float) -> float:
    th = math.tanh(tau)
    w = mtt + 2.0 * Om * lam * (1.0 + th)
    return lam / math.cosh(tau) - (gt * th + w) * math.sin(2.0 * phi)


@njit(cache=True)
def integrate_phase(
    phi0: float,
    tau0: float,
    tau1: float,
    lam: float,
    gt: float,
    mtt: float,
    Om: float,
    rtol: float,
    atol: float,
) -> tuple[float, int, int]:
    """Integrate the phase from tau0 to tau1 (either direction).

    Returns ``(phi_end, crossings, status)`` where ``crossings`` counts the
    transitions of phi through the psi-node levels pi/2 + j pi and ``status``
    is 0 on success, 1 when step control collapsed (stiffness failure).
    """
    span = tau1 - tau0
    direction = 1.0 if span >= 0.0 else -1.0
    # Cap |Delta phi| per step well under pi: |phi'| <= |lam| + |gt| + |w|.
    speed = abs(lam) + abs(gt) + abs(mtt) + 4.0 * abs(Om * lam) + 1.0
    hmax = 0.5 * math.pi / speed
    h = direction * min(hmax, 0.1 * abs(span) + 1e-12)
    hmin = 1e-14 * (abs(span) + 1.0)

    phi = phi0
    tau = tau0
    crossings = 0
    window = math.floor((phi - 0.5 * math.pi) / math.pi)

    k1 = _phase_rhs(tau, phi, lam, gt, mtt, Om)
    max_steps = 1000000
    for _ in range(max_steps):
        if direction * (tau - tau1) >= 0.0:
            return phi, crossings, 0
        if direction * (tau + h - tau1) > 0.0:
            h = tau1 - tau

        k2 = _phase_rhs(tau + 0.2 * h, phi + h * 0.2 * k1, lam, gt, mtt, Om)
        k3 = _phase_rhs(
            tau + 0.3 * h, phi + h * (0.075 * k1 + 0.225 * k2), lam, gt, mtt, Om
        )
        k4 = _phase_rhs(
            tau + 0.8 * h,
            phi + h * (0.9777777777777777 * k1 - 3.7333333333333334 * k2 + 3.5555555555555554 * k3),
            lam,
            gt,
            mtt,
            Om,
        )
        k5 = _phase_rhs(
            tau + 0.8888888888888888 * h,
            phi
            + h
            * (
                2.9525986892242035 * k1
                - 11.595793324188385 * k2
                + 9.822892851699436 * k3
                - 0.2908093278463649 * k4
            ),
            lam,
            gt,
            mtt,
            Om,
        )
        k6 = _phase_rhs(
            tau + h,
            phi
            + h
            * (
                2.8462752525252526 * k1
                - 10.757575757575758 * k2
                + 8.906422717743473 * k3
                + 0.2784090909090909 * k4
                - 0.2735313036020583 * k5
            ),
            lam,
            gt,
            mtt,
            Om,
        )
        # 5th-order solution (also the FSAL stage point).
        phi5 = phi + h * (
            0.09114583333333333 * k1
            + 0.44923629829290207 * k3
            + 0.6510416666666666 * k4
            - 0.322376179245283 * k5
            + 0.13095238095238096 * k6
        )
        k7 = _phase_rhs(tau + h, phi5, lam, gt, mtt, Om)
        # Embedded 4th-order error estimate.
        err_phi = h * (
            0.0012326388888888888 * k1
            - 0.0042527702905061394 * k3
            + 0.036979166666666667 * k4
            - 0.05086379716981132 * k5
            + 0.0419047619047619 * k6
            - 0.025 * k7
        )
        scale = atol + rtol * max(abs(phi), abs(phi5))
        err = abs(err_phi) / scale

        if err <= 1.0:
            tau += h
            new_window = math.floor((phi5 - 0.5 * math.pi) / math.pi)
            if new_window != window:
                diff = new_window - window
                crossings += diff if diff > 0 else -diff
                window = new_window
            phi = phi5
            k1 = k7  # first-same-as-last
            if err == 0.0:
                factor = 5.0
            else:
                factor = 0.9 * err ** -0.2
                if factor > 5.0:
                    factor = 5.0
                elif factor < 0.2:
                    factor = 0.2
            h *= factor
            if direction * h > hmax:
                h = direction * hmax
        else:
            factor = 0.9 * err ** -0.2
            if factor < 0.1:
                factor = 0.1
            h *= factor
            if abs(h) < hmin:
                return phi, crossings, 1
    return phi, crossings, 1
