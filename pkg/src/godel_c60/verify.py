"""Self-verification suite: every module's invariants, one report.

Each check is a pure function returning a CheckResult; run_all executes the
fixed list in a fixed order with per-check seeded generators, so a report is
a deterministic function of (seed, package version) alone.  The suite's
centerpiece is the closed-form-versus-shooting agreement grid, whose
zero-rotation column is a hard gate: the closed-form ladder there disagrees
with the direct boundary-value spectrum whenever |m - Phi_B/2pi|/alpha <
g/alpha + 1/2 (see the oracle module), and this suite reports that honestly
instead of hiding it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import __version__
from .causality import GODEL_LR_CRITICAL, classify, g_function
from .gauge import FluxConfig, MonopoleConfig
from .geometry import GeometryParams, maurer_cartan_residual, metric_at, tetrad_at
from .observables import LevelSet, persistent_current
from .oracle import GridRow, agreement_grid, discrepancy_rows
from .spectrum import (
    QuantumNumbers,
    printed_spectrum,
    quantization_residual,
    slow_rotation_spectrum,
    solve_spectrum,
)

__all__ = ["CheckResult", "VerifyReport", "run_all"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    metric: float
    detail: str


@dataclass(frozen=True)
class VerifyReport:
    version: str
    seed: int
    checks: tuple[CheckResult, ...]
    grid_rows: tuple[GridRow, ...]
    max_printed_residual: float
    passed: bool


def _rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, index])


def _half_integers(limit: float) -> list[float]:
    out, m = [], -limit
    while m <= limit + 1e-9:
        out.append(m)
        m += 1.0
    return out


def check_inertial_spectrum() -> CheckResult:
    """alpha=1, g=3/2, no flux, no rotation: eps = +-sqrt((n+|m|+1/2)^2 - 9/4)."""
    p = GeometryParams()
    f = FluxConfig()
    c = MonopoleConfig(N=12, g=1.5)
    worst = 0.0
    flags_ok = True
    for n in range(5):
        for m in _half_integers(3.5):
            q = QuantumNumbers(n=n, m=m)
            res = solve_spectrum(q, p, f, c)
            A = n + abs(m) + 0.5
            sub_gap = A < 1.5
            if sub_gap != (not res.valid):
                flags_ok = False
            if sub_gap:
                continue
            ref = math.sqrt(A * A - 2.25)
            worst = max(
                worst,
                abs(res.eps_plus - ref) / ref if ref else abs(res.eps_plus),
                abs(res.eps_minus + ref) / ref if ref else abs(res.eps_minus),
            )
    passed = worst < 1e-12 and flags_ok
    return CheckResult(
        "inertial_defect_spectrum",
        passed,
        worst,
        f"max rel err {worst:.3e}; sub-gap flags consistent: {flags_ok}",
    )


def check_insulator_limit() -> CheckResult:
    """g=0 sphere: eps = +-(n+|m|+1/2)/R exactly."""
    f = FluxConfig()
    c = MonopoleConfig(N=0, g=0.0)
    worst = 0.0
    for R in (1.0, 2.5):
        p = GeometryParams(R=R)
        for n in range(5):
            for m in _half_integers(3.5):
                res = solve_spectrum(QuantumNumbers(n=n, m=m), p, f, c)
                ref = (n + abs(m) + 0.5) / R
                worst = max(
                    worst,
                    abs(res.eps_plus - ref) / ref,
                    abs(res.eps_minus + ref) / ref,
                )
    return CheckResult(
        "insulator_limit_spectrum", worst < 1e-12, worst, f"max rel err {worst:.3e}"
    )


def check_oracle_grid(jobs: int | None = None) -> tuple[CheckResult, list[GridRow]]:
    """Closed form vs shooting over the standard grid; Omega=0 column is the gate."""
    rows = agreement_grid(jobs=jobs)
    bad = discrepancy_rows(rows)
    zero_col = [r for r in bad if r.Omega == 0.0]
    rot_col = [r for r in bad if r.Omega != 0.0]
    deltas = [r.delta for r in zero_col if not math.isnan(r.delta)]
    metric = max(deltas) if deltas else 0.0
    passed = not zero_col
    detail = (
        f"Omega=0 column: {len(zero_col)} deviations (max |dlam| {metric:.3e}); "
        f"rotating columns: {len(rot_col)} deviations itemized"
    )
    return CheckResult("oracle_agreement_grid", passed, metric, detail), rows


def check_printed_formula() -> tuple[CheckResult, float]:
    """Printed two-branch formula: identical at Omega=0, inconsistent at Omega=0.1."""
    f = FluxConfig()
    c = MonopoleConfig(N=12, g=1.5)
    worst0 = 0.0
    p0 = GeometryParams()
    for n in range(4):
        for m in _half_integers(2.5):
            q = QuantumNumbers(n=n, m=m)
            res = solve_spectrum(q, p0, f, c)
            if not res.valid:
                continue
            pr = printed_spectrum(q, p0, f, c)
            worst0 = max(
                worst0,
                abs(pr.lambda_plus - res.lambda_plus),
                abs(pr.lambda_minus - res.lambda_minus),
            )
    p1 = GeometryParams(Omega=0.1)
    max_q = 0.0
    for n in range(4):
        for m in _half_integers(2.5):
            q = QuantumNumbers(n=n, m=m)
            res = solve_spectrum(q, p1, f, c)
            if not res.valid:
                continue
            pr = printed_spectrum(q, p1, f, c)
            for lam in (pr.lambda_plus, pr.lambda_minus):
                if isinstance(lam, complex):
                    continue
                max_q = max(max_q, abs(quantization_residual(lam, q, p1, f, c)))
    passed = worst0 < 1e-10 and max_q > 0.0
    detail = (
        f"Omega=0 agreement {worst0:.3e}; max |Q(lam_printed)| at Omega=0.1: {max_q:.6e}"
    )
    return CheckResult("printed_formula_discrepancy", passed, max_q, detail), max_q


def check_slow_rotation(seed: int) -> CheckResult:
    """|solve - slow| must scale as Omega^2: log-log slope 2.0 +- 0.1."""
    rng = _rng(seed, 5)
    c = MonopoleConfig(N=12, g=1.5)
    omegas = np.logspace(-4, -2, 7)
    slopes = []
    tries = 0
    while len(slopes) < 10 and tries < 100:
        tries += 1
        n = int(rng.integers(0, 4))
        m = float(rng.integers(-3, 4)) + 0.5
        alpha = float(rng.uniform(0.7, 1.3))
        phi = float(rng.uniform(0.0, 0.45)) * 2.0 * math.pi
        q = QuantumNumbers(n=n, m=m)
        f = FluxConfig(Phi_B=phi)
        A = n + abs((m - f.phi_frac) / alpha) + 0.5
        if A * A - (1.5 / alpha) ** 2 < 0.3:  # keep clear of the gap edge
            continue
        diffs = []
        for Om in omegas:
            p = GeometryParams(alpha=alpha, Omega=float(Om))
            full = solve_spectrum(q, p, f, c)
            slow = slow_rotation_spectrum(q, p, f, c)
            diffs.append(abs(full.lambda_plus - slow.lambda_plus))
        slope = float(np.polyfit(np.log(omegas), np.log(diffs), 1)[0])
        slopes.append(slope)
    worst = max(abs(s - 2.0) for s in slopes)
    return CheckResult(
        "slow_rotation_order",
        worst < 0.1,
        worst,
        f"10 tuples, max |slope - 2| = {worst:.3f}",
    )


def check_byers_yang(seed: int) -> CheckResult:
    """I_analytic vs I_fd on smooth configs; symmetric zero-flux current vanishes."""
    rng = _rng(seed, 6)
    c = MonopoleConfig(N=12, g=1.5)
    worst = 0.0
    count = 0
    tries = 0
    while count < 30 and tries < 300:
        tries += 1
        alpha = float(rng.uniform(0.7, 1.3))
        Om = float(rng.uniform(0.0, 0.25))
        phi = float(rng.uniform(0.05, 0.45)) * 2.0 * math.pi
        n_max = int(rng.integers(1, 4))
        half = float(rng.integers(1, 4)) + 0.5
        ls = LevelSet(n_max=n_max, m_window=(-half, half))
        f = FluxConfig(Phi_B=phi)
        p = GeometryParams(alpha=alpha, Omega=Om)
        # smooth means the FD stencil sees the same analytic branch everywhere:
        # no |m - phi/2pi| cusp nearby and no discriminant sign change, so the
        # set of propagating levels is identical at Phi_B and Phi_B +- delta
        if min(abs(m - f.phi_frac) for m in ls.m_values) < 1e-3:
            continue
        if any(
            abs(solve_spectrum(QuantumNumbers(n=n, m=m), p, f, c).discriminant) < 1e-3
            for n in range(n_max + 1)
            for m in ls.m_values
        ):
            continue
        r = persistent_current(ls, p, f, c)
        if any("cusp" in w for w in r.warnings):
            continue
        scale = max(abs(r.I_analytic), 1e-3)
        worst = max(worst, abs(r.I_analytic - r.I_fd) / scale)
        count += 1
    p0 = GeometryParams()
    r0 = persistent_current(
        LevelSet(n_max=3, m_window=(-3.5, 3.5)), p0, FluxConfig(0.0), c
    )
    zero_ok = abs(r0.I_analytic) < 1e-10 and abs(r0.I_fd) < 1e-10
    passed = worst < 1e-6 and zero_ok and count == 30
    return CheckResult(
        "byers_yang_consistency",
        passed,
        worst,
        f"{count} smooth configs, max rel err {worst:.3e}; "
        f"symmetric zero-flux current {abs(r0.I_analytic):.2e}",
    )


def check_geometry(seed: int) -> CheckResult:
    """Tetrad orthonormality to 1e-12; structure-equation residual of order h^2."""
    rng = _rng(seed, 7)
    worst_ortho = 0.0
    for _ in range(100):
        p = GeometryParams(
            alpha=float(rng.uniform(0.5, 1.5)),
            Omega=float(rng.uniform(0.0, 0.3)),
            R=float(rng.uniform(0.5, 2.0)),
        )
        theta = float(rng.uniform(0.1, math.pi - 0.1))
        t = tetrad_at(p, theta)
        g = metric_at(p, theta).g
        eta = np.diag([-1.0, 1.0, 1.0])
        worst_ortho = max(
            worst_ortho,
            float(np.max(np.abs(t.e.T @ eta @ t.e - g))),
            float(np.max(np.abs(t.e @ t.einv - np.eye(3)))),
        )

    hs = np.array([4e-3, 2e-3, 1e-3, 5e-4])
    orders = []
    for Om in (0.0, 0.05, 0.2):
        for alpha in (0.5, 1.0, 1.5):
            p = GeometryParams(alpha=alpha, Omega=Om)
            for _ in range(20):
                theta = float(rng.uniform(0.3, math.pi - 0.3))
                res = [maurer_cartan_residual(p, theta, h=float(h)) for h in hs]
                if min(res) < 1e-13:  # too close to rounding to fit an order
                    continue
                orders.append(float(np.polyfit(np.log(hs), np.log(res), 1)[0]))
    worst_order = max(abs(o - 2.0) for o in orders)
    passed = worst_ortho < 1e-12 and worst_order < 0.1
    return CheckResult(
        "geometry_suite",
        passed,
        worst_ortho,
        f"orthonormality {worst_ortho:.2e}; structure-eq order within {worst_order:.3f} of 2 "
        f"({len(orders)} fits)",
    )


def check_causality(seed: int) -> CheckResult:
    """Classification vs dense sign sampling; Goedel critical radius to 1e-10."""
    rng = _rng(seed, 8)
    mismatches = 0
    for _ in range(200):
        Om = float(rng.uniform(0.05, 1.5))
        l2 = float(rng.uniform(-2.0, 2.0))
        rep = classify(Om, l2)
        if l2 < 0.0:
            r_max = 3.0 * math.pi / math.sqrt(-l2)
        elif rep.critical_radii:
            r_max = 3.0 * rep.critical_radii[-1]
        else:
            r_max = 10.0
        rs = np.linspace(1e-4, r_max * 0.9999, 3000)
        gs = np.array([g_function(Om, l2, float(r)) for r in rs])
        changes = int(np.sum(np.diff(np.sign(gs)) != 0))
        expected = sum(1 for r in rep.critical_radii if r < rs[-1])
        if changes != expected:
            mismatches += 1
    Om = 0.9
    l2 = Om * Om / 2.0
    rep = classify(Om, l2)
    godel_err = abs(math.sqrt(l2) * rep.critical_radii[0] - GODEL_LR_CRITICAL)
    passed = mismatches == 0 and godel_err < 1e-10
    return CheckResult(
        "causality_classification",
        passed,
        godel_err,
        f"{mismatches}/200 sign-sample mismatches; Goedel l*r_c error {godel_err:.2e}",
    )


def check_flux_periodicity() -> CheckResult:
    """Spectrum at Phi_B equals spectrum at Phi_B + 2pi with m shifted by one."""
    p = GeometryParams(alpha=0.9, Omega=0.1)
    c = MonopoleConfig(N=12, g=1.5)
    phi0 = 0.7
    f0 = FluxConfig(Phi_B=phi0)
    f1 = FluxConfig(Phi_B=phi0 + 2.0 * math.pi)
    worst = 0.0
    for n in range(4):
        for m in _half_integers(5.5):
            a = solve_spectrum(QuantumNumbers(n=n, m=m), p, f0, c)
            b = solve_spectrum(QuantumNumbers(n=n, m=m + 1.0), p, f1, c)
            if not (a.valid and b.valid):
                worst = max(worst, 0.0 if a.valid == b.valid else math.inf)
                continue
            worst = max(
                worst,
                abs(a.eps_plus - b.eps_plus),
                abs(a.eps_minus - b.eps_minus),
            )
    return CheckResult(
        "flux_periodicity", worst < 1e-12, worst, f"max elementwise gap {worst:.3e}"
    )


def run_all(seed: int = 0, jobs: int | None = None) -> VerifyReport:
    """Run every check in fixed order; deterministic for fixed seed."""
    checks: list[CheckResult] = []
    checks.append(check_inertial_spectrum())
    checks.append(check_insulator_limit())
    grid_check, rows = check_oracle_grid(jobs=jobs)
    checks.append(grid_check)
    printed_check, max_q = check_printed_formula()
    checks.append(printed_check)
    checks.append(check_slow_rotation(seed))
    checks.append(check_byers_yang(seed))
    checks.append(check_geometry(seed))
    checks.append(check_causality(seed))
    checks.append(check_flux_periodicity())
    return VerifyReport(
        version=__version__,
        seed=seed,
        checks=tuple(checks),
        grid_rows=tuple(rows),
        max_printed_residual=max_q,
        passed=all(ch.passed for ch in checks),
    )
