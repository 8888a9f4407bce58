"""Command-line front end.

Subcommands
-----------
spectrum   energy levels over (n, m) windows, optionally swept along one axis
current    persistent charge current and its finite-difference cross-check
causality  closed-timelike-curve classification of the rotating universe family
oracle     closed-form versus shooting-solver agreement grid
verify     full self-check suite; exit status 2 if any check fails

Configuration is a flat key set (RunConfig).  Precedence, lowest to highest:
built-in defaults, --config file, --preset bundle, explicit flags.  Exit codes:
0 success, 1 usage or configuration error, 2 verification failure.

Output is deterministic: identical inputs (including --seed) produce
byte-identical reports.  CSV uses '.' decimals and 17 significant digits;
the structured format is JSON carrying the config, version, and rows.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import yaml

from . import __version__
from .causality import classify
from .gauge import FluxConfig, MonopoleConfig
from .geometry import DomainError, GeometryParams
from .observables import LevelSet, persistent_current
from .oracle import agreement_grid
from .spectrum import QuantumNumbers, RotationSingular, solve_spectrum
from .verify import VerifyReport, run_all

__all__ = ["RunConfig", "main"]

_PRESETS = {"c60": {"sites": 12, "alpha": 1.0, "radius": 1.0}}
_SWEEPABLE = ("alpha", "omega", "radius", "flux", "l2")


@dataclass(frozen=True)
class RunConfig:
    """One run: model point, level window, sweep, output, and seed."""

    alpha: float = 1.0
    omega: float = 0.0
    radius: float = 1.0
    flux: float = 0.0
    sites: int = 0
    l2: float = 0.5
    nmax: int = 3
    mmax: float = 3.5
    branch: str = "minus"
    sweep: str | None = None
    format: str = "csv"
    out: str | None = None
    seed: int = 0
    jobs: int | None = None

    def __post_init__(self) -> None:
        if self.alpha <= 0.0 or self.radius <= 0.0:
            raise ValueError("alpha and radius must be positive")
        if self.sites < 0 or self.sites % 4:
            raise ValueError("sites must be a non-negative multiple of 4")
        if self.nmax < 0:
            raise ValueError("nmax must be non-negative")
        if self.mmax < 0 or round(2 * self.mmax) != 2 * self.mmax:
            raise ValueError("mmax must be a non-negative half-integer")
        if self.branch not in ("plus", "minus"):
            raise ValueError("branch must be 'plus' or 'minus'")
        if self.format not in ("csv", "structured"):
            raise ValueError("format must be 'csv' or 'structured'")
        if self.sweep is not None:
            _parse_sweep(self.sweep)  # validate eagerly

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        unknown = set(data) - {f.name for f in dataclasses.fields(cls)}
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)


def _parse_sweep(text: str) -> tuple[str, list[float]]:
    parts = text.split(":")
    if len(parts) not in (4, 5):
        raise ValueError("sweep must be param:start:stop:count[:log]")
    param, start_s, stop_s, count_s = parts[:4]
    if param not in _SWEEPABLE:
        raise ValueError(f"sweep parameter must be one of {_SWEEPABLE}")
    start, stop, count = float(start_s), float(stop_s), int(count_s)
    if count < 1:
        raise ValueError("sweep count must be >= 1")
    if len(parts) == 5:
        if parts[4] != "log":
            raise ValueError("sweep modifier must be 'log'")
        if start <= 0.0 or stop <= 0.0:
            raise ValueError("log sweep requires positive endpoints")
        values = [
            start * (stop / start) ** (i / (count - 1)) if count > 1 else start
            for i in range(count)
        ]
    else:
        values = [
            start + (stop - start) * i / (count - 1) if count > 1 else start
            for i in range(count)
        ]
    return param, values


def _sweep_points(cfg: RunConfig) -> list[RunConfig]:
    if cfg.sweep is None:
        return [cfg]
    param, values = _parse_sweep(cfg.sweep)
    return [dataclasses.replace(cfg, **{param: v}) for v in values]


def _resolve_jobs(cfg: RunConfig) -> int:
    if cfg.jobs is not None:
        return max(1, cfg.jobs)
    env = os.environ.get("GODEL_C60_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise ValueError(f"GODEL_C60_JOBS must be an integer, got {env!r}") from exc
    return os.cpu_count() or 1


def _model(cfg: RunConfig) -> tuple[GeometryParams, FluxConfig, MonopoleConfig]:
    p = GeometryParams(alpha=cfg.alpha, Omega=cfg.omega, R=cfg.radius)
    f = FluxConfig(Phi_B=cfg.flux)
    c = MonopoleConfig(N=cfg.sites, g=cfg.sites / 8.0)
    return p, f, c


def _m_values(mmax: float) -> list[float]:
    out, m = [], -mmax
    while m <= mmax + 1e-9:
        out.append(m)
        m += 1.0
    return out


# ---------------------------------------------------------------------------
# row builders (module level so a process pool can pickle them)

SPECTRUM_COLUMNS = (
    "n", "m", "alpha", "Omega", "g", "Phi_B", "R",
    "eps_plus", "eps_minus", "valid", "discriminant", "residual",
)
CURRENT_COLUMNS = (
    "Phi_B", "I_analytic", "I_printed", "I_fd", "n_levels_used", "warnings",
)
CAUSALITY_COLUMNS = (
    "Omega", "l2", "causal_class", "curvature_class", "critical_radii",
)
ORACLE_COLUMNS = (
    "Omega", "alpha", "phi_frac", "m", "n", "branch",
    "lam_formula", "lam_oracle", "delta", "match_residual", "node_count", "status",
)
VERIFY_COLUMNS = ("check", "passed", "metric", "detail")


def _spectrum_rows(cfg_data: dict) -> list[dict]:
    cfg = RunConfig.from_dict(cfg_data)
    p, f, c = _model(cfg)
    rows = []
    for n in range(cfg.nmax + 1):
        for m in _m_values(cfg.mmax):
            base = {
                "n": n, "m": m, "alpha": cfg.alpha, "Omega": cfg.omega,
                "g": c.g, "Phi_B": cfg.flux, "R": cfg.radius,
            }
            try:
                res = solve_spectrum(QuantumNumbers(n=n, m=m), p, f, c)
            except RotationSingular:
                base.update(
                    eps_plus=math.nan, eps_minus=math.nan, valid=False,
                    discriminant=math.nan, residual=math.nan,
                )
                rows.append(base)
                continue
            if res.valid:
                base.update(
                    eps_plus=res.eps_plus,
                    eps_minus=res.eps_minus,
                    valid=True,
                    discriminant=res.discriminant,
                    residual=max(res.residual_plus, res.residual_minus),
                )
            else:
                base.update(
                    eps_plus=math.nan, eps_minus=math.nan, valid=False,
                    discriminant=res.discriminant, residual=math.nan,
                )
            rows.append(base)
    return rows


def _current_rows(cfg_data: dict) -> list[dict]:
    cfg = RunConfig.from_dict(cfg_data)
    p, f, c = _model(cfg)
    ls = LevelSet(n_max=cfg.nmax, m_window=(-cfg.mmax, cfg.mmax), branch=cfg.branch)
    r = persistent_current(ls, p, f, c)
    return [{
        "Phi_B": cfg.flux,
        "I_analytic": r.I_analytic,
        "I_printed": r.I_printed,
        "I_fd": r.I_fd,
        "n_levels_used": r.n_levels_used,
        "warnings": ";".join(r.warnings),
    }]


def _causality_rows(cfg_data: dict) -> list[dict]:
    cfg = RunConfig.from_dict(cfg_data)
    rep = classify(cfg.omega, cfg.l2)
    return [{
        "Omega": rep.Omega,
        "l2": rep.l2,
        "causal_class": rep.causal_class,
        "curvature_class": rep.curvature_class,
        "critical_radii": ";".join(format(r, ".17g") for r in rep.critical_radii),
    }]


_ROW_BUILDERS = {
    "spectrum": (_spectrum_rows, SPECTRUM_COLUMNS),
    "current": (_current_rows, CURRENT_COLUMNS),
    "causality": (_causality_rows, CAUSALITY_COLUMNS),
}


def _collect_rows(command: str, cfg: RunConfig) -> list[dict]:
    builder, _ = _ROW_BUILDERS[command]
    points = [pt.to_dict() for pt in _sweep_points(cfg)]
    jobs = _resolve_jobs(cfg)
    if jobs <= 1 or len(points) <= 1:
        chunks = [builder(pt) for pt in points]
    else:
        with ProcessPoolExecutor(max_workers=min(jobs, len(points))) as pool:
            chunks = list(pool.map(builder, points))  # map keeps sweep order
    return [row for chunk in chunks for row in chunk]


# ---------------------------------------------------------------------------
# serialization

def _fmt_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _render_csv(command: str, cfg: RunConfig, columns, rows, extra=None) -> str:
    lines = [f"# godel-c60 v{__version__} command={command} schema={command}-1"]
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt_cell(row[c]) for c in columns))
    for title, cols, table in extra or ():
        lines.append(f"# table={title}")
        lines.append(",".join(cols))
        for row in table:
            lines.append(",".join(_fmt_cell(row[c]) for c in cols))
    return "\n".join(lines) + "\n"


def _render_structured(command: str, cfg: RunConfig, columns, rows, extra=None) -> str:
    doc = {
        "schema": f"{command}-1",
        "version": __version__,
        "command": command,
        "config": cfg.to_dict(),
        "columns": list(columns),
        "rows": rows,
    }
    for title, cols, table in extra or ():
        doc[title] = {"columns": list(cols), "rows": table}
    return json.dumps(doc, indent=2, allow_nan=True) + "\n"


def _emit(command: str, cfg: RunConfig, columns, rows, extra=None) -> str:
    if cfg.format == "csv":
        text = _render_csv(command, cfg, columns, rows, extra)
    else:
        text = _render_structured(command, cfg, columns, rows, extra)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return text


# ---------------------------------------------------------------------------
# argument handling

class _Parser(argparse.ArgumentParser):
    """argparse defaults to exit code 2 on usage errors; reserve 2 for
    verification failures and use 1 instead."""

    def error(self, message: str) -> None:  # noqa: D401
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="godel-c60", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"godel-c60 {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("spectrum", "energy levels over quantum-number windows"),
        ("current", "persistent current with finite-difference cross-check"),
        ("causality", "closed-timelike-curve classification"),
        ("oracle", "closed form versus shooting solver agreement grid"),
        ("verify", "run the full self-check suite"),
    ):
        sp = sub.add_parser(name, help=help_text, description=help_text)
        sp.add_argument("--config", metavar="FILE", help="YAML file of RunConfig keys")
        sp.add_argument("--preset", choices=sorted(_PRESETS), help="named parameter bundle")
        sp.add_argument("--alpha", type=float, help="cone parameter")
        sp.add_argument("--omega", type=float, help="rotation rate")
        sp.add_argument("--radius", type=float, help="sphere radius R")
        sp.add_argument("--flux", type=float, help="threaded flux Phi_B")
        sp.add_argument("--sites", type=int, help="frustrated-site count (charge = sites/8)")
        sp.add_argument("--l2", type=float, help="vorticity-squared parameter l^2")
        sp.add_argument("--nmax", type=int, help="largest radial index n")
        sp.add_argument("--mmax", type=float, help="half-integer |m| window edge")
        sp.add_argument("--branch", choices=("plus", "minus"), help="energy branch for currents")
        sp.add_argument("--sweep", metavar="P:A:B:N[:log]", help="sweep one parameter")
        sp.add_argument("--out", metavar="FILE", help="write report here instead of stdout")
        sp.add_argument("--format", choices=("csv", "structured"), help="output format")
        sp.add_argument("--seed", type=int, help="seed for randomized checks")
        sp.add_argument("--jobs", type=int, help="worker processes (env GODEL_C60_JOBS)")
    return parser


def _load_config(args: argparse.Namespace) -> RunConfig:
    data: dict = {}
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            loaded = yaml.safe_load(fh) or {}
        if not isinstance(loaded, dict):
            raise ValueError("config file must hold a mapping")
        data.update(loaded)
    if args.preset:
        data.update(_PRESETS[args.preset])
    for key in (
        "alpha", "omega", "radius", "flux", "sites", "l2", "nmax",
        "mmax", "branch", "sweep", "out", "format", "seed", "jobs",
    ):
        value = getattr(args, key)
        if value is not None:
            data[key] = value
    return RunConfig.from_dict(data)


def _run_verify(cfg: RunConfig) -> int:
    report = run_all(seed=cfg.seed, jobs=_resolve_jobs(cfg))
    check_rows = [
        {"check": ch.name, "passed": ch.passed, "metric": ch.metric, "detail": ch.detail}
        for ch in report.checks
    ]
    disc_rows = [
        r.as_dict() for r in report.grid_rows if r.status not in ("ok", "skipped_subgap")
    ]
    extra = [
        ("oracle_discrepancies", ORACLE_COLUMNS, disc_rows),
        (
            "printed_formula",
            ("name", "value"),
            [{"name": "max_abs_Q_at_Omega_0.1", "value": report.max_printed_residual}],
        ),
        (
            "summary",
            ("name", "value"),
            [{"name": "all_checks_passed", "value": report.passed}],
        ),
    ]
    _emit("verify", cfg, VERIFY_COLUMNS, check_rows, extra)
    return 0 if report.passed else 2


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _load_config(args)
    except (ValueError, OSError, yaml.YAMLError) as exc:
        print(f"godel-c60: config error: {exc}", file=sys.stderr)
        return 1
    try:
        if args.command == "verify":
            return _run_verify(cfg)
        if args.command == "oracle":
            rows = [r.as_dict() for r in agreement_grid(jobs=_resolve_jobs(cfg))]
            _emit("oracle", cfg, ORACLE_COLUMNS, rows)
            return 0
        rows = _collect_rows(args.command, cfg)
        _emit(args.command, cfg, _ROW_BUILDERS[args.command][1], rows)
        return 0
    except (ValueError, DomainError, OSError) as exc:
        print(f"godel-c60: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
