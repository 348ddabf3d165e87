"""Command-line front end: geodesic traces, cut-time and Maxwell tables.

Every command writes a table, either CSV (header row, 17 significant
digits, ``inf`` for infinity) or a JSON object ``{"meta": ..., "rows": ...}``
where infinities become ``null`` together with a ``<column>_inf`` flag.

Exit codes: 0 ok, 1 symmetry residual at or above ``--tol``, 2 invalid
input, 3 I/O failure, 4 root-search failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass

import numpy as np

from .geodesic_engine import ExtendedCovector, exp_map, pose_distance, trace
from .maxwell import RootSearchError, cut_time_bound, maxwell_membership, p1_root, tt_of_energy
from .ode_oracle import ResolutionError, default_steps, integrate, integrate_many
from .phase_cylinder import (
    SEPARATRIX_BAND,
    STRATUM_TOL,
    Covector,
    EllipticCoords,
    StratumError,
    StratumId,
    classify,
    energy,
    from_elliptic,
)
from .sampling import random_extended
from .special_functions import K_MAX, EllipticDomainError, complete_K
from .symmetry_group import REFLECTIONS, reflect_covector, reflect_pose

EXIT_OK = 0
EXIT_RESIDUAL = 1
EXIT_INPUT = 2
EXIT_IO = 3
EXIT_ROOT = 4

COMMANDS = ("geodesic", "cut-time", "maxwell", "roots", "tt-curve", "symmetry-check", "oracle-diff")


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    gamma: float | None = None
    c: float | None = None
    energy: float | None = None
    phase: float = 0.0
    time: float | None = None
    samples: int | None = None
    format: str | None = None
    out: str | None = None
    tol: float | None = None
    seed: int = 0
    grid: str | None = None
    steps: int | None = None
    oracle: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InputError(f"unknown command {self.command!r}")
        if self.samples is not None and self.samples < 2:
            raise InputError("--samples must be at least 2")
        if self.tol is not None and not self.tol > 0.0:
            raise InputError("--tol must be positive")
        if self.format is not None and self.format not in ("csv", "json"):
            raise InputError("--format must be csv or json")


# ---------------------------------------------------------------- input


def covector_from_energy(E: float, fraction: float = 0.0) -> Covector:
    """Point at ``fraction`` of the way round the level curve ``{energy = E}``.

    On C1 and C2 the fraction is of the period ``4K`` of the elliptic
    coordinate; on the separatrix it is mapped to ``phi = logit(fraction)``,
    with ``fraction = 0`` selecting the saddle itself.
    """
    if not (math.isfinite(E) and math.isfinite(fraction)):
        raise InputError("energy and phase must be finite")
    if not 0.0 <= fraction < 1.0:
        raise InputError("--phase must lie in [0, 1)")
    if E < -1.0 - STRATUM_TOL:
        raise InputError(f"energy {E} is below the minimum -1")
    if abs(E + 1.0) <= STRATUM_TOL:
        return Covector(0.0, 0.0)
    if abs(E - 1.0) <= SEPARATRIX_BAND:
        if fraction == 0.0:
            return Covector(math.pi, 0.0)
        phi = math.log(fraction / (1.0 - fraction))
        return from_elliptic(EllipticCoords(StratumId.C3, phi, 1.0))
    if E < 1.0:
        k = math.sqrt(0.5 * (E + 1.0))
        chart = StratumId.C1
    else:
        k = math.sqrt(2.0 / (E + 1.0))
        chart = StratumId.C2
    if k > K_MAX:
        phi = 0.0 if fraction == 0.0 else math.log(fraction / (1.0 - fraction))
        return from_elliptic(EllipticCoords(StratumId.C3, phi, 1.0))
    u = fraction * 4.0 * complete_K(k)
    phi = u if chart is StratumId.C1 else k * u
    return from_elliptic(EllipticCoords(chart, phi, k))


def _covector(cfg: RunConfig) -> Covector:
    if cfg.gamma is not None or cfg.c is not None:
        if cfg.energy is not None:
            raise InputError("give either --gamma/--c or --energy, not both")
        if cfg.gamma is None or cfg.c is None:
            raise InputError("--gamma and --c must be given together")
        if not (math.isfinite(cfg.gamma) and math.isfinite(cfg.c)):
            raise InputError("covector components must be finite")
        return Covector(cfg.gamma, cfg.c)
    if cfg.energy is None:
        raise InputError("a covector is required: --gamma/--c or --energy [--phase]")
    return covector_from_energy(cfg.energy, cfg.phase)


def _time(cfg: RunConfig) -> float:
    if cfg.time is None:
        raise InputError("--time is required")
    if not (math.isfinite(cfg.time) and cfg.time > 0.0):
        raise InputError("--time must be finite and positive")
    return cfg.time


def parse_grid(text: str | None, default: tuple[float, float, int]) -> tuple[float, float, int]:
    if text is None:
        return default
    parts = text.split(":")
    if len(parts) != 3:
        raise InputError(f"--grid must be LO:HI:N, got {text!r}")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise InputError(f"bad --grid {text!r}: {exc}") from None
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi and n >= 2):
        raise InputError(f"--grid needs finite LO < HI and N >= 2, got {text!r}")
    return lo, hi, n


# --------------------------------------------------------------- output


def _csv_cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        if math.isnan(v):
            return "nan"
        return format(v, ".17g")
    if v is None:
        return ""
    return str(v)


def to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if not rows:
        return ""
    w = csv.writer(buf, lineterminator="\n")
    header = list(rows[0])
    w.writerow(header)
    for r in rows:
        w.writerow([_csv_cell(r[h]) for h in header])
    return buf.getvalue()


def _json_row(row: dict) -> dict:
    out = {}
    for key, v in row.items():
        if isinstance(v, (float, np.floating)) and not math.isfinite(v):
            out[key] = None
            if math.isinf(v):
                out[f"{key}_inf"] = True
        else:
            out[key] = v.item() if isinstance(v, np.generic) else v
    return out


def to_json(cfg: RunConfig, rows: list[dict]) -> str:
    doc = {"meta": {"command": cfg.command, "config": asdict(cfg)}, "rows": [_json_row(r) for r in rows]}
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def emit(cfg: RunConfig, rows: list[dict], default_format: str = "csv") -> None:
    fmt = cfg.format or default_format
    text = to_csv(rows) if fmt == "csv" else to_json(cfg, rows)
    if cfg.out is None or cfg.out == "-":
        sys.stdout.write(text)
        return
    with open(cfg.out, "w", newline="\n", encoding="utf-8") as fh:
        fh.write(text)


# ------------------------------------------------------------- commands


def cmd_geodesic(cfg: RunConfig) -> int:
    lam = _covector(cfg)
    nu = ExtendedCovector(lam, _time(cfg))
    samples = trace(nu, cfg.samples or 200)
    if cfg.oracle:
        s = np.array([smp.s for smp in samples[1:]])
        z = integrate_many(lam.gamma, lam.c, s, cfg.steps)
        oracle_pose = np.vstack([np.zeros((1, 3)), z[2:5].T])
        oracle_pose[:, 2] = np.angle(np.exp(1j * oracle_pose[:, 2]))
    rows = []
    for j, smp in enumerate(samples):
        x, y, th = smp.pose.as_tuple() if not cfg.oracle else oracle_pose[j]
        rows.append(
            {
                "s": smp.s,
                "x": float(x),
                "y": float(y),
                "theta": float(th),
                "gamma_s": smp.gamma_s,
                "c_s": smp.c_s,
                "curvature": smp.curvature,
                "cusp": smp.cusp,
            }
        )
    emit(cfg, rows)
    return EXIT_OK


def cmd_cut_time(cfg: RunConfig) -> int:
    lam = _covector(cfg)
    st = classify(lam)
    row = {
        "gamma": lam.gamma,
        "c": lam.c,
        "energy": energy(lam),
        "stratum": st.id.value,
        "t_bound": cut_time_bound(lam),
    }
    emit(cfg, [row])
    return EXIT_OK


def cmd_maxwell(cfg: RunConfig) -> int:
    lam = _covector(cfg)
    nu = ExtendedCovector(lam, _time(cfg))
    v = maxwell_membership(nu, cfg.tol or 1e-9)
    row = v.as_dict()
    row["notes"] = "; ".join(row["notes"])
    row = {"gamma": lam.gamma, "c": lam.c, "t": nu.t, **row}
    if row["root_index"] is None:
        row["root_index"] = ""
    emit(cfg, [row], default_format="json")
    return EXIT_OK


def cmd_roots(cfg: RunConfig) -> int:
    lo, hi, n = parse_grid(cfg.grid, (0.001, 0.999, 50))
    if lo < 0.0 or hi > K_MAX:
        raise InputError(f"k grid must lie in [0, {K_MAX}]")
    rows = []
    for k in np.linspace(lo, hi, n):
        k = float(k)
        K = complete_K(k)
        rows.append({"k": k, "K": K, "p11": p1_root(1, k), "two_K": 2.0 * K})
    emit(cfg, rows)
    return EXIT_OK


def energy_grid(lo: float, hi: float, n: int) -> list[float]:
    """Log-spaced grid in ``E + 1``; ``E = 1`` appears once, as an exact cell."""
    if lo < -1.0:
        raise InputError("energy grid must start at E >= -1")
    start = lo + 1.0
    exact_min = start == 0.0
    if exact_min:
        start = min(1e-6, 1e-3 * (hi + 1.0))
    pts = list(-1.0 + np.geomspace(start, hi + 1.0, n - 1 if exact_min else n))
    if exact_min:
        pts[0:0] = [-1.0]
    pts = [e for e in pts if e == -1.0 or abs(e - 1.0) > SEPARATRIX_BAND]
    if lo < 1.0 < hi:
        pts.append(1.0)
        pts.sort()
    return pts


def cmd_tt_curve(cfg: RunConfig) -> int:
    lo, hi, n = parse_grid(cfg.grid, (-1.0, 100.0, 200))
    rows = [{"E": E, "t": tt_of_energy(E)} for E in energy_grid(lo, hi, n)]
    emit(cfg, rows)
    return EXIT_OK


def symmetry_residuals(n: int, seed: int, t_max: float = 10.0) -> dict[int, float]:
    """Max commutation residual per reflection over ``n`` random arguments."""
    rng = np.random.default_rng(seed)
    nus = [random_extended(rng, t_max=t_max) for _ in range(n)]
    worst = {i: 0.0 for i in REFLECTIONS}
    for nu in nus:
        q = exp_map(nu)
        for i in REFLECTIONS:
            r = pose_distance(reflect_pose(i, q), exp_map(reflect_covector(i, nu)))
            worst[i] = max(worst[i], r)
    return worst


def cmd_symmetry_check(cfg: RunConfig) -> int:
    tol = cfg.tol or 1e-8
    worst = symmetry_residuals(cfg.samples or 50, cfg.seed, cfg.time or 10.0)
    rows = [{"reflection": i, "max_residual": r} for i, r in worst.items()]
    rows.append({"reflection": "all", "max_residual": max(worst.values())})
    emit(cfg, rows)
    return EXIT_OK if max(worst.values()) < tol else EXIT_RESIDUAL


def cmd_oracle_diff(cfg: RunConfig) -> int:
    lam = _covector(cfg)
    t = _time(cfg)
    steps = cfg.steps or default_steps(t)
    q = exp_map(ExtendedCovector(lam, t))
    z = integrate(lam, t, steps)
    dx, dy = abs(q.x - z.x), abs(q.y - z.y)
    dth = abs(math.remainder(q.theta - z.theta, 2.0 * math.pi))
    row = {"t": t, "steps": steps, "dx": dx, "dy": dy, "dtheta": dth, "max": max(dx, dy, dth)}
    emit(cfg, [row])
    return EXIT_OK


HANDLERS = {
    "geodesic": cmd_geodesic,
    "cut-time": cmd_cut_time,
    "maxwell": cmd_maxwell,
    "roots": cmd_roots,
    "tt-curve": cmd_tt_curve,
    "symmetry-check": cmd_symmetry_check,
    "oracle-diff": cmd_oracle_diff,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--gamma", type=float, help="initial gamma")
    common.add_argument("--c", type=float, help="initial c")
    common.add_argument("--energy", type=float, help="pendulum energy E (alternative to --gamma/--c)")
    common.add_argument("--phase", type=float, default=0.0, help="fraction in [0, 1) along the level curve of E")
    common.add_argument("--time", type=float, help="geodesic length t")
    common.add_argument("--samples", type=int, help="number of samples")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--out", help="output path (default stdout)")
    common.add_argument("--tol", type=float)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--grid", help="LO:HI:N")
    common.add_argument("--steps", type=int, help="RK4 steps for oracle modes")
    common.add_argument("--oracle", action="store_true", help="geodesic: take poses from the RK4 integrator")

    parser = argparse.ArgumentParser(prog="se2geodesic", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "geodesic": "sample a geodesic: s, x, y, theta, gamma_s, c_s, curvature, cusp",
        "cut-time": "cut-time bound t(lambda) and stratum",
        "maxwell": "Maxwell strata membership of (lambda, t)",
        "roots": "K(k), p1^1(k), 2K(k) over a k grid",
        "tt-curve": "t(E) over a log-spaced energy grid",
        "symmetry-check": "max commutation residual of the seven reflections",
        "oracle-diff": "closed form minus RK4 at the endpoint",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(**vars(args))
        return HANDLERS[cfg.command](cfg)
    except RootSearchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ROOT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (InputError, StratumError, EllipticDomainError, ResolutionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
