"""Command-line front end.

Every command builds a table (a header plus rows of plain values) or a
record and writes it as CSV or JSON.  Numbers are written with 17
significant digits so that identical configurations produce identical bytes.

Exit codes: 0 success, 1 bad configuration or unwritable output,
2 degenerate geometry, 3 failed verification.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import quantum as qm
from . import tolerances
from .constrained import optimize_constrained
from .construct import (
    build_frame,
    degeneracy_reason,
    frame_chsh,
    hardy_residuals,
    lengths,
    violation_probability,
    violation_probability_vector,
)
from .errors import ContractViolation, DegenerateDirection, DegenerateGeometry
from .geometry import EllipseGeometry, construction_points, lambda_length, rectangle_corners, w_from_tau, w_geometric
from .optimize import (
    ConstraintSubset,
    golden_ratio_report,
    optimize_hardy_numeric,
    q_opt,
    r_opt_closed,
    theta_opt,
    w_opt_closed,
)
from .search import golden_section_max
from .verify import run_all

EXIT_OK, EXIT_CONFIG, EXIT_DEGENERATE, EXIT_VERIFY = 0, 1, 2, 3

COMMANDS = ("probe", "scan", "optimize", "compare", "geometry", "verify")
DEFAULT_COMPARE = ("none", "qs", "qt,qs", "qs,rt", "all")
CIRCLE_SAMPLES = 256


class ConfigError(Exception):
    pass


class Degenerate(Exception):
    pass


# ---------------------------------------------------------------- config


_PI_TERM = re.compile(r"^([-+]?[0-9.eE+-]*?)\*?pi(?:/([0-9.eE+]+))?$")


def parse_number(text: str) -> float:
    """Float literal, optionally a multiple of pi such as ``2pi/3`` or ``pi/2``."""
    text = text.strip().lower()
    m = _PI_TERM.match(text)
    try:
        if m:
            coef = m.group(1)
            value = math.pi * (float(coef) if coef not in ("", "+", "-") else float(coef + "1"))
            return value / float(m.group(2)) if m.group(2) else value
        return float(text)
    except ValueError:
        raise ConfigError(f"not a number: {text!r}") from None


def parse_grid(text: str) -> tuple[float, ...]:
    """``v`` or ``min:max:n`` with min < max and n >= 2."""
    parts = text.split(":")
    if len(parts) == 1:
        return (parse_number(parts[0]),)
    if len(parts) != 3:
        raise ConfigError(f"grid must be 'v' or 'min:max:n', got {text!r}")
    lo, hi = parse_number(parts[0]), parse_number(parts[1])
    try:
        n = int(parts[2])
    except ValueError:
        raise ConfigError(f"grid count must be an integer, got {parts[2]!r}") from None
    if not lo < hi or n < 2:
        raise ConfigError(f"grid needs min < max and n >= 2, got {text!r}")
    return tuple(float(x) for x in np.linspace(lo, hi, n))


@dataclass
class RunConfig:
    command: str
    concurrence: tuple[float, ...] = ()
    theta: tuple[float, ...] = ()
    phi: float = 0.0
    subsets: tuple[ConstraintSubset, ...] = ()
    output_path: str | None = None
    format: str = "csv"
    seed: int = 0
    mode: str = "hardy"
    tolerances: tolerances.Tolerances = field(default_factory=tolerances.Tolerances)

    def single(self, name: str) -> float:
        values = getattr(self, name)
        if len(values) != 1:
            raise ConfigError(f"{self.command} needs a single --{name} value")
        return values[0]


_DEFAULT_GRIDS = {
    "probe": ("0.6", "2pi/3"),
    "scan": ("0:1:201", "0:pi:181"),
    "optimize": ("0.01:0.99:99", None),
    "compare": ("0:1:41", None),
    "geometry": ("0.6", "2pi/3"),
    "verify": (None, None),
}


def config_from_args(args: argparse.Namespace) -> RunConfig:
    c_default, th_default = _DEFAULT_GRIDS[args.command]
    c_text = args.concurrence or c_default
    th_text = args.theta or th_default
    concurrence = parse_grid(c_text) if c_text else ()
    for C in concurrence:
        if not 0.0 <= C <= 1.0:
            raise ConfigError(f"concurrence must lie in [0, 1], got {C!r}")
    if args.subset:
        texts = args.subset
    elif args.command == "compare":
        texts = list(DEFAULT_COMPARE)
    else:
        texts = ["all"]
    try:
        subsets = tuple(ConstraintSubset.parse(t) for t in texts)
        tol = tolerances.resolve(args.tol)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return RunConfig(
        command=args.command,
        concurrence=concurrence,
        theta=parse_grid(th_text) if th_text else (),
        phi=parse_number(args.phi),
        subsets=subsets,
        output_path=args.out,
        format=args.format,
        seed=args.seed,
        mode=args.mode,
        tolerances=tol,
    )


# ---------------------------------------------------------------- output


@dataclass
class Table:
    name: str
    header: list[str]
    rows: list[list[Any]]

    def records(self) -> list[dict[str, Any]]:
        return [dict(zip(self.header, row)) for row in self.rows]


def _cell(x: Any) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (float, np.floating)):
        return format(float(x) + 0.0, ".17g")  # folds -0.0
    return str(x)


def _json_value(x: Any) -> Any:
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else None
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, dict):
        return {k: _json_value(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, np.ndarray)):
        return [_json_value(v) for v in x]
    return x


def render_csv(table: Table) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.header)
    writer.writerows([_cell(x) for x in row] for row in table.rows)
    return buf.getvalue()


def render_json(obj: Any) -> str:
    return json.dumps(_json_value(obj), indent=2) + "\n"


def _sidecar(path: Path, name: str) -> Path:
    return path.with_name(f"{path.stem}.{name}{path.suffix}")


def emit(cfg: RunConfig, tables: list[Table], out=None) -> None:
    """Write the main table and any secondary ones.

    CSV: with ``--out`` secondary tables go to ``<stem>.<name>.csv`` next to
    the main file; on stdout they follow the main table after a ``# name``
    line.  JSON: one object keyed by table name (a bare list if single).
    """
    out = out or sys.stdout
    if cfg.format == "json":
        payload: Any = tables[0].records() if len(tables) == 1 else {t.name: t.records() for t in tables}
        _write(cfg.output_path, render_json(payload), out)
        return
    if cfg.output_path:
        _write(cfg.output_path, render_csv(tables[0]), out)
        for t in tables[1:]:
            _write(str(_sidecar(Path(cfg.output_path), t.name)), render_csv(t), out)
        return
    text = render_csv(tables[0]) + "".join(f"\n# {t.name}\n" + render_csv(t) for t in tables[1:])
    out.write(text)


def _write(path: str | None, text: str, out) -> None:
    if path is None:
        out.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise ConfigError(f"cannot write {path}: {exc.strerror}") from None


# ---------------------------------------------------------------- commands


def _vec_fields(prefix: str, v: np.ndarray) -> dict[str, float]:
    return {f"{prefix}_{axis}": float(x) for axis, x in zip("xyz", v)}


def cmd_probe(cfg: RunConfig) -> list[Table]:
    C, theta = cfg.single("concurrence"), cfg.single("theta")
    q = qm.spherical(theta, cfg.phi)
    reason = degeneracy_reason(q, C)
    if reason:
        raise Degenerate(reason)
    frame, hl = build_frame(q, C), lengths(q, C)
    tri = lambda_length(frame, hl)
    res = hardy_residuals(frame)
    record: dict[str, Any] = {"concurrence": C, "theta": theta, "phi": cfg.phi}
    for name in ("q", "r", "s", "t", "sk", "tk"):
        record.update(_vec_fields(name, getattr(frame, name)))
    record.update(
        xi=hl.xi,
        tau=hl.tau,
        **{"lambda": tri.lambda_},
        cos_gamma=tri.cos_gamma,
        w_oracle=violation_probability(q, C),
        w_vector=violation_probability_vector(frame),
        w_geometric=w_geometric(frame, hl),
        w_tau=w_from_tau(hl.tau, C),
        S=frame_chsh(frame),
        residual_qt=res.r1,
        residual_qs=res.r2,
        residual_rt=res.r3,
    )
    return [Table("probe", list(record), [list(record.values())])]


SCAN_HEADER = ["concurrence", "theta", "phi", "w", "S", "xi", "tau", "lambda", "degenerate"]


def _scan_row(C: float, theta: float, phi: float) -> list[Any]:
    """One scan row; degenerate points keep whatever is computable and report w = 0."""
    q = qm.spherical(theta, phi)
    degenerate = degeneracy_reason(q, C) is not None
    try:
        frame, hl = build_frame(q, C), lengths(q, C)
    except DegenerateDirection:
        return [C, theta, phi, 0.0, 2.0, math.nan, math.nan, math.nan, True]
    S = frame_chsh(frame)
    w = 0.0 if degenerate else (S - 2.0) / 4.0
    return [C, theta, phi, w, S, hl.xi, hl.tau, lambda_length(frame, hl).lambda_, degenerate]


def cmd_scan(cfg: RunConfig) -> list[Table]:
    rows, ridge = [], []
    for C in cfg.concurrence:
        block = [_scan_row(C, th, cfg.phi) for th in cfg.theta]
        rows.extend(block)
        best = max(block, key=lambda r: r[3])
        ridge.append([C, best[1], best[3], theta_opt(C) if C > 0.0 else math.pi, w_opt_closed(C)])
    return [
        Table("scan", SCAN_HEADER, rows),
        Table("ridge", ["concurrence", "theta_argmax", "w_max", "theta_opt", "w_opt"], ridge),
    ]


OPT_HEADER = [
    "concurrence",
    "w_opt_closed",
    "w_opt_numeric",
    "theta_opt",
    "theta_numeric",
    "q_x",
    "q_y",
    "q_z",
    "r_x",
    "r_y",
    "r_z",
    "tau_over_xi",
    "twominus_tau_over_tau",
    "degenerate",
]


def _numeric_w(C: float) -> float:
    return optimize_hardy_numeric(C).best_value if 0.0 < C < 1.0 else 0.0


def cmd_optimize(cfg: RunConfig) -> list[Table]:
    rows = []
    for C in cfg.concurrence:
        if 0.0 < C < 1.0:
            res = optimize_hardy_numeric(C)
            q, r = q_opt(C, cfg.phi), r_opt_closed(C, cfg.phi)
            ratios = golden_ratio_report(C)
            rows.append([C, w_opt_closed(C), res.best_value, theta_opt(C), float(res.argmax[0]), *q, *r, *ratios, False])
        else:
            nan = math.nan
            rows.append([C, w_opt_closed(C), 0.0, theta_opt(C), nan, *[nan] * 6, nan, nan, True])
    tables = [Table("optimize", OPT_HEADER, rows)]
    if len(cfg.concurrence) > 1:
        grid = cfg.concurrence
        i = max(range(len(rows)), key=lambda k: rows[k][2])
        lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
        best = golden_section_max(_numeric_w, lo, hi, 1e-9)
        tables.append(Table("global", ["C_opt", "w_max", "w_max_closed"], [[best.x, best.fx, w_opt_closed(best.x)]]))
    return tables


COMPARE_HEADER = ["concurrence", "subset", "S_opt", "converged", "multistart_spread"]


def cmd_compare(cfg: RunConfig) -> list[Table]:
    rows = []
    for C in cfg.concurrence:
        for subset in cfg.subsets:
            res = optimize_constrained(C, subset, seed=cfg.seed)
            rows.append([C, subset.label, res.best_value, res.converged, res.multistart_spread])
    return [Table("compare", COMPARE_HEADER, rows)]


GEOMETRY_HEADER = ["series", "label", "x", "z"]


def cmd_geometry(cfg: RunConfig) -> list[Table]:
    C = cfg.single("concurrence")
    if not 0.0 < C < 1.0:
        raise Degenerate("separable state" if C <= 0.0 else "maximally entangled")
    ellipse = EllipseGeometry.for_concurrence(C)
    rows: list[list[Any]] = [["ellipse", i, x, z] for i, (x, z) in enumerate(ellipse.sample())]
    ang = 2.0 * np.pi * np.arange(CIRCLE_SAMPLES) / CIRCLE_SAMPLES
    rows += [["circle", i, math.cos(a), math.sin(a)] for i, a in enumerate(ang)]
    if cfg.mode == "rectangle":
        rows += [["rectangle", i, x, z] for i, (x, z) in enumerate(rectangle_corners(C))]
        rows += [["point", "F_u", 0.0, ellipse.focal_upper[2]], ["point", "F_l", 0.0, ellipse.focal_lower[2]]]
        return [Table("geometry", GEOMETRY_HEADER, rows)]
    theta = cfg.single("theta")
    q = qm.spherical(theta, cfg.phi)
    reason = degeneracy_reason(q, C)
    if reason:
        raise Degenerate(reason)
    pts = construction_points(build_frame(q, C), lengths(q, C), cfg.phi)
    rows += [["point", name, x, z] for name, (x, z) in pts.items()]
    return [Table("geometry", GEOMETRY_HEADER, rows)]


VERIFY_HEADER = ["suite", "cases", "failures", "max_deviation", "tolerance"]


def cmd_verify(cfg: RunConfig) -> tuple[list[dict[str, Any]], bool]:
    results = run_all(cfg.tolerances, cfg.seed)
    return [r.as_dict() for r in results], all(r.passed for r in results)


# ---------------------------------------------------------------- entry


class _Parser(argparse.ArgumentParser):
    """Config mistakes exit with 1 instead of argparse's 2, which means degenerate here."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-c", "--concurrence", help="value or min:max:n")
    common.add_argument("--theta", help="polar angle of q: value or min:max:n (pi allowed, e.g. 2pi/3)")
    common.add_argument("--phi", default="0", help="azimuth of q")
    common.add_argument("--subset", action="append", help="none|qt|qs|rt|qt,qs|qs,rt|qt,rt|all; repeatable")
    common.add_argument("--out", help="output file (default stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", help=f"tolerance override, same syntax as {tolerances.ENV_VAR}")
    common.add_argument("--mode", choices=("hardy", "rectangle"), default="hardy", help="geometry figure")

    parser = _Parser(prog="hardy-chsh", description="Hardy nonlocality and constrained CHSH optimization")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "probe": "all quantities for one measurement setting",
        "scan": "w over a (C, theta) grid plus the optimal ridge",
        "optimize": "closed-form and numeric Hardy optimum per C",
        "compare": "optimal CHSH value under constraint subsets",
        "geometry": "plot-ready points of the ellipse construction",
        "verify": "run every invariant suite",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


RUNNERS = {
    "probe": cmd_probe,
    "scan": cmd_scan,
    "optimize": cmd_optimize,
    "compare": cmd_compare,
    "geometry": cmd_geometry,
}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    args = build_parser().parse_args(argv)
    out = out or sys.stdout
    try:
        cfg = config_from_args(args)
        if cfg.command == "verify":
            report, ok = cmd_verify(cfg)
            _write(cfg.output_path, render_json(report), out)
            if not ok:
                print("verification failed", file=sys.stderr)
            return EXIT_OK if ok else EXIT_VERIFY
        emit(cfg, RUNNERS[cfg.command](cfg), out)
    except (ConfigError, ContractViolation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (Degenerate, DegenerateGeometry, DegenerateDirection) as exc:
        print(f"degenerate: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
