"""Point sets for the ellipse construction at the optimum and the two-constraint rectangle."""

from __future__ import annotations

import argparse
import math
from dataclasses import dataclass
from pathlib import Path

from hardy_chsh.cli import RunConfig, cmd_geometry, emit
from hardy_chsh.optimize import theta_opt


@dataclass(frozen=True)
class FigureConfig:
    out_dir: Path = Path("results")
    concurrence: float = 0.6
    rectangle_concurrence: float = math.sqrt(3) / 2


def run(cfg: FigureConfig) -> list[Path]:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    jobs = [
        ("geometry_optimum.csv", RunConfig("geometry", (cfg.concurrence,), (theta_opt(cfg.concurrence),))),
        ("geometry_equator.csv", RunConfig("geometry", (cfg.concurrence,), (math.pi / 2,))),
        ("geometry_rectangle.csv", RunConfig("geometry", (cfg.rectangle_concurrence,), mode="rectangle")),
    ]
    paths = []
    for name, run_cfg in jobs:
        run_cfg.output_path = str(cfg.out_dir / name)
        emit(run_cfg, cmd_geometry(run_cfg))
        paths.append(Path(run_cfg.output_path))
    return paths


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", type=Path, default=FigureConfig.out_dir)
    ap.add_argument("--concurrence", type=float, default=FigureConfig.concurrence)
    a = ap.parse_args()
    for p in run(FigureConfig(a.out_dir, a.concurrence)):
        print(p)
