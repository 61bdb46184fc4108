"""Violation probability w over (C, theta) with the optimal ridge.

Writes surface.csv and surface.ridge.csv into the output directory.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass
from pathlib import Path

from hardy_chsh.cli import RunConfig, cmd_scan, emit, parse_grid


@dataclass(frozen=True)
class SurfaceConfig:
    out_dir: Path = Path("results")
    concurrence: str = "0:1:201"
    theta: str = "0:pi:181"


def run(cfg: SurfaceConfig) -> Path:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    path = cfg.out_dir / "surface.csv"
    run_cfg = RunConfig("scan", parse_grid(cfg.concurrence), parse_grid(cfg.theta), output_path=str(path))
    emit(run_cfg, cmd_scan(run_cfg))
    return path


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", type=Path, default=SurfaceConfig.out_dir)
    ap.add_argument("--concurrence", default=SurfaceConfig.concurrence)
    ap.add_argument("--theta", default=SurfaceConfig.theta)
    a = ap.parse_args()
    print(run(SurfaceConfig(a.out_dir, a.concurrence, a.theta)))
