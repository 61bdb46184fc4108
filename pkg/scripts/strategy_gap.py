"""Optimal versus fixed-q strategy: w_opt, w with q on the x axis, and their gap."""

from __future__ import annotations

import argparse
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from hardy_chsh.cli import Table, render_csv
from hardy_chsh.optimize import optimal_concurrence, w_fixed_q_x, w_opt_closed
from hardy_chsh.search import golden_section_max


@dataclass(frozen=True)
class GapConfig:
    out_dir: Path = Path("results")
    points: int = 201


def run(cfg: GapConfig) -> Path:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    for C in np.linspace(0.0, 1.0, cfg.points):
        w_opt, w_fix = w_opt_closed(C), w_fixed_q_x(C)
        rows.append([float(C), w_opt, w_fix, w_opt - w_fix])
    path = cfg.out_dir / "strategy_gap.csv"
    path.write_text(render_csv(Table("gap", ["concurrence", "w_opt", "w_fixed_q", "delta_w"], rows)))
    gap = golden_section_max(lambda c: w_opt_closed(c) - w_fixed_q_x(c), 0.5, 0.95, 1e-12)
    print(f"max delta_w {gap.fx:.7f} at C = {gap.x:.5f}; w_opt peak {w_opt_closed(optimal_concurrence()):.9f}")
    return path


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", type=Path, default=GapConfig.out_dir)
    ap.add_argument("--points", type=int, default=GapConfig.points)
    a = ap.parse_args()
    print(run(GapConfig(a.out_dir, a.points)))
