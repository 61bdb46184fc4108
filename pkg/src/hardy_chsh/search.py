"""Derivative-free 1D maximization: grid bracketing plus golden-section refinement."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0  # 1/phi
INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0  # 1/phi^2


@dataclass(frozen=True)
class LineMax:
    x: float
    fx: float
    evaluations: int
    width: float


def golden_section_max(f: Callable[[float], float], a: float, b: float, tol: float = 1e-10, max_iter: int = 200) -> LineMax:
    """Maximize a unimodal ``f`` on [a, b] until the bracket is narrower than ``tol``."""
    a, b = min(a, b), max(a, b)
    h = b - a
    c = a + INV_PHI2 * h
    d = a + INV_PHI * h
    fc, fd = f(c), f(d)
    evals = 2
    for _ in range(max_iter):
        if h <= tol:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            h *= INV_PHI
            c = a + INV_PHI2 * h
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            h *= INV_PHI
            d = a + INV_PHI * h
            fd = f(d)
        evals += 1
    x, fx = (c, fc) if fc >= fd else (d, fd)
    return LineMax(x, fx, evals, b - a)


def bracket_max(f: Callable[[float], float], a: float, b: float, n: int = 181) -> tuple[float, float, list[float]]:
    """Scan ``n`` equally spaced points and return the sub-interval around the best one."""
    xs = [a + (b - a) * i / (n - 1) for i in range(n)]
    ys = [f(x) for x in xs]
    i = max(range(n), key=ys.__getitem__)
    return xs[max(i - 1, 0)], xs[min(i + 1, n - 1)], ys


def maximize_1d(f: Callable[[float], float], a: float, b: float, n_grid: int = 181, tol: float = 1e-10) -> LineMax:
    lo, hi, _ = bracket_max(f, a, b, n_grid)
    res = golden_section_max(f, lo, hi, tol)
    return LineMax(res.x, res.fx, res.evaluations + n_grid, res.width)
