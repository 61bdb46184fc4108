"""CHSH maximization under any subset of the three Hardy conditions.

Each active condition turns one measurement vector into a function of
another (t and s of q, r of t).  The remaining free vectors are optimized
numerically, two angles each, except that free vectors on one side which do
not feed a constraint are maximized in closed form: a free unit vector ``v``
entering S only as ``v . c`` contributes ``|c|``.  One azimuth is pinned
because S is invariant under rotating A-side vectors by phi about z and
B-side vectors by -phi.

The objective runs many thousands of times per search, so it works on plain
float tuples instead of numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import minimize
from scipy.stats import qmc

from . import quantum as qm
from .optimize import ConstraintSubset, OptimizationResult
from .search import golden_section_max

Vec = tuple[float, float, float]

DEFAULT_STARTS = 32
STALL = 1e-10
MAX_SWEEPS = 25
_PENALTY = -10.0
_Z: Vec = (0.0, 0.0, 1.0)


class _Degenerate(Exception):
    pass


def _unit(v: Vec) -> Vec:
    n = math.sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2])
    if n <= 1e-14:
        raise _Degenerate
    return (v[0] / n, v[1] / n, v[2] / n)


def _unit_or_z(v: Vec) -> Vec:
    try:
        return _unit(v)
    except _Degenerate:
        return _Z


def _dot(u: Vec, v: Vec) -> float:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def _sph(theta: float, phi: float) -> Vec:
    st = math.sin(theta)
    return (st * math.cos(phi), st * math.sin(phi), math.cos(theta))


@dataclass(frozen=True)
class Parametrization:
    """How a constraint subset maps the search vector onto (q, r, s, t)."""

    subset: ConstraintSubset
    numeric: tuple[str, ...]
    eliminated: tuple[str, ...]
    derived: tuple[str, ...]

    @property
    def dim(self) -> int:
        return max(2 * len(self.numeric) - 1, 0)

    @classmethod
    def for_subset(cls, subset: ConstraintSubset) -> "Parametrization":
        derived = tuple(n for n, on in (("t", subset.qt), ("s", subset.qs), ("r", subset.rt)) if on)
        sources = set()
        if subset.qt or subset.qs:
            sources.add("q")
        if subset.rt:
            sources.add("t")
        free = [n for n in ("q", "t", "s", "r") if n not in derived]
        candidates = [n for n in free if n not in sources]
        side_a = [n for n in candidates if n in ("q", "r")]
        side_b = [n for n in candidates if n in ("s", "t")]
        eliminated = side_a if len(side_a) >= len(side_b) else side_b
        numeric = tuple(n for n in free if n not in eliminated)
        return cls(subset, numeric, tuple(eliminated), derived)


def frame_vectors(x: np.ndarray, C: float, param: Parametrization) -> dict[str, Vec]:
    """Measurement vectors for search point ``x``.  Raises ``_Degenerate`` on a null direction."""
    b = math.sqrt(max(1.0 - C * C, 0.0))
    vec: dict[str, Vec] = {}
    i = 0
    for k, name in enumerate(param.numeric):
        if k == 0:
            vec[name] = _sph(x[0], 0.0)
            i = 1
        else:
            vec[name] = _sph(x[i], x[i + 1])
            i += 2
    sub = param.subset
    if sub.qt:
        q = vec["q"]
        vec["t"] = _unit((C * q[0], -C * q[1], -(q[2] + b)))
    if sub.qs:
        q = vec["q"]
        vec["s"] = _unit((-C * q[0], C * q[1], q[2] - b))
    if sub.rt:
        t = vec["t"]
        vec["r"] = _unit((-C * t[0], C * t[1], t[2] - b))
    if param.eliminated:
        if param.eliminated[0] in ("q", "r"):
            s, t = vec["s"], vec["t"]
            diff = (-C * (s[0] - t[0]), C * (s[1] - t[1]), s[2] - t[2])
            summ = (-C * (s[0] + t[0]), C * (s[1] + t[1]), s[2] + t[2])
            if "q" in param.eliminated:
                vec["q"] = _unit_or_z(diff)
            if "r" in param.eliminated:
                vec["r"] = _unit_or_z(summ)
        else:
            q, r = vec["q"], vec["r"]
            summ = (-C * (q[0] + r[0]), C * (q[1] + r[1]), q[2] + r[2])
            diff = (-C * (r[0] - q[0]), C * (r[1] - q[1]), r[2] - q[2])
            if "s" in param.eliminated:
                vec["s"] = _unit_or_z(summ)
            if "t" in param.eliminated:
                vec["t"] = _unit_or_z(diff)
    return vec


def _chsh(vec: dict[str, Vec], C: float) -> float:
    q, r, s, t = vec["q"], vec["r"], vec["s"], vec["t"]
    ks = (-C * s[0], C * s[1], s[2])
    kt = (-C * t[0], C * t[1], t[2])
    return _dot(q, ks) - _dot(q, kt) + _dot(r, ks) + _dot(r, kt)


def objective(C: float, subset: ConstraintSubset) -> tuple[Callable[[np.ndarray], float], Parametrization]:
    """S as a function of the search vector for ``subset``."""
    param = Parametrization.for_subset(subset)

    def f(x: np.ndarray) -> float:
        try:
            return _chsh(frame_vectors(x, C, param), C)
        except _Degenerate:
            return _PENALTY

    return f, param


def _starts(dim: int, n: int, seed: int) -> np.ndarray:
    pts = qmc.Halton(d=dim, scramble=True, seed=seed).random(n)
    scale = np.array([math.pi] + [math.pi if j % 2 == 0 else 2.0 * math.pi for j in range(dim - 1)])
    return pts * scale


def _nelder_mead(f: Callable[[np.ndarray], float], x0: np.ndarray, step: float):
    dim = len(x0)
    simplex = np.vstack([x0] + [x0 + step * np.eye(dim)[j] for j in range(dim)])
    return minimize(
        lambda x: -f(x),
        x0,
        method="Nelder-Mead",
        options={"initial_simplex": simplex, "xatol": 1e-11, "fatol": 1e-15, "maxiter": 4000 * dim, "maxfev": 8000 * dim},
    )


def optimize_constrained(C: float, subset: ConstraintSubset, seeds: int = DEFAULT_STARTS, seed: int = 0) -> OptimizationResult:
    """Maximize the CHSH value over all settings obeying the conditions in ``subset``.

    Deterministic multi-start Nelder-Mead from scrambled Halton points
    (``seed`` fixes the scrambling), followed by restart sweeps from the best
    point until a sweep improves S by less than 1e-10.
    """
    C = qm.check_concurrence(C)
    if seeds < 1:
        raise ValueError("need at least one start")
    f, param = objective(C, subset)
    if param.dim == 0:
        x = np.zeros(0)
        best, iters, spread, converged = f(x), 0, 0.0, True
    else:
        local = []
        iters = 0
        for x0 in _starts(param.dim, seeds, seed):
            res = _nelder_mead(f, x0, 0.3)
            iters += res.nit
            local.append((-res.fun, res.x))
        values = [v for v, _ in local]
        spread = max(values) - min(values)
        best, x = max(local, key=lambda item: item[0])
        converged = False
        step = 1e-2
        for _ in range(MAX_SWEEPS):
            res = _nelder_mead(f, x, step)
            iters += res.nit
            gain = -res.fun - best
            if gain > 0.0:
                best, x = -res.fun, res.x
            step = max(step * 0.3, 1e-6)
            if gain < STALL:
                converged = True
                break
    vec = frame_vectors(x, C, param)
    return OptimizationResult(
        best_value=float(best),
        argmax=np.asarray(x, dtype=float),
        subset=subset,
        iterations=int(iters),
        converged=converged,
        multistart_spread=float(spread),
        concurrence=C,
        objective="S",
        vectors={k: np.array(v) for k, v in vec.items()},
    )


def maximize_over_concurrence(
    subset: ConstraintSubset,
    lo: float,
    hi: float,
    n_grid: int = 11,
    tol: float = 1e-4,
    seeds: int = DEFAULT_STARTS,
    seed: int = 0,
) -> tuple[float, float]:
    """Concurrence maximizing the constrained optimum, and the optimum there.

    Coarse grid over [lo, hi] followed by golden-section refinement; assumes
    the curve is unimodal around the best grid point.
    """
    cache: dict[float, float] = {}

    def s_opt(C: float) -> float:
        if C not in cache:
            cache[C] = optimize_constrained(C, subset, seeds, seed).best_value
        return cache[C]

    xs = np.linspace(lo, hi, n_grid)
    ys = [s_opt(float(c)) for c in xs]
    i = int(np.argmax(ys))
    a, b = float(xs[max(i - 1, 0)]), float(xs[min(i + 1, n_grid - 1)])
    res = golden_section_max(s_opt, a, b, tol)
    if ys[i] > res.fx:
        return float(xs[i]), ys[i]
    return res.x, res.fx
