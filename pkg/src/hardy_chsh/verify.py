"""Invariant suites run by ``hardy-chsh verify``.

Each suite draws its cases from a seeded generator, measures the largest
deviation from the expected identity and counts cases above its tolerance.
Tolerances come from the three tiers in :mod:`hardy_chsh.tolerances`, so an
over-tight override makes the suites fail loudly.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable, Iterable

import numpy as np

from . import quantum as qm
from .constrained import optimize_constrained
from .construct import (
    build_frame,
    frame_chsh,
    hardy_residuals,
    is_degenerate,
    lengths,
    violation_probability,
    violation_probability_vector,
)
from .geometry import lambda_length, w_from_tau, w_geometric
from .optimize import (
    GOLDEN_RATIO,
    ConstraintSubset,
    chsh_theta_closed,
    golden_ratio_report,
    optimal_concurrence,
    optimize_hardy_numeric,
    taylor_checks,
    two_constraint_closed,
    w_fixed_q_x,
    w_opt_closed,
)
from .tolerances import Tolerances


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    cases: int
    failures: int
    max_deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def as_dict(self) -> dict:
        return asdict(self)


def _tally(name: str, deviations: Iterable[float], tol: float) -> SuiteResult:
    devs = [float(d) for d in deviations]
    bad = sum(1 for d in devs if not d <= tol)
    return SuiteResult(name, len(devs), bad, max(devs, default=0.0), tol)


def _random_points(rng: np.random.Generator, n: int) -> list[tuple[np.ndarray, float]]:
    pts = []
    while len(pts) < n:
        C = float(rng.uniform(0.01, 0.99))
        v = rng.normal(size=3)
        q = v / np.linalg.norm(v)
        if math.hypot(q[0], q[1]) > 1e-3:
            pts.append((q, C))
    return pts


def state_quantities(tol: Tolerances, rng: np.random.Generator) -> SuiteResult:
    devs = []
    for C in np.linspace(0.0, 1.0, 21):
        psi = qm.build_state(C)
        devs.append(np.abs(qm.bloch_vector_oracle(psi, "A") - qm.bloch_vector(C)).max())
        devs.append(np.abs(qm.correlation_matrix_oracle(psi) - qm.correlation_matrix(C)).max())
    return _tally("state_quantities", devs, tol.algebraic)


def hardy_conditions(tol: Tolerances, rng: np.random.Generator) -> SuiteResult:
    devs = []
    for q, C in _random_points(rng, 200):
        frame = build_frame(q, C)
        devs.append(hardy_residuals(frame).max())
        devs.append(abs(violation_probability(q, C) - violation_probability_vector(frame)))
    return _tally("hardy_conditions", devs, tol.chained)


def three_routes(tol: Tolerances, rng: np.random.Generator) -> SuiteResult:
    devs = []
    for q, C in _random_points(rng, 200):
        frame, hl = build_frame(q, C), lengths(q, C)
        w = violation_probability(q, C)
        devs.append(abs(w - w_geometric(frame, hl)))
        devs.append(abs(w - w_from_tau(hl.tau, C)))
    return _tally("three_routes", devs, tol.chained)


def triangle(tol: Tolerances, rng: np.random.Generator) -> SuiteResult:
    devs = []
    for q, C in _random_points(rng, 200):
        frame, hl = build_frame(q, C), lengths(q, C)
        tri = lambda_length(frame, hl)
        a = qm.bloch_vector(C)
        devs.append(abs(tri.lambda_ - hl.xi * tri.cos_gamma))
        devs.append(float(np.linalg.norm(np.cross(-frame.sk - a, -frame.tk - a))))
        devs.append(abs(float(q @ (frame.sk - frame.tk)) - (hl.xi + hl.tau)))
    return _tally("triangle", devs, tol.chained)


def degeneracy(tol: Tolerances, rng: np.random.Generator) -> SuiteResult:
    devs = []
    for C in (0.0, 1.0):
        for _ in range(50):
            v = rng.normal(size=3)
            devs.append(abs(violation_probability(v / np.linalg.norm(v), C)))
    for C in np.linspace(0.0, 1.0, 21):
        for z in (1.0, -1.0):
            q = np.array([0.0, 0.0, z])
            devs.append(abs(violation_probability(q, C)) if is_degenerate(q, C) else math.inf)
    return _tally("degeneracy", devs, tol.chained)


def closed_form_optimum(tol: Tolerances, rng: np.random.Generator) -> SuiteResult:
    devs = [abs(w_opt_closed(optimal_concurrence()) - (5.0 * math.sqrt(5.0) - 11.0) / 2.0)]
    for C in np.linspace(0.02, 0.98, 25):
        devs.append(abs(optimize_hardy_numeric(float(C)).best_value - w_opt_closed(C)))
        devs.append(abs(violation_probability(qm.X_HAT, C) - w_fixed_q_x(C)))
    return _tally("closed_form_optimum", devs, tol.optimizer)


def golden_ratio(tol: Tolerances, rng: np.random.Generator) -> SuiteResult:
    a, b = golden_ratio_report(optimal_concurrence())
    devs = [abs(a - GOLDEN_RATIO), abs(b - GOLDEN_RATIO)]
    for C in rng.uniform(0.05, 0.95, 20):
        a, b = golden_ratio_report(float(C))
        devs.append(abs(a - b) / b)
    return _tally("golden_ratio", devs, tol.chained)


def chsh_theta(tol: Tolerances, rng: np.random.Generator) -> SuiteResult:
    devs = []
    for C in np.linspace(0.0, 1.0, 21)[1:-1]:
        for th in np.linspace(0.0, math.pi, 19)[1:-1]:
            S = frame_chsh(build_frame(qm.spherical(th, float(rng.uniform(0, 2 * math.pi))), float(C)))
            devs.append(abs(chsh_theta_closed(th, float(C)) - S))
    return _tally("chsh_theta", devs, tol.optimizer)


def constrained(tol: Tolerances, rng: np.random.Generator) -> SuiteResult:
    # scaled tiers: S-level optimizer targets are 1e-8 and 1e-7 by default
    none, two, hardy = ConstraintSubset(), ConstraintSubset(True, True, False), ConstraintSubset(True, True, True)
    seed = int(rng.integers(0, 2**31))
    devs = []
    for C in (0.3, 0.6, 0.9):
        devs.append(abs(optimize_constrained(C, none, seed=seed).best_value - 2 * math.sqrt(1 + C * C)) / 10)
        devs.append(abs(optimize_constrained(C, two, seed=seed).best_value - two_constraint_closed(C)) / 100)
        devs.append(abs(optimize_constrained(C, hardy, seed=seed).best_value - 2 - 4 * w_opt_closed(C)) / 10)
    return _tally("constrained", devs, tol.optimizer)


def taylor(tol: Tolerances, rng: np.random.Generator) -> SuiteResult:
    devs = []
    for C, eps in rng.uniform(1e-3, 0.05, size=(20, 2)):
        rep = taylor_checks(float(C), float(eps))
        k = max(rep.k_opt_small, rep.k_fixed_small, rep.k_opt_eps, rep.k_fixed_eps)
        devs.append(max(k - rep.k_bound, 0.0))
    return _tally("taylor", devs, tol.algebraic)


SUITES: dict[str, Callable[[Tolerances, np.random.Generator], SuiteResult]] = {
    f.__name__: f
    for f in (
        state_quantities,
        hardy_conditions,
        three_routes,
        triangle,
        degeneracy,
        closed_form_optimum,
        golden_ratio,
        chsh_theta,
        constrained,
        taylor,
    )
}


def run_all(tol: Tolerances, seed: int = 0) -> list[SuiteResult]:
    """Run every suite with its own generator derived from ``seed``."""
    children = np.random.SeedSequence(seed).spawn(len(SUITES))
    return [suite(tol, np.random.default_rng(ss)) for suite, ss in zip(SUITES.values(), children)]
