"""Closed-form Hardy optimum, optimal settings and the 1D numerical check."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import quantum as qm
from .construct import MeasurementFrame, build_frame, frame_from_angles, lengths, violation_probability_vector
from .errors import ContractViolation, DegenerateGeometry
from .search import golden_section_max, maximize_1d

GOLDEN_RATIO = (1.0 + math.sqrt(5.0)) / 2.0
TAYLOR_K_BOUND = 16.0


@dataclass(frozen=True)
class ConstraintSubset:
    """Which Hardy conditions are imposed on the measurement vectors.

    ``qt``: pr_QT(1,1) = 0, ``qs``: pr_Q|S(1|1) = 1, ``rt``: pr_T|R(1|1) = 1.
    """

    qt: bool = False
    qs: bool = False
    rt: bool = False

    @classmethod
    def parse(cls, text: str) -> "ConstraintSubset":
        text = text.strip().lower()
        if text == "none":
            return cls()
        if text == "all":
            return cls(True, True, True)
        names = {part.strip() for part in text.split(",") if part.strip()}
        unknown = names - {"qt", "qs", "rt"}
        if unknown or not names:
            raise ValueError(f"unknown constraint(s) {sorted(unknown)} in {text!r}")
        return cls("qt" in names, "qs" in names, "rt" in names)

    @property
    def label(self) -> str:
        active = [n for n in ("qt", "qs", "rt") if getattr(self, n)]
        if not active:
            return "none"
        if len(active) == 3:
            return "all"
        return ",".join(active)

    @property
    def size(self) -> int:
        return self.qt + self.qs + self.rt

    def issubset(self, other: "ConstraintSubset") -> bool:
        return (not self.qt or other.qt) and (not self.qs or other.qs) and (not self.rt or other.rt)

    @classmethod
    def all_subsets(cls) -> list["ConstraintSubset"]:
        return [cls(bool(i & 1), bool(i & 2), bool(i & 4)) for i in range(8)]


HARDY = ConstraintSubset(True, True, True)
UNCONSTRAINED = ConstraintSubset()


@dataclass
class OptimizationResult:
    best_value: float
    argmax: np.ndarray
    subset: ConstraintSubset
    iterations: int
    converged: bool
    multistart_spread: float
    concurrence: float
    objective: str = "S"
    vectors: dict[str, np.ndarray] = field(default_factory=dict)


def w_opt_closed(C: float) -> float:
    """Optimal violation probability C^2 (1 - C)/(2 - C)^2."""
    C = qm.check_concurrence(C)
    return C * C * (1.0 - C) / (2.0 - C) ** 2


def theta_opt(C: float) -> float:
    """Polar angle of the optimal q; tends to pi as C -> 0."""
    C = qm.check_concurrence(C)
    if C == 0.0:
        return math.pi
    return math.acos(-math.sqrt((1.0 - C) / (1.0 + C)))


def q_opt(C: float, phi: float = 0.0) -> np.ndarray:
    C = qm.check_concurrence(C)
    if C == 0.0:
        raise DegenerateGeometry("q_opt is undefined for a separable state")
    x = math.sqrt(2.0 * C)
    return np.array([x * math.cos(phi), x * math.sin(phi), -math.sqrt(1.0 - C)]) / math.sqrt(1.0 + C)


def r_opt_closed(C: float, phi: float = 0.0) -> np.ndarray:
    """Optimal r; at phi = 0 it coincides with the optimal s."""
    C = qm.check_concurrence(C)
    x = -C * math.sqrt(2.0 * C)
    z = -(2.0 + C) * math.sqrt(1.0 - C)
    return np.array([x * math.cos(phi), x * math.sin(phi), z]) / math.sqrt(4.0 - 3.0 * C * C + C**3)


def optimal_frame(C: float, phi: float = 0.0) -> MeasurementFrame:
    C = qm.check_concurrence(C)
    if not 0.0 < C < 1.0:
        raise DegenerateGeometry(f"optimal frame is degenerate at C={C!r}")
    return build_frame(q_opt(C, phi), C)


def w_fixed_q_x(C: float) -> float:
    """w when q is pinned to the x' axis (tau = C^2)."""
    C = qm.check_concurrence(C)
    C2 = C * C
    return (C2 - C2 * C2) / (4.0 - 2.0 * C2)


def optimal_concurrence() -> float:
    return 3.0 - math.sqrt(5.0)


def golden_ratio_report(C: float) -> tuple[float, float]:
    """(tau/xi, (2 - tau)/tau) at the Hardy optimum for ``C``.

    Both entries are equal for every C; at C = 3 - sqrt(5) they equal the
    golden ratio.  xi is evaluated from its definition at the optimal angle,
    which gives C^2/(2 - C).
    """
    C = qm.check_concurrence(C)
    if not 0.0 < C < 1.0:
        raise DegenerateGeometry(f"golden ratio report needs 0 < C < 1, got {C!r}")
    hl = lengths(q_opt(C), C)
    return hl.tau / hl.xi, (2.0 - hl.tau) / hl.tau


def hardy_w_of_theta(theta: float, C: float, phi: float = 0.0) -> float:
    return violation_probability_vector(frame_from_angles(theta, C, phi))


def _theta_objective(theta: float, C: float) -> float:
    """-xi/(C^2 (2 - tau)), which is w up to the affine map w = C^2/4 (1 + x).

    The peak of w in theta flattens like C^4 as C -> 0, so (S - 2)/4 with its
    absolute round-off cannot locate it.  This ratio carries only relative
    round-off and pins the argmax to ~1e-7 over the whole open interval.
    """
    hl = lengths(qm.spherical(theta, 0.0), C)
    return -hl.xi / (C * C) / (2.0 - hl.tau)


def optimize_hardy_numeric(C: float, n_grid: int = 181, tol: float = 1e-10) -> OptimizationResult:
    """Maximize w over the polar angle of q in [pi/2, pi] with phi = 0.

    The search runs on the ratio form; the reported value is the vector
    pipeline w = (S - 2)/4 evaluated at the located angle.
    """
    C = qm.check_concurrence(C)
    if not 0.0 < C < 1.0:
        raise DegenerateGeometry(f"Hardy optimization is degenerate at C={C!r}")
    res = maximize_1d(lambda th: _theta_objective(th, C), math.pi / 2.0, math.pi, n_grid, tol)
    frame = frame_from_angles(res.x, C)
    return OptimizationResult(
        best_value=violation_probability_vector(frame),
        argmax=np.array([res.x]),
        subset=HARDY,
        iterations=res.evaluations,
        converged=res.width <= tol * 1.000001,
        multistart_spread=0.0,
        concurrence=C,
        objective="w",
        vectors={"q": frame.q, "r": frame.r, "s": frame.s, "t": frame.t},
    )


def maximize_w_opt_over_concurrence(lo: float = 0.0, hi: float = 1.0, tol: float = 1e-12) -> tuple[float, float]:
    res = golden_section_max(w_opt_closed, lo, hi, tol)
    return res.x, res.fx


def chsh_theta_closed(theta: float, C: float) -> float:
    """CHSH value of the Hardy frame as a function of the polar angle of q.

    Independent of the azimuth.  Equals 2 at theta = 0, pi and for C in {0, 1}.
    """
    C = qm.check_concurrence(C)
    c, s = math.cos(theta), math.sin(theta)
    C2 = C * C
    b = math.sqrt(1.0 - C2)
    denom = C2 * c * c + s * s
    z = (2.0 - C2) * c + 2.0 * b
    norm = math.sqrt(C2 * C2 * s * s + z * z)
    if denom <= 1e-300 or norm <= 1e-300:
        raise DegenerateGeometry(f"closed form undefined at theta={theta!r}, C={C!r}")
    return 2.0 / denom * (C2 + b * s * s * ((2.0 - C2 - C2 * C2) * c + 2.0 * b) / norm)


def chsh_theta_printed(theta: float, C: float) -> float:
    """The closed form exactly as typeset in the source derivation.

    Kept only to document how far it is from the vector pipeline; do not use
    for computation.
    """
    c, s = math.cos(theta), math.sin(theta)
    C2 = C * C
    b = math.sqrt(1.0 - C2)
    bp = math.sqrt(1.0 + C2)
    denom = C2 * c * c + s * s
    norm = math.sqrt(C2 * s * s + ((2.0 - C2) * c + 2.0 * bp) ** 2)
    return 2.0 / denom * (C2 + 2.0 * b * s * s * ((2.0 - C2 - C2 * C2) * c + 2.0 * b) / norm)


def two_constraint_closed(C: float) -> float:
    """Optimal CHSH value under {qt, qs} (equivalently {qt, rt}): 2(C^2 + sqrt(1 - C^2))."""
    C = qm.check_concurrence(C)
    return 2.0 * (C * C + math.sqrt(1.0 - C * C))


@dataclass(frozen=True)
class TaylorReport:
    C_small: float
    eps: float
    remainder_opt_small: float
    remainder_fixed_small: float
    remainder_opt_eps: float
    remainder_fixed_eps: float
    k_opt_small: float
    k_fixed_small: float
    k_opt_eps: float
    k_fixed_eps: float
    k_bound: float = TAYLOR_K_BOUND

    @property
    def ok(self) -> bool:
        return max(self.k_opt_small, self.k_fixed_small, self.k_opt_eps, self.k_fixed_eps) <= self.k_bound


def taylor_checks(C_small: float, eps: float) -> TaylorReport:
    """Remainders of the small-C and C -> 1 expansions of both strategies.

    Small C: w ~ C^2/4 + O(C^4) for both.  Near C = 1 with eps = 1 - C:
    w_opt ~ eps - 4 eps^2, fixed q ~ eps - 9/2 eps^2, both + O(eps^3).  The
    fitted constants are |remainder| / C^4 and |remainder| / eps^3.
    """
    if not 0.0 < C_small <= 0.05:
        raise ContractViolation(f"C_small must lie in (0, 0.05], got {C_small!r}")
    if not 0.0 < eps <= 0.05:
        raise ContractViolation(f"eps must lie in (0, 0.05], got {eps!r}")
    lead_small = C_small**2 / 4.0
    r_opt_small = w_opt_closed(C_small) - lead_small
    r_fixed_small = w_fixed_q_x(C_small) - lead_small
    r_opt_eps = w_opt_closed(1.0 - eps) - (eps - 4.0 * eps**2)
    r_fixed_eps = w_fixed_q_x(1.0 - eps) - (eps - 4.5 * eps**2)
    return TaylorReport(
        C_small,
        eps,
        r_opt_small,
        r_fixed_small,
        r_opt_eps,
        r_fixed_eps,
        abs(r_opt_small) / C_small**4,
        abs(r_fixed_small) / C_small**4,
        abs(r_opt_eps) / eps**3,
        abs(r_fixed_eps) / eps**3,
    )
