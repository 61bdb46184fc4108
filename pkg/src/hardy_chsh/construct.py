"""Hardy-constrained measurement frames.

Given the free measurement vector ``q`` on subsystem A and the concurrence,
the three Hardy conditions fix the remaining vectors:

* pr_QT(1,1) = 0    ->  t = -(Kq + a) / |Kq + a|
* pr_Q|S(1|1) = 1   ->  s =  (Kq - a) / |Kq - a|
* pr_T|R(1|1) = 1   ->  r =  (Kt - a) / |Kt - a|

All geometry is done in 3D; nothing is rotated into the x'-z plane first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import quantum as qm
from . import tolerances
from .errors import DegenerateDirection

#: inputs closer than this to C in {0, 1} or q parallel to z count as degenerate
DEGENERACY_EPS = 1e-9


def _frozen(v: np.ndarray) -> np.ndarray:
    v = np.array(v, dtype=float)
    v.setflags(write=False)
    return v


def _normalized(v: np.ndarray, what: str) -> np.ndarray:
    n = float(np.linalg.norm(v))
    if n <= tolerances.DIRECTION:
        raise DegenerateDirection(f"{what} has norm {n!r}; direction undefined")
    return v / n


@dataclass(frozen=True)
class MeasurementFrame:
    """The four measurement vectors plus the K-images of the B-side ones."""

    q: np.ndarray
    r: np.ndarray
    s: np.ndarray
    t: np.ndarray
    sk: np.ndarray
    tk: np.ndarray
    concurrence: float

    def __post_init__(self) -> None:
        for name in ("q", "r", "s", "t", "sk", "tk"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))

    def vectors(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        return self.q, self.r, self.s, self.t

    def replace(self, **vectors: np.ndarray) -> "MeasurementFrame":
        """Copy with some measurement vectors swapped out; K-images are recomputed."""
        K = qm.correlation_matrix(self.concurrence)
        q = vectors.get("q", self.q)
        r = vectors.get("r", self.r)
        s = vectors.get("s", self.s)
        t = vectors.get("t", self.t)
        return MeasurementFrame(q, r, s, t, K @ s, K @ t, self.concurrence)


@dataclass(frozen=True)
class HardyLengths:
    """Distances from the lower focal point to S (``xi``) and to T (``tau``)."""

    xi: float
    tau: float


@dataclass(frozen=True)
class HardyResiduals:
    """|pr_QT(1,1)|, |1 - pr_Q|S(1|1)|, |1 - pr_T|R(1|1)|."""

    r1: float
    r2: float
    r3: float

    def max(self) -> float:
        return max(self.r1, self.r2, self.r3)


def is_degenerate(q: qm.ArrayLike, C: float, eps: float = DEGENERACY_EPS) -> bool:
    """True when the plane of the construction collapses to a line.

    This happens for separable (C = 0) and maximally entangled (C = 1) states
    and whenever q points along the z axis.
    """
    q = np.asarray(q, dtype=float)
    return C <= eps or C >= 1.0 - eps or math.hypot(q[0], q[1]) <= eps


def degeneracy_reason(q: qm.ArrayLike, C: float, eps: float = DEGENERACY_EPS) -> str | None:
    q = np.asarray(q, dtype=float)
    if C <= eps:
        return "separable state"
    if C >= 1.0 - eps:
        return "maximally entangled"
    if math.hypot(q[0], q[1]) <= eps:
        return "q parallel to z axis"
    return None


def derive_t(q: qm.ArrayLike, C: float) -> np.ndarray:
    q = qm.check_unit(q, "q")
    K = qm.correlation_matrix(C)
    a = qm.bloch_vector(C)
    return -_normalized(K @ q + a, "Kq + a")


def derive_s(q: qm.ArrayLike, C: float) -> np.ndarray:
    q = qm.check_unit(q, "q")
    K = qm.correlation_matrix(C)
    a = qm.bloch_vector(C)
    return _normalized(K @ q - a, "Kq - a")


def derive_r_from_t(t: qm.ArrayLike, C: float) -> np.ndarray:
    """r = (Kt - a)/|Kt - a|, the direct form of the third condition."""
    t = qm.check_unit(t, "t")
    K = qm.correlation_matrix(C)
    a = qm.bloch_vector(C)
    return _normalized(K @ t - a, "Kt - a")


def _one_plus(C: float, x: float) -> float:
    """1 + sqrt(1 - C^2) x without cancellation for x near -1."""
    b = math.sqrt(1.0 - C * C)
    if x >= 0.0:
        return 1.0 + b * x
    return C * C / (1.0 + b) + b * (1.0 + x)


def derive_r_tau(q: qm.ArrayLike, C: float) -> np.ndarray:
    """r = q - 2/(2 - tau) (q + a), the closed form in terms of q alone.

    2/(2 - tau) is evaluated as 2u/(2u - C^2) with u = 1 + sqrt(1 - C^2) q_z,
    and 2u - C^2 = 2b(1 + q_z) + C^4/(1 + b)^2.  The factor grows like 1/C^4
    as q approaches -z, so this form loses digits there; ``derive_r`` uses
    the chained form instead and this one serves as a cross-check.
    """
    q = qm.check_unit(q, "q")
    C = qm.check_concurrence(C)
    b = math.sqrt(1.0 - C * C)
    C2 = C * C
    u = _one_plus(C, q[2])
    gap = 2.0 * b * (1.0 + q[2]) + C2 * C2 / (1.0 + b) ** 2
    if u <= tolerances.DIRECTION or gap <= tolerances.DIRECTION * u:
        raise DegenerateDirection(f"tau reaches 2 for q_z={q[2]!r}, C={C!r}; r is undefined")
    q_plus_a = np.array([q[0], q[1], (1.0 + q[2]) - C2 / (1.0 + b)])
    r = q - (2.0 * u / gap) * q_plus_a
    return r / np.linalg.norm(r)


def derive_r(q: qm.ArrayLike, C: float) -> np.ndarray:
    """r from q via t; accurate to ~1e-10 even within 1e-9 rad of -z."""
    return derive_r_from_t(derive_t(q, C), C)


def lengths(q: qm.ArrayLike, C: float) -> HardyLengths:
    q = qm.check_unit(q, "q")
    C = qm.check_concurrence(C)
    minus, plus = _one_plus(C, -q[2]), _one_plus(C, q[2])
    if minus <= tolerances.DIRECTION or plus <= tolerances.DIRECTION:
        raise DegenerateDirection(f"length denominator vanishes for q_z={q[2]!r}, C={C!r}")
    return HardyLengths(xi=C * C / minus, tau=C * C / plus)


def build_frame(q: qm.ArrayLike, C: float) -> MeasurementFrame:
    q = qm.check_unit(q, "q")
    C = qm.check_concurrence(C)
    K = qm.correlation_matrix(C)
    t = derive_t(q, C)
    s = derive_s(q, C)
    r = derive_r(q, C)
    return MeasurementFrame(q=q, r=r, s=s, t=t, sk=K @ s, tk=K @ t, concurrence=C)


def frame_from_angles(theta: float, C: float, phi: float = 0.0) -> MeasurementFrame:
    return build_frame(qm.spherical(theta, phi), C)


def hardy_residuals(frame: MeasurementFrame, C: float | None = None) -> HardyResiduals:
    """Deviations of the three Hardy conditions, evaluated with the operator oracle."""
    C = frame.concurrence if C is None else C
    psi = qm.build_state(C)
    p_qt = qm.joint_probability(psi, frame.q, frame.t, (1, 1))
    p_q_given_s = qm.conditional_probability(psi, "B", frame.s, frame.q, (1, 1))
    p_t_given_r = qm.conditional_probability(psi, "A", frame.r, frame.t, (1, 1))
    return HardyResiduals(abs(p_qt), abs(1.0 - p_q_given_s), abs(1.0 - p_t_given_r))


def frame_chsh(frame: MeasurementFrame) -> float:
    return qm.chsh_vector(*frame.vectors(), qm.correlation_matrix(frame.concurrence))


def violation_probability_vector(frame: MeasurementFrame) -> float:
    """w = (S - 2)/4 with S from the vector form."""
    return (frame_chsh(frame) - 2.0) / 4.0


def violation_probability(q: qm.ArrayLike, C: float) -> float:
    """pr_RS(1,1) for the Hardy frame built from ``q``.

    Degenerate inputs whose frame cannot be normalized return 0.  Negative
    values cannot occur for a probability; tiny negative round-off is kept
    as-is.
    """
    q = qm.check_unit(q, "q")
    C = qm.check_concurrence(C)
    try:
        frame = build_frame(q, C)
    except DegenerateDirection:
        if is_degenerate(q, C):
            return 0.0
        raise
    return qm.joint_probability(qm.build_state(C), frame.r, frame.s, (1, 1))
