"""Exact two-qubit quantum mechanics for the Schmidt-form state.

Everything here is brute force: explicit 4x4 operators built from Pauli
matrices and expectation values taken against the state vector.  The rest of
the package uses these functions as ground truth.

Basis ordering is (|00>, |01>, |10>, |11>) with sigma_z|0> = +|0>.
"""

from __future__ import annotations

import math
from typing import Literal, Sequence

import numpy as np

from . import tolerances
from .errors import ConditioningOnNullEvent, ContractViolation

ArrayLike = Sequence[float] | np.ndarray

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)

X_HAT = np.array([1.0, 0.0, 0.0])
Z_HAT = np.array([0.0, 0.0, 1.0])

TSIRELSON = 2.0 * math.sqrt(2.0)


def check_concurrence(C: float) -> float:
    C = float(C)
    if not (0.0 <= C <= 1.0) or math.isnan(C):
        raise ContractViolation(f"concurrence must lie in [0, 1], got {C!r}")
    return C


def check_unit(v: ArrayLike, name: str = "vector") -> np.ndarray:
    """Return ``v`` as a float array, raising if it is not a 3D unit vector."""
    arr = np.asarray(v, dtype=float)
    if arr.shape != (3,):
        raise ContractViolation(f"{name} must have shape (3,), got {arr.shape}")
    if abs(np.linalg.norm(arr) - 1.0) > tolerances.UNIT_NORM:
        raise ContractViolation(f"{name} is not a unit vector (norm {np.linalg.norm(arr)!r})")
    return arr


def check_outcomes(outcomes: tuple[int, int]) -> tuple[int, int]:
    if len(outcomes) != 2 or any(o not in (1, -1) for o in outcomes):
        raise ContractViolation(f"outcomes must be a pair of +1/-1, got {outcomes!r}")
    return int(outcomes[0]), int(outcomes[1])


def spherical(theta: float, phi: float = 0.0) -> np.ndarray:
    """Unit vector with polar angle ``theta`` and azimuth ``phi``."""
    st = math.sin(theta)
    return np.array([st * math.cos(phi), st * math.sin(phi), math.cos(theta)])


def build_state(C: float) -> np.ndarray:
    """Schmidt-form two-qubit state with concurrence ``C``.

    The |00> amplitude is non-negative, the |11> amplitude non-positive and
    the cross terms vanish identically.
    """
    C = check_concurrence(C)
    b = math.sqrt(1.0 - C * C)
    psi = np.zeros(4, dtype=complex)
    psi[0] = math.sqrt((1.0 + b) / 2.0)
    psi[3] = -math.sqrt((1.0 - b) / 2.0)
    return psi


def bloch_vector(C: float) -> np.ndarray:
    """Local Bloch vector ``a`` shared by both subsystems."""
    C = check_concurrence(C)
    return np.array([0.0, 0.0, math.sqrt(1.0 - C * C)])


def correlation_matrix(C: float) -> np.ndarray:
    """Correlation matrix ``K = diag(-C, C, 1)``."""
    C = check_concurrence(C)
    return np.diag([-C, C, 1.0])


def spin_operator(v: ArrayLike) -> np.ndarray:
    """Single-qubit observable ``v . sigma``."""
    v = np.asarray(v, dtype=float)
    return v[0] * SIGMA_X + v[1] * SIGMA_Y + v[2] * SIGMA_Z


def projector(v: ArrayLike, outcome: int = 1) -> np.ndarray:
    """Projector onto outcome ``outcome`` of the measurement along ``v``."""
    return 0.5 * (I2 + outcome * spin_operator(v))


def expectation(state: np.ndarray, operator: np.ndarray) -> float:
    value = np.vdot(state, operator @ state)
    return float(value.real)


def bloch_vector_oracle(state: np.ndarray, side: Literal["A", "B"] = "A") -> np.ndarray:
    """Bloch vector of one subsystem computed from the state."""
    ops = [np.kron(p, I2) if side == "A" else np.kron(I2, p) for p in PAULI]
    return np.array([expectation(state, op) for op in ops])


def correlation_matrix_oracle(state: np.ndarray) -> np.ndarray:
    """Full 3x3 matrix of <sigma_i x sigma_j> for ``state``."""
    return np.array([[expectation(state, np.kron(pi, pj)) for pj in PAULI] for pi in PAULI])


def _check_state(state: np.ndarray) -> np.ndarray:
    state = np.asarray(state, dtype=complex)
    if state.shape != (4,):
        raise ContractViolation(f"state must have 4 amplitudes, got shape {state.shape}")
    if abs(np.vdot(state, state).real - 1.0) > tolerances.UNIT_NORM:
        raise ContractViolation("state is not normalized")
    return state


def joint_probability(
    state: np.ndarray, vA: ArrayLike, vB: ArrayLike, outcomes: tuple[int, int] = (1, 1)
) -> float:
    """Probability of ``outcomes`` when measuring ``vA`` on A and ``vB`` on B."""
    state = _check_state(state)
    vA = check_unit(vA, "vA")
    vB = check_unit(vB, "vB")
    oA, oB = check_outcomes(outcomes)
    return expectation(state, np.kron(projector(vA, oA), projector(vB, oB)))


def marginal_probability(state: np.ndarray, side: Literal["A", "B"], v: ArrayLike, outcome: int) -> float:
    state = _check_state(state)
    v = check_unit(v)
    if outcome not in (1, -1):
        raise ContractViolation(f"outcome must be +1 or -1, got {outcome!r}")
    proj = projector(v, outcome)
    op = np.kron(proj, I2) if side == "A" else np.kron(I2, proj)
    return expectation(state, op)


def conditional_probability(
    state: np.ndarray,
    conditioned_side: Literal["A", "B"],
    v_cond: ArrayLike,
    v_target: ArrayLike,
    outcomes: tuple[int, int] = (1, 1),
) -> float:
    """P(target outcome | conditioning outcome).

    ``outcomes`` is ordered (outcome on A, outcome on B) whichever side is
    conditioned on.  Conditioning on the same side as the target is allowed
    (``v_target`` then refers to a second measurement on that side, which only
    makes sense for commuting observables such as the same direction).
    """
    if conditioned_side not in ("A", "B"):
        raise ContractViolation(f"conditioned_side must be 'A' or 'B', got {conditioned_side!r}")
    oA, oB = check_outcomes(outcomes)
    state = _check_state(state)
    v_cond = check_unit(v_cond, "v_cond")
    v_target = check_unit(v_target, "v_target")
    o_cond = oA if conditioned_side == "A" else oB
    marginal = marginal_probability(state, conditioned_side, v_cond, o_cond)
    if marginal <= tolerances.NULL_EVENT:
        raise ConditioningOnNullEvent(f"marginal probability {marginal!r} is below {tolerances.NULL_EVENT}")
    if conditioned_side == "A":
        joint = joint_probability(state, v_cond, v_target, (oA, oB))
    else:
        joint = joint_probability(state, v_target, v_cond, (oA, oB))
    return joint / marginal


def correlation(state: np.ndarray, vA: ArrayLike, vB: ArrayLike) -> float:
    """<(vA . sigma) x (vB . sigma)>."""
    return expectation(state, np.kron(spin_operator(vA), spin_operator(vB)))


def chsh_operator(state: np.ndarray, q: ArrayLike, r: ArrayLike, s: ArrayLike, t: ArrayLike) -> float:
    """CHSH value <QS> - <QT> + <RS> + <RT> by explicit operator algebra."""
    state = _check_state(state)
    q, r, s, t = (check_unit(v, n) for v, n in zip((q, r, s, t), "qrst"))
    return (
        correlation(state, q, s)
        - correlation(state, q, t)
        + correlation(state, r, s)
        + correlation(state, r, t)
    )


def chsh_vector(q: ArrayLike, r: ArrayLike, s: ArrayLike, t: ArrayLike, K: np.ndarray) -> float:
    """CHSH value q^T K (s - t) + r^T K (s + t)."""
    q, r, s, t = (check_unit(v, n) for v, n in zip((q, r, s, t), "qrst"))
    K = np.asarray(K, dtype=float)
    return float(q @ K @ (s - t) + r @ K @ (s + t))


def chsh_bound(C: float) -> float:
    """Largest CHSH value reachable with concurrence ``C``: 2 sqrt(1 + C^2)."""
    C = check_concurrence(C)
    return 2.0 * math.sqrt(1.0 + C * C)
