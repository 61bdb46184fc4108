"""Ellipse picture of the Hardy construction.

Applying K to the B-side vectors maps them onto an ellipse with unit
semi-major axis along z and semi-minor axis C; the Bloch vectors +a and -a
are its foci.  The violation probability then becomes a length difference
in a triangle, which gives a third way of computing w that never touches
the quantum state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import quantum as qm
from .construct import HardyLengths, MeasurementFrame, is_degenerate
from .errors import OutOfRange

REALIZABLE_SLACK = 1e-12


@dataclass(frozen=True)
class EllipseGeometry:
    concurrence: float
    semimajor: float
    semiminor: float
    focal_upper: np.ndarray
    focal_lower: np.ndarray

    @classmethod
    def for_concurrence(cls, C: float) -> "EllipseGeometry":
        a = qm.bloch_vector(C)
        return cls(C, 1.0, C, a, -a)

    @property
    def focal_distance(self) -> float:
        return float(np.linalg.norm(self.focal_upper))

    def residual(self, point: np.ndarray) -> float:
        """x^2/C^2 + y^2/C^2 + z^2 - 1 for a 3D point (C > 0)."""
        C2 = self.semiminor**2
        return float((point[0] ** 2 + point[1] ** 2) / C2 + point[2] ** 2 - 1.0)

    def sample(self, n: int = 256) -> np.ndarray:
        """``n`` points on the ellipse in the (x', z) plane, shape (n, 2)."""
        ang = 2.0 * np.pi * np.arange(n) / n
        return np.column_stack([self.semiminor * np.cos(ang), self.semimajor * np.sin(ang)])


@dataclass(frozen=True)
class TriangleData:
    lambda_: float
    cos_gamma: float
    R_point: np.ndarray
    rt_bar: float
    degenerate: bool = False


def lambda_length(frame: MeasurementFrame, lengths: HardyLengths) -> TriangleData:
    """Signed distance from R to the lower focal point.

    lambda = (2 - tau) - |R Tbar| with |R Tbar| = r . (sk + tk).  R is placed on
    the line from Tbar = -tk towards F_l, which is the direction of r.  For
    degenerate inputs the numbers are still returned (w comes out as 0) and
    ``degenerate`` is set; ``cos_gamma`` is then nan when it is undefined.
    """
    C = frame.concurrence
    rt_bar = float(frame.r @ (frame.sk + frame.tk))
    lam = (2.0 - lengths.tau) - rt_bar
    R_point = -frame.tk + rt_bar * frame.r
    degenerate = is_degenerate(frame.q, C)
    try:
        cg = cos_gamma(lengths.tau, C)
    except OutOfRange:
        cg = math.nan
    return TriangleData(lam, cg, R_point, rt_bar, degenerate)


def w_geometric(frame: MeasurementFrame, lengths: HardyLengths) -> float:
    """w = (xi - lambda)/4."""
    return (lengths.xi - lambda_length(frame, lengths).lambda_) / 4.0


def cos_gamma(tau: float, C: float) -> float:
    """Cosine rule in the triangle F_u Tbar F_l: 2C^2/((2 - tau) tau) - 1."""
    C = qm.check_concurrence(C)
    if not 0.0 < tau < 2.0:
        raise OutOfRange(f"tau must lie in (0, 2), got {tau!r}")
    value = 2.0 * C * C / ((2.0 - tau) * tau) - 1.0
    if abs(value) > 1.0 + REALIZABLE_SLACK:
        raise OutOfRange(f"(tau={tau!r}, C={C!r}) is not realizable: cos(gamma)={value!r}")
    return value


def tau_range(C: float) -> tuple[float, float]:
    """Interval of tau values reachable by unit q (q along -z to q along +z)."""
    b = math.sqrt(1.0 - C * C)
    return 1.0 - b, 1.0 + b


def w_from_tau(tau: float, C: float) -> float:
    """w = C^2/4 (1 - tau C^2 / ((2 - tau)(2 tau - C^2)))."""
    C = qm.check_concurrence(C)
    C2 = C * C
    if tau >= 2.0:
        raise OutOfRange(f"tau must be < 2, got {tau!r}")
    if 2.0 * tau - C2 <= 1e-12:
        raise OutOfRange(f"tau={tau!r} is at or below the pole C^2/2={C2 / 2!r}")
    return C2 / 4.0 * (1.0 - tau * C2 / ((2.0 - tau) * (2.0 * tau - C2)))


def w_ratio_form(xi: float, tau: float, C: float) -> float:
    """w = C^2/4 (1 - xi/(2 - tau))."""
    C = qm.check_concurrence(C)
    if tau >= 2.0:
        raise OutOfRange(f"tau must be < 2, got {tau!r}")
    return C * C / 4.0 * (1.0 - xi / (2.0 - tau))


def in_plane(v: np.ndarray, phi: float) -> tuple[float, float]:
    """Coordinates (x', z) of a vector lying in the plane at azimuth ``phi``."""
    return float(v[0] * math.cos(phi) + v[1] * math.sin(phi)), float(v[2])


def construction_points(frame: MeasurementFrame, lengths: HardyLengths, phi: float = 0.0) -> dict[str, tuple[float, float]]:
    """Named points of the construction in the (x', z) plane."""
    a = qm.bloch_vector(frame.concurrence)
    tri = lambda_length(frame, lengths)
    pts = {
        "S": frame.sk,
        "T": frame.tk,
        "Sbar": -frame.sk,
        "Tbar": -frame.tk,
        "R": tri.R_point,
        "F_u": a,
        "F_l": -a,
        "q": frame.q,
        "r": frame.r,
    }
    return {name: in_plane(v, phi) for name, v in pts.items()}


def rectangle_corners(C: float) -> np.ndarray:
    """Rectangle through both foci inscribed in the ellipse, as (x', z) corners."""
    C = qm.check_concurrence(C)
    b = math.sqrt(1.0 - C * C)
    x = C * C
    return np.array([[x, b], [-x, b], [-x, -b], [x, -b]])
