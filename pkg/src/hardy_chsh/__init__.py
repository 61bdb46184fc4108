"""Hardy nonlocality as a constrained CHSH problem."""

from .construct import (
    HardyLengths,
    HardyResiduals,
    MeasurementFrame,
    build_frame,
    derive_r,
    derive_r_from_t,
    derive_r_tau,
    derive_s,
    derive_t,
    hardy_residuals,
    lengths,
    violation_probability,
    violation_probability_vector,
)
from .geometry import EllipseGeometry, TriangleData, cos_gamma, lambda_length, w_from_tau, w_geometric, w_ratio_form
from .optimize import (
    ConstraintSubset,
    OptimizationResult,
    chsh_theta_closed,
    golden_ratio_report,
    optimal_concurrence,
    optimal_frame,
    optimize_hardy_numeric,
    q_opt,
    taylor_checks,
    theta_opt,
    two_constraint_closed,
    w_fixed_q_x,
    w_opt_closed,
)
from .constrained import optimize_constrained
from .quantum import (
    bloch_vector,
    build_state,
    chsh_operator,
    chsh_vector,
    conditional_probability,
    correlation_matrix,
    joint_probability,
)

__version__ = "0.1.0"

__all__ = [
    "bloch_vector",
    "build_frame",
    "build_state",
    "chsh_operator",
    "chsh_theta_closed",
    "chsh_vector",
    "conditional_probability",
    "ConstraintSubset",
    "correlation_matrix",
    "cos_gamma",
    "derive_r",
    "derive_r_from_t",
    "derive_r_tau",
    "derive_s",
    "derive_t",
    "EllipseGeometry",
    "golden_ratio_report",
    "hardy_residuals",
    "HardyLengths",
    "HardyResiduals",
    "joint_probability",
    "lambda_length",
    "lengths",
    "MeasurementFrame",
    "optimal_concurrence",
    "optimal_frame",
    "OptimizationResult",
    "optimize_constrained",
    "optimize_hardy_numeric",
    "q_opt",
    "taylor_checks",
    "theta_opt",
    "TriangleData",
    "two_constraint_closed",
    "violation_probability",
    "violation_probability_vector",
    "w_fixed_q_x",
    "w_from_tau",
    "w_geometric",
    "w_opt_closed",
    "w_ratio_form",
]
