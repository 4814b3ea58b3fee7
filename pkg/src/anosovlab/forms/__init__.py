from .calculus import (
    Chart,
    DifferentialForm,
    VectorField,
    DimensionMismatch,
    OutOfDomain,
    SingularSystem,
    apply_form,
    check_nondegenerate,
    coefficient,
    exterior_derivative,
    fd_convergence_ratio,
    jacobian_fd,
    max_value_deviation,
    pullback,
    pullback_check,
    solve_liouville,
    solve_reeb,
    symplectic_frame,
    wedge,
)
from . import library
from .library import check_geiges, psl2_invariance, run_suite

__all__ = [
    "Chart",
    "DifferentialForm",
    "VectorField",
    "DimensionMismatch",
    "OutOfDomain",
    "SingularSystem",
    "apply_form",
    "check_nondegenerate",
    "coefficient",
    "exterior_derivative",
    "fd_convergence_ratio",
    "jacobian_fd",
    "max_value_deviation",
    "pullback",
    "pullback_check",
    "solve_liouville",
    "solve_reeb",
    "symplectic_frame",
    "wedge",
    "library",
    "check_geiges",
    "psl2_invariance",
    "run_suite",
]
