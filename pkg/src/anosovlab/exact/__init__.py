from .quadnum import QuadNum, quad_sign, square_free_decompose
from .intmat import IntMatrix, SmithForm, smith_normal_form, cokernel
from .graded import GradedZModule, normalize_torsion

__all__ = [
    "QuadNum",
    "quad_sign",
    "square_free_decompose",
    "IntMatrix",
    "SmithForm",
    "smith_normal_form",
    "cokernel",
    "GradedZModule",
    "normalize_torsion",
]
