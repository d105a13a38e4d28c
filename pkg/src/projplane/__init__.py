"""Exact invariants of closed manifolds that look like projective planes."""

from .abgroup import FgAbGroup, GroupMap, cokernel, is_exact, kernel, smith_normal_form, tensor_cyclic
from .classify import ModelDescriptor, count_homotopy_types, diff_structure, model_invariants
from .msq import GradedPoly, genus_polynomial, two_point_genus
from .series import PowerSeries, a_hat_series, dual_series, l_genus_series, s_numbers

__version__ = "0.1.0"

__all__ = [
    "FgAbGroup",
    "GradedPoly",
    "GroupMap",
    "ModelDescriptor",
    "PowerSeries",
    "a_hat_series",
    "cokernel",
    "count_homotopy_types",
    "diff_structure",
    "dual_series",
    "genus_polynomial",
    "is_exact",
    "kernel",
    "l_genus_series",
    "model_invariants",
    "s_numbers",
    "smith_normal_form",
    "tensor_cyclic",
    "two_point_genus",
]
