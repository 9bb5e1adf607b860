"""
Tomography package initialization
"""

from .cost import cost, cost_and_gradient
from .counting import (
    dof_count,
    general_dof,
    general_min_readouts,
    min_readouts,
    n_observables,
)
from .inversion import (
    ReconstructionResult,
    predicted_variances,
    pseudo_inverse,
    reconstruct,
)
from .transfer import TransferMatrix, build_transfer_matrix, numerical_rank

__all__ = [
    "ReconstructionResult",
    "TransferMatrix",
    "build_transfer_matrix",
    "cost",
    "cost_and_gradient",
    "dof_count",
    "general_dof",
    "general_min_readouts",
    "min_readouts",
    "n_observables",
    "numerical_rank",
    "predicted_variances",
    "pseudo_inverse",
    "reconstruct",
]
