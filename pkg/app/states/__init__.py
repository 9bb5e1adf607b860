"""
States package initialization
"""

from .library import (
    BlockState,
    StateSpec,
    coherent_state,
    ghz_state,
    make_state,
    maximally_mixed_state,
    mssm_full_space,
    random_state,
    squeezed_state,
)
from .metrics import fidelity, frobenius_distance, psd_project, purity

__all__ = [
    "BlockState",
    "StateSpec",
    "coherent_state",
    "fidelity",
    "frobenius_distance",
    "ghz_state",
    "make_state",
    "maximally_mixed_state",
    "mssm_full_space",
    "psd_project",
    "purity",
    "random_state",
    "squeezed_state",
]
