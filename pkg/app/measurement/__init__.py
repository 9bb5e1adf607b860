"""
Measurement package initialization
"""

from .basis import OperatorBasis, build_operator_basis, diagonal_coefficients
from .fid import default_fid_grid, extract_peaks, peak_frequencies, peak_table, simulate_fid
from .noise import NoiseModel, apply_noise, relative_std
from .observables import ObservableSet, build_observables, expectation, expectations

__all__ = [
    "NoiseModel",
    "ObservableSet",
    "OperatorBasis",
    "apply_noise",
    "build_observables",
    "build_operator_basis",
    "default_fid_grid",
    "diagonal_coefficients",
    "expectation",
    "expectations",
    "extract_peaks",
    "peak_frequencies",
    "peak_table",
    "relative_std",
    "simulate_fid",
]
