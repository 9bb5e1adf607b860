"""
Linear inversion

Moore-Penrose pseudoinverse of the transfer matrix (SVD with a relative
singular-value cutoff), state reconstruction and error propagation.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import svd

from ..measurement.basis import OperatorBasis
from ..settings import get_settings
from ..states.library import BlockState
from .transfer import TransferMatrix

logger = logging.getLogger(__name__)


def pseudo_inverse(entries: np.ndarray, rtol: Optional[float] = None) -> Tuple[np.ndarray, int]:
    """pinv(F) and the numerical rank used to build it"""
    rtol = get_settings().tolerances.rank if rtol is None else rtol
    u, s, vt = svd(entries, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros(entries.shape[::-1]), 0
    keep = s > rtol * s[0]
    inverse = (vt[keep].T / s[keep]) @ u[:, keep].T
    return inverse, int(np.sum(keep))


@dataclass(frozen=True, eq=False)
class ReconstructionResult:
    coefficients: np.ndarray
    state: BlockState
    residual_norm: float
    rank: int
    rank_deficient: bool = False

    def to_dict(self) -> Dict[str, Any]:
        data = self.state.to_dict()
        data.update(
            {
                "residual": self.residual_norm,
                "rank": self.rank,
                "rank_deficient": self.rank_deficient,
            }
        )
        return data


def _right_hand_side(transfer: TransferMatrix, o: np.ndarray, priors: Sequence[float]) -> np.ndarray:
    o = np.asarray(o, dtype=float)
    priors = np.asarray(priors, dtype=float)
    if o.shape != (transfer.n_measurement_rows,):
        raise ValueError(
            f"Expected {transfer.n_measurement_rows} measurements, got shape {o.shape}"
        )
    if priors.shape != (transfer.n_prior_rows,):
        raise ValueError(
            f"Expected {transfer.n_prior_rows} trace priors, got shape {priors.shape}"
        )
    return np.concatenate([o, priors])


def reconstruct(
    transfer: TransferMatrix,
    o: np.ndarray,
    priors: Sequence[float],
    basis: OperatorBasis,
    inverse: Optional[Tuple[np.ndarray, int]] = None,
) -> ReconstructionResult:
    """c = pinv(F) [o; lambda], assembled as sum_m c_m B_m.

    ``inverse`` reuses a precomputed (pinv, rank) pair across repetitions. No PSD
    enforcement happens here.
    """
    rhs = _right_hand_side(transfer, o, priors)
    pinv, rank = inverse if inverse is not None else pseudo_inverse(transfer.entries)
    rank_deficient = rank < basis.size
    if rank_deficient:
        logger.warning(
            f"Transfer matrix rank {rank} is below the {basis.size} unknowns; "
            "returning the least-squares solution"
        )
    coefficients = pinv @ rhs
    residual = float(np.linalg.norm(transfer.entries @ coefficients - rhs))
    state = BlockState.from_matrix(basis.from_coefficients(coefficients))
    return ReconstructionResult(
        coefficients=coefficients,
        state=state,
        residual_norm=residual,
        rank=rank,
        rank_deficient=rank_deficient,
    )


def row_variances(transfer: TransferMatrix, var_o: Optional[np.ndarray] = None) -> np.ndarray:
    """Per-row variances with prior rows fixed at zero; default unit Var(o)"""
    n_rows = transfer.entries.shape[0]
    if var_o is None:
        var_o = np.ones(transfer.n_measurement_rows)
    var_o = np.asarray(var_o, dtype=float)
    if var_o.shape == (transfer.n_measurement_rows,):
        var_o = np.concatenate([var_o, np.zeros(transfer.n_prior_rows)])
    if var_o.shape != (n_rows,):
        raise ValueError(f"Expected {n_rows} row variances, got shape {var_o.shape}")
    if np.any(var_o < 0):
        raise ValueError("Variances must be non-negative")
    return var_o


def predicted_variances(
    transfer: TransferMatrix,
    var_o: Optional[np.ndarray] = None,
    inverse: Optional[np.ndarray] = None,
) -> np.ndarray:
    """Var(c_m) = sum_k |pinv(F)_mk|^2 var_o_k"""
    var_o = row_variances(transfer, var_o)
    if inverse is None:
        inverse, _ = pseudo_inverse(transfer.entries)
    return (inverse ** 2) @ var_o
