"""
Design cost

f = sum_m w_m Var(c_m) in units of the measurement variance, and its
derivative with respect to the measurement rows of the transfer matrix.
The cost depends on F only; no quantum state enters it.
"""

from typing import Optional, Tuple

import numpy as np

from .inversion import predicted_variances, pseudo_inverse, row_variances
from .transfer import TransferMatrix


def _weights(transfer: TransferMatrix, weights: Optional[np.ndarray]) -> np.ndarray:
    n_cols = transfer.entries.shape[1]
    if weights is None:
        return np.ones(n_cols)
    weights = np.asarray(weights, dtype=float)
    if weights.shape != (n_cols,):
        raise ValueError(f"Expected {n_cols} weights, got shape {weights.shape}")
    if np.any(weights < 0):
        raise ValueError("Cost weights must be non-negative")
    return weights


def cost(
    transfer: TransferMatrix,
    weights: Optional[np.ndarray] = None,
    var_o: Optional[np.ndarray] = None,
) -> float:
    """Weighted sum of propagated coefficient variances"""
    weights = _weights(transfer, weights)
    return float(weights @ predicted_variances(transfer, var_o))


def cost_and_gradient(
    transfer: TransferMatrix,
    weights: Optional[np.ndarray] = None,
    var_o: Optional[np.ndarray] = None,
) -> Tuple[float, np.ndarray, int]:
    """f, df/dF on the measurement rows, and the rank of F.

    With P = pinv(F), D = diag(var_o) and W = diag(w), f = tr(W P D P^T).
    For full column rank
        df/dF = -2 (P D P^T W P)^T + 2 (I - F P) D P^T W P P^T.
    """
    weights = _weights(transfer, weights)
    var = row_variances(transfer, var_o)
    entries = transfer.entries
    pinv, rank = pseudo_inverse(entries)
    f = float(weights @ ((pinv ** 2) @ var))

    weighted_pinv = weights[:, np.newaxis] * pinv  # W P
    scatter = (pinv * var) @ pinv.T  # P D P^T
    first = -2.0 * (scatter @ weighted_pinv).T
    residual_projector = np.eye(entries.shape[0]) - entries @ pinv
    second = 2.0 * (residual_projector * var) @ weighted_pinv.T @ (pinv @ pinv.T)
    gradient = (first + second)[: transfer.n_measurement_rows]
    return f, gradient, rank
