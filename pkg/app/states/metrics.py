"""
Reconstruction quality metrics

Blockwise fidelity and Frobenius distance, plus projection of linear
inversion output onto the physical (PSD) cone.
"""

import logging

import numpy as np
from scipy.linalg import eigh

from ..registers.blocks import BlockMatrix
from ..registers.errors import ReconstructionFailureError, StructureMismatchError
from ..settings import get_settings
from .library import BlockState

logger = logging.getLogger(__name__)


def _check_pair(a: BlockState, b: BlockState) -> None:
    if a.structure is not b.structure and a.structure != b.structure:
        raise StructureMismatchError("States belong to different block structures")


def _psd_sqrt(block: np.ndarray) -> np.ndarray:
    values, vectors = eigh(block)
    return (vectors * np.sqrt(np.clip(values, 0.0, None))) @ vectors.conj().T


def fidelity(a: BlockState, b: BlockState) -> float:
    """Uhlmann fidelity (sum_j Tr sqrt(sqrt(a_j) b_j sqrt(a_j)))^2"""
    _check_pair(a, b)
    root_sum = 0.0
    for block_a, block_b in zip(a.blocks, b.blocks):
        root_a = _psd_sqrt(block_a)
        inner = root_a @ block_b @ root_a
        values = eigh((inner + inner.conj().T) / 2, eigvals_only=True)
        root_sum += float(np.sum(np.sqrt(np.clip(values, 0.0, None))))
    return float(np.clip(root_sum ** 2, 0.0, 1.0))


def frobenius_distance(a: BlockState, b: BlockState) -> float:
    _check_pair(a, b)
    return (a.matrix - b.matrix).frobenius_norm()


def purity(state: BlockState) -> float:
    """Full-space purity of the state with copies shared uniformly"""
    return float(
        sum(
            np.real(np.sum(block * block.T)) / sector.multiplicity
            for sector, block in zip(state.structure.sectors, state.blocks)
        )
    )


def psd_project(state: BlockState) -> BlockState:
    """Clip negative eigenvalues per block and rescale to the original trace weight.

    Raises:
        ReconstructionFailureError: a block carries trace weight but has no
            positive spectrum left after clipping.
    """
    floor = get_settings().tolerances.psd_floor
    weights = np.array(state.trace_weights, dtype=float)
    projected = []
    clipped_blocks = 0
    for index, (block, weight) in enumerate(zip(state.blocks, state.trace_weights)):
        values, vectors = eigh((block + block.conj().T) / 2)
        if values[0] >= 0.0:
            projected.append(block)
            continue
        clipped_blocks += values[0] < -floor
        kept = np.clip(values, 0.0, None)
        total = float(np.sum(kept))
        if weight <= floor:
            # nothing to rescale to; the sector drops out
            projected.append(np.zeros_like(block))
            weights[index] = 0.0
            continue
        if total <= 0.0:
            raise ReconstructionFailureError(
                f"Block {index} has trace weight {weight:.3e} but no positive spectrum"
            )
        projected.append((vectors * (kept * weight / total)) @ vectors.conj().T)
    if clipped_blocks:
        logger.warning(f"PSD projection clipped negative eigenvalues in {clipped_blocks} block(s)")
    return BlockState(
        BlockMatrix(state.structure, tuple(projected)).as_hermitian(),
        weights,
    )
