"""
Readout synthesis

Builds the block unitary of each readout circuit,
U = R(p_L) E ... E R(p_1), and differentiates functions of U^dagger O U
with respect to the circuit angles.
"""

import logging
from functools import lru_cache
from typing import List, Optional, Sequence

import numpy as np

from ..registers.blocks import BlockMatrix
from ..registers.structure import BlockStructure
from .layers import BlockUnitary, entangling_layer, generators, layer_factors, rotation_layer
from .params import PARAMS_PER_LAYER, CircuitLayout, ParamMatrix

logger = logging.getLogger(__name__)


def synthesize(
    theta_row: Sequence[float],
    layout: CircuitLayout,
    structure: BlockStructure,
    n_layers: Optional[int] = None,
) -> BlockUnitary:
    """Unitary of one circuit; ``n_layers`` below the layout width ignores trailing angles"""
    theta_row = np.asarray(theta_row, dtype=float)
    if theta_row.shape != (layout.n_params,):
        raise ValueError(
            f"Expected {layout.n_params} angles for {layout.layers} layers, got {theta_row.shape}"
        )
    n_layers = layout.layers if n_layers is None else n_layers
    unitary = rotation_layer(theta_row[:PARAMS_PER_LAYER], structure)
    if n_layers > 1:
        entangler = entangling_layer(structure)
        for layer in range(1, n_layers):
            p = theta_row[PARAMS_PER_LAYER * layer:PARAMS_PER_LAYER * (layer + 1)]
            unitary = rotation_layer(p, structure) @ (entangler @ unitary)
    return unitary


def synthesize_all(params: ParamMatrix, structure: BlockStructure) -> List[BlockUnitary]:
    if params.n_total != structure.n_total:
        raise ValueError(
            f"Theta was built for N={params.n_total}, structure has N={structure.n_total}"
        )
    layout = params.layout
    unitaries = [
        synthesize(params.theta[i], layout, structure, params.layers_of(i))
        for i in range(params.n_readouts)
    ]
    logger.debug(f"Synthesized {len(unitaries)} readouts for N={structure.n_total}")
    return unitaries


@lru_cache(maxsize=128)
def _generator_pair(j2: int, axis: str):
    return generators(j2, axis)


def circuit_gradient(
    theta_row: Sequence[float],
    n_layers: int,
    structure: BlockStructure,
    commutator: BlockMatrix,
) -> np.ndarray:
    """Gradient of f(U) over the angles of one circuit.

    ``commutator`` holds C = sum_i [O_i, U Y_i U^dagger] for the circuit, where
    Y_i is the cost sensitivity to U^dagger O_i U. For a factor with generator
    G and later factors A, df/dangle = i Tr(G A^dagger C A).
    """
    theta_row = np.asarray(theta_row, dtype=float)
    grad = np.zeros(len(theta_row))
    for sector, c_block in zip(structure.sectors, commutator.blocks):
        factors = layer_factors(theta_row, n_layers, sector.j2)
        m = c_block
        for kind, column, factor in reversed(factors):
            if kind != "e":
                peripheral, central = _generator_pair(sector.j2, kind)
                grad[column] += float(np.real(1j * np.sum(central * m.T)))
                grad[column + 3] += float(np.real(1j * np.sum(peripheral * m.T)))
            m = factor.conj().T @ m @ factor
    return grad
