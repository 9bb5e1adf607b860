"""
Circuit layers in block form

Rotation layers act collectively on the peripheral spins (exp(-i x J_nu))
and individually on the central spin (exp(-i x sigma_nu / 2)); the
entangler is free evolution under the coupling for tau = 1 / (2 J).
"""

from functools import lru_cache
from typing import List, Sequence, Tuple

import numpy as np
from scipy.linalg import eigh

from ..registers.blocks import BlockMatrix
from ..registers.structure import BlockStructure, spin_ops_j2
from .params import PARAMS_PER_LAYER

# axis of each Euler slot: R_x(alpha) R_y(beta) R_x(gamma), gamma acts first
EULER_AXES = ("x", "y", "x")
_AXIS_INDEX = {"x": 0, "y": 1}

HALF_PAULI = {
    "x": np.array([[0, 0.5], [0.5, 0]], dtype=complex),
    "y": np.array([[0, -0.5j], [0.5j, 0]], dtype=complex),
}

BlockUnitary = BlockMatrix


@lru_cache(maxsize=128)
def _spectral(j2: int, axis: str) -> Tuple[np.ndarray, np.ndarray]:
    values, vectors = eigh(spin_ops_j2(j2)[_AXIS_INDEX[axis]])
    values.flags.writeable = False
    vectors.flags.writeable = False
    return values, vectors


def spin_rotation(j2: int, axis: str, angle: float) -> np.ndarray:
    """exp(-i angle J_axis) on a spin-j2/2 space"""
    values, vectors = _spectral(j2, axis)
    return (vectors * np.exp(-1j * angle * values)) @ vectors.conj().T


def generators(j2: int, axis: str) -> Tuple[np.ndarray, np.ndarray]:
    """Block generators (J_axis x I, I x sigma_axis / 2) of one rotation factor"""
    peripheral = np.kron(spin_ops_j2(j2)[_AXIS_INDEX[axis]], np.eye(2))
    central = np.kron(np.eye(j2 + 1), HALF_PAULI[axis])
    return peripheral, central


def rotation_factor(j2: int, axis: str, central: float, peripheral: float) -> np.ndarray:
    """exp(-i (peripheral J_axis x I + central I x sigma_axis / 2))"""
    return np.kron(spin_rotation(j2, axis, peripheral), spin_rotation(1, axis, central))


def _euler(j2: int, angles: Sequence[float]) -> np.ndarray:
    a, b, c = angles
    return spin_rotation(j2, "x", a) @ spin_rotation(j2, "y", b) @ spin_rotation(j2, "x", c)


def rotation_layer(p: Sequence[float], structure: BlockStructure) -> BlockUnitary:
    """Collective peripheral and individual central Euler rotation.

    ``p`` is (alpha, beta, gamma) for the central spin followed by
    (alpha', beta', gamma') for the peripheral spins.
    """
    p = np.asarray(p, dtype=float)
    if p.shape != (6,):
        raise ValueError(f"A rotation layer takes 6 angles, got {p.shape}")
    central = _euler(1, p[:3])
    return BlockMatrix(
        structure,
        tuple(np.kron(_euler(s.j2, p[3:]), central) for s in structure.sectors),
    )


def entangler_phases(j2: int) -> np.ndarray:
    m = np.real(np.diag(spin_ops_j2(j2)[2]))
    return np.exp(-1j * (np.pi / 2) * np.outer(m, [1.0, -1.0]).ravel())


def entangling_layer(structure: BlockStructure) -> BlockUnitary:
    """exp(-i (pi/2) Jz x sigma_z) per block"""
    return BlockMatrix(
        structure, tuple(np.diag(entangler_phases(s.j2)) for s in structure.sectors)
    )


def layer_factors(theta_row: Sequence[float], n_layers: int, j2: int) -> List[Tuple[str, int, np.ndarray]]:
    """Factors of one circuit on one sector, in the order they act.

    Each entry is (kind, parameter layer or -1, matrix) where kind is the
    rotation axis or "e" for the entangler. Layer l contributes the rotation
    factors for columns 6l + (2, 1, 0) paired with 6l + (5, 4, 3).
    """
    factors = []
    entangler = None
    for layer in range(n_layers):
        if layer > 0:
            if entangler is None:
                entangler = np.diag(entangler_phases(j2))
            factors.append(("e", -1, entangler))
        base = PARAMS_PER_LAYER * layer
        for slot in (2, 1, 0):
            axis = EULER_AXES[slot]
            factors.append(
                (
                    axis,
                    base + slot,
                    rotation_factor(j2, axis, theta_row[base + slot], theta_row[base + 3 + slot]),
                )
            )
    return factors
