"""
Full-space operators

Brute-force 2^N representations used to cross-check the block machinery.
Qubit 0 is the first peripheral spin (most significant index), the central
spin is the last qubit.
"""

from functools import reduce
from typing import Sequence

import numpy as np

from .errors import FullSpaceCapError

PAULI = {
    "i": np.eye(2, dtype=complex),
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def check_cap(n_peripheral: int, cap: int) -> None:
    if n_peripheral > cap:
        raise FullSpaceCapError(
            f"{n_peripheral} peripheral spins exceed the full-space cap of {cap}"
        )


def kron_all(factors: Sequence[np.ndarray]) -> np.ndarray:
    return reduce(np.kron, factors)


def single_qubit_op(op: np.ndarray, qubit: int, n_qubits: int) -> np.ndarray:
    factors = [PAULI["i"]] * n_qubits
    factors[qubit] = op
    return kron_all(factors)


def collective_pauli(axis: str, n_total: int) -> np.ndarray:
    """sigma_axis^M (sum over peripheral spins) tensored with the central identity"""
    n_peripheral = n_total - 1
    return sum(
        single_qubit_op(PAULI[axis], q, n_total) for q in range(n_peripheral)
    )


def central_pauli(axis: str, n_total: int) -> np.ndarray:
    return single_qubit_op(PAULI[axis], n_total - 1, n_total)


def permute_qubits(matrix: np.ndarray, a: int, b: int, n_qubits: int) -> np.ndarray:
    """Pi M Pi for the transposition swapping qubits ``a`` and ``b``"""
    tensor = matrix.reshape((2,) * (2 * n_qubits))
    axes = list(range(2 * n_qubits))
    axes[a], axes[b] = axes[b], axes[a]
    axes[n_qubits + a], axes[n_qubits + b] = axes[n_qubits + b], axes[n_qubits + a]
    return tensor.transpose(axes).reshape(matrix.shape)


def symmetry_defect(matrix: np.ndarray, n_total: int) -> float:
    """Largest deviation under adjacent peripheral transpositions.

    Adjacent transpositions generate the symmetric group, so a zero defect
    means the operator commutes with every peripheral permutation.
    """
    defect = 0.0
    for q in range(n_total - 2):
        swapped = permute_qubits(matrix, q, q + 1, n_total)
        defect = max(defect, float(np.max(np.abs(swapped - matrix))))
    return defect


def rotation(axis: str, angle: float) -> np.ndarray:
    """exp(-i angle sigma_axis / 2)"""
    return np.cos(angle / 2) * PAULI["i"] - 1j * np.sin(angle / 2) * PAULI[axis]


def tensor_rotation(central: Sequence[float], peripheral: Sequence[float], n_total: int) -> np.ndarray:
    """Full-space R_x R_y R_x layer: collective on the peripheral spins, individual on the centre"""

    def euler(params):
        alpha, beta, gamma = params
        return rotation("x", alpha) @ rotation("y", beta) @ rotation("x", gamma)

    peripheral_gate = euler(peripheral)
    return kron_all([peripheral_gate] * (n_total - 1) + [euler(central)])


def coupling_evolution(n_total: int, coupling: float, duration: float) -> np.ndarray:
    """exp(-i H0 t) for H0 = (pi/2) J sigma_z^M sigma_z^A in the rotating frame"""
    z_m = np.real(np.diag(collective_pauli("z", n_total)))
    z_a = np.real(np.diag(central_pauli("z", n_total)))
    phases = np.exp(-1j * (np.pi / 2) * coupling * duration * z_m * z_a)
    return np.diag(phases)
