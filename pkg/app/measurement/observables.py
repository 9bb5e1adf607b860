"""
Spectral observables

The 2N + 4 observables read off the spectra: for every central-spin peak
(one per peripheral Jz eigenvalue) the x and y quadratures, and for the two
peripheral peaks (central spin up or down) the collective x and y
quadratures.
"""

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from ..registers.blocks import BlockMatrix
from ..registers.errors import NotHermitianError
from ..registers.structure import BlockStructure, spin_ops_j2
from ..settings import get_settings

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
CENTRAL_UP = np.diag([1.0, 0.0]).astype(complex)
CENTRAL_DOWN = np.diag([0.0, 1.0]).astype(complex)

AXES = ("x", "y")


@dataclass(frozen=True, eq=False)
class ObservableSet:
    """Ordered observables with their (channel, axis) labels"""

    structure: BlockStructure
    items: Tuple[BlockMatrix, ...]
    labels: Tuple[Tuple[str, str], ...]

    def __len__(self) -> int:
        return len(self.items)

    @property
    def channels(self) -> List[str]:
        return list(dict.fromkeys(channel for channel, _ in self.labels))

    def stacked(self, sector: int) -> np.ndarray:
        """All observables restricted to one sector, shape (N_o, d, d)"""
        return np.stack([op.blocks[sector] for op in self.items])


def central_peak_m(n_total: int, peak: int) -> float:
    """Peripheral Jz eigenvalue of central peak ``peak`` (1-based, ascending frequency)"""
    return (peak - 1) - (n_total - 1) / 2


def build_observables(structure: BlockStructure) -> ObservableSet:
    n = structure.n_total
    items: List[BlockMatrix] = []
    labels: List[Tuple[str, str]] = []

    for peak in range(1, n + 1):
        m = central_peak_m(n, peak)
        for axis, sigma in zip(AXES, (SIGMA_X, SIGMA_Y)):
            blocks = []
            for sector in structure.sectors:
                projector = np.zeros((sector.peripheral_dim,) * 2, dtype=complex)
                if abs(m) <= sector.j:
                    index = int(round(sector.j - m))
                    projector[index, index] = 1.0
                blocks.append(np.kron(projector, sigma))
            items.append(BlockMatrix(structure, tuple(blocks), hermitian_flag=True))
            labels.append((f"central_{peak}", axis))

    for peak, central in ((1, CENTRAL_UP), (2, CENTRAL_DOWN)):
        for axis_index, axis in enumerate(AXES):
            blocks = [
                np.kron(2 * spin_ops_j2(sector.j2)[axis_index], central)
                for sector in structure.sectors
            ]
            items.append(BlockMatrix(structure, tuple(blocks), hermitian_flag=True))
            labels.append((f"peripheral_{peak}", axis))

    return ObservableSet(structure=structure, items=tuple(items), labels=tuple(labels))


def expectation(state, op: BlockMatrix) -> float:
    """sum_j Tr(rho_j O_j) for a BlockState (or bare BlockMatrix) and a Hermitian operator"""
    matrix = getattr(state, "matrix", state)
    value = matrix.inner(op)
    tol = get_settings().tolerances.symmetry
    if abs(value.imag) > tol * max(1.0, abs(value.real)):
        raise NotHermitianError(
            f"Expectation has imaginary part {value.imag:.3e}; operator is not Hermitian"
        )
    return float(value.real)


def expectations(state, observables: ObservableSet) -> np.ndarray:
    """All observable expectations of one state, in observable order"""
    return np.array([expectation(state, op) for op in observables.items])
