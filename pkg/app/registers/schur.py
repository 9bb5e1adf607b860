"""
Schur basis

Permutation-symmetric decomposition of the peripheral spins built by
recursive angular-momentum coupling: start from one spin-1/2 and couple one
more spin-1/2 at a time with Clebsch-Gordan coefficients. Every coupling path
ends in one isomorphic copy of a total-spin sector; its isometry maps the
sector basis |j, m> (m = j ... -j) into the 2^n peripheral space.

``compress`` folds a star-symmetric full-space state into the brief block
representation and ``expand`` spreads a block state uniformly back over the
copies.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..settings import get_settings
from .blocks import BlockMatrix
from .errors import NotHermitianError, StructureMismatchError, SymmetryError
from .fullspace import check_cap, symmetry_defect
from .structure import BlockStructure, RegisterSpec, build_block_structure

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SchurBasis:
    """Per-copy isometries of the peripheral space, grouped by total spin"""

    n_peripheral: int
    copies: Tuple[Tuple[int, np.ndarray], ...]  # (j2, isometry 2^n x (j2 + 1))

    @property
    def full_dim(self) -> int:
        return 2 ** self.n_peripheral

    def copies_of(self, j2: int) -> List[np.ndarray]:
        return [v for k, v in self.copies if k == j2]

    def copy_counts(self) -> Dict[int, int]:
        counts: Dict[int, int] = {}
        for j2, _ in self.copies:
            counts[j2] = counts.get(j2, 0) + 1
        return counts

    def stacked(self) -> np.ndarray:
        """All isometry columns side by side (a 2^n x 2^n orthogonal matrix)"""
        return np.hstack([v for _, v in self.copies])

    def default_structure(self) -> BlockStructure:
        return build_block_structure(RegisterSpec(n_total=self.n_peripheral + 1))


def _couple_spin_half(j2: int, isometry: np.ndarray) -> List[Tuple[int, np.ndarray]]:
    """Couple one more spin-1/2 onto a spin-j copy.

    The new spin is the least significant tensor factor, so the new full
    vector is kron(old, e_s) with s = 0 for m2 = +1/2.
    """
    j = j2 / 2
    rows = isometry.shape[0]
    results = []
    for big_j2 in (j2 + 1, j2 - 1):
        if big_j2 < 0:
            continue
        big_j = big_j2 / 2
        coupled = np.zeros((rows, 2, big_j2 + 1))
        for a in range(big_j2 + 1):
            m = big_j - a
            up_m1, down_m1 = m - 0.5, m + 0.5
            if big_j2 > j2:
                up_c = np.sqrt((j + m + 0.5) / (j2 + 1))
                down_c = np.sqrt((j - m + 0.5) / (j2 + 1))
            else:
                up_c = -np.sqrt((j - m + 0.5) / (j2 + 1))
                down_c = np.sqrt((j + m + 0.5) / (j2 + 1))
            if abs(up_m1) <= j:
                coupled[:, 0, a] = up_c * isometry[:, int(round(j - up_m1))]
            if abs(down_m1) <= j:
                coupled[:, 1, a] = down_c * isometry[:, int(round(j - down_m1))]
        results.append((big_j2, coupled.reshape(rows * 2, big_j2 + 1)))
    return results


@lru_cache(maxsize=16)
def _schur_copies(n_peripheral: int) -> Tuple[Tuple[int, np.ndarray], ...]:
    copies: List[Tuple[int, np.ndarray]] = [(1, np.eye(2))]
    for _ in range(n_peripheral - 1):
        coupled = []
        for j2, isometry in copies:
            coupled.extend(_couple_spin_half(j2, isometry))
        # stable sort keeps path order within a sector
        copies = sorted(coupled, key=lambda item: -item[0])
    for _, isometry in copies:
        isometry.flags.writeable = False
    return tuple(copies)


def build_schur_basis(n_peripheral: int, cap: Optional[int] = None) -> SchurBasis:
    """Schur basis of ``n_peripheral`` spin-1/2 particles"""
    if n_peripheral < 1:
        raise ValueError(f"Need at least one peripheral spin, got {n_peripheral}")
    check_cap(n_peripheral, cap if cap is not None else get_settings().limits.full_space_cap)
    basis = SchurBasis(n_peripheral=n_peripheral, copies=_schur_copies(n_peripheral))
    logger.debug(f"Schur basis for {n_peripheral} spins: copies {basis.copy_counts()}")
    return basis


def _check_basis(structure: BlockStructure, basis: SchurBasis) -> None:
    if structure.n_total != basis.n_peripheral + 1:
        raise StructureMismatchError(
            f"Structure for N={structure.n_total} does not match a Schur basis "
            f"of {basis.n_peripheral} peripheral spins"
        )
    counts = basis.copy_counts()
    for sector in structure.sectors:
        if counts.get(sector.j2) != sector.multiplicity:
            raise StructureMismatchError(
                f"Sector j2={sector.j2} has multiplicity {sector.multiplicity}, "
                f"basis has {counts.get(sector.j2, 0)} copies"
            )


def compress(
    rho_full: np.ndarray,
    basis: SchurBasis,
    structure: Optional[BlockStructure] = None,
    check_symmetry: bool = True,
) -> BlockMatrix:
    """Fold a star-symmetric full-space operator into its brief representation.

    rho_j = sum over copies of (V (x) I2)^dagger rho (V (x) I2)
    """
    structure = structure or basis.default_structure()
    _check_basis(structure, basis)
    tolerances = get_settings().tolerances
    rho_full = np.asarray(rho_full, dtype=complex)
    dim = 2 * basis.full_dim
    if rho_full.shape != (dim, dim):
        raise StructureMismatchError(f"Expected a {dim}x{dim} matrix, got {rho_full.shape}")
    if np.max(np.abs(rho_full - rho_full.conj().T)) > tolerances.hermitian:
        raise NotHermitianError("Full-space input is not Hermitian")
    if check_symmetry:
        defect = symmetry_defect(rho_full, structure.n_total)
        if defect > tolerances.symmetry:
            raise SymmetryError(
                f"Input is not star-symmetric (permutation defect {defect:.3e})"
            )

    n = basis.full_dim
    tensor = rho_full.reshape(n, 2, n, 2)
    blocks = []
    for sector in structure.sectors:
        d = sector.peripheral_dim
        block = np.zeros((d, 2, d, 2), dtype=complex)
        for v in basis.copies_of(sector.j2):
            for s in range(2):
                for t in range(2):
                    block[:, s, :, t] += v.T @ tensor[:, s, :, t] @ v
        blocks.append(block.reshape(2 * d, 2 * d))
    return BlockMatrix(structure, tuple(blocks)).as_hermitian()


def _spread(op: BlockMatrix, basis: SchurBasis, per_copy_scale: bool) -> np.ndarray:
    _check_basis(op.structure, basis)
    n = basis.full_dim
    tensor = np.zeros((n, 2, n, 2), dtype=complex)
    for sector, block in zip(op.structure.sectors, op.blocks):
        d = sector.peripheral_dim
        part = block.reshape(d, 2, d, 2)
        if per_copy_scale:
            part = part / sector.multiplicity
        for v in basis.copies_of(sector.j2):
            for s in range(2):
                for t in range(2):
                    tensor[:, s, :, t] += v @ part[:, s, :, t] @ v.T
    return tensor.reshape(2 * n, 2 * n)


def expand(state: BlockMatrix, basis: SchurBasis) -> np.ndarray:
    """Full-space state with each brief block shared equally by its copies"""
    return _spread(state, basis, per_copy_scale=True)


def expand_operator(op: BlockMatrix, basis: SchurBasis) -> np.ndarray:
    """Full-space operator acting as ``op`` on every isomorphic copy"""
    return _spread(op, basis, per_copy_scale=False)
