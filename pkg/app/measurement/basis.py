"""
Hermitian operator basis

Elementary Hermitian matrices spanning the block space, one sector at a
time: diagonal units |q><q|, symmetric pairs |q1><q2| + |q2><q1| and
antisymmetric pairs i|q1><q2| - i|q2><q1| (q1 < q2).

Coefficients follow H = sum_m c_m B_m, so c_m is Tr(H B_m) divided by the
element norm Tr(B_m B_m) (1 for diagonal units, 2 for pairs).
"""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..registers.blocks import BlockMatrix
from ..registers.structure import BlockStructure

DIAGONAL, SYMMETRIC, ANTISYMMETRIC = 0, 1, 2
KIND_NAMES = {DIAGONAL: "diagonal", SYMMETRIC: "symmetric", ANTISYMMETRIC: "antisymmetric"}


@dataclass(frozen=True, eq=False)
class SectorIndex:
    """Basis slice of one sector"""

    sector: int
    dim: int
    offset: int
    upper: Tuple[np.ndarray, np.ndarray]

    @property
    def n_pairs(self) -> int:
        return len(self.upper[0])

    @property
    def size(self) -> int:
        return self.dim + 2 * self.n_pairs

    @property
    def diagonal_slice(self) -> slice:
        return slice(self.offset, self.offset + self.dim)

    @property
    def symmetric_slice(self) -> slice:
        start = self.offset + self.dim
        return slice(start, start + self.n_pairs)

    @property
    def antisymmetric_slice(self) -> slice:
        start = self.offset + self.dim + self.n_pairs
        return slice(start, start + self.n_pairs)


@dataclass(frozen=True, eq=False)
class OperatorBasis:
    structure: BlockStructure
    sectors: Tuple[SectorIndex, ...]
    # per-element label arrays, index m
    sector_of: np.ndarray = field(repr=False)
    q1: np.ndarray = field(repr=False)
    q2: np.ndarray = field(repr=False)
    kind: np.ndarray = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.kind)

    def __len__(self) -> int:
        return self.size

    @property
    def norms(self) -> np.ndarray:
        """Tr(B_m B_m): 1 for diagonal units, 2 for pairs"""
        return np.where(self.kind == DIAGONAL, 1.0, 2.0)

    def index_of(self, sector: int, q1: int, q2: int, kind: int) -> int:
        matches = np.flatnonzero(
            (self.sector_of == sector) & (self.q1 == q1) & (self.q2 == q2) & (self.kind == kind)
        )
        if len(matches) != 1:
            raise KeyError(f"No basis element ({sector}, {q1}, {q2}, {kind})")
        return int(matches[0])

    def label(self, m: int) -> Tuple[int, int, int, str]:
        return (int(self.sector_of[m]), int(self.q1[m]), int(self.q2[m]), KIND_NAMES[int(self.kind[m])])

    def diagonal_indices(self, sector: Optional[int] = None) -> np.ndarray:
        """Indices of the diagonal units, in sector order"""
        mask = self.kind == DIAGONAL
        if sector is not None:
            mask &= self.sector_of == sector
        return np.flatnonzero(mask)

    def element(self, m: int) -> BlockMatrix:
        sector, q1, q2, kind = (int(self.sector_of[m]), int(self.q1[m]), int(self.q2[m]), int(self.kind[m]))
        blocks = [np.zeros((d, d), dtype=complex) for d in self.structure.block_dims]
        if kind == DIAGONAL:
            blocks[sector][q1, q1] = 1.0
        elif kind == SYMMETRIC:
            blocks[sector][q1, q2] = blocks[sector][q2, q1] = 1.0
        else:
            blocks[sector][q1, q2] = 1j
            blocks[sector][q2, q1] = -1j
        return BlockMatrix(self.structure, tuple(blocks), hermitian_flag=True)

    def items(self) -> List[BlockMatrix]:
        return [self.element(m) for m in range(self.size)]

    def sector_traces(self, sector_stacks: Sequence[np.ndarray]) -> np.ndarray:
        """Tr(H_k B_m) for a batch of operators.

        ``sector_stacks[j]`` holds the sector-j blocks of K operators with
        shape (K, d, d); the result has shape (K, basis size).
        """
        batch = sector_stacks[0].shape[0]
        out = np.zeros((batch, self.size))
        for index, stack in zip(self.sectors, sector_stacks):
            rows, cols = index.upper
            out[:, index.diagonal_slice] = np.real(np.diagonal(stack, axis1=1, axis2=2))
            upper = stack[:, rows, cols]
            lower = stack[:, cols, rows]
            out[:, index.symmetric_slice] = np.real(upper + lower)
            out[:, index.antisymmetric_slice] = np.real(1j * (lower - upper))
        return out

    def traces_with(self, op: BlockMatrix) -> np.ndarray:
        """Tr(H B_m) for every basis element"""
        return self.sector_traces([b[np.newaxis] for b in op.blocks])[0]

    def coefficients(self, op: BlockMatrix) -> np.ndarray:
        return self.traces_with(op) / self.norms

    def combine(self, c_rows: np.ndarray) -> List[np.ndarray]:
        """sum_m c_km B_m for each row k, one (K, d, d) stack per sector"""
        c_rows = np.atleast_2d(np.asarray(c_rows, dtype=float))
        if c_rows.shape[1] != self.size:
            raise ValueError(f"Expected {self.size} coefficients, got shape {c_rows.shape}")
        stacks = []
        for index in self.sectors:
            rows, cols = index.upper
            stack = np.zeros((c_rows.shape[0], index.dim, index.dim), dtype=complex)
            diag = np.arange(index.dim)
            stack[:, diag, diag] = c_rows[:, index.diagonal_slice]
            pairs = c_rows[:, index.symmetric_slice] + 1j * c_rows[:, index.antisymmetric_slice]
            stack[:, rows, cols] = pairs
            stack[:, cols, rows] = pairs.conj()
            stacks.append(stack)
        return stacks

    def from_coefficients(self, c: np.ndarray) -> BlockMatrix:
        c = np.asarray(c, dtype=float)
        if c.shape != (self.size,):
            raise ValueError(f"Expected {self.size} coefficients, got shape {c.shape}")
        blocks = [stack[0] for stack in self.combine(c[np.newaxis])]
        return BlockMatrix(self.structure, tuple(blocks), hermitian_flag=True)


def build_operator_basis(structure: BlockStructure) -> OperatorBasis:
    """Sector-major basis: diagonal, then symmetric, then antisymmetric elements"""
    sectors = []
    sector_of, q1s, q2s, kinds = [], [], [], []
    offset = 0
    for sector, dim in enumerate(structure.block_dims):
        rows, cols = np.triu_indices(dim, k=1)
        index = SectorIndex(sector=sector, dim=dim, offset=offset, upper=(rows, cols))
        sectors.append(index)
        diag = np.arange(dim)
        for kind, (a, b) in (
            (DIAGONAL, (diag, diag)),
            (SYMMETRIC, (rows, cols)),
            (ANTISYMMETRIC, (rows, cols)),
        ):
            sector_of.append(np.full(len(a), sector))
            q1s.append(a)
            q2s.append(b)
            kinds.append(np.full(len(a), kind))
        offset += index.size

    return OperatorBasis(
        structure=structure,
        sectors=tuple(sectors),
        sector_of=np.concatenate(sector_of),
        q1=np.concatenate(q1s),
        q2=np.concatenate(q2s),
        kind=np.concatenate(kinds),
    )


def diagonal_coefficients(basis: OperatorBasis) -> np.ndarray:
    """Basis indices of the brief-representation diagonal, in sector order"""
    return basis.diagonal_indices()
