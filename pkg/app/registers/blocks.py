"""
Block matrices

Operators on a star register stored in the brief representation: one complex
matrix per total-spin sector, isomorphic copies summed together.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Sequence, Tuple

import numpy as np

from .errors import NotHermitianError, StructureMismatchError
from .structure import BlockStructure

HERMITIAN_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class BlockMatrix:
    """One ``block_dim x block_dim`` complex matrix per sector"""

    structure: BlockStructure
    blocks: Tuple[np.ndarray, ...]
    hermitian_flag: bool = False
    tol: float = field(default=HERMITIAN_TOL, compare=False, repr=False)

    def __post_init__(self):
        blocks = tuple(np.asarray(b, dtype=complex) for b in self.blocks)
        dims = self.structure.block_dims
        if len(blocks) != len(dims):
            raise StructureMismatchError(
                f"Expected {len(dims)} blocks, got {len(blocks)}"
            )
        for block, dim in zip(blocks, dims):
            if block.shape != (dim, dim):
                raise StructureMismatchError(
                    f"Block of shape {block.shape} does not fit dimension {dim}"
                )
            if self.hermitian_flag:
                scale = max(1.0, float(np.max(np.abs(block), initial=0.0)))
                if np.max(np.abs(block - block.conj().T), initial=0.0) > self.tol * scale:
                    raise NotHermitianError("Block flagged Hermitian is not Hermitian")
        object.__setattr__(self, "blocks", blocks)

    # Constructors

    @classmethod
    def zeros(cls, structure: BlockStructure) -> "BlockMatrix":
        return cls(
            structure,
            tuple(np.zeros((d, d), dtype=complex) for d in structure.block_dims),
            hermitian_flag=True,
        )

    @classmethod
    def identity(cls, structure: BlockStructure) -> "BlockMatrix":
        return cls(
            structure,
            tuple(np.eye(d, dtype=complex) for d in structure.block_dims),
            hermitian_flag=True,
        )

    @classmethod
    def from_blocks(
        cls, structure: BlockStructure, blocks: Iterable[np.ndarray], hermitian: bool = False
    ) -> "BlockMatrix":
        return cls(structure, tuple(blocks), hermitian_flag=hermitian)

    # Algebra

    def _check(self, other: "BlockMatrix") -> None:
        if other.structure is not self.structure and other.structure != self.structure:
            raise StructureMismatchError("Block matrices belong to different structures")

    def __add__(self, other: "BlockMatrix") -> "BlockMatrix":
        self._check(other)
        return BlockMatrix(
            self.structure,
            tuple(a + b for a, b in zip(self.blocks, other.blocks)),
            hermitian_flag=self.hermitian_flag and other.hermitian_flag,
        )

    def __sub__(self, other: "BlockMatrix") -> "BlockMatrix":
        self._check(other)
        return BlockMatrix(
            self.structure,
            tuple(a - b for a, b in zip(self.blocks, other.blocks)),
            hermitian_flag=self.hermitian_flag and other.hermitian_flag,
        )

    def scale(self, factor: complex) -> "BlockMatrix":
        real = np.isreal(factor)
        return BlockMatrix(
            self.structure,
            tuple(factor * b for b in self.blocks),
            hermitian_flag=self.hermitian_flag and bool(real),
        )

    def __matmul__(self, other: "BlockMatrix") -> "BlockMatrix":
        self._check(other)
        return BlockMatrix(
            self.structure, tuple(a @ b for a, b in zip(self.blocks, other.blocks))
        )

    def adjoint(self) -> "BlockMatrix":
        return BlockMatrix(
            self.structure,
            tuple(b.conj().T for b in self.blocks),
            hermitian_flag=self.hermitian_flag,
        )

    def conjugate_by(self, unitary: "BlockMatrix") -> "BlockMatrix":
        """U X U^dagger per block"""
        self._check(unitary)
        return BlockMatrix(
            self.structure,
            tuple(u @ b @ u.conj().T for u, b in zip(unitary.blocks, self.blocks)),
            hermitian_flag=self.hermitian_flag,
        )

    def heisenberg_by(self, unitary: "BlockMatrix") -> "BlockMatrix":
        """U^dagger X U per block (the observable seen through a readout)"""
        self._check(unitary)
        return BlockMatrix(
            self.structure,
            tuple(u.conj().T @ b @ u for u, b in zip(unitary.blocks, self.blocks)),
            hermitian_flag=self.hermitian_flag,
        )

    # Queries

    def traces(self) -> np.ndarray:
        return np.array([np.trace(b) for b in self.blocks])

    def trace(self) -> complex:
        return complex(np.sum(self.traces()))

    def inner(self, other: "BlockMatrix") -> complex:
        """sum_j Tr(A_j B_j)"""
        self._check(other)
        return complex(sum(np.sum(a * b.T) for a, b in zip(self.blocks, other.blocks)))

    def frobenius_norm(self) -> float:
        return float(np.sqrt(sum(np.sum(np.abs(b) ** 2) for b in self.blocks)))

    def is_hermitian(self, tol: float = HERMITIAN_TOL) -> bool:
        return all(
            np.max(np.abs(b - b.conj().T), initial=0.0) <= tol for b in self.blocks
        )

    def is_unitary(self, tol: float = HERMITIAN_TOL) -> bool:
        return all(
            np.max(np.abs(b.conj().T @ b - np.eye(len(b))), initial=0.0) <= tol
            for b in self.blocks
        )

    def max_abs_diff(self, other: "BlockMatrix") -> float:
        self._check(other)
        return max(
            float(np.max(np.abs(a - b), initial=0.0))
            for a, b in zip(self.blocks, other.blocks)
        )

    def as_hermitian(self) -> "BlockMatrix":
        """Symmetrize and flag as Hermitian"""
        return BlockMatrix(
            self.structure,
            tuple((b + b.conj().T) / 2 for b in self.blocks),
            hermitian_flag=True,
        )

    # Serialization

    def blocks_to_list(self) -> List[Dict[str, Any]]:
        return [
            {"re": b.real.tolist(), "im": b.imag.tolist()} for b in self.blocks
        ]

    @staticmethod
    def blocks_from_list(data: Sequence[Dict[str, Any]]) -> List[np.ndarray]:
        return [
            np.asarray(b["re"], dtype=float) + 1j * np.asarray(b["im"], dtype=float)
            for b in data
        ]


def block_diag_embed(block: np.ndarray, sector: int, structure: BlockStructure) -> BlockMatrix:
    """Place ``block`` into one sector, zeros elsewhere"""
    blocks = [np.zeros((d, d), dtype=complex) for d in structure.block_dims]
    blocks[sector] = np.asarray(block, dtype=complex)
    return BlockMatrix(structure, tuple(blocks))
