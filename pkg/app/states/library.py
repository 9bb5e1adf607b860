"""
State library

Benchmark states built directly in block form: MSSM mixtures, GHZ,
coherent and one-axis-twisted spin states, seeded random mixtures and the
maximally mixed state. The central spin is the second tensor factor of
every block and |0> is spin up.
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Dict, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.linalg import expm

from ..registers.blocks import BlockMatrix
from ..registers.errors import StructureMismatchError
from ..registers.schur import build_schur_basis, compress
from ..registers.structure import BlockStructure, spin_ops_j2

logger = logging.getLogger(__name__)

StateKind = Literal["mssm", "ghz", "coherent", "squeezed", "random", "maximally_mixed"]


class StateSpec(BaseModel):
    """Kind and parameters of a library state"""

    kind: StateKind
    m_count: Optional[int] = Field(
        default=None, ge=0, description="MSSM 'many' count M (default N - 2)"
    )
    theta: float = Field(default=0.0, description="Coherent-state polar angle")
    phi: float = Field(default=0.0, description="Coherent-state azimuth")
    mu: Optional[float] = Field(
        default=None, description="Twisting angle (default pi / (2 (N - 1)))"
    )
    seed: int = Field(default=0, ge=0)

    model_config = ConfigDict(frozen=True)


@dataclass(frozen=True, eq=False)
class BlockState:
    """Hermitian block matrix plus its per-sector trace weights"""

    matrix: BlockMatrix
    trace_weights: np.ndarray

    @classmethod
    def from_matrix(cls, matrix: BlockMatrix) -> "BlockState":
        if not matrix.hermitian_flag:
            matrix = matrix.as_hermitian()
        return cls(matrix, np.real(matrix.traces()))

    @property
    def structure(self) -> BlockStructure:
        return self.matrix.structure

    @property
    def blocks(self):
        return self.matrix.blocks

    def min_eigenvalue(self) -> float:
        return min(float(np.linalg.eigvalsh(b)[0]) for b in self.blocks)

    def is_physical(self, floor: float = 1e-10) -> bool:
        return self.min_eigenvalue() >= -floor

    def to_dict(self) -> Dict[str, Any]:
        return {
            "structure": self.structure.to_dict(),
            "lambda": [float(x) for x in self.trace_weights],
            "blocks": self.matrix.blocks_to_list(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any], coupling: float = 1.0) -> "BlockState":
        structure = BlockStructure.from_dict(data["structure"], coupling=coupling)
        blocks = BlockMatrix.blocks_from_list(data["blocks"])
        state = cls.from_matrix(BlockMatrix(structure, tuple(blocks)))
        stored = np.asarray(data["lambda"], dtype=float)
        if stored.shape != state.trace_weights.shape or not np.allclose(
            stored, state.trace_weights, atol=1e-10
        ):
            raise ValueError("Stored trace weights do not match the block traces")
        return state


def _dicke_pure_state(structure: BlockStructure, peripheral: np.ndarray) -> BlockState:
    """Pure state |psi> (x) |0> in the Dicke sector, zeros elsewhere"""
    vector = np.kron(peripheral / np.linalg.norm(peripheral), np.array([1.0, 0.0]))
    blocks = [np.zeros((d, d), dtype=complex) for d in structure.block_dims]
    blocks[0] = np.outer(vector, vector.conj())
    return BlockState.from_matrix(BlockMatrix(structure, tuple(blocks)))


def _coherent_vector(j2: int, theta: float, phi: float) -> np.ndarray:
    _, jy, jz = spin_ops_j2(j2)
    top = np.zeros(j2 + 1, dtype=complex)
    top[0] = 1.0
    return expm(-1j * phi * jz) @ expm(-1j * theta * jy) @ top


def maximally_mixed_state(structure: BlockStructure) -> BlockState:
    if structure.is_dicke_restricted:
        d = structure.dicke.block_dim
        blocks = (np.eye(d, dtype=complex) / d,)
    else:
        scale = 2.0 ** structure.n_total
        blocks = tuple(
            np.eye(s.block_dim, dtype=complex) * s.multiplicity / scale
            for s in structure.sectors
        )
    return BlockState.from_matrix(BlockMatrix(structure, blocks, hermitian_flag=True))


def ghz_state(structure: BlockStructure) -> BlockState:
    j2 = structure.dicke.j2
    peripheral = np.zeros(j2 + 1, dtype=complex)
    peripheral[0] = peripheral[-1] = 1.0
    return _dicke_pure_state(structure, peripheral)


def coherent_state(structure: BlockStructure, theta: float, phi: float) -> BlockState:
    return _dicke_pure_state(structure, _coherent_vector(structure.dicke.j2, theta, phi))


def squeezed_state(structure: BlockStructure, mu: Optional[float] = None) -> BlockState:
    """One-axis twisted state exp(-i mu Jz^2) |theta = pi/2, phi = 0>"""
    j2 = structure.dicke.j2
    if mu is None:
        mu = np.pi / (2 * max(j2, 1))
    _, _, jz = spin_ops_j2(j2)
    twist = np.exp(-1j * mu * np.real(np.diag(jz)) ** 2)
    return _dicke_pure_state(structure, twist * _coherent_vector(j2, np.pi / 2, 0.0))


def random_state(structure: BlockStructure, seed: int) -> BlockState:
    """Seeded mixture of per-sector Wishart blocks with Dirichlet trace weights"""
    rng = np.random.default_rng(seed)
    concentration = np.array(
        [s.multiplicity * s.block_dim for s in structure.sectors], dtype=float
    )
    weights = rng.dirichlet(concentration) if len(concentration) > 1 else np.ones(1)
    blocks = []
    for weight, d in zip(weights, structure.block_dims):
        g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        wishart = g @ g.conj().T
        blocks.append(weight * wishart / np.real(np.trace(wishart)))
    return BlockState.from_matrix(BlockMatrix(structure, tuple(blocks)))


def mssm_full_space(n_total: int, m_count: int) -> np.ndarray:
    """Full-space MSSM mixture: one rank-1 term per arrangement of the S flipped spins.

    Each term is (|M,S>_l|0> + |S,M>_l|1>) with |S,M>_l the bitwise complement
    of |M,S>_l; the mixture is normalized to unit trace.
    """
    n = n_total - 1
    s_count = n - m_count
    full = 2 ** n
    terms = []
    for flipped in combinations(range(n), s_count):
        index = sum(1 << (n - 1 - q) for q in flipped)
        vector = np.zeros(2 * full)
        vector[2 * index] = 1.0
        vector[2 * (full - 1 - index) + 1] = 1.0
        terms.append(vector / np.sqrt(2))
    psi = np.array(terms).T
    return psi @ psi.T / len(terms)


def mssm_state(structure: BlockStructure, m_count: Optional[int] = None) -> BlockState:
    n = structure.n_total - 1
    if structure.is_dicke_restricted:
        raise StructureMismatchError("MSSM mixtures need the full block structure")
    m_count = n - 1 if m_count is None else m_count
    if not 0 <= m_count <= n:
        raise ValueError(f"MSSM count M must lie in [0, {n}], got {m_count}")
    basis = build_schur_basis(n)
    rho_full = mssm_full_space(structure.n_total, m_count)
    return BlockState.from_matrix(compress(rho_full, basis, structure))


def make_state(spec: StateSpec, structure: BlockStructure) -> BlockState:
    """Build a library state in block form"""
    logger.debug(f"Building {spec.kind} state for N={structure.n_total}")
    if spec.kind == "maximally_mixed":
        return maximally_mixed_state(structure)
    if spec.kind == "ghz":
        return ghz_state(structure)
    if spec.kind == "coherent":
        return coherent_state(structure, spec.theta, spec.phi)
    if spec.kind == "squeezed":
        return squeezed_state(structure, spec.mu)
    if spec.kind == "random":
        return random_state(structure, spec.seed)
    if spec.kind == "mssm":
        return mssm_state(structure, spec.m_count)
    raise ValueError(f"Unknown state kind: {spec.kind}")
