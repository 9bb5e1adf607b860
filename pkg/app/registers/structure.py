"""
Register structure

Symmetry skeleton of an N-spin star register: one central spin coupled to
N-1 magnetically equivalent peripheral spins. The peripheral space splits
into total-spin sectors j = (N-1)/2, (N-1)/2 - 1, ... each appearing with a
multiplicity; every sector is tensored with the central qubit.

Spins are stored doubled (``j2 = 2j``) so that half-integers stay integers.
"""

import logging
from functools import lru_cache
from math import ceil, comb
from typing import Any, Dict, List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

logger = logging.getLogger(__name__)


class RegisterSpec(BaseModel):
    """Physical description of the register"""

    n_total: int = Field(..., ge=2, description="Central spin plus peripheral spins")
    coupling: float = Field(default=1.0, gt=0.0, description="J_AM in Hz")
    larmor_offsets: Tuple[float, float] = Field(
        default=(0.0, 0.0), description="(omega_A, omega_M) in Hz"
    )

    model_config = ConfigDict(frozen=True)

    @property
    def n_peripheral(self) -> int:
        return self.n_total - 1


class SectorSpec(BaseModel):
    """One total-spin sector of the peripheral spins"""

    j2: int = Field(..., ge=0)
    multiplicity: int = Field(..., ge=1)

    model_config = ConfigDict(frozen=True)

    @property
    def j(self) -> float:
        return self.j2 / 2

    @property
    def peripheral_dim(self) -> int:
        return self.j2 + 1

    @property
    def block_dim(self) -> int:
        return 2 * self.peripheral_dim

    def to_dict(self) -> Dict[str, int]:
        return {
            "j2": self.j2,
            "multiplicity": self.multiplicity,
            "block_dim": self.block_dim,
        }


class BlockStructure(BaseModel):
    """Ordered sector list (Dicke sector first) of a register"""

    register_spec: RegisterSpec
    sectors: Tuple[SectorSpec, ...]

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _check_dimensions(self) -> "BlockStructure":
        n = self.register_spec.n_total
        if len(self.sectors) != ceil(n / 2):
            raise ValueError(
                f"Expected {ceil(n / 2)} sectors for N={n}, got {len(self.sectors)}"
            )
        total = sum(s.multiplicity * s.peripheral_dim for s in self.sectors)
        if total != 2 ** (n - 1):
            raise ValueError(
                f"Sector dimensions sum to {total}, expected {2 ** (n - 1)}"
            )
        j2s = [s.j2 for s in self.sectors]
        if j2s != sorted(j2s, reverse=True):
            raise ValueError("Sectors must be ordered by descending total spin")
        return self

    @property
    def n_total(self) -> int:
        return self.register_spec.n_total

    @property
    def n_sectors(self) -> int:
        return len(self.sectors)

    @property
    def block_dims(self) -> List[int]:
        return [s.block_dim for s in self.sectors]

    @property
    def basis_size(self) -> int:
        """Number of real parameters of a block operator (sum of block_dim^2)"""
        return sum(d * d for d in self.block_dims)

    @property
    def dicke(self) -> SectorSpec:
        return self.sectors[0]

    def dicke_only(self) -> "BlockStructure":
        """Structure restricted to the Dicke sector.

        The result no longer satisfies the full dimension identity, so it is
        built without validation; it is only used to size Dicke-subspace
        tomography problems.
        """
        return BlockStructure.model_construct(
            register_spec=self.register_spec, sectors=(self.sectors[0],)
        )

    @property
    def is_dicke_restricted(self) -> bool:
        return len(self.sectors) == 1 and self.n_total > 2

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n_total,
            "sectors": [s.to_dict() for s in self.sectors],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any], coupling: float = 1.0) -> "BlockStructure":
        structure = build_block_structure(RegisterSpec(n_total=data["n"], coupling=coupling))
        stored = [(s["j2"], s["multiplicity"]) for s in data["sectors"]]
        if len(stored) == 1 and structure.n_sectors > 1:
            structure = structure.dicke_only()
        expected = [(s.j2, s.multiplicity) for s in structure.sectors]
        if stored != expected:
            raise ValueError(f"Stored sectors {stored} do not match N={data['n']}")
        return structure


def sector_multiplicity(n_total: int, index: int) -> int:
    """Number of isomorphic copies of sector ``index`` (1-based, Dicke = 1).

    N_i = (N + 2 - 2i) / (N + 1 - i) * C(N - 1, i - 1)
    """
    numerator = (n_total + 2 - 2 * index) * comb(n_total - 1, index - 1)
    denominator = n_total + 1 - index
    if numerator % denominator:
        raise ArithmeticError(f"Non-integer multiplicity for N={n_total}, i={index}")
    return numerator // denominator


def build_block_structure(spec: RegisterSpec) -> BlockStructure:
    """Enumerate the total-spin sectors of a star register"""
    n = spec.n_total
    if n < 2:
        raise ValueError(f"A star register needs at least 2 spins, got {n}")

    sectors = []
    for index in range(1, ceil(n / 2) + 1):
        j2 = (n - 1) - 2 * (index - 1)
        sectors.append(
            SectorSpec(j2=j2, multiplicity=sector_multiplicity(n, index))
        )
    structure = BlockStructure(register_spec=spec, sectors=tuple(sectors))
    logger.debug(
        f"Built block structure for N={n}: "
        f"{[(s.j2, s.multiplicity) for s in structure.sectors]}"
    )
    return structure


def _as_j2(j: float) -> int:
    doubled = 2 * float(j)
    j2 = int(round(doubled))
    if j2 < 0 or abs(doubled - j2) > 1e-12:
        raise ValueError(f"Spin must be a non-negative half-integer, got {j}")
    return j2


@lru_cache(maxsize=64)
def _spin_ops(j2: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    j = j2 / 2
    m = j - np.arange(j2 + 1)
    # <m+1|J+|m> on the superdiagonal, basis ordered m = j ... -j
    ladder = np.sqrt(j * (j + 1) - m[1:] * (m[1:] + 1))
    j_plus = np.diag(ladder, k=1).astype(complex)
    j_minus = j_plus.conj().T
    jx = (j_plus + j_minus) / 2
    jy = (j_plus - j_minus) / 2j
    jz = np.diag(m).astype(complex)
    for op in (jx, jy, jz):
        op.flags.writeable = False
    return jx, jy, jz


def angular_momentum_ops(j: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Spin-j operators (Jx, Jy, Jz) in the basis m = j, j-1, ..., -j.

    Returned arrays are cached and read-only.
    """
    return _spin_ops(_as_j2(j))


def spin_ops_j2(j2: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    if j2 < 0:
        raise ValueError(f"Doubled spin must be non-negative, got {j2}")
    return _spin_ops(j2)
