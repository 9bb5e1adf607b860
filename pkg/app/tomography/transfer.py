"""
Transfer matrix

Linear map from basis coefficients c to predicted measurements o. Row
(j, i) holds Tr(U_j^dagger O_i U_j B_m); one trace-prior row per sector is
appended last, with 1 on each diagonal basis element of that sector.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.linalg import svd

from ..measurement.basis import OperatorBasis
from ..measurement.observables import ObservableSet
from ..registers.blocks import BlockMatrix
from ..registers.errors import StructureMismatchError
from ..registers.structure import BlockStructure
from ..settings import get_settings

logger = logging.getLogger(__name__)

RowLabel = Union[Tuple[str, int, int], Tuple[str, int]]


@dataclass(frozen=True, eq=False)
class TransferMatrix:
    structure: BlockStructure
    entries: np.ndarray
    n_readouts: int
    n_observables: int
    row_labels: Tuple[RowLabel, ...]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.entries.shape

    @property
    def n_measurement_rows(self) -> int:
        return self.n_readouts * self.n_observables

    @property
    def n_prior_rows(self) -> int:
        return self.entries.shape[0] - self.n_measurement_rows

    @property
    def measurement_rows(self) -> np.ndarray:
        return self.entries[: self.n_measurement_rows]

    def without_priors(self) -> np.ndarray:
        return self.measurement_rows

    def to_dict(self) -> dict:
        return {
            "rows": self.entries.shape[0],
            "cols": self.entries.shape[1],
            "readouts": self.n_readouts,
            "observables": self.n_observables,
            "row_labels": [list(label) for label in self.row_labels],
            "entries": self.entries.tolist(),
        }


def conjugated_observables(
    unitary: BlockMatrix, observables: ObservableSet
) -> List[np.ndarray]:
    """U^dagger O_i U for all observables, one (N_o, d, d) stack per sector"""
    return [
        np.matmul(u.conj().T, np.matmul(observables.stacked(s), u))
        for s, u in enumerate(unitary.blocks)
    ]


def measurement_rows(
    unitary: BlockMatrix, observables: ObservableSet, basis: OperatorBasis
) -> np.ndarray:
    """The N_o rows of F contributed by one readout"""
    return basis.sector_traces(conjugated_observables(unitary, observables))


def prior_rows(basis: OperatorBasis) -> np.ndarray:
    rows = np.zeros((len(basis.sectors), basis.size))
    for p in range(len(basis.sectors)):
        rows[p, basis.diagonal_indices(p)] = 1.0
    return rows


def build_transfer_matrix(
    readouts: Sequence[BlockMatrix],
    observables: ObservableSet,
    basis: OperatorBasis,
) -> TransferMatrix:
    structure = basis.structure
    if observables.structure != structure:
        raise StructureMismatchError("Observables and basis belong to different structures")
    for unitary in readouts:
        if unitary.structure != structure:
            raise StructureMismatchError("Readout unitary built for a different structure")

    n_obs = len(observables)
    blocks = [measurement_rows(u, observables, basis) for u in readouts]
    blocks.append(prior_rows(basis))
    entries = np.vstack(blocks)
    labels: List[RowLabel] = [
        ("measurement", j, i) for j in range(len(readouts)) for i in range(n_obs)
    ]
    labels.extend(("prior", p) for p in range(len(basis.sectors)))

    transfer = TransferMatrix(
        structure=structure,
        entries=entries,
        n_readouts=len(readouts),
        n_observables=n_obs,
        row_labels=tuple(labels),
    )
    if logger.isEnabledFor(logging.DEBUG):
        logger.debug(
            f"Transfer matrix {entries.shape[0]}x{entries.shape[1]}, "
            f"rank {numerical_rank(transfer)}"
        )
    return transfer


def numerical_rank(transfer: Union[TransferMatrix, np.ndarray], tol: Optional[float] = None) -> int:
    """Singular values above tol * sigma_max"""
    tol = get_settings().tolerances.rank if tol is None else tol
    if tol <= 0:
        raise ValueError(f"Rank tolerance must be positive, got {tol}")
    entries = transfer.entries if isinstance(transfer, TransferMatrix) else np.asarray(transfer)
    if entries.size == 0:
        return 0
    singular = svd(entries, compute_uv=False)
    if singular[0] == 0.0:
        return 0
    return int(np.sum(singular > tol * singular[0]))
