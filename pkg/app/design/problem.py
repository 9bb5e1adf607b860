"""
Design problem

Everything the readout-design cost needs: block structure, circuit layout,
observables, operator basis, weights and measurement variances. The cost
is a function of the circuit angles alone.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from ..circuits.params import CircuitLayout, ParamMatrix
from ..circuits.synthesis import circuit_gradient, synthesize_all
from ..measurement.basis import OperatorBasis, build_operator_basis
from ..measurement.observables import ObservableSet, build_observables
from ..registers.blocks import BlockMatrix
from ..registers.structure import BlockStructure
from ..tomography.cost import cost_and_gradient
from ..tomography.transfer import TransferMatrix, build_transfer_matrix

logger = logging.getLogger(__name__)

# cost reported for angles whose transfer matrix lost rank
REJECTED_COST = 1e30


@dataclass(frozen=True, eq=False)
class DesignProblem:
    structure: BlockStructure
    layout: CircuitLayout
    n_readouts: int
    observables: ObservableSet
    basis: OperatorBasis
    weights: np.ndarray
    var_o: np.ndarray
    row_layers: Optional[Tuple[int, ...]] = None

    @classmethod
    def build(
        cls,
        structure: BlockStructure,
        layout: CircuitLayout,
        n_readouts: int,
        row_layers: Optional[Tuple[int, ...]] = None,
        weights: Optional[np.ndarray] = None,
        var_o: Optional[np.ndarray] = None,
    ) -> "DesignProblem":
        observables = build_observables(structure)
        basis = build_operator_basis(structure)
        n_rows = n_readouts * len(observables)
        weights = np.ones(basis.size) if weights is None else np.asarray(weights, dtype=float)
        var_o = np.ones(n_rows) if var_o is None else np.asarray(var_o, dtype=float)
        if weights.shape != (basis.size,) or np.any(weights < 0):
            raise ValueError(f"Weights must be {basis.size} non-negative reals")
        if var_o.shape != (n_rows,) or np.any(var_o < 0):
            raise ValueError(f"var_o must be {n_rows} non-negative reals")
        return cls(
            structure=structure,
            layout=layout,
            n_readouts=n_readouts,
            observables=observables,
            basis=basis,
            weights=weights,
            var_o=var_o,
            row_layers=tuple(row_layers) if row_layers is not None else None,
        )

    @property
    def n_total(self) -> int:
        return self.structure.n_total

    def params(self, theta: np.ndarray) -> ParamMatrix:
        return ParamMatrix(self.n_total, self.layout.layers, theta, self.row_layers)

    def active_mask(self) -> np.ndarray:
        template = np.zeros((self.n_readouts, self.layout.n_params))
        return self.params(template).active_mask()

    def transfer(self, params: ParamMatrix) -> Tuple[TransferMatrix, List[BlockMatrix]]:
        readouts = synthesize_all(params, self.structure)
        return build_transfer_matrix(readouts, self.observables, self.basis), readouts

    def evaluate(self, params: ParamMatrix) -> Tuple[float, int]:
        """(f, rank); f is REJECTED_COST when F lost rank"""
        f, _, rank = self.evaluate_with_gradient(params, with_gradient=False)
        return f, rank

    def evaluate_with_gradient(
        self, params: ParamMatrix, with_gradient: bool = True
    ) -> Tuple[float, Optional[np.ndarray], int]:
        """f, df/dTheta (same shape as Theta) and rank"""
        transfer, readouts = self.transfer(params)
        f, dF, rank = cost_and_gradient(transfer, self.weights, self.var_o)
        if rank < self.basis.size:
            return REJECTED_COST, np.zeros_like(params.theta) if with_gradient else None, rank
        if not with_gradient:
            return f, None, rank

        n_obs = len(self.observables)
        gradient = np.zeros_like(params.theta)
        for j, unitary in enumerate(readouts):
            sensitivities = self.basis.combine(dF[j * n_obs:(j + 1) * n_obs])
            commutators = []
            for s, (u, y) in enumerate(zip(unitary.blocks, sensitivities)):
                x = np.matmul(u, np.matmul(y, u.conj().T))
                o = self.observables.stacked(s)
                commutators.append(np.sum(o @ x - x @ o, axis=0))
            gradient[j] = circuit_gradient(
                params.theta[j],
                params.layers_of(j),
                self.structure,
                BlockMatrix(self.structure, tuple(commutators)),
            )
        return f, gradient, rank
