"""
Full-space cross-checks

Brute-force 2^N comparisons for the block machinery at small N: sector
counting, the Schur basis, compress/expand, observables under random
circuits, circuit restriction to each copy, collective operators and
noiseless reconstruction of the state library.
"""

import logging
from dataclasses import dataclass
from typing import Callable, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, computed_field
from scipy.special import comb

from ..circuits.params import CircuitLayout, random_params
from ..circuits.synthesis import synthesize_all
from ..measurement.basis import build_operator_basis
from ..measurement.observables import CENTRAL_DOWN, CENTRAL_UP, build_observables, expectations
from ..registers.blocks import BlockMatrix
from ..registers.errors import FullSpaceCapError
from ..registers.fullspace import (
    PAULI,
    collective_pauli,
    coupling_evolution,
    single_qubit_op,
    symmetry_defect,
    tensor_rotation,
)
from ..registers.schur import SchurBasis, build_schur_basis, compress, expand, expand_operator
from ..registers.structure import (
    BlockStructure,
    RegisterSpec,
    build_block_structure,
    sector_multiplicity,
    spin_ops_j2,
)
from ..settings import get_settings
from ..states.library import StateSpec, make_state, random_state
from ..states.metrics import frobenius_distance
from ..tomography.counting import min_readouts
from ..tomography.inversion import reconstruct
from ..tomography.transfer import build_transfer_matrix

logger = logging.getLogger(__name__)

OBSERVABLE_TOL = 1e-10
ROUND_TRIP_TOL = 1e-12
RECONSTRUCTION_TOL = 1e-8
# spare readouts beyond the minimum for the round-trip set
ROUND_TRIP_MARGIN = 2
LIBRARY_KINDS = ("maximally_mixed", "ghz", "coherent", "squeezed", "random", "mssm")


class OracleCheck(BaseModel):
    name: str
    max_error: float
    tolerance: float

    model_config = ConfigDict(frozen=True)

    @computed_field
    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.max_error)) and self.max_error <= self.tolerance


class OracleReport(BaseModel):
    """Outcome of every cross-check at one register size"""

    n: int
    checks: List[OracleCheck]

    model_config = ConfigDict(frozen=True)

    @computed_field
    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)


@dataclass(frozen=True, eq=False)
class _Fixture:
    structure: BlockStructure
    basis: SchurBasis
    layout: CircuitLayout
    rng_seed: int
    n_circuits: int
    n_states: int

    @property
    def n_total(self) -> int:
        return self.structure.n_total


# Full-space circuits and observables


def full_space_circuit(theta_row, n_layers: int, register: RegisterSpec) -> np.ndarray:
    """Brute-force U = R(p_L) E ... E R(p_1) with E the free evolution for 1/(2J)"""
    n = register.n_total
    theta_row = np.asarray(theta_row, dtype=float)
    entangler = coupling_evolution(n, register.coupling, 1.0 / (2.0 * register.coupling))
    unitary = tensor_rotation(theta_row[0:3], theta_row[3:6], n)
    for layer in range(1, n_layers):
        p = theta_row[6 * layer:6 * (layer + 1)]
        unitary = tensor_rotation(p[:3], p[3:], n) @ entangler @ unitary
    return unitary


def full_space_observables(n_total: int) -> List[np.ndarray]:
    """Central peaks P_m (x) sigma, then collective sigma^M (x) |0><0| and (x) |1><1|"""
    n_peripheral = n_total - 1
    z_m = np.real(np.diag(collective_pauli("z", n_total)))
    central = [single_qubit_op(PAULI[axis], n_total - 1, n_total) for axis in ("x", "y")]
    ops = []
    for peak in range(1, n_total + 1):
        two_m = 2 * (peak - 1) - n_peripheral
        projector = np.diag((np.abs(z_m - two_m) < 0.5).astype(complex))
        ops.extend(projector @ sigma for sigma in central)
    for spin_state in (CENTRAL_UP, CENTRAL_DOWN):
        select = single_qubit_op(spin_state, n_total - 1, n_total)
        ops.extend(collective_pauli(axis, n_total) @ select for axis in ("x", "y"))
    return ops


def restrict_to_copy(op_full: np.ndarray, isometry: np.ndarray) -> np.ndarray:
    """(V (x) I2)^dagger op (V (x) I2) for one isomorphic copy"""
    lift = np.kron(isometry, np.eye(2))
    return lift.T @ op_full @ lift


# Checks


def check_multiplicities(fx: _Fixture) -> OracleCheck:
    n = fx.n_total - 1
    error = 0.0
    for index, sector in enumerate(fx.structure.sectors, start=1):
        k = (n - sector.j2) // 2
        count = comb(n, k, exact=True) - (comb(n, k - 1, exact=True) if k > 0 else 0)
        error = max(error, abs(count - sector_multiplicity(fx.n_total, index)))
        error = max(error, abs(count - fx.basis.copy_counts().get(sector.j2, 0)))
    return OracleCheck(name="multiplicity_formula", max_error=float(error), tolerance=0.0)


def check_schur_orthonormal(fx: _Fixture) -> OracleCheck:
    v = fx.basis.stacked()
    error = float(np.max(np.abs(v.T @ v - np.eye(v.shape[1]))))
    if v.shape[0] != v.shape[1]:
        error = np.inf
    return OracleCheck(name="schur_orthonormal", max_error=error, tolerance=ROUND_TRIP_TOL)


def check_compress_expand(fx: _Fixture) -> OracleCheck:
    error = 0.0
    for k in range(fx.n_states):
        state = random_state(fx.structure, fx.rng_seed + k)
        back = compress(expand(state.matrix, fx.basis), fx.basis, fx.structure)
        error = max(error, back.max_abs_diff(state.matrix))
    return OracleCheck(name="compress_expand_identity", max_error=error, tolerance=ROUND_TRIP_TOL)


def check_collective_operators(fx: _Fixture) -> OracleCheck:
    """2 J_axis blocks expand to sigma^M; rotated sigma^M stays symmetric"""
    n = fx.n_total
    error = 0.0
    rng = np.random.default_rng(fx.rng_seed)
    for axis_index, axis in enumerate(("x", "y", "z")):
        blocks = tuple(
            np.kron(2 * spin_ops_j2(s.j2)[axis_index], np.eye(2)) for s in fx.structure.sectors
        )
        op = BlockMatrix(fx.structure, blocks, hermitian_flag=True)
        full = collective_pauli(axis, n)
        error = max(error, float(np.max(np.abs(expand_operator(op, fx.basis) - full))))
        rotation = tensor_rotation(rng.uniform(0, 2 * np.pi, 3), rng.uniform(0, 2 * np.pi, 3), n)
        error = max(error, symmetry_defect(rotation @ full @ rotation.conj().T, n))
    return OracleCheck(name="collective_operators", max_error=error, tolerance=OBSERVABLE_TOL)


def check_circuit_restriction(fx: _Fixture) -> OracleCheck:
    register = fx.structure.register_spec
    params = random_params(fx.layout, fx.n_circuits, fx.rng_seed, fx.n_total)
    error = 0.0
    for row, unitary in enumerate(synthesize_all(params, fx.structure)):
        full = full_space_circuit(params.theta[row], params.layers_of(row), register)
        for sector, block in zip(fx.structure.sectors, unitary.blocks):
            for v in fx.basis.copies_of(sector.j2):
                error = max(error, float(np.max(np.abs(restrict_to_copy(full, v) - block))))
    return OracleCheck(name="circuit_restriction", max_error=error, tolerance=OBSERVABLE_TOL)


def check_observables(fx: _Fixture) -> OracleCheck:
    """Blockwise expectations against Tr(U rho U^dagger O) in the full space"""
    register = fx.structure.register_spec
    observables = build_observables(fx.structure)
    full_ops = full_space_observables(fx.n_total)
    params = random_params(fx.layout, fx.n_circuits, fx.rng_seed + 1, fx.n_total)
    unitaries = synthesize_all(params, fx.structure)
    error = 0.0
    for k in range(fx.n_states):
        state = random_state(fx.structure, fx.rng_seed + 100 + k)
        rho_full = expand(state.matrix, fx.basis)
        for row, unitary in enumerate(unitaries):
            u_full = full_space_circuit(params.theta[row], params.layers_of(row), register)
            evolved = u_full @ rho_full @ u_full.conj().T
            full_values = np.array([np.real(np.trace(evolved @ op)) for op in full_ops])
            block_values = expectations(state.matrix.conjugate_by(unitary), observables)
            error = max(error, float(np.max(np.abs(full_values - block_values))))
    return OracleCheck(name="observables_full_space", max_error=error, tolerance=OBSERVABLE_TOL)


def check_round_trip(fx: _Fixture) -> OracleCheck:
    """Noiseless reconstruction of every library state from a minimal random set"""
    structure = fx.structure
    observables = build_observables(structure)
    basis = build_operator_basis(structure)
    n_readouts = min_readouts(fx.n_total, structure.is_dicke_restricted) + ROUND_TRIP_MARGIN
    params = random_params(fx.layout, n_readouts, fx.rng_seed + 2, fx.n_total)
    readouts = synthesize_all(params, structure)
    transfer = build_transfer_matrix(readouts, observables, basis)
    error = 0.0
    for kind in LIBRARY_KINDS:
        truth = make_state(StateSpec(kind=kind, theta=0.7, phi=0.3, seed=fx.rng_seed), structure)
        o = np.concatenate(
            [expectations(truth.matrix.conjugate_by(u), observables) for u in readouts]
        )
        result = reconstruct(transfer, o, truth.trace_weights, basis)
        error = max(error, frobenius_distance(truth, result.state))
    return OracleCheck(name="noiseless_round_trip", max_error=error, tolerance=RECONSTRUCTION_TOL)


CHECKS: List[Callable[[_Fixture], OracleCheck]] = [
    check_multiplicities,
    check_schur_orthonormal,
    check_compress_expand,
    check_collective_operators,
    check_circuit_restriction,
    check_observables,
    check_round_trip,
]


def run_oracle(
    n_total: int,
    seed: int = 0,
    n_circuits: int = 20,
    n_states: int = 10,
    layers: int = 3,
    cap: Optional[int] = None,
) -> OracleReport:
    """Run every cross-check at ``n_total`` spins (capped by settings.limits.oracle_cap)"""
    cap = cap if cap is not None else get_settings().limits.oracle_cap
    if n_total > cap:
        raise FullSpaceCapError(f"Oracle runs need N <= {cap}, got N={n_total}")
    if n_total < 2:
        raise ValueError(f"Oracle runs need N >= 2, got N={n_total}")
    register = RegisterSpec(n_total=n_total)
    fixture = _Fixture(
        structure=build_block_structure(register),
        basis=build_schur_basis(n_total - 1),
        layout=CircuitLayout(layers=layers),
        rng_seed=seed,
        n_circuits=n_circuits,
        n_states=n_states,
    )
    checks = []
    for check in CHECKS:
        result = check(fixture)
        level = logging.INFO if result.passed else logging.ERROR
        logger.log(level, f"N={n_total} {result.name}: max error {result.max_error:.3e}")
        checks.append(result)
    return OracleReport(n=n_total, checks=checks)
