"""
Fixtures for tomography tests.
"""

import pytest

from app.circuits.params import CircuitLayout, random_params
from app.circuits.synthesis import synthesize_all
from app.measurement.basis import build_operator_basis
from app.measurement.observables import build_observables
from app.registers.structure import RegisterSpec, build_block_structure
from app.tomography.counting import min_readouts
from app.tomography.transfer import build_transfer_matrix


@pytest.fixture
def tomography_setup():
    """Builds (structure, observables, basis, readouts, transfer) for N spins."""

    def _build(n_total: int, n_readouts: int = None, seed: int = 0, dicke_only: bool = False):
        structure = build_block_structure(RegisterSpec(n_total=n_total))
        if dicke_only:
            structure = structure.dicke_only()
        if n_readouts is None:
            n_readouts = min_readouts(n_total, dicke_only) + 2
        observables = build_observables(structure)
        basis = build_operator_basis(structure)
        params = random_params(CircuitLayout(layers=3), n_readouts, seed, n_total)
        readouts = synthesize_all(params, structure)
        transfer = build_transfer_matrix(readouts, observables, basis)
        return structure, observables, basis, readouts, transfer

    return _build
