"""
Fixtures for measurement tests.
"""

import pytest

from app.measurement.basis import build_operator_basis
from app.measurement.observables import build_observables
from app.registers.structure import RegisterSpec, build_block_structure


@pytest.fixture
def observables4(structure4):
    """Observable set of a 4-spin register."""
    return build_observables(structure4)


@pytest.fixture
def basis3(structure3):
    """Operator basis of a 3-spin register."""
    return build_operator_basis(structure3)


@pytest.fixture
def shifted_structure():
    """5-spin register with non-zero Larmor offsets."""
    return build_block_structure(
        RegisterSpec(n_total=5, coupling=2.0, larmor_offsets=(0.25, 0.0))
    )
