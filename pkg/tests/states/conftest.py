"""
Fixtures for state tests.
"""

import numpy as np
import pytest

from app.registers.blocks import BlockMatrix
from app.states.library import BlockState


@pytest.fixture
def non_physical_state(structure3):
    """Unit-trace Hermitian block state with one negative eigenvalue in the Dicke block."""
    dicke = np.diag([0.7, 0.3, 0.1, 0.0, 0.0, -0.1]).astype(complex)
    other = np.diag([0.0, 0.0]).astype(complex)
    return BlockState.from_matrix(BlockMatrix(structure3, (dicke, other), hermitian_flag=True))
