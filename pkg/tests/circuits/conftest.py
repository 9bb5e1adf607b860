"""
Fixtures for circuit tests.
"""

import pytest

from app.circuits.params import CircuitLayout, random_params


@pytest.fixture
def layout3():
    """Three-layer circuit layout."""
    return CircuitLayout(layers=3)


@pytest.fixture
def params4(layout3):
    """Five random three-layer readouts for N = 4."""
    return random_params(layout3, 5, seed=21, n_total=4)
