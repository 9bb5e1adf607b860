"""
Fixtures for API tests.
"""

import pytest

from app.circuits.params import CircuitLayout, random_params


@pytest.fixture
def design_body():
    """Design request for a small register."""
    return {"config": {"n": 4, "layers": 3, "restarts": 3, "iterations": 5}, "out": "results/n4"}


@pytest.fixture
def theta4_payload():
    """Inline parameter matrix for N = 4."""
    return random_params(CircuitLayout(layers=3), 7, seed=0, n_total=4).to_dict()
