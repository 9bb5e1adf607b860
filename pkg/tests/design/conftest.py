"""
Fixtures for design tests.
"""

import pytest

from app.circuits.params import CircuitLayout, random_params
from app.design.optimizer import OptimizerConfig
from app.design.problem import DesignProblem
from app.tomography.counting import min_readouts


@pytest.fixture
def problem3(structure3):
    """Design problem at N = 3 with two spare readouts."""
    return DesignProblem.build(structure3, CircuitLayout(layers=2), min_readouts(3) + 2)


@pytest.fixture
def theta3(problem3):
    """Random starting angles for problem3."""
    return random_params(problem3.layout, problem3.n_readouts, seed=17, n_total=3)


@pytest.fixture
def quick_config():
    """Small optimizer budget for fast tests."""
    return OptimizerConfig(max_iterations=5, restarts=2, seed=3)
