"""
Fixtures for experiment tests.
"""

import pytest
from typer.testing import CliRunner

from app.experiments.config import RunConfig


@pytest.fixture
def small_config(output_dir):
    """Quick 3-spin run with two spare readouts."""
    return RunConfig(
        n=3,
        layers=2,
        readouts=6,
        state="random",
        noise_sd=1e-3,
        repetitions=4,
        seed=2,
        restarts=2,
        iterations=3,
        sweep_sets=3,
        sweep_max=2,
        output_dir=str(output_dir),
    )


@pytest.fixture
def noiseless_config(small_config):
    """small_config without noise."""
    return small_config.model_copy(update={"noise_sd": 0.0})


@pytest.fixture
def runner():
    """Typer CLI runner."""
    return CliRunner()
