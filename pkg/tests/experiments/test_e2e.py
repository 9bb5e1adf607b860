"""
End-to-end runs of the experiment commands at the 10-spin reference size.
"""

import numpy as np
import pytest

from app.circuits.params import random_params
from app.experiments.campaign import run_campaign
from app.experiments.commands import cmd_decompose, cmd_design, cmd_tomo
from app.experiments.config import RunConfig
from app.experiments.oracle import run_oracle
from app.experiments.sweeps import sweep_point


@pytest.mark.e2e
@pytest.mark.slow
class TestReferenceRuns:
    """Test the reference register end to end."""

    def test_oracle_four_spins(self):
        """Test the full-space cross-checks pass at N = 4."""
        report = run_oracle(4, n_circuits=6, n_states=4)
        assert report.passed, report.model_dump()

    def test_decompose_ten_spins(self, output_dir):
        """Test the N = 10 table is written with its sector multiplicities."""
        payload = cmd_decompose(10, out=output_dir)
        assert [s["block_dim"] for s in payload["sectors"]] == [20, 16, 12, 8, 4]
        assert payload["dicke_dof"] == 399
        assert (output_dir / "decompose.json").exists()

    def test_noiseless_mssm_campaign(self, output_dir):
        """Test 37 random readouts recover the MSSM mixture exactly without noise."""
        config = RunConfig(
            n=10, state="mssm", noise_sd=0.0, repetitions=2, seed=5, output_dir=str(output_dir)
        )
        report = cmd_tomo(config)
        assert report.provenance["rank"] == 880
        assert report.aggregates["frobenius_distance"]["mean"] < 1e-8
        assert report.provenance["theta"] == "random:5"

    @pytest.mark.parametrize("state", ["ghz", "coherent", "squeezed"])
    def test_noiseless_dicke_campaign(self, state, output_dir):
        """Test Dicke-sector states are recovered from 17 Dicke-only readouts."""
        config = RunConfig(
            n=10, dicke_only=True, state=state, noise_sd=0.0, repetitions=2,
            output_dir=str(output_dir),
        )
        report = cmd_tomo(config)
        assert report.provenance["readouts"] == 17
        assert report.provenance["rank"] == 400
        assert report.aggregates["frobenius_distance"]["mean"] < 1e-8


def _campaign_means(config, params):
    aggregates = run_campaign(config, params).aggregates
    return aggregates["frobenius_distance"]["mean"], aggregates["infidelity"]["mean"]


def _designed_and_random(config, random_seeds=(101, 102, 103)):
    """Mean distance and infidelity of the designed set over the mean of random sets.

    Both campaigns share config.seed, so every repetition sees the same noise draw.
    """
    designed = cmd_design(config).theta_star
    d_opt, i_opt = _campaign_means(config, designed)
    baseline = np.array(
        [
            _campaign_means(
                config, random_params(config.layout(), config.n_readouts, seed, config.n)
            )
            for seed in random_seeds
        ]
    )
    return d_opt / baseline[:, 0].mean(), i_opt / baseline[:, 1].mean()


@pytest.mark.e2e
@pytest.mark.slow
class TestDesignedVersusRandom:
    """Test designed readouts beat random ones under identical noise.

    Desk-scale runs at N = 4 with the 10-spin thresholds: distance ratio
    0.65 and infidelity ratio 0.75 for MSSM, infidelity ratio 0.8 for the
    Dicke-restricted GHZ state. The random baseline averages three sets.
    """

    def test_mssm_gain(self, output_dir):
        """Test a designed minimal set lowers MSSM distance and infidelity."""
        config = RunConfig(
            n=4, layers=3, state="mssm", noise_sd=3e-4, repetitions=100, seed=7,
            restarts=3, iterations=30, output_dir=str(output_dir),
        )
        distance_ratio, infidelity_ratio = _designed_and_random(config)
        assert distance_ratio <= 0.65
        assert infidelity_ratio <= 0.75

    def test_dicke_gain(self, output_dir):
        """Test a designed Dicke-only set lowers GHZ infidelity."""
        config = RunConfig(
            n=4, layers=3, dicke_only=True, state="ghz", noise_sd=3e-4, repetitions=100,
            seed=7, restarts=3, iterations=30, output_dir=str(output_dir),
        )
        assert config.n_readouts == 6
        _, infidelity_ratio = _designed_and_random(config)
        assert infidelity_ratio <= 0.8


@pytest.mark.e2e
@pytest.mark.slow
class TestCoefficientSpread:
    """Test sampled coefficient variances against propagated noise."""

    def test_each_coefficient_within_five_percent(self):
        """Test 10^4 repetitions match Var(c_m) per coefficient at N = 4."""
        config = RunConfig(
            n=4, layers=3, state="mssm", noise_sd=3e-4, repetitions=10_000, seed=3
        )
        params = random_params(config.layout(), config.n_readouts, seed=8, n_total=4)
        rows = run_campaign(config, params).coefficient_rows()
        assert len(rows) == 80
        sampled = np.array([r["sd"] for r in rows]) ** 2
        predicted = np.array([r["predicted_sd"] for r in rows]) ** 2
        live = predicted > 1e-12
        assert live.sum() > 0
        np.testing.assert_allclose(sampled[live], predicted[live], rtol=0.05)


@pytest.mark.e2e
@pytest.mark.slow
class TestReferenceSweeps:
    """Test the structure and extra-readout sweeps at N = 10."""

    def test_layer_mix_rank_threshold(self):
        """Test at most 12 two-layer circuits keep the minimal set at full rank."""
        config = RunConfig(n=10, layers=3, sweep_sets=3, seed=1)
        assert sweep_point(config, "layer_mix", 12).full_rank_fraction == 1.0
        assert sweep_point(config, "layer_mix", 13).full_rank_fraction == 0.0

    def test_layer_mix_cost_grows(self):
        """Test mean f does not fall as 2-layer circuits replace 3-layer ones.

        Points share their random sets; each step may dip by at most 15%.
        """
        config = RunConfig(n=10, layers=3, sweep_sets=5, seed=1)
        means = [sweep_point(config, "layer_mix", k).mean_f for k in (0, 4, 8, 12)]
        for before, after in zip(means, means[1:]):
            assert after >= 0.85 * before
        assert means[-1] > means[0]

    def test_extra_readouts_cost_falls(self):
        """Test mean f does not rise from 37 to 47 readouts with 20 sets per point.

        Each set grows by appended circuits; a step may rise by at most 1%.
        """
        config = RunConfig(n=10, layers=3, sweep_sets=20, seed=1)
        points = [sweep_point(config, "extra_readouts", k) for k in range(11)]
        assert all(p.full_rank_fraction == 1.0 for p in points)
        means = [p.mean_f for p in points]
        for before, after in zip(means, means[1:]):
            assert after <= 1.01 * before
        assert means[-1] < means[0]
