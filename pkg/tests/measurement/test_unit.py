"""
Unit tests for observables, the Hermitian operator basis and noise.
"""

import numpy as np
import pytest
from pydantic import ValidationError

from app.measurement.basis import (
    ANTISYMMETRIC,
    DIAGONAL,
    SYMMETRIC,
    build_operator_basis,
    diagonal_coefficients,
)
from app.measurement.noise import NoiseModel, apply_noise, relative_std
from app.measurement.observables import build_observables, central_peak_m, expectation, expectations
from app.registers.blocks import BlockMatrix
from app.registers.errors import NotHermitianError
from app.states.library import StateSpec, make_state, random_state


@pytest.mark.unit
class TestObservables:
    """Test the 2N + 4 spectral observables."""

    def test_count_and_labels(self, observables4):
        """Test N_o = 2N + 4 with central peaks before peripheral peaks."""
        assert len(observables4) == 12
        assert observables4.labels[0] == ("central_1", "x")
        assert observables4.labels[1] == ("central_1", "y")
        assert observables4.labels[-1] == ("peripheral_2", "y")
        assert observables4.channels == [
            "central_1", "central_2", "central_3", "central_4", "peripheral_1", "peripheral_2",
        ]

    def test_ten_spin_count(self, structure10):
        """Test N_o = 24 at N = 10."""
        assert len(build_observables(structure10)) == 24

    def test_central_peak_m_values(self):
        """Test peak i selects m = (i - 1) - (N - 1)/2."""
        assert [central_peak_m(4, i) for i in range(1, 5)] == [-1.5, -0.5, 0.5, 1.5]
        assert [central_peak_m(3, i) for i in range(1, 4)] == [-1.0, 0.0, 1.0]

    def test_outer_peaks_only_touch_dicke_sector(self, observables4):
        """Test |m| = j_max peaks vanish on the lower sectors."""
        first = observables4.items[0]
        assert np.allclose(first.blocks[1], 0)
        inner = observables4.items[2]
        assert not np.allclose(inner.blocks[1], 0)

    def test_observables_are_hermitian(self, observables4):
        """Test every observable is flagged and verified Hermitian."""
        assert all(op.hermitian_flag and op.is_hermitian() for op in observables4.items)

    def test_maximally_mixed_gives_zero_signal(self, structure4, observables4):
        """Test traceless observables read zero on the identity state."""
        state = make_state(StateSpec(kind="maximally_mixed"), structure4)
        assert np.allclose(expectations(state, observables4), 0.0)

    def test_equatorial_coherent_peripheral_signal(self, structure4, observables4):
        """Test <2 Jx (x) |0><0|> = N - 1 for the theta = pi/2 coherent state."""
        state = make_state(StateSpec(kind="coherent", theta=np.pi / 2), structure4)
        values = expectations(state, observables4)
        assert values[8] == pytest.approx(3.0)
        assert values[9] == pytest.approx(0.0, abs=1e-12)
        assert np.allclose(values[:8], 0.0)
        assert np.allclose(values[10:], 0.0)

    def test_non_hermitian_expectation_rejected(self, structure4):
        """Test an operator with imaginary expectation raises."""
        state = random_state(structure4, seed=0)
        op = BlockMatrix.identity(structure4).scale(1j)
        with pytest.raises(NotHermitianError):
            expectation(state, op)


@pytest.mark.unit
class TestOperatorBasis:
    """Test the sector-major Hermitian basis."""

    def test_size_matches_structure(self, structure10):
        """Test the basis has sum_j d_j^2 = 880 elements at N = 10."""
        basis = build_operator_basis(structure10)
        assert basis.size == 880
        assert basis.size == structure10.basis_size
        assert len(diagonal_coefficients(basis)) == sum(structure10.block_dims)

    def test_dicke_restricted_size(self, structure10):
        """Test the Dicke-only basis has 400 elements."""
        assert build_operator_basis(structure10.dicke_only()).size == 400

    def test_elements_are_orthogonal(self, basis3):
        """Test Tr(B_m B_n) = norm_m delta_mn."""
        items = basis3.items()
        gram = np.array([[np.real(a.inner(b)) for b in items] for a in items])
        assert np.allclose(gram, np.diag(basis3.norms))

    def test_norms(self, basis3):
        """Test norms are 1 on diagonal units and 2 on pairs."""
        assert set(basis3.norms[basis3.kind == DIAGONAL]) == {1.0}
        assert set(basis3.norms[basis3.kind != DIAGONAL]) == {2.0}

    def test_coefficients_reconstruct_operator(self, structure4):
        """Test H = sum_m c_m B_m with c_m = Tr(H B_m) / norm_m."""
        basis = build_operator_basis(structure4)
        state = random_state(structure4, seed=6)
        c = basis.coefficients(state.matrix)
        assert basis.from_coefficients(c).max_abs_diff(state.matrix) < 1e-14

    def test_element_has_unit_coefficient(self, basis3):
        """Test the coefficient vector of B_m is the m-th unit vector."""
        for m in (0, 7, basis3.size - 1):
            c = basis3.coefficients(basis3.element(m))
            assert np.allclose(c, np.eye(basis3.size)[m])

    def test_index_and_label(self, basis3):
        """Test index_of inverts label."""
        m = basis3.index_of(0, 1, 3, ANTISYMMETRIC)
        assert basis3.label(m) == (0, 1, 3, "antisymmetric")
        m = basis3.index_of(1, 0, 1, SYMMETRIC)
        assert basis3.label(m)[3] == "symmetric"
        with pytest.raises(KeyError):
            basis3.index_of(1, 0, 5, SYMMETRIC)

    def test_wrong_coefficient_length(self, basis3):
        """Test from_coefficients checks the vector length."""
        with pytest.raises(ValueError):
            basis3.from_coefficients(np.zeros(basis3.size + 1))


@pytest.mark.unit
class TestNoise:
    """Test additive noise and the relative standard deviation."""

    def test_zero_noise_is_exact(self):
        """Test sd = 0 returns an unchanged copy."""
        o = np.array([1.0, -2.0])
        noisy = apply_noise(o, NoiseModel(sd=0.0))
        assert np.array_equal(noisy, o)
        assert noisy is not o

    def test_seeded_noise_reproducible(self):
        """Test the same seed gives the same sample."""
        o = np.zeros(50)
        a = apply_noise(o, NoiseModel(sd=0.1, seed=4))
        b = apply_noise(o, NoiseModel(sd=0.1, seed=4))
        assert np.array_equal(a, b)

    def test_sample_variance_matches_model(self):
        """Test 10^5 draws have variance within 3% of sd^2 and zero mean."""
        model = NoiseModel(sd=0.1, seed=9)
        draws = apply_noise(np.zeros(100_000), model)
        assert np.var(draws, ddof=1) == pytest.approx(model.variance, rel=0.03)
        assert abs(np.mean(draws)) < 5 * model.sd / np.sqrt(draws.size)

    def test_shared_stream_continues(self):
        """Test a passed generator is advanced instead of reseeded."""
        model = NoiseModel(sd=0.1, seed=4)
        rng = np.random.default_rng(4)
        first = apply_noise(np.zeros(3), model, rng)
        second = apply_noise(np.zeros(3), model, rng)
        assert not np.array_equal(first, second)
        assert np.array_equal(first, apply_noise(np.zeros(3), model))

    def test_negative_sd_rejected(self):
        """Test the model refuses negative standard deviations."""
        with pytest.raises(ValidationError):
            NoiseModel(sd=-1.0)

    def test_variance(self):
        """Test variance is sd squared."""
        assert NoiseModel(sd=3e-4).variance == pytest.approx(9e-8)

    def test_relative_std(self):
        """Test rsd = mean sd / mean |o| per channel, inf for silent channels."""
        exact = np.array([[1.0, 0.0], [3.0, 0.0]])
        samples = np.stack([exact + 0.1, exact - 0.1])
        rsd = relative_std(exact, samples)
        assert rsd[0] == pytest.approx(np.sqrt(0.02) / 2.0)
        assert np.isinf(rsd[1])

    def test_relative_std_shape_check(self):
        """Test mismatched sample shapes raise."""
        with pytest.raises(ValueError):
            relative_std(np.zeros((2, 3)), np.zeros((4, 3, 2)))
