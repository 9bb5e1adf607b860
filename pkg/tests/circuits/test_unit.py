"""
Unit tests for circuit parameters and block layers.
"""

import numpy as np
import pytest
from pydantic import ValidationError
from scipy.linalg import expm

from app.circuits.layers import (
    entangling_layer,
    rotation_layer,
    spin_rotation,
)
from app.circuits.params import CircuitLayout, ParamMatrix, random_params
from app.circuits.synthesis import synthesize, synthesize_all
from app.registers.structure import spin_ops_j2


@pytest.mark.unit
class TestCircuitLayout:
    """Test layouts and parameter counts."""

    def test_parameter_count(self, layout3):
        """Test 6 angles per layer."""
        assert layout3.n_params == 18

    def test_layers_must_be_positive(self):
        """Test zero layers is refused."""
        with pytest.raises(ValidationError):
            CircuitLayout(layers=0)


@pytest.mark.unit
class TestParamMatrix:
    """Test parameter matrix validation and helpers."""

    def test_random_params_deterministic(self, layout3):
        """Test the same seed reproduces the same angles in [0, 2 pi)."""
        a = random_params(layout3, 4, seed=1, n_total=4)
        b = random_params(layout3, 4, seed=1, n_total=4)
        assert np.array_equal(a.theta, b.theta)
        assert a.theta.shape == (4, 18)
        assert np.all((a.theta >= 0) & (a.theta < 2 * np.pi))

    def test_random_params_need_a_readout(self, layout3):
        """Test zero readouts is refused."""
        with pytest.raises(ValueError):
            random_params(layout3, 0, seed=0, n_total=4)

    def test_wrong_width_rejected(self):
        """Test theta width must be 6L."""
        with pytest.raises(ValueError):
            ParamMatrix(4, 3, np.zeros((2, 12)))

    def test_non_finite_rejected(self):
        """Test NaN angles are refused."""
        theta = np.zeros((1, 6))
        theta[0, 2] = np.nan
        with pytest.raises(ValueError):
            ParamMatrix(4, 1, theta)

    def test_row_layers_validated(self):
        """Test row layer counts must match rows and lie in [1, L]."""
        with pytest.raises(ValueError):
            ParamMatrix(4, 3, np.zeros((2, 18)), row_layers=(2,))
        with pytest.raises(ValueError):
            ParamMatrix(4, 3, np.zeros((2, 18)), row_layers=(2, 4))

    def test_active_mask(self):
        """Test rows with fewer layers leave trailing columns inactive."""
        params = ParamMatrix(4, 3, np.zeros((2, 18)), row_layers=(2, 3))
        mask = params.active_mask()
        assert mask[0].sum() == 12
        assert mask[1].all()
        assert params.layers_of(0) == 2

    def test_theta_is_read_only(self, params4):
        """Test stored angles cannot be mutated in place."""
        with pytest.raises(ValueError):
            params4.theta[0, 0] = 1.0

    def test_from_dict_checks_readouts(self, params4):
        """Test the readout header must match the rows."""
        data = params4.to_dict()
        data["readouts"] = 7
        with pytest.raises(ValueError):
            ParamMatrix.from_dict(data)

    def test_dict_restores_row_layers(self):
        """Test row layer counts survive serialization."""
        params = ParamMatrix(4, 3, np.ones((2, 18)), row_layers=(2, 3))
        restored = ParamMatrix.from_dict(params.to_dict())
        assert restored.row_layers == (2, 3)
        assert np.array_equal(restored.theta, params.theta)


@pytest.mark.unit
class TestLayers:
    """Test rotation and entangling layers per block."""

    @pytest.mark.parametrize("j2", [1, 2, 5])
    def test_spin_rotation_matches_expm(self, j2):
        """Test exp(-i angle J_y) from the cached spectrum."""
        jy = spin_ops_j2(j2)[1]
        assert np.allclose(spin_rotation(j2, "y", 0.83), expm(-0.83j * jy))

    def test_rotation_layer_is_unitary(self, structure4):
        """Test a rotation layer is unitary on every block."""
        layer = rotation_layer([0.1, 0.2, 0.3, 0.4, 0.5, 0.6], structure4)
        assert layer.is_unitary(tol=1e-12)

    def test_rotation_layer_needs_six_angles(self, structure4):
        """Test the angle vector length is checked."""
        with pytest.raises(ValueError):
            rotation_layer([0.1, 0.2, 0.3], structure4)

    def test_zero_rotation_is_identity(self, structure4):
        """Test all-zero angles give the identity."""
        layer = rotation_layer(np.zeros(6), structure4)
        assert all(np.allclose(b, np.eye(len(b))) for b in layer.blocks)

    def test_central_pi_rotation_flips_central_spin(self, structure3):
        """Test R_x(pi) on the central spin maps |m, 0> to |m, 1> up to phase."""
        layer = rotation_layer([np.pi, 0, 0, 0, 0, 0], structure3)
        dicke = layer.blocks[0]
        assert abs(dicke[1, 0]) == pytest.approx(1.0)

    def test_entangler_phases(self, structure3):
        """Test exp(-i (pi/2) m z) on the Dicke block."""
        entangler = entangling_layer(structure3)
        phases = np.diag(entangler.blocks[0])
        m = np.repeat([1.0, 0.0, -1.0], 2)
        z = np.tile([1.0, -1.0], 3)
        assert np.allclose(phases, np.exp(-0.5j * np.pi * m * z))


@pytest.mark.unit
class TestSynthesis:
    """Test circuit assembly."""

    def test_single_layer_is_rotation(self, structure4):
        """Test L = 1 reduces to one rotation layer."""
        p = np.array([0.3, 1.1, -0.4, 2.0, 0.7, 0.2])
        unitary = synthesize(p, CircuitLayout(layers=1), structure4)
        assert unitary.max_abs_diff(rotation_layer(p, structure4)) < 1e-14

    def test_two_layer_composition(self, structure4):
        """Test U = R(p2) E R(p1)."""
        p = np.linspace(0.1, 1.2, 12)
        unitary = synthesize(p, CircuitLayout(layers=2), structure4)
        expected = rotation_layer(p[6:], structure4) @ (
            entangling_layer(structure4) @ rotation_layer(p[:6], structure4)
        )
        assert unitary.max_abs_diff(expected) < 1e-14

    def test_fewer_row_layers_ignore_trailing_angles(self, structure4, layout3):
        """Test a 2-layer row ignores the third layer's angles."""
        theta = np.linspace(0.0, 3.0, 18)
        other = theta.copy()
        other[12:] = 9.0
        a = synthesize(theta, layout3, structure4, n_layers=2)
        b = synthesize(other, layout3, structure4, n_layers=2)
        assert a.max_abs_diff(b) == 0.0

    def test_wrong_angle_count(self, structure4, layout3):
        """Test the row length must match the layout."""
        with pytest.raises(ValueError):
            synthesize(np.zeros(12), layout3, structure4)

    def test_synthesize_all_checks_register(self, params4, structure3):
        """Test parameters for another N are refused."""
        with pytest.raises(ValueError):
            synthesize_all(params4, structure3)

    def test_synthesize_all_unitary(self, params4, structure4):
        """Test every synthesized readout is unitary."""
        unitaries = synthesize_all(params4, structure4)
        assert len(unitaries) == 5
        assert all(u.is_unitary(tol=1e-11) for u in unitaries)
