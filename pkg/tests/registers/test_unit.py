"""
Unit tests for register structures, spin operators and block matrices.
"""

from math import comb

import numpy as np
import pytest
from pydantic import BaseModel, ValidationError

from app.experiments.config import RunConfig
from app.registers.blocks import BlockMatrix, block_diag_embed
from app.registers.errors import NotHermitianError, StructureMismatchError
from app.registers.structure import (
    BlockStructure,
    RegisterSpec,
    SectorSpec,
    angular_momentum_ops,
    build_block_structure,
    sector_multiplicity,
    spin_ops_j2,
)


@pytest.mark.unit
class TestSectorEnumeration:
    """Test sector lists and multiplicities."""

    def test_ten_spin_multiplicities(self, structure10):
        """Test the N = 10 sector table."""
        assert [s.j2 for s in structure10.sectors] == [9, 7, 5, 3, 1]
        assert [s.multiplicity for s in structure10.sectors] == [1, 8, 27, 48, 42]
        assert structure10.block_dims == [20, 16, 12, 8, 4]

    def test_two_spin_register(self):
        """Test the smallest register has one sector with j = 1/2."""
        structure = build_block_structure(RegisterSpec(n_total=2))
        assert structure.n_sectors == 1
        assert structure.dicke.j2 == 1
        assert structure.dicke.multiplicity == 1
        assert structure.is_dicke_restricted is False

    @pytest.mark.parametrize("n_total", range(2, 16))
    def test_dimension_identity(self, n_total):
        """Test sum_i N_i (2 j_i + 1) = 2^(N-1)."""
        structure = build_block_structure(RegisterSpec(n_total=n_total))
        total = sum(s.multiplicity * s.peripheral_dim for s in structure.sectors)
        assert total == 2 ** (n_total - 1)
        assert structure.n_sectors == (n_total + 1) // 2

    @pytest.mark.parametrize("n_total", [3, 6, 9, 12])
    def test_multiplicity_matches_binomial_difference(self, n_total):
        """Test the closed form against C(n, k) - C(n, k - 1)."""
        n = n_total - 1
        for index in range(1, (n_total + 1) // 2 + 1):
            k = index - 1
            expected = comb(n, k) - (comb(n, k - 1) if k > 0 else 0)
            assert sector_multiplicity(n_total, index) == expected

    def test_dicke_sector_first(self, structure4):
        """Test sectors are ordered by descending spin."""
        assert structure4.dicke.j2 == 3
        assert structure4.sectors[1].j2 == 1

    def test_register_needs_two_spins(self):
        """Test registers smaller than two spins are rejected."""
        with pytest.raises(ValidationError):
            RegisterSpec(n_total=1)

    def test_register_rejects_non_positive_coupling(self):
        """Test the coupling must be positive."""
        with pytest.raises(ValidationError):
            RegisterSpec(n_total=4, coupling=0.0)

    def test_inconsistent_sectors_rejected(self, structure4):
        """Test a hand-built structure with ascending sectors fails validation."""
        with pytest.raises(ValidationError):
            BlockStructure(
                register_spec=structure4.register_spec,
                sectors=(structure4.sectors[1], structure4.sectors[0]),
            )


@pytest.mark.unit
class TestDickeRestriction:
    """Test the Dicke-only view of a structure."""

    def test_dicke_only_keeps_first_sector(self, structure10):
        """Test restriction keeps only j = (N-1)/2."""
        dicke = structure10.dicke_only()
        assert dicke.n_sectors == 1
        assert dicke.dicke.j2 == 9
        assert dicke.is_dicke_restricted is True
        assert dicke.basis_size == 400

    def test_full_structure_is_not_restricted(self, structure10):
        """Test the full structure reports no restriction."""
        assert structure10.is_dicke_restricted is False
        assert structure10.basis_size == 880


@pytest.mark.unit
class TestModelFieldNames:
    """Test record fields do not shadow pydantic model attributes."""

    @pytest.mark.parametrize("model", [RegisterSpec, SectorSpec, BlockStructure, RunConfig])
    def test_no_field_shadows_base_model(self, model):
        """Test every field name is free on BaseModel."""
        shadowed = [name for name in model.model_fields if hasattr(BaseModel, name)]
        assert shadowed == []

    def test_structure_keeps_register_spec(self, structure4):
        """Test the register lives under register_spec."""
        assert "register_spec" in BlockStructure.model_fields
        assert structure4.register_spec.n_total == 4


@pytest.mark.unit
class TestStructureSerialization:
    """Test structure dictionaries."""

    def test_from_dict_rebuilds_structure(self, structure4):
        """Test a stored structure is rebuilt from N."""
        rebuilt = BlockStructure.from_dict(structure4.to_dict())
        assert rebuilt == structure4

    def test_from_dict_restores_dicke_view(self, structure4):
        """Test a single stored sector comes back Dicke-restricted."""
        rebuilt = BlockStructure.from_dict(structure4.dicke_only().to_dict())
        assert rebuilt.is_dicke_restricted

    def test_from_dict_rejects_wrong_sectors(self, structure4):
        """Test stored multiplicities must match N."""
        data = structure4.to_dict()
        data["sectors"][1]["multiplicity"] = 3
        with pytest.raises(ValueError):
            BlockStructure.from_dict(data)


@pytest.mark.unit
class TestSpinOperators:
    """Test spin-j angular momentum matrices."""

    @pytest.mark.parametrize("j2", [1, 2, 3, 6, 9])
    def test_commutation_relation(self, j2):
        """Test [Jx, Jy] = i Jz."""
        jx, jy, jz = spin_ops_j2(j2)
        assert np.allclose(jx @ jy - jy @ jx, 1j * jz)

    @pytest.mark.parametrize("j2", [1, 4, 7])
    def test_casimir(self, j2):
        """Test Jx^2 + Jy^2 + Jz^2 = j (j + 1)."""
        jx, jy, jz = spin_ops_j2(j2)
        j = j2 / 2
        casimir = jx @ jx + jy @ jy + jz @ jz
        assert np.allclose(casimir, j * (j + 1) * np.eye(j2 + 1))

    def test_basis_order_is_descending_m(self):
        """Test Jz = diag(j, ..., -j)."""
        _, _, jz = angular_momentum_ops(1.5)
        assert np.allclose(np.diag(jz).real, [1.5, 0.5, -0.5, -1.5])

    def test_spin_zero(self):
        """Test j = 0 operators are 1x1 zeros."""
        for op in spin_ops_j2(0):
            assert op.shape == (1, 1)
            assert op[0, 0] == 0

    def test_invalid_spin_rejected(self):
        """Test non half-integer spins raise."""
        with pytest.raises(ValueError):
            angular_momentum_ops(0.3)
        with pytest.raises(ValueError):
            spin_ops_j2(-1)

    def test_operators_are_read_only(self):
        """Test cached operators cannot be mutated."""
        jx, _, _ = spin_ops_j2(2)
        with pytest.raises(ValueError):
            jx[0, 0] = 1.0


@pytest.mark.unit
class TestBlockMatrix:
    """Test block matrix construction and algebra."""

    def test_wrong_block_count(self, structure4):
        """Test the number of blocks must match the sectors."""
        with pytest.raises(StructureMismatchError):
            BlockMatrix(structure4, (np.eye(8),))

    def test_wrong_block_shape(self, structure4):
        """Test block shapes must match the sector dimensions."""
        with pytest.raises(StructureMismatchError):
            BlockMatrix(structure4, (np.eye(8), np.eye(3)))

    def test_hermitian_flag_checked(self, structure3):
        """Test a flagged block must be Hermitian."""
        bad = np.zeros((6, 6), dtype=complex)
        bad[0, 1] = 1.0
        with pytest.raises(NotHermitianError):
            BlockMatrix(structure3, (bad, np.zeros((2, 2))), hermitian_flag=True)

    def test_identity_trace(self, structure4):
        """Test the identity trace is the sum of block dimensions."""
        identity = BlockMatrix.identity(structure4)
        assert identity.trace() == pytest.approx(12)
        assert identity.is_unitary()

    def test_inner_matches_trace_of_product(self, structure3):
        """Test inner(A, B) = sum_j Tr(A_j B_j)."""
        rng = np.random.default_rng(1)
        blocks_a = tuple(rng.normal(size=(d, d)) for d in structure3.block_dims)
        blocks_b = tuple(rng.normal(size=(d, d)) for d in structure3.block_dims)
        a = BlockMatrix(structure3, blocks_a)
        b = BlockMatrix(structure3, blocks_b)
        assert a.inner(b) == pytest.approx((a @ b).trace())

    def test_conjugate_and_heisenberg_agree(self, structure3):
        """Test Tr(U rho U^dagger O) = Tr(rho U^dagger O U)."""
        rng = np.random.default_rng(2)
        unitaries, states, observables = [], [], []
        for d in structure3.block_dims:
            q, _ = np.linalg.qr(rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)))
            unitaries.append(q)
            h = rng.normal(size=(d, d))
            states.append(h + h.T)
            o = rng.normal(size=(d, d))
            observables.append(o + o.T)
        u = BlockMatrix(structure3, tuple(unitaries))
        rho = BlockMatrix(structure3, tuple(states), hermitian_flag=True)
        op = BlockMatrix(structure3, tuple(observables), hermitian_flag=True)
        assert rho.conjugate_by(u).inner(op) == pytest.approx(rho.inner(op.heisenberg_by(u)))

    def test_mismatched_structures(self, structure3, structure4):
        """Test algebra across structures raises."""
        with pytest.raises(StructureMismatchError):
            BlockMatrix.zeros(structure3) + BlockMatrix.zeros(structure4)

    def test_block_diag_embed(self, structure4):
        """Test embedding places the block in the named sector only."""
        op = block_diag_embed(np.eye(4), 1, structure4)
        assert np.allclose(op.blocks[0], 0)
        assert np.allclose(op.blocks[1], np.eye(4))

    def test_serialization_restores_blocks(self, structure3):
        """Test re/im lists restore complex blocks."""
        rng = np.random.default_rng(3)
        blocks = tuple(
            rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)) for d in structure3.block_dims
        )
        op = BlockMatrix(structure3, blocks)
        restored = BlockMatrix(structure3, tuple(BlockMatrix.blocks_from_list(op.blocks_to_list())))
        assert op.max_abs_diff(restored) == 0.0
