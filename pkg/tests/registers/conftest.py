"""
Fixtures for register tests.
"""

from itertools import permutations

import numpy as np
import pytest

from app.registers.fullspace import symmetry_defect
from app.registers.schur import build_schur_basis


@pytest.fixture
def schur2():
    """Schur basis of 2 peripheral spins (N = 3)."""
    return build_schur_basis(2)


@pytest.fixture
def schur3():
    """Schur basis of 3 peripheral spins (N = 4)."""
    return build_schur_basis(3)


@pytest.fixture
def symmetric_full_state():
    """Builds a random star-symmetric full-space density matrix."""

    def _build(n_total: int, seed: int = 0) -> np.ndarray:
        rng = np.random.default_rng(seed)
        dim = 2 ** n_total
        g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        rho = g @ g.conj().T
        # twirl over every peripheral permutation
        n_peripheral = n_total - 1
        tensor = rho.reshape((2,) * (2 * n_total))
        total = np.zeros_like(tensor)
        perms = list(permutations(range(n_peripheral)))
        for perm in perms:
            axes = list(perm) + [n_peripheral]
            axes = axes + [n_total + a for a in axes]
            total += tensor.transpose(axes)
        rho = (total / len(perms)).reshape(dim, dim)
        rho = rho / np.trace(rho)
        assert symmetry_defect(rho, n_total) < 1e-12
        return rho

    return _build
