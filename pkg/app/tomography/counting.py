"""
Degree-of-freedom counting

How many real parameters a star-register state has and how many readout
circuits the 2N + 4 spectral observables need to pin them down.
"""

from math import ceil

from ..registers.structure import RegisterSpec, build_block_structure


def n_observables(n_total: int) -> int:
    """N_o = 2N + 4 observables per readout"""
    return 2 * n_total + 4


def dof_count(n_total: int, dicke_only: bool = False) -> int:
    """Real parameters left once the per-sector traces are known.

    Full register: sum of block_dim^2 minus ceil(N/2), equal to
    2N(N+1)(N+2)/3 - ceil(N/2). Dicke sector only: (2N)^2 - 1.
    """
    if n_total < 2:
        raise ValueError(f"A star register needs at least 2 spins, got {n_total}")
    if dicke_only:
        return (2 * n_total) ** 2 - 1
    structure = build_block_structure(RegisterSpec(n_total=n_total))
    total = structure.basis_size - structure.n_sectors
    closed_form = 2 * n_total * (n_total + 1) * (n_total + 2) // 3 - ceil(n_total / 2)
    if total != closed_form:
        raise ArithmeticError(f"Sector count {total} disagrees with closed form {closed_form}")
    return total


def min_readouts(n_total: int, dicke_only: bool = False) -> int:
    """ceil(DOF / N_o)"""
    return -(-dof_count(n_total, dicke_only) // n_observables(n_total))


def general_dof(n_total: int) -> int:
    """Parameters of an arbitrary N-qubit state, 4^N - 1"""
    if n_total < 1:
        raise ValueError(f"Need at least one qubit, got {n_total}")
    return 4 ** n_total - 1


def general_min_readouts(n_total: int) -> int:
    return -(-general_dof(n_total) // n_observables(n_total))
