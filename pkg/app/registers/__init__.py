"""
Register module for the star-tomography toolkit

Symmetry-reduced (block) representation of star-topology spin registers:
- Sector enumeration and multiplicities
- Spin-j angular momentum operators
- Schur basis by recursive Clebsch-Gordan coupling
- Conversion between full-space and block representations
"""

from .blocks import BlockMatrix, block_diag_embed
from .errors import (
    FullSpaceCapError,
    NotHermitianError,
    RankDeficiencyError,
    ReconstructionFailureError,
    StructureMismatchError,
    SymmetryError,
)
from .schur import SchurBasis, build_schur_basis, compress, expand, expand_operator
from .structure import (
    BlockStructure,
    RegisterSpec,
    SectorSpec,
    angular_momentum_ops,
    build_block_structure,
    sector_multiplicity,
    spin_ops_j2,
)

__all__ = [
    "BlockMatrix",
    "BlockStructure",
    "FullSpaceCapError",
    "NotHermitianError",
    "RankDeficiencyError",
    "ReconstructionFailureError",
    "RegisterSpec",
    "SchurBasis",
    "SectorSpec",
    "StructureMismatchError",
    "SymmetryError",
    "angular_momentum_ops",
    "block_diag_embed",
    "build_block_structure",
    "build_schur_basis",
    "compress",
    "expand",
    "expand_operator",
    "sector_multiplicity",
    "spin_ops_j2",
]
