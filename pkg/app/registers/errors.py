"""
Domain errors

All errors derive from ValueError so callers that only care about
"bad input" can keep catching ValueError.
"""


class StructureMismatchError(ValueError):
    """Operands were built for different block structures"""


class NotHermitianError(ValueError):
    """A matrix expected to be Hermitian is not"""


class SymmetryError(ValueError):
    """A full-space operator does not commute with peripheral permutations"""


class FullSpaceCapError(ValueError):
    """The requested full-space dimension exceeds the configured cap"""


class RankDeficiencyError(ValueError):
    """The transfer matrix cannot determine every basis coefficient"""


class ReconstructionFailureError(ValueError):
    """A reconstructed block has trace weight but no positive spectrum"""
