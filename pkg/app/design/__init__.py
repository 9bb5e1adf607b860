"""
Design package initialization
"""

from .optimizer import (
    DesignResult,
    OptimizerConfig,
    RestartStat,
    merge_restarts,
    multi_restart,
    optimize,
    restart_seeds,
    run_restart,
)
from .problem import REJECTED_COST, DesignProblem

__all__ = [
    "DesignProblem",
    "DesignResult",
    "OptimizerConfig",
    "REJECTED_COST",
    "RestartStat",
    "merge_restarts",
    "multi_restart",
    "optimize",
    "restart_seeds",
    "run_restart",
]
