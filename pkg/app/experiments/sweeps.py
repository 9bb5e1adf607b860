"""
Readout-set sweeps

Cost statistics of random readout sets as the circuit structure changes:
``layer_mix`` swaps k of the minimal set's circuits for 2-layer ones,
``extra_readouts`` appends k random circuits to the minimal set.
"""

import logging
from typing import Callable, List, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..circuits.params import random_params
from ..design.problem import DesignProblem
from ..tomography.counting import min_readouts
from .config import RunConfig

logger = logging.getLogger(__name__)

SweepMode = Literal["layer_mix", "extra_readouts"]
SWEEP_MODES = ("layer_mix", "extra_readouts")
# default largest k per mode when the config leaves sweep_max unset
DEFAULT_SWEEP_MAX = {"layer_mix": 13, "extra_readouts": 10}


class SweepPoint(BaseModel):
    """Cost statistics over the full-rank sets at one value of k"""

    x: int
    mean_f: float
    sd_f: float
    full_rank_fraction: float = Field(..., ge=0.0, le=1.0)
    n_sets: int

    model_config = ConfigDict(frozen=True)


def set_seed(seed: int, s: int) -> int:
    """Seed of random set ``s``, shared by every sweep point.

    Angles fill row by row, so set ``s`` at k + 1 extends set ``s`` at k.
    """
    return int(np.random.SeedSequence([seed, s]).generate_state(1)[0])


def _point_problem(config: RunConfig, mode: SweepMode, k: int, base: int) -> DesignProblem:
    structure = config.structure()
    if mode == "layer_mix":
        if k > base:
            raise ValueError(f"Cannot replace {k} of {base} circuits")
        row_layers = (2,) * k + (config.layers,) * (base - k)
        return DesignProblem.build(structure, config.layout(), base, row_layers=row_layers)
    return DesignProblem.build(structure, config.layout(), base + k)


def sweep_point(config: RunConfig, mode: SweepMode, k: int) -> SweepPoint:
    """Statistics of ``config.sweep_sets`` random sets at one value of k"""
    if mode not in SWEEP_MODES:
        raise ValueError(f"Unknown sweep mode: {mode}")
    if mode == "layer_mix" and config.layers < 2:
        raise ValueError("layer_mix needs a layout of at least 2 layers")
    base = config.n_readouts
    problem = _point_problem(config, mode, k, base)
    costs = []
    full_rank = 0
    for s in range(config.sweep_sets):
        params = random_params(
            problem.layout,
            problem.n_readouts,
            set_seed(config.seed, s),
            problem.n_total,
            problem.row_layers,
        )
        f, rank = problem.evaluate(params)
        if rank == problem.basis.size:
            full_rank += 1
            costs.append(f)
    values = np.array(costs)
    point = SweepPoint(
        x=k,
        mean_f=float(values.mean()) if len(values) else float("nan"),
        sd_f=float(values.std()) if len(values) else float("nan"),
        full_rank_fraction=full_rank / config.sweep_sets,
        n_sets=config.sweep_sets,
    )
    logger.info(
        f"{mode} k={k}: full rank {full_rank}/{config.sweep_sets}, mean f {point.mean_f:.4g}"
    )
    return point


def run_sweep(
    config: RunConfig, mode: SweepMode, progress: Optional[Callable[[int, int], None]] = None
) -> List[SweepPoint]:
    """Sweep k = 0..sweep_max; full-rank fraction is 0 where the mix loses rank"""
    if mode not in SWEEP_MODES:
        raise ValueError(f"Unknown sweep mode: {mode}")
    k_max = config.sweep_max if config.sweep_max is not None else DEFAULT_SWEEP_MAX[mode]
    if mode == "layer_mix":
        k_max = min(k_max, config.n_readouts)
    if config.n_readouts < min_readouts(config.n, config.dicke_only):
        logger.warning("Sweep base set is under-determined; every point will lose rank")
    points = []
    for k in range(k_max + 1):
        points.append(sweep_point(config, mode, k))
        if progress is not None:
            progress(k + 1, k_max + 1)
    return points
