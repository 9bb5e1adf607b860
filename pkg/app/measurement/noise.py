"""
Measurement noise

Additive Gaussian fluctuations on each measured value and the per-channel
relative standard deviation used to describe a noisy campaign.
"""

import logging
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

logger = logging.getLogger(__name__)


class NoiseModel(BaseModel):
    """Standard deviation of the additive noise on each o_k, plus its seed"""

    sd: float = Field(default=3e-4, ge=0.0)
    seed: int = Field(default=0, ge=0)

    model_config = ConfigDict(frozen=True)

    @property
    def variance(self) -> float:
        return self.sd ** 2


def apply_noise(
    o: np.ndarray, model: NoiseModel, rng: Optional[np.random.Generator] = None
) -> np.ndarray:
    """o + iid N(0, sd^2); ``rng`` continues an existing stream instead of reseeding"""
    o = np.asarray(o, dtype=float)
    if model.sd == 0.0:
        return o.copy()
    rng = rng if rng is not None else np.random.default_rng(model.seed)
    return o + rng.normal(0.0, model.sd, size=o.shape)


def relative_std(exact: np.ndarray, samples: np.ndarray) -> np.ndarray:
    """Per-observable mean_j sd(o_ji) / mean_j |o_ji|.

    ``exact`` has shape (N_u, N_o) and ``samples`` (repetitions, N_u, N_o).
    Channels with zero mean signal report ``inf``.
    """
    exact = np.asarray(exact, dtype=float)
    samples = np.asarray(samples, dtype=float)
    if samples.shape[1:] != exact.shape:
        raise ValueError(f"Samples of shape {samples.shape} do not match {exact.shape}")
    spread = samples.std(axis=0, ddof=1 if samples.shape[0] > 1 else 0).mean(axis=0)
    signal = np.abs(exact).mean(axis=0)
    with np.errstate(divide="ignore", invalid="ignore"):
        rsd = np.where(signal > 0.0, spread / np.where(signal > 0.0, signal, 1.0), np.inf)
    silent = int(np.sum(np.isinf(rsd)))
    if silent:
        logger.warning(f"{silent} observable channel(s) carry no signal; rsd reported as inf")
    return rsd
