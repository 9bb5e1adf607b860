"""
Tomography campaigns

Repeated noisy reconstructions of one library state with a fixed readout
set: exact spectra from the state, additive noise, linear inversion,
PSD projection and quality metrics per repetition.
"""

import logging
from typing import Any, Callable, Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, computed_field, field_serializer

from ..circuits.params import ParamMatrix
from ..circuits.synthesis import synthesize_all
from ..measurement.basis import build_operator_basis, diagonal_coefficients
from ..measurement.noise import apply_noise, relative_std
from ..measurement.observables import build_observables, expectations
from ..states.library import BlockState, make_state
from ..states.metrics import fidelity, frobenius_distance, psd_project
from ..tomography.counting import min_readouts
from ..tomography.inversion import predicted_variances, pseudo_inverse, reconstruct
from ..tomography.transfer import build_transfer_matrix
from .config import RunConfig

logger = logging.getLogger(__name__)

PROGRESS_BATCH = 10

# progress(done, total)
ProgressCallback = Callable[[int, int], None]

METRICS = ("infidelity", "frobenius_distance", "projected_distance", "residual")


class CampaignReport(BaseModel):
    """Per-repetition metrics of a campaign with its provenance.

    Dumps to the report.json layout: repetition count, metric aggregates,
    relative spread per channel, the under-determined flag and provenance.
    Rows and coefficient statistics go to their own CSV files.
    """

    rows: List[Dict[str, Any]] = Field(exclude=True)
    provenance: Dict[str, Any]
    channel_labels: List[str] = Field(exclude=True)
    rsd: np.ndarray
    coefficient_stats: Dict[str, np.ndarray] = Field(default_factory=dict, exclude=True, repr=False)
    last_reconstruction: Optional[BlockState] = Field(default=None, exclude=True, repr=False)
    last_sample: Optional[np.ndarray] = Field(default=None, exclude=True, repr=False)
    underdetermined: bool = False

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @computed_field
    @property
    def repetitions(self) -> int:
        return len(self.rows)

    @computed_field
    @property
    def aggregates(self) -> Dict[str, Dict[str, float]]:
        """Mean and standard deviation of every per-repetition metric"""
        stats = {}
        for metric in METRICS:
            values = np.array([row[metric] for row in self.rows])
            stats[metric] = {"mean": float(values.mean()), "sd": float(values.std())}
        return stats

    @field_serializer("rsd")
    def _dump_rsd(self, rsd: np.ndarray) -> Dict[str, Optional[float]]:
        # silent channels have infinite spread
        return {
            label: (None if np.isinf(value) else float(value))
            for label, value in zip(self.channel_labels, rsd)
        }

    def coefficient_rows(self) -> List[Dict[str, float]]:
        stats = self.coefficient_stats
        return [
            {
                "m": m,
                "diagonal": bool(stats["diagonal"][m]),
                "ideal": float(stats["ideal"][m]),
                "mean": float(stats["mean"][m]),
                "sd": float(stats["sd"][m]),
                "predicted_sd": float(stats["predicted_sd"][m]),
            }
            for m in range(len(stats.get("ideal", [])))
        ]


def repetition_seeds(seed: int, repetitions: int) -> List[int]:
    children = np.random.SeedSequence(seed).spawn(repetitions)
    return [int(child.generate_state(1)[0]) for child in children]


def check_params(params: ParamMatrix, config: RunConfig) -> None:
    if params.n_total != config.n:
        raise ValueError(f"Theta was designed for N={params.n_total}, run has N={config.n}")
    if params.layers != config.layers:
        raise ValueError(f"Theta has {params.layers} layers, run expects {config.layers}")
    minimum = min_readouts(config.n, config.dicke_only)
    if params.n_readouts < minimum and not config.allow_underdetermined:
        raise ValueError(
            f"Theta has {params.n_readouts} readouts, below the minimum {minimum}; "
            "set allow_underdetermined to run anyway"
        )


def run_campaign(
    config: RunConfig,
    params: ParamMatrix,
    state: Optional[BlockState] = None,
    theta_source: Optional[str] = None,
    progress: Optional[ProgressCallback] = None,
) -> CampaignReport:
    """Noisy reconstruction campaign for ``params`` (``state`` defaults to the config's)"""
    check_params(params, config)
    structure = config.structure()
    truth = state if state is not None else make_state(config.state_spec(), structure)
    observables = build_observables(structure)
    basis = build_operator_basis(structure)
    readouts = synthesize_all(params, structure)
    transfer = build_transfer_matrix(readouts, observables, basis)
    inverse = pseudo_inverse(transfer.entries)
    if inverse[1] < basis.size:
        logger.warning(
            f"Readout set has rank {inverse[1]} < {basis.size}; reconstructions are least-squares"
        )

    exact = np.array([expectations(truth.matrix.conjugate_by(u), observables) for u in readouts])
    o_exact = exact.ravel()
    priors = truth.trace_weights
    ideal = basis.coefficients(truth.matrix)

    rows: List[Dict[str, float]] = []
    samples = np.zeros((config.repetitions,) + exact.shape)
    estimates = np.zeros((config.repetitions, basis.size))
    result = None
    for rep, rep_seed in enumerate(repetition_seeds(config.seed, config.repetitions)):
        o = apply_noise(o_exact, config.noise_model(rep_seed))
        samples[rep] = o.reshape(exact.shape)
        result = reconstruct(transfer, o, priors, basis, inverse=inverse)
        estimates[rep] = result.coefficients
        projected = psd_project(result.state)
        rows.append(
            {
                "repetition": rep,
                "infidelity": 1.0 - fidelity(truth, projected),
                "frobenius_distance": frobenius_distance(truth, result.state),
                "projected_distance": frobenius_distance(truth, projected),
                "residual": result.residual_norm,
            }
        )
        if (rep + 1) % PROGRESS_BATCH == 0 or rep + 1 == config.repetitions:
            logger.info(f"Campaign progress: {rep + 1}/{config.repetitions} repetitions")
            if progress is not None:
                progress(rep + 1, config.repetitions)

    predicted = predicted_variances(
        transfer, np.full(transfer.n_measurement_rows, config.noise_sd ** 2), inverse=inverse[0]
    )
    labels = [f"{channel}_{axis}" for channel, axis in observables.labels]
    return CampaignReport(
        rows=rows,
        provenance={
            "config_hash": config.config_hash(),
            "seed": config.seed,
            "theta": theta_source,
            "state": config.state,
            "readouts": params.n_readouts,
            "rank": inverse[1],
        },
        channel_labels=labels,
        rsd=relative_std(exact, samples),
        coefficient_stats={
            "ideal": ideal,
            "diagonal": np.isin(np.arange(basis.size), diagonal_coefficients(basis)),
            "mean": estimates.mean(axis=0),
            "sd": estimates.std(axis=0),
            "predicted_sd": np.sqrt(predicted),
        },
        last_reconstruction=result.state if result is not None else None,
        last_sample=samples[-1].ravel(),
        underdetermined=params.n_readouts < min_readouts(config.n, config.dicke_only),
    )
