"""
Run configuration

Flat run description shared by the CLI, the API and the worker. Files are
JSON (YAML is accepted too since they are read with yaml.safe_load);
explicit overrides win over file values. Every output carries the SHA-256
hash of the canonical JSON dump.
"""

import hashlib
import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import yaml
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..circuits.params import CircuitLayout
from ..design.optimizer import OptimizerConfig
from ..measurement.noise import NoiseModel
from ..registers.structure import BlockStructure, RegisterSpec, build_block_structure
from ..settings import GradientMode, get_settings
from ..states.library import StateKind, StateSpec
from ..tomography.counting import min_readouts

logger = logging.getLogger(__name__)


def _campaign_default(name: str):
    return lambda: getattr(get_settings().campaign, name)


def _optimizer_default(name: str):
    return lambda: getattr(get_settings().optimizer, name)


class RunConfig(BaseModel):
    """Register, circuits, state, noise and run sizes of one command"""

    n: int = Field(default=10, ge=2, description="Total spins (central + peripheral)")
    coupling: float = Field(default=1.0, gt=0.0, description="J_AM in Hz")
    layers: int = Field(default_factory=_campaign_default("layers"), ge=1)
    readouts: Optional[int] = Field(default=None, ge=1, description="Default: minimum")
    two_layer_count: int = Field(default=0, ge=0, description="Rows using 2 layers")

    state: StateKind = "mssm"
    m_count: Optional[int] = Field(default=None, ge=0)
    theta: float = 0.0
    phi: float = 0.0
    mu: Optional[float] = None
    state_seed: int = Field(default=0, ge=0)

    noise_sd: float = Field(default_factory=_campaign_default("noise_sd"), ge=0.0)
    repetitions: int = Field(default_factory=_campaign_default("repetitions"), ge=1)
    seed: int = Field(default_factory=_campaign_default("seed"), ge=0)

    restarts: int = Field(default_factory=_optimizer_default("restarts"), ge=1)
    iterations: int = Field(default_factory=_optimizer_default("max_iterations"), ge=0)
    gradient_mode: GradientMode = Field(default_factory=_optimizer_default("gradient_mode"))

    sweep_sets: int = Field(default_factory=_campaign_default("sweep_sets"), ge=1)
    sweep_max: Optional[int] = Field(default=None, ge=0, description="Largest sweep k")

    dicke_only: bool = False
    allow_underdetermined: bool = False
    output_dir: str = Field(default_factory=_campaign_default("output_dir"))

    model_config = ConfigDict(frozen=True, extra="forbid")

    @model_validator(mode="after")
    def _check_readouts(self) -> "RunConfig":
        minimum = min_readouts(self.n, self.dicke_only)
        if self.readouts is not None and self.readouts < minimum and not self.allow_underdetermined:
            raise ValueError(
                f"{self.readouts} readouts cannot determine the state (minimum {minimum}); "
                "set allow_underdetermined to run anyway"
            )
        if self.two_layer_count > self.n_readouts:
            raise ValueError("two_layer_count exceeds the number of readouts")
        if self.two_layer_count and self.layers < 2:
            raise ValueError("Mixed structures need a layout of at least 2 layers")
        return self

    @property
    def n_readouts(self) -> int:
        return self.readouts if self.readouts is not None else min_readouts(self.n, self.dicke_only)

    @property
    def underdetermined(self) -> bool:
        return self.n_readouts < min_readouts(self.n, self.dicke_only)

    def register_spec(self) -> RegisterSpec:
        return RegisterSpec(n_total=self.n, coupling=self.coupling)

    def structure(self) -> BlockStructure:
        structure = build_block_structure(self.register_spec())
        return structure.dicke_only() if self.dicke_only else structure

    def layout(self) -> CircuitLayout:
        return CircuitLayout(layers=self.layers)

    def row_layers(self) -> Optional[Tuple[int, ...]]:
        if not self.two_layer_count:
            return None
        k = self.two_layer_count
        return (2,) * k + (self.layers,) * (self.n_readouts - k)

    def state_spec(self) -> StateSpec:
        return StateSpec(
            kind=self.state,
            m_count=self.m_count,
            theta=self.theta,
            phi=self.phi,
            mu=self.mu,
            seed=self.state_seed,
        )

    def optimizer_config(self) -> OptimizerConfig:
        return OptimizerConfig.from_settings(
            max_iterations=self.iterations,
            restarts=self.restarts,
            seed=self.seed,
            gradient_mode=self.gradient_mode,
        )

    def noise_model(self, seed: Optional[int] = None) -> NoiseModel:
        return NoiseModel(sd=self.noise_sd, seed=self.seed if seed is None else seed)

    def config_hash(self) -> str:
        canonical = json.dumps(self.model_dump(mode="json"), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def load_run_config(path: Optional[Path] = None, **overrides: Any) -> RunConfig:
    """Read a run config file (optional) and apply non-None overrides"""
    data: Dict[str, Any] = {}
    if path is not None:
        with open(path, "r", encoding="utf-8") as f:
            loaded = yaml.safe_load(f) or {}
        if not isinstance(loaded, dict):
            raise ValueError(f"Run config {path} must hold a mapping")
        data.update(loaded)
        logger.info(f"Loaded run config from {path}")
    data.update({k: v for k, v in overrides.items() if v is not None})
    return RunConfig(**data)
