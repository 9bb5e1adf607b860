"""
Tomography settings module

Loads numerical tolerances, size caps and run defaults from
``tomography_config.yaml`` at the project root. Environment variables listed
under ``env_overrides`` take precedence; a built-in fallback is used when the
file is missing or cannot be parsed.
"""

import logging
import os
from pathlib import Path
from typing import Any, Dict, Literal, Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).parent.parent / "tomography_config.yaml"

GradientMode = Literal["finite_difference", "analytic_if_available"]
OptimizerMethod = Literal["SLSQP", "BFGS", "L-BFGS-B"]


class ToleranceSettings(BaseModel):
    """Numerical tolerances"""

    hermitian: float = Field(default=1e-12, gt=0.0)
    symmetry: float = Field(default=1e-10, gt=0.0)
    rank: float = Field(default=1e-10, gt=0.0)
    psd_floor: float = Field(default=1e-10, ge=0.0)


class LimitSettings(BaseModel):
    """Size caps for full-space (brute force) work"""

    full_space_cap: int = Field(default=12, ge=1, le=14)
    oracle_cap: int = Field(default=5, ge=2, le=8)


class OptimizerDefaults(BaseModel):
    """Defaults for readout-design optimization"""

    max_iterations: int = Field(default=30, ge=0)
    restarts: int = Field(default=10, ge=1)
    fd_step: float = Field(default=1e-6, gt=0.0)
    convergence_tol: float = Field(default=1e-6, gt=0.0)
    gradient_mode: GradientMode = "analytic_if_available"
    method: OptimizerMethod = "SLSQP"


class CampaignDefaults(BaseModel):
    """Defaults for tomography campaigns and sweeps"""

    noise_sd: float = Field(default=3e-4, ge=0.0)
    repetitions: int = Field(default=100, ge=1)
    layers: int = Field(default=3, ge=1)
    sweep_sets: int = Field(default=100, ge=1)
    seed: int = 0
    output_dir: str = "results"


class TomographySettings(BaseModel):
    """Settings snapshot used throughout the package"""

    tolerances: ToleranceSettings = Field(default_factory=ToleranceSettings)
    limits: LimitSettings = Field(default_factory=LimitSettings)
    optimizer: OptimizerDefaults = Field(default_factory=OptimizerDefaults)
    campaign: CampaignDefaults = Field(default_factory=CampaignDefaults)
    source: str = "fallback"

    model_config = ConfigDict(validate_assignment=True)


# (section, field) targets for environment overrides
_ENV_TARGETS: Dict[str, tuple] = {
    "full_space_cap": ("limits", "full_space_cap"),
    "oracle_cap": ("limits", "oracle_cap"),
    "noise_sd": ("campaign", "noise_sd"),
    "repetitions": ("campaign", "repetitions"),
    "output_dir": ("campaign", "output_dir"),
    "max_iterations": ("optimizer", "max_iterations"),
    "restarts": ("optimizer", "restarts"),
    "gradient_mode": ("optimizer", "gradient_mode"),
}

_FALLBACK_ENV = {
    "full_space_cap": "STARTOMO_FULL_SPACE_CAP",
    "oracle_cap": "STARTOMO_ORACLE_CAP",
    "noise_sd": "STARTOMO_NOISE_SD",
    "repetitions": "STARTOMO_REPETITIONS",
    "output_dir": "STARTOMO_OUTPUT_DIR",
    "max_iterations": "STARTOMO_MAX_ITERATIONS",
    "restarts": "STARTOMO_RESTARTS",
    "gradient_mode": "STARTOMO_GRADIENT_MODE",
}


def load_settings(config_path: Optional[Path] = None) -> TomographySettings:
    """Load settings from YAML, falling back to built-in defaults"""
    config_path = config_path or DEFAULT_CONFIG_PATH

    try:
        with open(config_path, "r", encoding="utf-8") as f:
            yaml_config = yaml.safe_load(f) or {}
    except FileNotFoundError:
        logger.warning(
            f"Tomography config file not found at {config_path}. "
            "Using fallback configuration."
        )
        return _apply_env_overrides(TomographySettings(), _FALLBACK_ENV)
    except yaml.YAMLError as e:
        logger.warning(f"Error parsing YAML config: {e}. Using fallback configuration.")
        return _apply_env_overrides(TomographySettings(), _FALLBACK_ENV)

    sections = {
        key: yaml_config.get(key, {}) or {}
        for key in ("tolerances", "limits", "optimizer", "campaign")
    }
    try:
        settings = TomographySettings(**sections, source=str(config_path))
    except ValidationError as e:
        logger.warning(f"Invalid tomography config: {e}. Using fallback configuration.")
        return _apply_env_overrides(TomographySettings(), _FALLBACK_ENV)

    env_overrides = yaml_config.get("env_overrides", {}) or {}
    return _apply_env_overrides(settings, env_overrides)


def _apply_env_overrides(
    settings: TomographySettings, env_overrides: Dict[str, str]
) -> TomographySettings:
    for name, env_var in env_overrides.items():
        target = _ENV_TARGETS.get(name)
        value = os.getenv(env_var) if env_var else None
        if target is None or value is None:
            continue
        section, field_name = target
        section_model = getattr(settings, section)
        current: Any = getattr(section_model, field_name)
        try:
            data = section_model.model_dump() | {field_name: type(current)(value)}
            setattr(settings, section, type(section_model)(**data))
        except (ValueError, ValidationError):
            logger.warning(f"Ignoring {env_var}={value!r}: invalid {section}.{field_name}")
            continue
        logger.debug(f"Setting {section}.{field_name} overridden by {env_var}")
    return settings


# Global settings instance
tomography_settings = load_settings()


def get_settings() -> TomographySettings:
    """Get the global settings instance"""
    return tomography_settings
