"""
Celery tasks for tomography campaigns and sweeps
"""

import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

from app.celery_app.celery import celery_app
from app.circuits.params import ParamMatrix
from app.experiments.commands import cmd_sweep, cmd_tomo
from app.experiments.config import RunConfig
from app.experiments.storage import ensure_dir, write_param_matrix

logger = logging.getLogger(__name__)


@celery_app.task(bind=True, name="tomography.run_campaign")
def run_campaign_task(
    self,
    config_data: Dict[str, Any],
    theta: Optional[Dict[str, Any]] = None,
    out: Optional[str] = None,
    no_retry: bool = False,
) -> Dict[str, Any]:
    """
    Run a noisy reconstruction campaign, reporting PROGRESS every few repetitions

    Args:
        config_data: RunConfig fields
        theta: Inline parameter matrix payload; random circuits when omitted
        out: Output directory (default: the config's output_dir)
        no_retry: If True, disables retry behavior

    Returns:
        CampaignReport dictionary
    """
    try:
        config = RunConfig(**config_data)
        out_dir = ensure_dir(Path(out or config.output_dir))
        theta_file = None
        if theta is not None:
            theta_file = write_param_matrix(
                out_dir / "theta_input.json", ParamMatrix.from_dict(theta), config.config_hash()
            )
        report = cmd_tomo(
            config,
            theta_file,
            out_dir,
            progress=lambda done, total: self.report_progress("repetitions", done, total),
        )
        return report.model_dump(mode="json")
    except ValueError:
        raise
    except Exception as exc:
        logger.error(f"Campaign task failed: {exc}")
        if no_retry:
            raise
        self.retry(countdown=60, max_retries=3, exc=exc)


@celery_app.task(bind=True, name="tomography.run_sweep")
def run_sweep_task(
    self, config_data: Dict[str, Any], mode: str, out: Optional[str] = None
) -> List[Dict[str, Any]]:
    """Sweep rows (x, mean_f, sd_f, full_rank_fraction, n_sets)"""
    try:
        config = RunConfig(**config_data)
        return cmd_sweep(
            mode,
            config,
            Path(out) if out else None,
            progress=lambda done, total: self.report_progress(f"{mode} points", done, total),
        )
    except ValueError:
        raise
    except Exception as exc:
        logger.error(f"Sweep task failed: {exc}")
        self.retry(countdown=60, max_retries=3, exc=exc)
