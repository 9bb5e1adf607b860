"""
Celery tasks for readout design
"""

import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

from app.celery_app.celery import celery_app
from app.design.optimizer import DesignResult, merge_restarts
from app.experiments.commands import cmd_design, cmd_design_restart, save_design
from app.experiments.config import RunConfig

logger = logging.getLogger(__name__)


@celery_app.task(bind=True, name="design.run_design")
def run_design_task(
    self, config_data: Dict[str, Any], out: Optional[str] = None, no_retry: bool = False
) -> Dict[str, Any]:
    """
    Run a complete multi-restart design

    Args:
        config_data: RunConfig fields
        out: Output directory (default: the config's output_dir)
        no_retry: If True, disables retry behavior

    Returns:
        DesignResult dictionary plus the theta.json path
    """
    try:
        config = RunConfig(**config_data)
        result = cmd_design(config, Path(out) if out else None)
        data = result.model_dump(mode="json")
        data["theta_file"] = str(Path(out or config.output_dir) / "theta.json")
        return data
    except ValueError:
        # invalid input, retrying cannot help
        raise
    except Exception as exc:
        logger.error(f"Design task failed: {exc}")
        if no_retry:
            raise
        self.retry(countdown=60, max_retries=3, exc=exc)


@celery_app.task(bind=True, name="design.run_restart")
def run_restart_task(self, config_data: Dict[str, Any], index: int) -> Dict[str, Any]:
    """One restart of a design, reproducible from (config, index)"""
    try:
        config = RunConfig(**config_data)
        return cmd_design_restart(config, index).model_dump(mode="json")
    except ValueError:
        raise
    except Exception as exc:
        logger.error(f"Restart {index} failed: {exc}")
        self.retry(countdown=60, max_retries=3, exc=exc)


@celery_app.task(name="design.merge_restarts")
def merge_restarts_task(
    results: List[Dict[str, Any]], config_data: Dict[str, Any], out: Optional[str] = None
) -> Dict[str, Any]:
    """Merge fanned-out restarts by restart index and persist the best design"""
    config = RunConfig(**config_data)
    merged = merge_restarts([DesignResult.model_validate(r) for r in results])
    path = save_design(config, merged, Path(out) if out else None)
    data = merged.model_dump(mode="json")
    data["theta_file"] = str(path)
    logger.info(f"Merged {len(results)} restarts: best f {merged.f_final:.4g}")
    return data
