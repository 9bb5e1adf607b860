"""
Celery application for design and tomography jobs

Every job carries RunConfig fields. The task base class logs each job
under its register size, state and config hash, and lets campaigns and
sweeps publish their progress to the result backend.
"""

import logging
from typing import Any, Dict, Optional, Sequence

from celery import Celery, Task

from app.celery_app.config import CeleryConfig
from app.experiments.config import RunConfig

logger = logging.getLogger(__name__)

TASK_MODULES = ["app.celery_app.tasks.design", "app.celery_app.tasks.tomography"]
PROGRESS = "PROGRESS"


def describe_job(args: Sequence[Any]) -> str:
    """'N=4 mssm config 1a2b3c4d' from the first RunConfig mapping among ``args``"""
    config_data: Optional[Dict[str, Any]] = next(
        (arg for arg in args if isinstance(arg, dict)), None
    )
    if config_data is None:
        return "no config"
    try:
        config = RunConfig(**config_data)
    except ValueError:
        return "invalid config"
    return f"N={config.n} {config.state} config {config.config_hash()[:8]}"


def describe_outcome(retval: Any) -> str:
    if isinstance(retval, list):
        return f"{len(retval)} sweep points"
    if not isinstance(retval, dict):
        return "done"
    if "f_final" in retval:
        return f"f {retval['f_initial']:.4g} -> {retval['f_final']:.4g}"
    if "aggregates" in retval:
        distance = retval["aggregates"]["frobenius_distance"]["mean"]
        return f"{retval['repetitions']} repetitions, mean distance {distance:.4g}"
    return "done"


class ExperimentTask(Task):
    """Base class of startomo jobs"""

    def report_progress(self, stage: str, done: int, total: int) -> None:
        """Publish a PROGRESS state; a no-op when the task body runs in-process"""
        if self.request.called_directly or self.request.id is None:
            return
        self.update_state(state=PROGRESS, meta={"stage": stage, "done": done, "total": total})

    def on_failure(self, exc, task_id, args, kwargs, einfo):
        # ValueError means the job itself was invalid
        verdict = "rejected" if isinstance(exc, ValueError) else "failed"
        logger.error(f"{self.name} {task_id} ({describe_job(args)}) {verdict}: {exc}")
        super().on_failure(exc, task_id, args, kwargs, einfo)

    def on_success(self, retval, task_id, args, kwargs):
        logger.info(f"{self.name} {task_id} ({describe_job(args)}): {describe_outcome(retval)}")
        super().on_success(retval, task_id, args, kwargs)

    def on_retry(self, exc, task_id, args, kwargs, einfo):
        logger.warning(f"{self.name} {task_id} ({describe_job(args)}) retrying: {exc}")
        super().on_retry(exc, task_id, args, kwargs, einfo)


def create_celery_app() -> Celery:
    """Celery app with the design and tomography task modules"""
    app = Celery("startomo", task_cls=ExperimentTask, include=TASK_MODULES)
    app.config_from_object(CeleryConfig)
    return app


celery_app = create_celery_app()
