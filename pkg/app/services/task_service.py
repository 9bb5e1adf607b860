"""
Task Service for design, tomography and sweep jobs
"""

from typing import Any, Dict, Optional

from celery import chord
from celery.result import AsyncResult

from app.celery_app.celery import PROGRESS, celery_app

# task name prefixes of startomo jobs
JOB_PREFIXES = ("design.", "tomography.")


class TaskService:
    """Submits jobs to the worker queues and reads their state back"""

    def __init__(self):
        self.celery_app = celery_app

    def get_task_status(self, task_id: str) -> Dict[str, Any]:
        """
        State of a job

        Returns:
            task_id, status, the payload once successful, the last PROGRESS
            report while running, the error of a failed job and its traceback
        """
        job = AsyncResult(task_id, app=self.celery_app)
        ready = job.ready()
        successful = job.successful() if ready else None
        failed = job.failed() if ready else None
        info = job.info

        return {
            "task_id": task_id,
            "status": job.status,
            "result": job.result if successful else None,
            "progress": info if job.status == PROGRESS and isinstance(info, dict) else None,
            "error": f"{type(info).__name__}: {info}" if failed else None,
            "traceback": job.traceback,
            "successful": successful,
            "failed": failed,
        }

    def get_task_result(self, task_id: str, timeout: Optional[float] = None) -> Any:
        """Job payload; re-raises the job's error and waits up to ``timeout`` seconds"""
        return AsyncResult(task_id, app=self.celery_app).get(timeout=timeout)

    def cancel_task(self, task_id: str) -> bool:
        """Revoke a queued or running job; False when it has already finished"""
        job = AsyncResult(task_id, app=self.celery_app)
        if job.ready():
            return False
        job.revoke(terminate=True)
        return True

    def get_active_tasks(self) -> Dict[str, Any]:
        """Active, scheduled and reserved jobs per worker"""
        inspect = self.celery_app.control.inspect()
        return {
            "active": inspect.active(),
            "scheduled": inspect.scheduled(),
            "reserved": inspect.reserved(),
        }

    def get_worker_stats(self) -> Dict[str, Any]:
        """Worker statistics, ping replies and the job tasks each worker registered"""
        inspect = self.celery_app.control.inspect()
        registered = inspect.registered() or {}
        return {
            "stats": inspect.stats(),
            "ping": inspect.ping(),
            "registered": {
                worker: [name for name in names if name.startswith(JOB_PREFIXES)]
                for worker, names in registered.items()
            },
        }

    def submit_design(
        self,
        config_data: Dict[str, Any],
        out: Optional[str] = None,
        retry_config: Optional[Dict[str, Any]] = None,
    ) -> str:
        """
        Submit a complete multi-restart design as one task

        Args:
            config_data: RunConfig fields
            out: Output directory
            retry_config: {"retry": False} fails on the first broker or worker error
        """
        no_retry = retry_config is not None and retry_config.get("retry") is False
        return self.celery_app.send_task("design.run_design", args=[config_data, out, no_retry]).id

    def submit_design_fanout(
        self, config_data: Dict[str, Any], restarts: int, out: Optional[str] = None
    ) -> str:
        """One design.run_restart task per restart, merged by design.merge_restarts"""
        header = [
            self.celery_app.signature("design.run_restart", args=[config_data, i])
            for i in range(restarts)
        ]
        callback = self.celery_app.signature("design.merge_restarts", args=[config_data, out])
        return chord(header)(callback).id

    def submit_campaign(
        self,
        config_data: Dict[str, Any],
        theta: Optional[Dict[str, Any]] = None,
        out: Optional[str] = None,
        retry_config: Optional[Dict[str, Any]] = None,
    ) -> str:
        """Submit a tomography campaign; random circuits when ``theta`` is omitted"""
        no_retry = retry_config is not None and retry_config.get("retry") is False
        return self.celery_app.send_task(
            "tomography.run_campaign", args=[config_data, theta, out, no_retry]
        ).id

    def submit_sweep(self, config_data: Dict[str, Any], mode: str, out: Optional[str] = None) -> str:
        """Submit a layer_mix or extra_readouts sweep"""
        return self.celery_app.send_task("tomography.run_sweep", args=[config_data, mode, out]).id


task_service = TaskService()


def get_task_service() -> TaskService:
    """Shared task service, overridable as a FastAPI dependency"""
    return task_service
