"""
Design Router

Submits readout-design jobs to the worker.
"""

import logging

from fastapi import APIRouter, Depends, HTTPException

from app.schemas.async_responses import TaskResponse
from app.schemas.jobs import DesignJobRequest
from app.services.task_service import TaskService, get_task_service

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/api/v1", tags=["Design"])


@router.post("/design", response_model=TaskResponse)
async def submit_design(
    request: DesignJobRequest,
    task_service: TaskService = Depends(get_task_service),
):
    """Run multi-restart design of the readout circuits asynchronously"""
    config = request.config
    try:
        config_data = config.model_dump(mode="json")
        if request.fan_out:
            task_id = task_service.submit_design_fanout(config_data, config.restarts, request.out)
            message = f"Design submitted as {config.restarts} restart tasks"
        else:
            task_id = task_service.submit_design(config_data, request.out)
            message = "Design task submitted successfully"
        return TaskResponse(task_id=task_id, queue="design", message=message)
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"Failed to submit design job: {str(e)}")
        raise HTTPException(status_code=500, detail=f"Failed to submit design job: {str(e)}")
