"""
Tomography Router

Submits reconstruction campaigns and readout-set sweeps to the worker.
"""

import logging

from fastapi import APIRouter, Depends, HTTPException

from app.circuits.params import ParamMatrix
from app.schemas.async_responses import TaskResponse
from app.schemas.jobs import SweepJobRequest, TomographyJobRequest
from app.services.task_service import TaskService, get_task_service

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/api/v1", tags=["Tomography"])


@router.post("/tomography", response_model=TaskResponse)
async def submit_campaign(
    request: TomographyJobRequest,
    task_service: TaskService = Depends(get_task_service),
):
    """Run a noisy reconstruction campaign asynchronously"""
    try:
        if request.theta is not None:
            params = ParamMatrix.from_dict(request.theta)
            if params.n_total != request.config.n:
                raise ValueError(
                    f"Theta was designed for N={params.n_total}, config has N={request.config.n}"
                )
        task_id = task_service.submit_campaign(
            request.config.model_dump(mode="json"), request.theta, request.out
        )
        return TaskResponse(
            task_id=task_id, queue="tomography", message="Campaign task submitted successfully"
        )
    except (ValueError, KeyError) as e:
        raise HTTPException(status_code=400, detail=f"Invalid campaign request: {str(e)}")
    except Exception as e:
        logger.error(f"Failed to submit campaign: {str(e)}")
        raise HTTPException(status_code=500, detail=f"Failed to submit campaign: {str(e)}")


@router.post("/sweeps", response_model=TaskResponse)
async def submit_sweep(
    request: SweepJobRequest,
    task_service: TaskService = Depends(get_task_service),
):
    """Run a layer_mix or extra_readouts sweep asynchronously"""
    try:
        task_id = task_service.submit_sweep(
            request.config.model_dump(mode="json"), request.mode, request.out
        )
        return TaskResponse(
            task_id=task_id, queue="tomography", message=f"{request.mode} sweep submitted"
        )
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"Failed to submit sweep: {str(e)}")
        raise HTTPException(status_code=500, detail=f"Failed to submit sweep: {str(e)}")
