"""
Async task response schemas
"""

from typing import Any, Dict, Optional
from pydantic import BaseModel, Field


class TaskResponse(BaseModel):
    """Response model for job submission"""

    task_id: str = Field(..., description="Task (or chord) identifier")
    status: str = Field(default="PENDING", description="Current task status")
    queue: str = Field(default="default", description="Queue the job was routed to")
    message: str = Field(default="Job submitted successfully", description="Status message")
    estimated_time: Optional[int] = Field(default=None, description="Rough completion time in seconds")


class TaskStatusResponse(BaseModel):
    """Response model for task status check"""

    task_id: str = Field(..., description="Task identifier")
    status: str = Field(..., description="Current task status")
    result: Optional[Any] = Field(default=None, description="Job payload if completed")
    progress: Optional[Dict[str, Any]] = Field(
        default=None, description="Last PROGRESS report: stage, done, total"
    )
    error: Optional[str] = Field(default=None, description="Error of a failed job")
    traceback: Optional[str] = Field(default=None, description="Error traceback if task failed")
    successful: Optional[bool] = Field(default=None, description="Whether task completed successfully")
    failed: Optional[bool] = Field(default=None, description="Whether task failed")


class ActiveTasksResponse(BaseModel):
    """Active, scheduled and reserved jobs per worker"""

    active: Dict[str, Any] = Field(default_factory=dict)
    scheduled: Dict[str, Any] = Field(default_factory=dict)
    reserved: Dict[str, Any] = Field(default_factory=dict)


class WorkerStatsResponse(BaseModel):
    """Statistics, ping replies and registered tasks per worker"""

    stats: Dict[str, Any] = Field(default_factory=dict)
    ping: Dict[str, Any] = Field(default_factory=dict)
    registered: Dict[str, Any] = Field(default_factory=dict)


class TaskCancelResponse(BaseModel):
    """Response model for task cancellation"""

    task_id: str = Field(..., description="Cancelled task identifier")
    cancelled: bool = Field(..., description="Whether cancellation was successful")
    message: str = Field(default="Task cancelled successfully", description="Cancellation message")
