from app.schemas.async_responses import TaskResponse, TaskStatusResponse
from app.schemas.jobs import (
    DesignJobRequest,
    RegisterTableResponse,
    SweepJobRequest,
    TomographyJobRequest,
)
