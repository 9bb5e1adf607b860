"""
Job request and register schemas
"""

from typing import Any, Dict, List, Literal, Optional
from pydantic import BaseModel, Field

from app.experiments.config import RunConfig


class SectorRow(BaseModel):
    index: int = Field(..., description="1-based sector index, Dicke sector first")
    j: float = Field(..., description="Total peripheral spin")
    j2: int
    multiplicity: int
    block_dim: int


class RegisterTableResponse(BaseModel):
    """Sector table and counting of an N-spin star register"""

    n: int
    sectors: List[SectorRow]
    n_observables: int
    dof: int
    min_readouts: int
    dicke_dof: int
    dicke_min_readouts: int
    general_dof: int
    general_min_readouts: int


class DesignJobRequest(BaseModel):
    """Design run; ``fan_out`` submits one task per restart"""

    config: RunConfig = Field(default_factory=RunConfig)
    fan_out: bool = Field(default=False, description="Run restarts as independent tasks")
    out: Optional[str] = Field(default=None, description="Output directory on the worker")


class TomographyJobRequest(BaseModel):
    """Campaign run with an optional inline parameter matrix"""

    config: RunConfig = Field(default_factory=RunConfig)
    theta: Optional[Dict[str, Any]] = Field(
        default=None, description="Parameter matrix payload (as in theta.json); random when omitted"
    )
    out: Optional[str] = None


class SweepJobRequest(BaseModel):
    mode: Literal["layer_mix", "extra_readouts"]
    config: RunConfig = Field(default_factory=RunConfig)
    out: Optional[str] = None
