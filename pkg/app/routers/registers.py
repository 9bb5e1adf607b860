"""
Register Router

Synchronous sector table of a star register.
"""

import logging

from fastapi import APIRouter, HTTPException, Path, Query

from app.experiments.commands import cmd_decompose
from app.schemas.jobs import RegisterTableResponse

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/api/v1/registers", tags=["Registers"])

# sector tables are cheap but 4^N in the general counts grows quickly
MAX_TABLE_N = 64


@router.get("/{n}", response_model=RegisterTableResponse)
async def get_register_table(
    n: int = Path(..., ge=2, le=MAX_TABLE_N, description="Total spins N"),
    coupling: float = Query(1.0, gt=0.0, description="Coupling J in Hz"),
):
    """Sectors, multiplicities, DOF, N_o and minimal readout counts"""
    try:
        return RegisterTableResponse(**cmd_decompose(n, coupling))
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"Failed to build register table for N={n}: {str(e)}")
        raise HTTPException(status_code=500, detail=f"Failed to build register table: {str(e)}")
