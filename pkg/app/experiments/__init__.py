"""
Experiments package initialization
"""

from .campaign import CampaignReport, run_campaign
from .commands import (
    cmd_decompose,
    cmd_design,
    cmd_design_restart,
    cmd_fid,
    cmd_oracle,
    cmd_rank,
    cmd_sweep,
    cmd_tomo,
    save_design,
)
from .config import RunConfig, load_run_config
from .oracle import OracleReport, run_oracle
from .sweeps import SweepPoint, run_sweep

__all__ = [
    "CampaignReport",
    "OracleReport",
    "RunConfig",
    "SweepPoint",
    "cmd_decompose",
    "cmd_design",
    "cmd_design_restart",
    "cmd_fid",
    "cmd_oracle",
    "cmd_rank",
    "cmd_sweep",
    "cmd_tomo",
    "load_run_config",
    "run_campaign",
    "run_oracle",
    "run_sweep",
    "save_design",
]
