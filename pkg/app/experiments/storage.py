"""
Result persistence

Flat-file readers and writers for parameter matrices, states, structures,
design results, reports and the CSV tables commands emit. CSV files always
start with a header row; JSON written by a command carries "config_hash".
"""

import csv
import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence

from ..circuits.params import ParamMatrix
from ..design.optimizer import DesignResult
from ..registers.structure import BlockStructure
from ..states.library import BlockState

logger = logging.getLogger(__name__)


def ensure_dir(path: Path) -> Path:
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    return path


def write_json(path: Path, data: Dict[str, Any], config_hash: Optional[str] = None) -> Path:
    path = Path(path)
    ensure_dir(path.parent)
    payload = dict(data)
    if config_hash is not None:
        payload["config_hash"] = config_hash
    with open(path, "w", encoding="utf-8") as f:
        json.dump(payload, f, indent=2, sort_keys=True)
    logger.debug(f"Wrote {path}")
    return path


def read_json(path: Path) -> Dict[str, Any]:
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    path = Path(path)
    ensure_dir(path.parent)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(header)
        writer.writerows(rows)
    logger.debug(f"Wrote {path}")
    return path


def read_csv(path: Path) -> List[Dict[str, str]]:
    with open(path, "r", encoding="utf-8", newline="") as f:
        return list(csv.DictReader(f))


# Typed artifacts

def write_param_matrix(path: Path, params: ParamMatrix, config_hash: Optional[str] = None) -> Path:
    return write_json(path, params.to_dict(), config_hash)


def read_param_matrix(path: Path) -> ParamMatrix:
    return ParamMatrix.from_dict(read_json(path))


def write_state(path: Path, state: BlockState, config_hash: Optional[str] = None) -> Path:
    return write_json(path, state.to_dict(), config_hash)


def read_state(path: Path, coupling: float = 1.0) -> BlockState:
    return BlockState.from_dict(read_json(path), coupling=coupling)


def write_structure(path: Path, structure: BlockStructure, config_hash: Optional[str] = None) -> Path:
    return write_json(path, structure.to_dict(), config_hash)


def read_structure(path: Path, coupling: float = 1.0) -> BlockStructure:
    return BlockStructure.from_dict(read_json(path), coupling=coupling)


def read_design_result(path: Path) -> DesignResult:
    return DesignResult.model_validate(read_json(path))


def write_trajectory(path: Path, trajectory: Sequence[float]) -> Path:
    return write_csv(path, ("iteration", "f"), enumerate(trajectory))


def write_measurements(path: Path, o: Sequence[float], labels: Sequence[tuple], n_readouts: int) -> Path:
    """(readout_index, channel_label, axis, value) per measured value"""
    n_obs = len(labels)
    rows = (
        (j, labels[i][0], labels[i][1], o[j * n_obs + i])
        for j in range(n_readouts)
        for i in range(n_obs)
    )
    return write_csv(path, ("readout_index", "channel_label", "axis", "value"), rows)


def write_records(path: Path, records: Sequence[Dict[str, Any]]) -> Path:
    """CSV of homogeneous dict rows, header taken from the first row"""
    if not records:
        raise ValueError(f"No rows to write to {path}")
    header = list(records[0].keys())
    return write_csv(path, header, ([record[key] for key in header] for record in records))
