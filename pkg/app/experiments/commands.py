"""
Command implementations

One function per CLI subcommand. Each takes a RunConfig (or the few
scalars it needs), does the work, writes its artifacts under the output
directory and returns the payload it printed so the API and worker can
reuse it.
"""

import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

from ..circuits.params import ParamMatrix, random_params
from ..design.optimizer import DesignResult, multi_restart, run_restart
from ..design.problem import DesignProblem
from ..measurement.fid import default_fid_grid, peak_table, simulate_fid
from ..measurement.observables import build_observables
from ..registers.structure import RegisterSpec, build_block_structure
from ..states.library import make_state
from ..tomography.counting import (
    dof_count,
    general_dof,
    general_min_readouts,
    min_readouts,
    n_observables,
)
from .campaign import CampaignReport, ProgressCallback, run_campaign
from .config import RunConfig
from .oracle import OracleReport, run_oracle
from .storage import (
    ensure_dir,
    read_param_matrix,
    write_csv,
    write_json,
    write_measurements,
    write_records,
    write_state,
    write_structure,
    write_trajectory,
)
from .sweeps import SweepMode, run_sweep

logger = logging.getLogger(__name__)


def _out_dir(config: RunConfig, out: Optional[Path]) -> Path:
    return ensure_dir(Path(out) if out is not None else Path(config.output_dir))


def _load_params(config: RunConfig, theta_file: Optional[Path]) -> ParamMatrix:
    """Theta from file, or a random set of config.n_readouts rows from config.seed"""
    if theta_file is not None:
        return read_param_matrix(theta_file)
    logger.info(f"No theta file given; using random circuits from seed {config.seed}")
    return random_params(
        config.layout(), config.n_readouts, config.seed, config.n, config.row_layers()
    )


def cmd_decompose(n: int, coupling: float = 1.0, out: Optional[Path] = None) -> Dict[str, Any]:
    """Sector table with DOF and readout counts"""
    structure = build_block_structure(RegisterSpec(n_total=n, coupling=coupling))
    payload = {
        "n": n,
        "sectors": [
            {"index": i, "j": s.j, **s.to_dict()}
            for i, s in enumerate(structure.sectors, start=1)
        ],
        "n_observables": n_observables(n),
        "dof": dof_count(n),
        "min_readouts": min_readouts(n),
        "dicke_dof": dof_count(n, dicke_only=True),
        "dicke_min_readouts": min_readouts(n, dicke_only=True),
        "general_dof": general_dof(n),
        "general_min_readouts": general_min_readouts(n),
    }
    if out is not None:
        out_dir = ensure_dir(Path(out))
        write_json(out_dir / "decompose.json", payload)
        write_structure(out_dir / "structure.json", structure)
    return payload


def design_problem(config: RunConfig) -> DesignProblem:
    return DesignProblem.build(
        config.structure(), config.layout(), config.n_readouts, row_layers=config.row_layers()
    )


def cmd_design(config: RunConfig, out: Optional[Path] = None) -> DesignResult:
    """Multi-restart design; writes theta.json and trajectory.csv"""
    out_dir = _out_dir(config, out)
    if config.underdetermined:
        logger.warning(f"Designing an under-determined set of {config.n_readouts} readouts")
    logger.info(
        f"Designing {config.n_readouts} readouts for N={config.n} "
        f"({config.restarts} restarts, {config.iterations} iterations)"
    )
    result = multi_restart(config.optimizer_config(), design_problem(config))
    save_design(config, result, out_dir)
    logger.info(f"Design finished: f {result.f_initial:.4g} -> {result.f_final:.4g}")
    return result


def cmd_design_restart(config: RunConfig, index: int) -> DesignResult:
    """One restart of cmd_design, for fan-out across workers"""
    if not 0 <= index < config.restarts:
        raise ValueError(f"Restart index {index} outside [0, {config.restarts})")
    return run_restart(config.optimizer_config(), design_problem(config), index)


def save_design(config: RunConfig, result: DesignResult, out: Optional[Path] = None) -> Path:
    """theta.json (labelled when under-determined) and trajectory.csv"""
    out_dir = _out_dir(config, out)
    write_trajectory(out_dir / "trajectory.csv", result.trajectory)
    record = result.model_dump(mode="json")
    record["underdetermined"] = config.underdetermined
    return write_json(out_dir / "theta.json", record, config.config_hash())


def cmd_tomo(
    config: RunConfig,
    theta_file: Optional[Path] = None,
    out: Optional[Path] = None,
    progress: Optional[ProgressCallback] = None,
) -> CampaignReport:
    """Noisy reconstruction campaign; writes metrics, coefficients, report and states"""
    out_dir = _out_dir(config, out)
    params = _load_params(config, theta_file)
    source = str(theta_file) if theta_file is not None else f"random:{config.seed}"
    logger.info(
        f"Tomography of {config.state} at N={config.n}: {config.repetitions} repetitions, "
        f"noise sd {config.noise_sd}"
    )
    report = run_campaign(config, params, theta_source=source, progress=progress)
    config_hash = config.config_hash()

    write_records(out_dir / "metrics.csv", report.rows)
    write_records(out_dir / "coefficients.csv", report.coefficient_rows())
    write_json(out_dir / "report.json", report.model_dump(mode="json"), config_hash)
    observables = build_observables(config.structure())
    write_measurements(
        out_dir / "measurements.csv", report.last_sample, observables.labels, params.n_readouts
    )
    write_state(out_dir / "reconstruction.json", report.last_reconstruction, config_hash)
    aggregates = report.aggregates
    logger.info(
        f"Campaign finished: distance {aggregates['frobenius_distance']['mean']:.4g} "
        f"+- {aggregates['frobenius_distance']['sd']:.3g}, infidelity "
        f"{aggregates['infidelity']['mean']:.4g}"
    )
    return report


def cmd_rank(config: RunConfig, theta_file: Optional[Path] = None) -> Dict[str, Any]:
    """Shape, rank and cost (in units of Var(o)) of a readout set"""
    params = _load_params(config, theta_file)
    problem = DesignProblem.build(
        config.structure(), params.layout, params.n_readouts, row_layers=params.row_layers
    )
    transfer, _ = problem.transfer(params)
    f, rank = problem.evaluate(params)
    return {
        "n": config.n,
        "readouts": params.n_readouts,
        "shape": list(transfer.shape),
        "rank": rank,
        "basis_size": problem.basis.size,
        "full_rank": rank == problem.basis.size,
        "f": f,
    }


def cmd_sweep(
    mode: SweepMode,
    config: RunConfig,
    out: Optional[Path] = None,
    progress: Optional[ProgressCallback] = None,
) -> List[Dict[str, Any]]:
    out_dir = _out_dir(config, out)
    rows = [point.model_dump() for point in run_sweep(config, mode, progress)]
    write_records(out_dir / "sweep.csv", rows)
    return rows


def cmd_oracle(n: int, seed: int = 0, out: Optional[Path] = None) -> OracleReport:
    report = run_oracle(n, seed=seed)
    if out is not None:
        write_json(ensure_dir(Path(out)) / "oracle.json", report.model_dump(mode="json"))
    return report


def cmd_fid(config: RunConfig, out: Optional[Path] = None) -> List[Dict[str, float]]:
    """Simulated FID (t, re, im) and its central-peak table for the config's state"""
    out_dir = _out_dir(config, out)
    structure = config.structure()
    state = make_state(config.state_spec(), structure)
    t_grid = default_fid_grid(structure.register_spec)
    signal = simulate_fid(state, t_grid)
    write_csv(
        out_dir / "fid.csv",
        ("t", "re", "im"),
        ((t, s.real, s.imag) for t, s in zip(t_grid, signal)),
    )
    rows = peak_table(state, build_observables(structure), t_grid)
    write_records(out_dir / "peaks.csv", rows)
    return rows
