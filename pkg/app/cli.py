"""
Command-line interface

startomo decompose | design | tomo | rank | sweep | oracle | fid

Flags override values from an optional --config run file. Domain errors
exit with code 2, a failing oracle with code 1.
"""

import json
import logging
from enum import Enum
from pathlib import Path
from typing import Any, Optional

import typer
from dotenv import load_dotenv
from pydantic import ValidationError

from .experiments import commands
from .experiments.config import RunConfig, load_run_config

logger = logging.getLogger(__name__)

app = typer.Typer(
    name="startomo",
    help="Tomography design and simulation for star-topology spin registers",
    no_args_is_help=True,
)


class SweepModeOption(str, Enum):
    layer_mix = "layer_mix"
    extra_readouts = "extra_readouts"


class StateOption(str, Enum):
    mssm = "mssm"
    ghz = "ghz"
    coherent = "coherent"
    squeezed = "squeezed"
    random = "random"
    maximally_mixed = "maximally_mixed"


# Shared options

ConfigOpt = typer.Option(None, "--config", help="Run config file (JSON or YAML)")
NOpt = typer.Option(None, "--n", help="Total spins N")
CouplingOpt = typer.Option(None, "--coupling", help="Coupling J in Hz")
LayersOpt = typer.Option(None, "--layers", help="Circuit layers")
ReadoutsOpt = typer.Option(None, "--readouts", help="Readout circuits (default: minimum)")
RestartsOpt = typer.Option(None, "--restarts")
ItersOpt = typer.Option(None, "--iters", help="Optimizer iterations per restart")
SeedOpt = typer.Option(None, "--seed", help="Master seed")
StateOpt = typer.Option(None, "--state")
NoiseOpt = typer.Option(None, "--noise-sd", help="Additive noise standard deviation")
RepsOpt = typer.Option(None, "--reps", help="Campaign repetitions")
DickeOpt = typer.Option(None, "--dicke/--no-dicke", help="Restrict to the Dicke sector")
ThetaOpt = typer.Option(None, "--theta", help="Theta JSON file")
OutOpt = typer.Option(None, "--out", help="Output directory")
UnderOpt = typer.Option(
    None, "--allow-underdetermined/--no-allow-underdetermined",
    help="Accept fewer readouts than the minimum",
)


@app.callback()
def main(
    log_level: str = typer.Option("INFO", "--log-level", help="Logging level"),
) -> None:
    load_dotenv()
    logging.basicConfig(
        level=getattr(logging, log_level.upper(), logging.INFO),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def _echo(payload: Any) -> None:
    typer.echo(json.dumps(payload, indent=2, sort_keys=True, default=str))


def _fail(error: Exception) -> None:
    logger.error(f"{type(error).__name__}: {error}")
    typer.echo(f"Error: {error}", err=True)
    raise typer.Exit(code=2)


def _config(config_file: Optional[Path], **flags: Any) -> RunConfig:
    if flags.get("state") is not None:
        flags["state"] = flags["state"].value
    return load_run_config(config_file, **flags)


@app.command()
def decompose(
    n: int = typer.Option(10, "--n", help="Total spins N"),
    coupling: float = typer.Option(1.0, "--coupling"),
    out: Optional[Path] = OutOpt,
) -> None:
    """Sector table, DOF and minimal readout count"""
    try:
        payload = commands.cmd_decompose(n, coupling, out)
    except (ValueError, ValidationError) as e:
        _fail(e)
    _echo(payload)


@app.command()
def design(
    config_file: Optional[Path] = ConfigOpt,
    n: Optional[int] = NOpt,
    coupling: Optional[float] = CouplingOpt,
    layers: Optional[int] = LayersOpt,
    readouts: Optional[int] = ReadoutsOpt,
    restarts: Optional[int] = RestartsOpt,
    iters: Optional[int] = ItersOpt,
    seed: Optional[int] = SeedOpt,
    dicke: Optional[bool] = DickeOpt,
    out: Optional[Path] = OutOpt,
    allow_underdetermined: Optional[bool] = UnderOpt,
) -> None:
    """Optimize readout circuits; writes theta.json and trajectory.csv"""
    try:
        config = _config(
            config_file, n=n, coupling=coupling, layers=layers, readouts=readouts,
            restarts=restarts, iterations=iters, seed=seed, dicke_only=dicke,
            allow_underdetermined=allow_underdetermined,
        )
        result = commands.cmd_design(config, out)
    except (ValueError, ValidationError) as e:
        _fail(e)
    _echo({"f_initial": result.f_initial, "f_final": result.f_final, "ratio": result.ratio,
           "rank": result.rank, **result.summary})


@app.command()
def tomo(
    config_file: Optional[Path] = ConfigOpt,
    n: Optional[int] = NOpt,
    coupling: Optional[float] = CouplingOpt,
    layers: Optional[int] = LayersOpt,
    readouts: Optional[int] = ReadoutsOpt,
    seed: Optional[int] = SeedOpt,
    state: Optional[StateOption] = StateOpt,
    noise_sd: Optional[float] = NoiseOpt,
    reps: Optional[int] = RepsOpt,
    dicke: Optional[bool] = DickeOpt,
    theta: Optional[Path] = ThetaOpt,
    out: Optional[Path] = OutOpt,
    allow_underdetermined: Optional[bool] = UnderOpt,
) -> None:
    """Noisy reconstruction campaign; writes metrics.csv and report.json"""
    try:
        config = _config(
            config_file, n=n, coupling=coupling, layers=layers, readouts=readouts, seed=seed,
            state=state, noise_sd=noise_sd, repetitions=reps, dicke_only=dicke,
            allow_underdetermined=allow_underdetermined,
        )
        report = commands.cmd_tomo(config, theta, out)
    except (ValueError, ValidationError) as e:
        _fail(e)
    _echo(report.model_dump(mode="json"))


@app.command()
def rank(
    config_file: Optional[Path] = ConfigOpt,
    n: Optional[int] = NOpt,
    layers: Optional[int] = LayersOpt,
    readouts: Optional[int] = ReadoutsOpt,
    seed: Optional[int] = SeedOpt,
    dicke: Optional[bool] = DickeOpt,
    theta: Optional[Path] = ThetaOpt,
    allow_underdetermined: Optional[bool] = UnderOpt,
) -> None:
    """Shape, numerical rank and cost of a readout set"""
    try:
        config = _config(
            config_file, n=n, layers=layers, readouts=readouts, seed=seed, dicke_only=dicke,
            allow_underdetermined=allow_underdetermined,
        )
        payload = commands.cmd_rank(config, theta)
    except (ValueError, ValidationError) as e:
        _fail(e)
    _echo(payload)


@app.command()
def sweep(
    mode: SweepModeOption = typer.Argument(..., help="layer_mix or extra_readouts"),
    config_file: Optional[Path] = ConfigOpt,
    n: Optional[int] = NOpt,
    coupling: Optional[float] = CouplingOpt,
    layers: Optional[int] = LayersOpt,
    readouts: Optional[int] = ReadoutsOpt,
    seed: Optional[int] = SeedOpt,
    sets: Optional[int] = typer.Option(None, "--sets", help="Random sets per point"),
    k_max: Optional[int] = typer.Option(None, "--max", help="Largest k"),
    dicke: Optional[bool] = DickeOpt,
    out: Optional[Path] = OutOpt,
    allow_underdetermined: Optional[bool] = UnderOpt,
) -> None:
    """Cost statistics versus 2-layer count or extra readouts; writes sweep.csv"""
    try:
        config = _config(
            config_file, n=n, coupling=coupling, layers=layers, readouts=readouts, seed=seed,
            sweep_sets=sets, sweep_max=k_max, dicke_only=dicke,
            allow_underdetermined=allow_underdetermined,
        )
        rows = commands.cmd_sweep(mode.value, config, out)
    except (ValueError, ValidationError) as e:
        _fail(e)
    _echo(rows)


@app.command()
def oracle(
    n: int = typer.Option(3, "--n", help="Total spins N"),
    seed: int = typer.Option(0, "--seed"),
    out: Optional[Path] = OutOpt,
) -> None:
    """Cross-check the block machinery against full-space brute force"""
    try:
        report = commands.cmd_oracle(n, seed, out)
    except (ValueError, ValidationError) as e:
        _fail(e)
    _echo(report.model_dump(mode="json"))
    if not report.passed:
        failed = [c.name for c in report.checks if not c.passed]
        typer.echo(f"Oracle failed: {', '.join(failed)}", err=True)
        raise typer.Exit(code=1)


@app.command()
def fid(
    config_file: Optional[Path] = ConfigOpt,
    n: Optional[int] = NOpt,
    coupling: Optional[float] = CouplingOpt,
    state: Optional[StateOption] = StateOpt,
    out: Optional[Path] = OutOpt,
) -> None:
    """Simulated FID and its central-peak table; writes fid.csv and peaks.csv"""
    try:
        config = _config(config_file, n=n, coupling=coupling, state=state)
        rows = commands.cmd_fid(config, out)
    except (ValueError, ValidationError) as e:
        _fail(e)
    _echo(rows)


if __name__ == "__main__":
    app()
