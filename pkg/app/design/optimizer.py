"""
Readout design optimizer

Minimizes the propagated-variance cost over the circuit angles with
sequential quadratic programming (scipy SLSQP), keeping the best point
seen so that the reported trajectory never increases. Restarts draw
independent random initial angles from seeds spawned off the master seed.
"""

import logging
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    SerializerFunctionWrapHandler,
    computed_field,
    field_serializer,
    model_serializer,
    model_validator,
)
from scipy.optimize import minimize

from ..circuits.params import ParamMatrix, random_params
from ..settings import GradientMode, OptimizerMethod, get_settings
from .problem import REJECTED_COST, DesignProblem

logger = logging.getLogger(__name__)


class OptimizerConfig(BaseModel):
    """Iteration budget, restarts and gradient settings of a design run"""

    max_iterations: int = Field(default=30, ge=0)
    restarts: int = Field(default=10, ge=1)
    seed: int = Field(default=0, ge=0)
    gradient_mode: GradientMode = "analytic_if_available"
    fd_step: float = Field(default=1e-6, gt=0.0)
    convergence_tol: float = Field(default=1e-6, gt=0.0)
    method: OptimizerMethod = "SLSQP"

    model_config = ConfigDict(frozen=True)

    @classmethod
    def from_settings(cls, **overrides: Any) -> "OptimizerConfig":
        defaults = get_settings().optimizer.model_dump()
        defaults.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**defaults)


class RestartStat(BaseModel):
    restart: int
    seed: int
    f_initial: float
    f_final: float
    iterations: int

    model_config = ConfigDict(frozen=True)


class DesignResult(BaseModel):
    """Best angles of a design run with its cost history.

    Serializes to the theta.json layout: the ParamMatrix fields at the top
    level plus f_initial, f_final, rank, trajectory, restarts and summary.
    """

    theta_star: ParamMatrix
    f_initial: float
    f_final: float
    trajectory: List[float]
    restart_stats: List[RestartStat] = Field(default_factory=list)
    rank: int = 0

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @model_validator(mode="before")
    @classmethod
    def _from_theta_layout(cls, data: Any) -> Any:
        if isinstance(data, dict) and "theta_star" not in data and "theta" in data:
            data = dict(data)
            data["theta_star"] = ParamMatrix.from_dict(data)
            data.setdefault("restart_stats", data.pop("restarts", []))
        return data

    @field_serializer("theta_star")
    def _dump_theta(self, theta_star: ParamMatrix) -> Dict[str, Any]:
        return theta_star.to_dict()

    @model_serializer(mode="wrap")
    def _to_theta_layout(self, handler: SerializerFunctionWrapHandler) -> Dict[str, Any]:
        data = handler(self)
        data.update(data.pop("theta_star"))
        data["restarts"] = data.pop("restart_stats")
        return data

    @property
    def ratio(self) -> float:
        return self.f_final / self.f_initial if self.f_initial else float("nan")

    @computed_field
    @property
    def summary(self) -> Dict[str, float]:
        """Mean and standard deviation of f over restarts"""
        initial = np.array([s.f_initial for s in self.restart_stats] or [self.f_initial])
        final = np.array([s.f_final for s in self.restart_stats] or [self.f_final])
        return {
            "f_initial_mean": float(initial.mean()),
            "f_initial_sd": float(initial.std()),
            "f_final_mean": float(final.mean()),
            "f_final_sd": float(final.std()),
            "f_final_best": float(final.min()),
        }


class _Objective:
    """Scaled cost with a one-point cache shared by fun, jac and the callback"""

    def __init__(self, problem: DesignProblem, theta0: ParamMatrix, scale: float, analytic: bool):
        self.problem = problem
        self.template = theta0
        self.mask = problem.active_mask()
        self.scale = scale
        self.analytic = analytic
        self._x: Optional[np.ndarray] = None
        self._value: Optional[tuple] = None
        self.best_f = np.inf
        self.best_x: Optional[np.ndarray] = None

    def params(self, x: np.ndarray) -> ParamMatrix:
        theta = np.array(self.template.theta)
        theta[self.mask] = x
        return self.template.with_theta(theta)

    def _evaluate(self, x: np.ndarray):
        if self._x is None or not np.array_equal(x, self._x):
            f, gradient, rank = self.problem.evaluate_with_gradient(
                self.params(x), with_gradient=self.analytic
            )
            self._x = np.array(x)
            self._value = (f, gradient, rank)
            if f < self.best_f:
                self.best_f, self.best_x = f, np.array(x)
        return self._value

    def fun(self, x: np.ndarray) -> float:
        return self._evaluate(x)[0] / self.scale

    def jac(self, x: np.ndarray) -> np.ndarray:
        _, gradient, _ = self._evaluate(x)
        return gradient[self.mask] / self.scale


def optimize(
    theta0: ParamMatrix,
    config: OptimizerConfig,
    problem: DesignProblem,
) -> DesignResult:
    """Monotone local descent from ``theta0``"""
    f0, rank0 = problem.evaluate(theta0)
    if not np.isfinite(f0):
        raise ValueError("Cost is not finite at the initial angles")
    if rank0 < problem.basis.size:
        logger.warning(
            f"Initial transfer matrix has rank {rank0} < {problem.basis.size}; "
            "descent starts from a rejected point"
        )
    if config.max_iterations == 0:
        return DesignResult(
            theta_star=theta0, f_initial=f0, f_final=f0, trajectory=[f0], rank=rank0
        )

    analytic = config.gradient_mode == "analytic_if_available"
    scale = f0 if f0 < REJECTED_COST else 1.0
    objective = _Objective(problem, theta0, scale, analytic)
    x0 = np.array(theta0.theta)[objective.mask]
    objective.fun(x0)
    trajectory = [f0]

    def callback(xk, *args):
        objective.fun(xk)
        trajectory.append(float(objective.best_f))
        logger.debug(f"Iteration {len(trajectory) - 1}: f = {objective.best_f:.6g}")

    options: Dict[str, Any] = {"maxiter": config.max_iterations}
    if config.method == "SLSQP":
        options["ftol"] = config.convergence_tol
    else:
        options["gtol"] = config.convergence_tol
    if not analytic:
        options["eps"] = config.fd_step

    outcome = minimize(
        objective.fun,
        x0,
        jac=objective.jac if analytic else None,
        method=config.method,
        callback=callback,
        options=options,
    )
    objective.fun(outcome.x)
    theta_star = objective.params(objective.best_x)
    f_final, rank = problem.evaluate(theta_star)
    logger.debug(f"Optimizer stopped after {outcome.nit} iterations: {outcome.message}")
    return DesignResult(
        theta_star=theta_star,
        f_initial=f0,
        f_final=f_final,
        trajectory=trajectory,
        rank=rank,
    )


def restart_seeds(seed: int, restarts: int) -> List[int]:
    """Independent per-restart seeds derived from the master seed"""
    children = np.random.SeedSequence(seed).spawn(restarts)
    return [int(child.generate_state(1)[0]) for child in children]


def run_restart(config: OptimizerConfig, problem: DesignProblem, index: int) -> DesignResult:
    """One restart, reproducible in isolation from (config, index)"""
    seed = restart_seeds(config.seed, config.restarts)[index]
    theta0 = random_params(
        problem.layout, problem.n_readouts, seed, problem.n_total, problem.row_layers
    )
    result = optimize(theta0, config, problem)
    stat = RestartStat(
        restart=index,
        seed=seed,
        f_initial=result.f_initial,
        f_final=result.f_final,
        iterations=len(result.trajectory) - 1,
    )
    logger.info(
        f"Restart {index}: f {result.f_initial:.4g} -> {result.f_final:.4g} "
        f"in {stat.iterations} iterations"
    )
    return DesignResult(
        theta_star=result.theta_star,
        f_initial=result.f_initial,
        f_final=result.f_final,
        trajectory=result.trajectory,
        restart_stats=[stat],
        rank=result.rank,
    )


def merge_restarts(results: Sequence[DesignResult]) -> DesignResult:
    """Best-by-f_final with all restart statistics, ordered by restart index"""
    if not results:
        raise ValueError("No restart results to merge")
    ordered = sorted(results, key=lambda r: r.restart_stats[0].restart)
    best = min(ordered, key=lambda r: (r.f_final, r.restart_stats[0].restart))
    return DesignResult(
        theta_star=best.theta_star,
        f_initial=best.f_initial,
        f_final=best.f_final,
        trajectory=best.trajectory,
        restart_stats=[r.restart_stats[0] for r in ordered],
        rank=best.rank,
    )


def multi_restart(config: OptimizerConfig, problem: DesignProblem) -> DesignResult:
    results = [run_restart(config, problem, i) for i in range(config.restarts)]
    merged = merge_restarts(results)
    summary = merged.summary
    logger.info(
        f"{config.restarts} restarts: f_initial {summary['f_initial_mean']:.4g} "
        f"+- {summary['f_initial_sd']:.3g}, f_final {summary['f_final_mean']:.4g} "
        f"+- {summary['f_final_sd']:.3g}, best {summary['f_final_best']:.4g}"
    )
    return merged
