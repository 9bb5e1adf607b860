"""
Circuit parameters

Layout of the parameterized readout circuits and the parameter matrix
(one row of 6 angles per layer for each circuit).
"""

from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

PARAMS_PER_LAYER = 6


class CircuitLayout(BaseModel):
    """Layer count of a readout circuit.

    Layer 1 is a rotation; every further layer is an entangler followed by a
    rotation. Each rotation carries (alpha, beta, gamma) for the central spin
    and (alpha', beta', gamma') for the peripheral spins.
    """

    layers: int = Field(default=3, ge=1)
    params_per_layer: int = Field(default=PARAMS_PER_LAYER, ge=PARAMS_PER_LAYER, le=PARAMS_PER_LAYER)

    model_config = ConfigDict(frozen=True)

    @property
    def n_params(self) -> int:
        return self.params_per_layer * self.layers


@dataclass(frozen=True, eq=False)
class ParamMatrix:
    """Readout parameters Theta, N_u rows x 6L columns in radians.

    ``row_layers`` lets rows use fewer layers than the column width; their
    trailing columns are ignored.
    """

    n_total: int
    layers: int
    theta: np.ndarray
    row_layers: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        theta = np.array(self.theta, dtype=float)
        if theta.ndim != 2 or theta.shape[1] != PARAMS_PER_LAYER * self.layers:
            raise ValueError(
                f"Theta of shape {theta.shape} does not fit {self.layers} layers"
            )
        if not np.all(np.isfinite(theta)):
            raise ValueError("Theta contains non-finite entries")
        if self.row_layers is not None:
            row_layers = tuple(int(x) for x in self.row_layers)
            if len(row_layers) != theta.shape[0]:
                raise ValueError("row_layers must give one layer count per readout")
            if any(not 1 <= x <= self.layers for x in row_layers):
                raise ValueError(f"Row layer counts must lie in [1, {self.layers}]")
            object.__setattr__(self, "row_layers", row_layers)
        theta.flags.writeable = False
        object.__setattr__(self, "theta", theta)

    @property
    def n_readouts(self) -> int:
        return self.theta.shape[0]

    @property
    def layout(self) -> CircuitLayout:
        return CircuitLayout(layers=self.layers)

    def layers_of(self, row: int) -> int:
        return self.layers if self.row_layers is None else self.row_layers[row]

    def active_mask(self) -> np.ndarray:
        """Boolean mask of the parameters each row actually uses"""
        counts = np.array([self.layers_of(i) for i in range(self.n_readouts)])
        columns = np.arange(self.theta.shape[1]) // PARAMS_PER_LAYER
        return columns[np.newaxis, :] < counts[:, np.newaxis]

    def with_theta(self, theta: np.ndarray) -> "ParamMatrix":
        return ParamMatrix(self.n_total, self.layers, theta, self.row_layers)

    def to_dict(self) -> Dict[str, Any]:
        data = {
            "n": self.n_total,
            "layers": self.layers,
            "readouts": self.n_readouts,
            "theta": self.theta.tolist(),
        }
        if self.row_layers is not None:
            data["row_layers"] = list(self.row_layers)
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ParamMatrix":
        params = cls(
            n_total=int(data["n"]),
            layers=int(data["layers"]),
            theta=np.asarray(data["theta"], dtype=float),
            row_layers=data.get("row_layers"),
        )
        if params.n_readouts != int(data["readouts"]):
            raise ValueError(
                f"Header says {data['readouts']} readouts, theta has {params.n_readouts} rows"
            )
        return params


def random_params(
    layout: CircuitLayout,
    n_readouts: int,
    seed: int,
    n_total: int,
    row_layers: Optional[Tuple[int, ...]] = None,
) -> ParamMatrix:
    """Uniform [0, 2 pi) angles, deterministic under ``seed``"""
    if n_readouts < 1:
        raise ValueError(f"Need at least one readout, got {n_readouts}")
    rng = np.random.default_rng(seed)
    theta = rng.uniform(0.0, 2 * np.pi, size=(n_readouts, layout.n_params))
    return ParamMatrix(n_total, layout.layers, theta, row_layers)
