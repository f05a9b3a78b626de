"""Request models for the HTTP service.

Every compute endpoint takes data inline (the CLI reads files locally and
ships parsed columns or curves) plus an opaque ``config`` mapping that the
server embeds verbatim in the report artifact, so the emitted JSON records
the fully resolved client configuration.
"""

from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field


class _Request(BaseModel):
    model_config = ConfigDict(extra="forbid")

    config: dict[str, Any] = Field(default_factory=dict)


class DiscreteRequest(_Request):
    y: list[float]
    x: list[str]
    y_column: str = "y"
    x_column: str = "x"
    include_pmf: bool = False


class PredictRequest(_Request):
    y: list[float]
    x_numeric: list[float] | None = None
    x_categorical: list[str] | None = None
    penalty: Literal["L2", "L1", "ZeroOne"] = "L2"
    bins: int | None = None
    holdout_fraction: float = 0.0
    seed: int = 0


class EfficiencyRequest(_Request):
    mode: Literal["closed_form", "monte_carlo", "r2"] = "closed_form"
    mu: float = 0.0
    sigma2: float = 1.0
    p_obs: float | None = None
    n_rep: int = 100_000
    seed: int = 0
    pmf: list[list[float]] | None = None


class FunctionalRequest(_Request):
    x_grid: list[float]
    x_values: list[list[float]]
    y_grid: list[float]
    y_values: list[list[float]]
    x_name: str = "x"
    y_name: str = "y"
    threshold_x: float = 0.85
    threshold_y: float = 0.85
    cv_p: bool = False
    resample: bool = False


class SimulateRequest(_Request):
    kind: Literal["joint", "mcar", "normal", "flm"]
    seed: int = 0
    n: int = 1000
    # joint
    nx: int = 2
    ny: int = 2
    concentration: float = 1.0
    # mcar
    mu: float = 0.0
    sigma2: float = 1.0
    p_obs: float = 0.5
    # normal
    rho: float = 0.0
    # flm
    grid_size: int = 64
    x_variances: list[float] = Field(default_factory=lambda: [4.0, 2.0, 1.0])
    beta_diag: list[float] = Field(default_factory=lambda: [1.0, 1.0, 1.0])
    noise_sd: float = 1.0


class CheckRequest(_Request):
    n_joints: int = 200
    seed: int = 0
    tolerance: float = 1e-12
    max_support: int = 6
    concentration: float = 1.0
