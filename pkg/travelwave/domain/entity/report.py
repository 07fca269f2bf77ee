from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from travelwave.domain.entity.enums import EquationId, GridKind


class GridDescription(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: GridKind
    points: int = Field(ge=1)
    spacings: tuple[float, ...] = ()
    # w-range for a w-grid; per-axis (lower, upper) for a lattice, time last
    bounds: tuple[tuple[float, float], ...] = ()


class Lattice(BaseModel):
    """
    Sample box for finite-difference checks: `points` nodes per axis over
    [lower, upper] in r~ and [t_min, t_max] in t. Each spacing h is the
    stencil step used around every node.
    """
    model_config = ConfigDict(frozen=True)

    lower: tuple[float, ...]
    upper: tuple[float, ...]
    t_min: float
    t_max: float
    points: int = Field(default=3, ge=1)
    spacings: tuple[float, ...] = (1e-2, 5e-3)

    @model_validator(mode="after")
    def validate_box(self):
        if len(self.lower) != len(self.upper) or not self.lower:
            raise ValueError("lower and upper must have the same nonzero dimension")
        if any(lo > hi for lo, hi in zip(self.lower, self.upper)) or self.t_min > self.t_max:
            raise ValueError("lattice bounds must be ordered")
        if not self.spacings or any(h <= 0 for h in self.spacings):
            raise ValueError("spacings must be positive")
        return self

    @property
    def dim(self) -> int:
        return len(self.lower)

    def nodes(self) -> tuple[np.ndarray, np.ndarray]:
        """Points (N, dim) and times (N,) in row-major order, time fastest"""
        axes = [np.linspace(lo, hi, self.points) for lo, hi in zip(self.lower, self.upper)]
        axes.append(np.linspace(self.t_min, self.t_max, self.points))
        mesh = np.meshgrid(*axes, indexing="ij")
        flat = np.column_stack([m.ravel() for m in mesh])
        return flat[:, :-1], flat[:, -1]

    def bounds(self) -> tuple[tuple[float, float], ...]:
        return tuple(zip(self.lower, self.upper)) + ((self.t_min, self.t_max),)


class SweepRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    h: float
    max_abs: float = Field(ge=0)
    max_rel: float = Field(ge=0)
    order: Optional[float] = None


class ResidualReport(BaseModel):
    model_config = ConfigDict(frozen=True, ser_json_inf_nan="strings")

    equation_id: EquationId
    max_abs_residual: float = Field(ge=0)
    max_rel_residual: float = Field(ge=0)
    grid: GridDescription
    estimated_order: Optional[float] = None
    block_rel_residuals: tuple[float, ...] = ()
    sweep: tuple[SweepRow, ...] = ()

    @model_validator(mode="after")
    def validate_order(self):
        if self.estimated_order is not None and len(self.grid.spacings) < 2:
            raise ValueError("an estimated order needs at least two spacings")
        return self


class IntegratorReport(BaseModel):
    """RK4 cross-check of a closed-form Newtonian solution"""
    model_config = ConfigDict(frozen=True)

    scenario: str
    t0: float
    t_end: float
    h: float
    steps: int = Field(ge=1)
    max_deviation: float = Field(ge=0)
    max_abs_energy: float = Field(ge=0)
    max_angular_momentum: float = Field(ge=0)
