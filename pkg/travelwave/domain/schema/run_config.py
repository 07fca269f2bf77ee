from pathlib import Path
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from travelwave.domain.entity.enums import ChartKind, Scenario, VerifyCheck
from travelwave.domain.entity.model import BodyConfig, WaveParams, as_float_tuple
from travelwave.domain.entity.report import Lattice


DEFAULT_SPACINGS = (1e-2, 5e-3)


class GridSpec(BaseModel):
    """w-grid for the ODE residual"""
    model_config = ConfigDict(frozen=True)

    w_min: float = 0.1
    w_max: float = 10.0
    points: int = Field(default=200, ge=2)

    @model_validator(mode="after")
    def validate_range(self):
        if not self.w_min < self.w_max:
            raise ValueError("w_min must be below w_max")
        if self.w_min <= 0 <= self.w_max:
            raise ValueError("the w-grid must not contain the front w = 0")
        return self

    def values(self) -> np.ndarray:
        return np.linspace(self.w_min, self.w_max, self.points)


class Rk4Spec(BaseModel):
    model_config = ConfigDict(frozen=True)

    t0: float = Field(default=1.0, gt=0)
    t_end: float = 2.0
    h: float = Field(default=1e-3, gt=0)

    @model_validator(mode="after")
    def validate_interval(self):
        if not self.t_end > self.t0:
            raise ValueError("t_end must exceed t0")
        return self


class LatticeSpec(BaseModel):
    """
    Optional lattice box, given in full or not at all. Without one the box is
    centred on the node where w = w_center at t = 1, far enough from the
    front for every spacing.
    """
    model_config = ConfigDict(frozen=True)

    lower: Optional[tuple[float, ...]] = None
    upper: Optional[tuple[float, ...]] = None
    t_min: Optional[float] = None
    t_max: Optional[float] = None
    points: int = Field(default=3, ge=1)
    spacings: tuple[float, ...] = DEFAULT_SPACINGS
    half_width: float = Field(default=0.05, gt=0)

    @field_validator("lower", "upper", "spacings", mode="before")
    @classmethod
    def coerce_vectors(cls, v):
        return None if v is None else as_float_tuple(v)

    @model_validator(mode="after")
    def validate_box(self):
        given = [name for name in ("lower", "upper", "t_min", "t_max") if getattr(self, name) is not None]
        if given and len(given) < 4:
            raise ValueError(f"a lattice box needs lower, upper, t_min and t_max together, got only {given}")
        if given:
            if len(self.lower) != len(self.upper) or any(lo >= hi for lo, hi in zip(self.lower, self.upper)):
                raise ValueError("lattice lower bounds must lie below the upper bounds, component by component")
            if not self.t_min < self.t_max:
                raise ValueError("lattice t_min must be below t_max")
        return self

    @property
    def explicit(self) -> bool:
        return self.lower is not None

    def to_lattice(self, params: WaveParams) -> Lattice:
        if self.explicit:
            return Lattice(lower=self.lower, upper=self.upper, t_min=self.t_min, t_max=self.t_max,
                           points=self.points, spacings=self.spacings)

        v = params.v_array
        reach = float(np.sum(np.abs(v))) + abs(params.mu)
        w_center = 1.0 + 20.0 * max(self.spacings) * reach + self.half_width * reach
        if params.v_norm_sq > 0:
            t_center = 1.0
            center = (w_center + params.mu * t_center - params.c) * v / params.v_norm_sq
        else:
            t_center = (params.c - w_center) / params.mu
            center = np.zeros_like(v)
        return Lattice(
            lower=tuple(center - self.half_width),
            upper=tuple(center + self.half_width),
            t_min=t_center - self.half_width,
            t_max=t_center + self.half_width,
            points=self.points,
            spacings=self.spacings,
        )


class FrontRequest(BaseModel):
    model_config = ConfigDict(frozen=True)

    chart: ChartKind
    times: tuple[float, ...] = Field(min_length=1)
    resolution: Optional[tuple[int, int]] = None
    directions: int = Field(default=16, ge=1)

    @field_validator("times")
    @classmethod
    def validate_times(cls, v):
        if any(t < 0 for t in v):
            raise ValueError("front times must be non-negative")
        return v


class RunConfig(BaseModel):
    """Validated contents of a run configuration file"""
    model_config = ConfigDict(frozen=True)

    body: BodyConfig
    wave: Optional[WaveParams] = None
    scenario: Scenario
    direction: tuple[float, float, float]
    verify: tuple[VerifyCheck, ...] = ()
    output_dir: Path = Path("out")
    seed: int = 0
    front: Optional[FrontRequest] = None
    lattice: LatticeSpec = Field(default_factory=LatticeSpec)
    grid: GridSpec = Field(default_factory=GridSpec)
    rk4: Rk4Spec = Field(default_factory=Rk4Spec)

    @field_validator("direction", mode="before")
    @classmethod
    def coerce_direction(cls, v):
        return as_float_tuple(v)

    @model_validator(mode="after")
    def validate_scenario(self):
        if self.scenario == Scenario.NCME_COLLISION:
            return self
        if self.wave is None:
            raise ValueError(f"scenario {self.scenario.value} needs a [wave] section")
        expected = 1 if self.scenario == Scenario.REL2BODY else 2
        if self.wave.q != expected:
            raise ValueError(
                f"scenario {self.scenario.value} needs {expected} block(s) of lambda^2, got {self.wave.q}"
            )
        return self

    @property
    def params(self) -> WaveParams:
        """Wave parameters of the run; NCME runs use the Newtonian reduction w = t"""
        if self.wave is None or self.scenario == Scenario.NCME_COLLISION:
            return WaveParams.newtonian(q=2)
        return self.wave

    def with_overrides(self, output_dir: Optional[Path] = None, seed: Optional[int] = None) -> "RunConfig":
        update = {}
        if output_dir is not None:
            update["output_dir"] = Path(output_dir)
        if seed is not None:
            update["seed"] = seed
        return self.model_copy(update=update)
