import math
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from travelwave.domain.entity.enums import Provenance
from travelwave.domain.entity.model import BodyConfig, WaveParams, as_float_tuple


EXPONENT = "2/3"
RATIO_TOLERANCE = 1e-14


class ThetaPair(BaseModel):
    """Coupling scalars theta_1 = G m2 / (mu^2 - lambda_1^2 |v|^2), theta_2 = G m1 / (mu^2 - lambda_2^2 |v|^2)"""
    model_config = ConfigDict(frozen=True)

    theta1: float
    theta2: float

    @field_validator("theta1", "theta2")
    @classmethod
    def validate_nonzero(cls, v):
        if v == 0 or not math.isfinite(v):
            raise ValueError("theta must be finite and nonzero")
        return v

    @property
    def total(self) -> float:
        return self.theta1 + self.theta2

    @property
    def ratio(self) -> float:
        return self.theta1 / self.theta2

    @property
    def admissible(self) -> bool:
        """theta_1 + theta_2 != 0, equivalently -m2/m1 != (mu^2-l1^2|v|^2)/(mu^2-l2^2|v|^2)"""
        return self.total != 0

    @property
    def positive(self) -> bool:
        return self.total > 0

    @property
    def same_sign(self) -> bool:
        return (self.theta1 > 0) == (self.theta2 > 0)

    def mass_ratio_condition(self, body: BodyConfig, params: WaveParams) -> tuple[float, float]:
        """Both sides of m2/m1 > -(mu^2 - l1^2|v|^2)/(mu^2 - l2^2|v|^2)"""
        return body.m2 / body.m1, -params.wave_speed_factor(0) / params.wave_speed_factor(1)


class SolutionBlock(BaseModel):
    """One block alpha_j |w|^(2/3) S_j"""
    model_config = ConfigDict(frozen=True)

    alpha: float
    S: tuple[float, ...]

    @field_validator("S", mode="before")
    @classmethod
    def coerce_direction(cls, v):
        return as_float_tuple(v)

    @field_validator("S")
    @classmethod
    def validate_direction(cls, v):
        if not all(math.isfinite(x) for x in v) or not any(v):
            raise ValueError("S must be a finite nonzero vector")
        return v

    @property
    def coefficient(self) -> np.ndarray:
        return self.alpha * np.array(self.S, dtype=float)


class PowerLawSolution(BaseModel):
    """Psi_j(w) = alpha_j |w|^(2/3) S_j on an interval (a, b) that excludes 0"""
    model_config = ConfigDict(frozen=True)

    provenance: Provenance
    blocks: tuple[SolutionBlock, ...] = Field(min_length=1)
    domain: tuple[float, float] = (0.0, math.inf)
    thetas: Optional[ThetaPair] = None

    @field_validator("domain")
    @classmethod
    def validate_domain(cls, v):
        a, b = v
        if not a < b:
            raise ValueError("domain must satisfy a < b")
        if a < 0 < b:
            raise ValueError("domain must not contain w = 0")
        return v

    @model_validator(mode="after")
    def validate_blocks(self):
        dims = {len(block.S) for block in self.blocks}
        if len(dims) != 1:
            raise ValueError("all blocks must have the same dimension")
        if len(self.blocks) == 2:
            s1, s2 = self.blocks[0].coefficient, self.blocks[1].coefficient
            if np.array_equal(s1, s2):
                raise ValueError("S_1 and S_2 must be distinct")
            if self.thetas is not None:
                expected = -self.thetas.ratio * s2
                scale = max(float(np.max(np.abs(s1))), float(np.max(np.abs(expected))))
                if np.max(np.abs(s1 - expected)) > RATIO_TOLERANCE * scale:
                    raise ValueError("S_1 = -(theta_1/theta_2) S_2 does not hold")
        return self

    @property
    def p(self) -> int:
        return len(self.blocks[0].S)

    @property
    def q(self) -> int:
        return len(self.blocks)

    @property
    def exponent(self) -> str:
        return EXPONENT

    def coefficients(self) -> np.ndarray:
        """Effective alpha_j S_j stacked as a (q, p) array"""
        return np.array([block.coefficient for block in self.blocks])

    def amplitudes(self) -> tuple[float, ...]:
        return tuple(float(np.linalg.norm(c)) for c in self.coefficients())

    def contains(self, w: float) -> bool:
        a, b = self.domain
        return w != 0 and a < w < b

    def restricted(self, a: float, b: float) -> "PowerLawSolution":
        return self.model_copy(update={"domain": self.validate_domain((a, b))})

    def negated(self) -> "PowerLawSolution":
        """Same solution with U replaced by -U"""
        blocks = tuple(
            SolutionBlock(alpha=block.alpha, S=tuple(-x for x in block.S)) for block in self.blocks
        )
        return self.model_copy(update={"blocks": blocks})
