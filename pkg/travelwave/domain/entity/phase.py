import math
from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from travelwave.domain.entity.model import BodyConfig, as_float_tuple


class PhaseState(BaseModel):
    """
    Positions and velocities of q point masses at time t.

    q = 2 holds (r_1, r_2); q = 1 holds the relative state (Delta_12, Delta_12').
    """
    model_config = ConfigDict(frozen=True)

    positions: tuple[tuple[float, float, float], ...] = Field(min_length=1, max_length=2)
    velocities: tuple[tuple[float, float, float], ...] = Field(min_length=1, max_length=2)
    t: float = 0.0

    @field_validator("positions", "velocities", mode="before")
    @classmethod
    def coerce_vectors(cls, v):
        if isinstance(v, np.ndarray):
            v = np.atleast_2d(v)
        return tuple(as_float_tuple(row) for row in v)

    @model_validator(mode="after")
    def validate_state(self):
        if len(self.positions) != len(self.velocities):
            raise ValueError("positions and velocities must describe the same bodies")
        values = [x for row in self.positions + self.velocities for x in row] + [self.t]
        if not all(math.isfinite(x) for x in values):
            raise ValueError("phase state components must be finite")
        if self.q == 2 and self.positions[0] == self.positions[1]:
            raise ValueError("r_1 and r_2 must differ")
        return self

    @property
    def q(self) -> int:
        return len(self.positions)

    @property
    def relative(self) -> bool:
        return self.q == 1

    def position_array(self) -> np.ndarray:
        return np.array(self.positions, dtype=float)

    def velocity_array(self) -> np.ndarray:
        return np.array(self.velocities, dtype=float)

    def flat(self) -> np.ndarray:
        return np.concatenate([self.position_array().ravel(), self.velocity_array().ravel()])

    @classmethod
    def from_flat(cls, y: np.ndarray, q: int, t: float) -> "PhaseState":
        half = 3 * q
        return cls(positions=y[:half].reshape(q, 3), velocities=y[half:].reshape(q, 3), t=t)


@dataclass(frozen=True)
class Trajectory:
    """RK4 samples: times (N,), positions and velocities (N, q, 3)"""
    times: np.ndarray
    positions: np.ndarray
    velocities: np.ndarray

    def __len__(self) -> int:
        return len(self.times)

    @property
    def q(self) -> int:
        return self.positions.shape[1]

    def state(self, index: int) -> PhaseState:
        return PhaseState(positions=self.positions[index], velocities=self.velocities[index],
                          t=float(self.times[index]))

    @property
    def last_state(self) -> PhaseState:
        return self.state(-1)

    def relative_positions(self) -> np.ndarray:
        if self.q == 1:
            return self.positions[:, 0, :]
        return self.positions[:, 0, :] - self.positions[:, 1, :]

    def relative_velocities(self) -> np.ndarray:
        if self.q == 1:
            return self.velocities[:, 0, :]
        return self.velocities[:, 0, :] - self.velocities[:, 1, :]

    def energy(self, body: BodyConfig) -> np.ndarray:
        """Specific energy for q = 1, total mechanical energy for q = 2"""
        if self.q == 1:
            delta = self.positions[:, 0, :]
            speed_sq = np.sum(self.velocities[:, 0, :] ** 2, axis=1)
            return 0.5 * speed_sq - body.G * body.total_mass / np.linalg.norm(delta, axis=1)
        masses = np.array([body.m1, body.m2])
        kinetic = 0.5 * np.sum(masses[None, :] * np.sum(self.velocities ** 2, axis=2), axis=1)
        separation = np.linalg.norm(self.relative_positions(), axis=1)
        return kinetic - body.G * body.m1 * body.m2 / separation

    def angular_momentum(self, body: BodyConfig) -> np.ndarray:
        """Delta x Delta' for q = 1, sum of m_i r_i x v_i for q = 2; shape (N, 3)"""
        if self.q == 1:
            return np.cross(self.positions[:, 0, :], self.velocities[:, 0, :])
        masses = np.array([body.m1, body.m2])
        return np.sum(masses[None, :, None] * np.cross(self.positions, self.velocities), axis=1)

    def rows(self) -> np.ndarray:
        """(t, positions..., velocities...) per sample"""
        n = len(self.times)
        return np.column_stack([self.times, self.positions.reshape(n, -1), self.velocities.reshape(n, -1)])

    def columns(self) -> list[str]:
        if self.q == 1:
            return ["t", "dx", "dy", "dz", "dvx", "dvy", "dvz"]
        return ["t", "r1x", "r1y", "r1z", "r2x", "r2y", "r2z",
                "v1x", "v1y", "v1z", "v2x", "v2y", "v2z"]
