import math
from typing import Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from travelwave.core.exceptions import RejectedInputError


def as_float_tuple(value) -> tuple[float, ...]:
    """Coerce numpy arrays and sequences into a flat tuple of floats"""
    if isinstance(value, np.ndarray):
        return tuple(float(x) for x in value.ravel())
    if isinstance(value, (list, tuple)):
        return tuple(float(x) for x in value)
    return value


def _all_finite(values: Sequence[float]) -> bool:
    return all(math.isfinite(x) for x in values)


class StackedVector(BaseModel):
    """An element of R^(pq) stored as q blocks of dimension p"""
    model_config = ConfigDict(frozen=True)

    blocks: tuple[tuple[float, ...], ...]
    p: int = Field(gt=0)
    q: int = Field(gt=0)

    @field_validator("blocks", mode="before")
    @classmethod
    def coerce_blocks(cls, v):
        if isinstance(v, np.ndarray):
            v = np.atleast_2d(v)
        return tuple(as_float_tuple(block) for block in v)

    @model_validator(mode="after")
    def validate_shape(self):
        if len(self.blocks) != self.q:
            raise ValueError(f"expected {self.q} blocks, got {len(self.blocks)}")
        for block in self.blocks:
            if len(block) != self.p:
                raise ValueError(f"every block must have dimension {self.p}")
            if not _all_finite(block):
                raise ValueError("components must be finite")
        return self

    @classmethod
    def from_flat(cls, flat, p: int, q: int) -> "StackedVector":
        arr = np.asarray(flat, dtype=float).ravel()
        if arr.size != p * q:
            raise RejectedInputError(
                f"flat vector of length {arr.size} cannot hold {q} blocks of dimension {p}"
            )
        return cls(blocks=arr.reshape(q, p), p=p, q=q)

    def flatten(self) -> np.ndarray:
        return np.array([x for block in self.blocks for x in block], dtype=float)

    def block(self, j: int) -> np.ndarray:
        return np.array(self.blocks[j], dtype=float)

    def __len__(self) -> int:
        return self.p * self.q


class BodyConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    G: float = Field(gt=0)
    m1: float = Field(gt=0)
    m2: float = Field(gt=0)

    @property
    def total_mass(self) -> float:
        return self.m1 + self.m2


class WaveParams(BaseModel):
    """
    Traveling-wave data: w = v . r~ - mu t + c, with the diagonal of lambda^2.

    v is stored flat with block metadata (ell, m); lambda_sq holds the pq
    diagonal entries, p of them per block of Psi.
    """
    model_config = ConfigDict(frozen=True)

    mu: float
    c: float = 0.0
    v: tuple[float, ...]
    ell: int = Field(default=3, gt=0)
    m: int = Field(default=1, gt=0)
    lambda_sq: tuple[float, ...]
    p: int = Field(default=3, gt=0)

    @field_validator("v", "lambda_sq", mode="before")
    @classmethod
    def coerce_vectors(cls, v):
        return as_float_tuple(v)

    @field_validator("mu")
    @classmethod
    def validate_mu(cls, v):
        if v == 0 or not math.isfinite(v):
            raise ValueError("mu must be a finite nonzero real")
        return v

    @field_validator("lambda_sq")
    @classmethod
    def validate_lambda_sq(cls, v):
        if not v:
            raise ValueError("lambda_sq must not be empty")
        if any(not math.isfinite(x) or x <= 0 for x in v):
            raise ValueError("every diagonal entry of lambda_sq must be positive")
        return v

    @model_validator(mode="after")
    def validate_dimensions(self):
        if len(self.v) != self.ell * self.m:
            raise ValueError(f"v has dimension {len(self.v)}, expected ell*m = {self.ell * self.m}")
        if not _all_finite(self.v) or not math.isfinite(self.c):
            raise ValueError("v and c must be finite")
        if len(self.lambda_sq) % self.p:
            raise ValueError(f"lambda_sq length {len(self.lambda_sq)} is not a multiple of p = {self.p}")
        return self

    @classmethod
    def block_constant(
        cls,
        mu: float,
        v: Sequence[float],
        block_lambda_sq: Sequence[float],
        c: float = 0.0,
        p: int = 3,
        m: int = 1,
    ) -> "WaveParams":
        """One lambda_j^2 per block j, repeated over the p components of the block"""
        v = as_float_tuple(v)
        diagonal = tuple(float(lam) for lam in block_lambda_sq for _ in range(p))
        return cls(mu=mu, c=c, v=v, ell=len(v) // m, m=m, lambda_sq=diagonal, p=p)

    @classmethod
    def newtonian(cls, q: int, p: int = 3, ell: int = 3) -> "WaveParams":
        """v = 0, mu = -1, c = 0, so that w = t and the wave equation reduces to NCME"""
        return cls.block_constant(mu=-1.0, v=(0.0,) * ell, block_lambda_sq=(1.0,) * q, p=p)

    @classmethod
    def homogeneous(cls, mu: float, lambda_sq: float, sign: int = 1, c: float = 0.0) -> "WaveParams":
        """lambda_1 = lambda_2 and v = +-(1,1,1)/sqrt(3)"""
        if sign not in (1, -1):
            raise RejectedInputError("sign must be +1 or -1")
        u = sign / math.sqrt(3.0)
        return cls.block_constant(mu=mu, v=(u, u, u), block_lambda_sq=(lambda_sq, lambda_sq), c=c)

    @property
    def q(self) -> int:
        return len(self.lambda_sq) // self.p

    @property
    def v_array(self) -> np.ndarray:
        return np.array(self.v, dtype=float)

    @property
    def lambda_sq_array(self) -> np.ndarray:
        return np.array(self.lambda_sq, dtype=float)

    @property
    def v_norm_sq(self) -> float:
        return math.fsum(x * x for x in self.v)

    @property
    def v_norm(self) -> float:
        return math.sqrt(self.v_norm_sq)

    def block_lambda_sq(self, j: int) -> float:
        """lambda_j^2 of block j; the block must be constant"""
        if not 0 <= j < self.q:
            raise RejectedInputError(f"block index {j} outside 0..{self.q - 1}")
        block = self.lambda_sq[j * self.p:(j + 1) * self.p]
        if any(x != block[0] for x in block):
            raise RejectedInputError(f"lambda_sq is not constant on block {j}")
        return block[0]

    def wave_speed_factor(self, j: int) -> float:
        """mu^2 - lambda_j^2 |v|^2 for block j"""
        return self.mu * self.mu - self.block_lambda_sq(j) * self.v_norm_sq
