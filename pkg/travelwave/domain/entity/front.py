import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from travelwave.domain.entity.enums import ChartKind, FrontShape
from travelwave.domain.entity.model import as_float_tuple


CHART_LABELS = {
    ChartKind.CARTESIAN: ("x", "y", "z"),
    ChartKind.SPHERICAL: ("rho", "theta", "phi"),
    ChartKind.CYLINDRICAL: ("q", "theta", "z"),
}


class CoordinateChart(BaseModel):
    """
    Relabeling of the abstract coordinates (x~_1, x~_2, x~_3) fed to w.

    No metric factors are involved: the chart only decides how the front
    locus in chart coordinates is drawn in the Euclidean Psi-space.
    """
    model_config = ConfigDict(frozen=True)

    kind: ChartKind

    @property
    def labels(self) -> tuple[str, str, str]:
        return CHART_LABELS[self.kind]

    def to_cartesian(self, coords: np.ndarray) -> np.ndarray:
        """Map chart coordinates (..., 3) to Euclidean Psi-space points"""
        coords = np.asarray(coords, dtype=float)
        a, b, c = coords[..., 0], coords[..., 1], coords[..., 2]
        if self.kind == ChartKind.CARTESIAN:
            return coords.copy()
        if self.kind == ChartKind.SPHERICAL:
            # (rho, theta polar, phi azimuth)
            return np.stack([a * np.sin(b) * np.cos(c), a * np.sin(b) * np.sin(c), a * np.cos(b)], axis=-1)
        return np.stack([a * np.cos(b), a * np.sin(b), c], axis=-1)

    def label(self, gradient: np.ndarray) -> dict[str, float]:
        """Attach chart labels to a (spatial..., time) gradient"""
        names = self.labels + ("t",)
        return {name: float(x) for name, x in zip(names, gradient)}


class Plane(BaseModel):
    """{x : normal . x = offset} in Hessian normal form (|normal| = 1)"""
    model_config = ConfigDict(frozen=True)

    normal: tuple[float, ...]
    offset: float
    tangency_point: Optional[tuple[float, ...]] = None

    @field_validator("normal", "tangency_point", mode="before")
    @classmethod
    def coerce_vectors(cls, v):
        return None if v is None else as_float_tuple(v)

    @field_validator("normal")
    @classmethod
    def validate_unit(cls, v):
        if abs(math.sqrt(math.fsum(x * x for x in v)) - 1.0) > 1e-12:
            raise ValueError("plane normal must be a unit vector")
        return v

    @property
    def normal_array(self) -> np.ndarray:
        return np.array(self.normal, dtype=float)

    def distance_from_origin(self) -> float:
        return abs(self.offset)

    def signed_distance(self, points: np.ndarray) -> np.ndarray:
        return np.asarray(points, dtype=float) @ self.normal_array - self.offset

    def closest_point_to_origin(self) -> np.ndarray:
        return self.offset * self.normal_array

    def sample(self, extent: float, count: int = 5) -> np.ndarray:
        """count x count grid of points on the plane around its closest point to the origin"""
        n = self.normal_array
        helper = np.eye(len(n))[int(np.argmin(np.abs(n)))]
        e1 = helper - np.dot(helper, n) * n
        e1 /= np.linalg.norm(e1)
        e2 = np.cross(n, e1) if len(n) == 3 else np.zeros_like(n)
        s = np.linspace(-extent, extent, count)
        a, b = np.meshgrid(s, s, indexing="ij")
        base = self.closest_point_to_origin()
        return base + a.ravel()[:, None] * e1 + b.ravel()[:, None] * e2


@dataclass(frozen=True)
class FrontSurface:
    """
    Sampled front locus at a fixed time.

    samples holds Psi-space vertices: (rows, cols, 3) for a sphere or a
    cylinder, (k, 3) tangency points for a tangent-plane family.
    """
    chart: CoordinateChart
    time: float
    mu: float
    shape: FrontShape
    radius: float
    samples: np.ndarray
    planes: tuple[Plane, ...] = field(default=())

    def __post_init__(self):
        if self.time < 0:
            raise ValueError("front time must be non-negative")

    def vertices(self) -> np.ndarray:
        return self.samples.reshape(-1, 3)

    def quadric_residual(self) -> float:
        """Max deviation of the samples from their defining quadric"""
        pts = self.vertices()
        if self.shape == FrontShape.SPHERE:
            values = np.sum(pts * pts, axis=1)
        elif self.shape == FrontShape.CYLINDER:
            values = pts[:, 0] ** 2 + pts[:, 1] ** 2
        else:
            return max((abs(float(p.signed_distance(np.array(p.tangency_point)))) for p in self.planes),
                       default=0.0)
        return float(np.max(np.abs(values - self.radius ** 2)))

    def header(self) -> dict:
        return {
            "chart": self.chart.kind.value,
            "mu": self.mu,
            "t": self.time,
            "shape": self.shape.value,
            "radius": self.radius,
            "vertices": int(self.vertices().shape[0]),
            "planes": [
                {"normal": list(p.normal), "offset": p.offset} for p in self.planes
            ],
        }


class FrontEquivalenceReport(BaseModel):
    """Both gradient families of the 2-body pair blow up on one locus"""
    model_config = ConfigDict(frozen=True)

    equivalent: bool
    slopes: tuple[float, ...]
    magnitude_ratio: float
    expected_ratio: float
    max_ratio_deviation: float
    normal: tuple[float, ...] = Field(description="v of the common locus v . r~ = mu t - c")
    mu: float
    c: float
    description: str
