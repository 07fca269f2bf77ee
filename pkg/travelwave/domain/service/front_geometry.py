"""
Gravitational wave fronts of the power-law traveling waves.

The space-time gradient of Psi_j(w) is d/dw Psi_j times (v, -mu), and
d/dw |w|^(2/3) is unbounded exactly at w = 0, so the front at time t is the
hyperplane v . r~ = mu t - c. Spherical and cylindrical charts relabel the
coordinates fed to w; their fronts are drawn in Psi-space as a sphere and a
z-axis cylinder of radius mu t.
"""

import math
from typing import Optional, Sequence

import numpy as np

from travelwave.core.exceptions import (
    NoSpatialFrontError,
    RejectedInputError,
    SingularFrontError,
    UnsupportedChartError,
)
from travelwave.domain.entity.enums import ChartKind, FrontShape
from travelwave.domain.entity.front import CoordinateChart, FrontEquivalenceReport, FrontSurface, Plane
from travelwave.domain.entity.model import WaveParams, as_float_tuple
from travelwave.domain.entity.solution import PowerLawSolution
from travelwave.domain.service import closed_form
from travelwave.utils.logger import get_logger, log_function_call

logger = get_logger(__name__)

TANGENCY_TOLERANCE = 1e-12
BLOWUP_EXPONENT = -1.0 / 3.0
EXPONENT_TOLERANCE = 0.01
RATIO_TOLERANCE = 1e-12
DETECTOR_THRESHOLD = 1e6
SPHERE_RESOLUTION = (64, 128)
CYLINDER_RESOLUTION = (64, 64)
EQUIVALENCE_W = tuple(10.0 ** -k for k in range(1, 7))
CHART_DIRECTION = (1.0, 0.0, 0.0)


def gradient_vector(
    sol: PowerLawSolution, params: WaveParams, w: float, component: int, block: int = 0
) -> np.ndarray:
    """(grad_r~, d/dt) of component `component` of block `block`: dPsi/dw * (v_1, ..., v_n, -mu)"""
    if w == 0:
        raise SingularFrontError(
            "gradient evaluated on the front w = 0, where it is unbounded",
            details={"component": component, "block": block},
        )
    if not 0 <= block < sol.q or not 0 <= component < sol.p:
        raise RejectedInputError(f"component ({block}, {component}) outside {sol.q} blocks of {sol.p}")
    # valid on either side of the front
    slope = float(closed_form.profile(float(w))[1]) * sol.coefficients()[block, component]
    return slope * np.append(params.v_array, -params.mu)


def gradient_magnitude(
    sol: PowerLawSolution, params: WaveParams, w_values, component: int, block: int = 0
) -> np.ndarray:
    """|grad Psi_j| at each w; (2/3)|w|^(-1/3) sqrt(|v|^2 + mu^2) |alpha_j s_j|"""
    w = np.atleast_1d(np.asarray(w_values, dtype=float))
    return np.array([np.linalg.norm(gradient_vector(sol, params, x, component, block)) for x in w])


def labelled_gradient(
    chart: CoordinateChart, sol: PowerLawSolution, params: WaveParams, w: float, component: int, block: int = 0
) -> dict[str, float]:
    """The gradient keyed by the chart's coordinate names; the formula itself is chart-independent"""
    return chart.label(gradient_vector(sol, params, w, component, block))


@log_function_call
def front_locus_time(params: WaveParams, t: float) -> Plane:
    """Plane {r~ : v . r~ = mu t - c} in Hessian normal form"""
    if params.v_norm_sq == 0:
        singular_time = params.c / params.mu
        raise NoSpatialFrontError(
            f"v = 0 gives no spatial front, only the singular instant t = c/mu = {singular_time!r}",
            singular_time=singular_time,
        )
    norm = params.v_norm
    normal = params.v_array / norm
    offset = (params.mu * t - params.c) / norm
    return Plane(normal=normal, offset=offset, tangency_point=offset * normal)


def advance_plane(plane: Plane, mu: float, s: float) -> Plane:
    """Front plane after a further time s: U . x = mu (t + s)"""
    offset = plane.offset + mu * s
    return Plane(normal=plane.normal, offset=offset, tangency_point=offset * plane.normal_array)


def _check_time(mu: float, t: float) -> None:
    if mu == 0 or not math.isfinite(mu):
        raise RejectedInputError("mu must be a finite nonzero real")
    if not t >= 0:
        raise RejectedInputError(f"front time must be non-negative, got {t}")


@log_function_call
def tangent_plane_family(
    mu: float,
    t: float,
    directions: Sequence[Sequence[float]],
    chart: Optional[CoordinateChart] = None,
) -> FrontSurface:
    """Planes U . x = mu t, one per unit direction U, each touching the sphere of radius mu t at mu t U"""
    _check_time(mu, t)
    radius = mu * t
    planes = []
    for direction in directions:
        u = closed_form.unit_direction(direction)
        point = radius * u
        gap = abs(float(np.dot(u, point)) - radius)
        if gap > TANGENCY_TOLERANCE * max(1.0, abs(radius)):
            raise RejectedInputError(f"plane misses its tangency point by {gap!r}", details={"direction": u.tolist()})
        planes.append(Plane(normal=u, offset=radius, tangency_point=point))
    if not planes:
        raise RejectedInputError("at least one direction is required")

    samples = np.array([p.tangency_point for p in planes], dtype=float)
    return FrontSurface(
        chart=chart or CoordinateChart(kind=ChartKind.CARTESIAN),
        time=t,
        mu=mu,
        shape=FrontShape.TANGENT_PLANES,
        radius=radius,
        samples=samples,
        planes=tuple(planes),
    )


def _require_chart_direction(chart: CoordinateChart, v: Sequence[float], c: float) -> None:
    if as_float_tuple(v) != CHART_DIRECTION or c != 0:
        raise UnsupportedChartError(
            f"the {chart.kind.value} front is constructed for v = (1, 0, 0) and c = 0 only",
            details={"chart": chart.kind.value, "v": list(as_float_tuple(v)), "c": c},
        )


def sphere_mesh(radius: float, resolution: tuple[int, int] = SPHERE_RESOLUTION) -> np.ndarray:
    """Latitude-longitude mesh (rows, cols, 3) of the sphere rho~ = radius"""
    rows, cols = resolution
    theta = np.linspace(0.0, np.pi, rows)
    phi = np.linspace(0.0, 2.0 * np.pi, cols, endpoint=False)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    coords = np.stack([np.full_like(tt, radius), tt, pp], axis=-1)
    return CoordinateChart(kind=ChartKind.SPHERICAL).to_cartesian(coords)


def cylinder_mesh(radius: float, resolution: tuple[int, int] = CYLINDER_RESOLUTION) -> np.ndarray:
    """Angle-height mesh (rows, cols, 3) of the z-axis cylinder q~ = radius, z in [-2 radius, 2 radius]"""
    rows, cols = resolution
    theta = np.linspace(0.0, 2.0 * np.pi, rows, endpoint=False)
    z = np.linspace(-2.0 * abs(radius), 2.0 * abs(radius), cols)
    tt, zz = np.meshgrid(theta, z, indexing="ij")
    coords = np.stack([np.full_like(tt, radius), tt, zz], axis=-1)
    return CoordinateChart(kind=ChartKind.CYLINDRICAL).to_cartesian(coords)


@log_function_call
def front_surface_chart(
    chart: CoordinateChart,
    mu: float,
    t: float,
    v: Sequence[float] = CHART_DIRECTION,
    c: float = 0.0,
    resolution: Optional[tuple[int, int]] = None,
    directions: Optional[Sequence[Sequence[float]]] = None,
) -> FrontSurface:
    """
    Front at time t drawn in Psi-space.

    spherical: v = (1,0,0) turns w = 0 into rho~ = mu t, the sphere of radius mu t.
    cylindrical: the same v gives q~ = mu t, a z-axis cylinder.
    cartesian: the tangent planes U . x = mu t for the given directions
    (v itself when none are given).
    """
    _check_time(mu, t)
    radius = mu * t
    if chart.kind == ChartKind.CARTESIAN:
        if directions is None:
            directions = [v]
        return tangent_plane_family(mu, t, directions, chart)

    _require_chart_direction(chart, v, c)
    if resolution is not None and min(resolution) < 2:
        raise RejectedInputError(f"mesh resolution must be at least 2 x 2, got {resolution}")
    if chart.kind == ChartKind.SPHERICAL:
        samples = sphere_mesh(radius, resolution or SPHERE_RESOLUTION)
        shape = FrontShape.SPHERE
    else:
        samples = cylinder_mesh(radius, resolution or CYLINDER_RESOLUTION)
        shape = FrontShape.CYLINDER

    surface = FrontSurface(chart=chart, time=t, mu=mu, shape=shape, radius=radius, samples=samples)
    logger.debug(f"{shape.value} front at t = {t!r}: radius {radius!r}, "
                 f"quadric residual {surface.quadric_residual()!r}")
    return surface


def fit_blowup_exponent(x, y) -> float:
    """Least-squares slope of log y against log |x|"""
    x = np.abs(np.asarray(x, dtype=float))
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.size < 2:
        raise RejectedInputError("the exponent fit needs two equally sized samples of at least two points")
    if np.any(x <= 0) or np.any(y <= 0):
        raise RejectedInputError("the exponent fit needs positive |x| and y")
    slope, _ = np.polyfit(np.log(x), np.log(y), 1)
    return float(slope)


def detect_front(
    sol: PowerLawSolution,
    params: WaveParams,
    w_values,
    component: int,
    threshold_factor: float = DETECTOR_THRESHOLD,
    block: int = 0,
) -> np.ndarray:
    """
    Mask of sampled w where |grad Psi| exceeds threshold_factor times its value at |w| = 1.

    Samples at w = 0 are on the front by definition.
    """
    w = np.atleast_1d(np.asarray(w_values, dtype=float))
    coefficient = abs(float(sol.coefficients()[block, component]))
    reference = (2.0 / 3.0) * math.sqrt(params.v_norm_sq + params.mu * params.mu) * coefficient
    mask = w == 0
    off_front = ~mask
    if np.any(off_front):
        mask[off_front] = gradient_magnitude(sol, params, w[off_front], component, block) > threshold_factor * reference
    return mask


def _leading_component(sol: PowerLawSolution) -> int:
    """Index of the largest |s_j1| component of the shared direction"""
    return int(np.argmax(np.abs(sol.coefficients()[-1])))


@log_function_call
def two_body_front_equivalence(
    sol: PowerLawSolution,
    params: WaveParams,
    w_values: Sequence[float] = EQUIVALENCE_W,
    component: Optional[int] = None,
) -> FrontEquivalenceReport:
    """Both blocks of the 2-body pair blow up like |w|^(-1/3) on the same locus w = 0"""
    if sol.q != 2 or sol.thetas is None:
        raise RejectedInputError("front equivalence needs a 2-body solution pair with its theta values")
    component = _leading_component(sol) if component is None else component
    w = np.asarray(w_values, dtype=float)

    first = gradient_magnitude(sol, params, w, component, block=0)
    second = gradient_magnitude(sol, params, w, component, block=1)
    slopes = (fit_blowup_exponent(w, first), fit_blowup_exponent(w, second))
    ratios = first / second
    expected = abs(sol.thetas.ratio)
    deviation = float(np.max(np.abs(ratios - expected))) / expected

    equivalent = all(abs(s - BLOWUP_EXPONENT) <= EXPONENT_TOLERANCE for s in slopes) and deviation <= RATIO_TOLERANCE
    if params.v_norm_sq == 0:
        description = f"w = 0 at the single instant t = c/mu = {params.c / params.mu!r}"
    else:
        description = f"w = 0: v . r~ = mu t - c with v = {list(params.v)}, mu = {params.mu!r}, c = {params.c!r}"

    return FrontEquivalenceReport(
        equivalent=equivalent,
        slopes=slopes,
        magnitude_ratio=float(np.mean(ratios)),
        expected_ratio=expected,
        max_ratio_deviation=deviation,
        normal=params.v,
        mu=params.mu,
        c=params.c,
        description=description,
    )
