"""
Residual verification of traveling-wave solutions.

ode_residual substitutes analytic derivatives into the reduced system;
companion_pde_residual and linear_wave_residual approximate the full PDEs
with second-order central differences on a lattice and estimate the
convergence order from several stencil spacings.
"""

import math
from typing import Callable, Optional, Sequence

import numpy as np

from travelwave.core.exceptions import (
    InapplicableCheckError,
    RejectedInputError,
    SingularLatticeError,
)
from travelwave.domain.entity.enums import EquationId, GridKind, Provenance
from travelwave.domain.entity.model import BodyConfig, WaveParams
from travelwave.domain.entity.report import GridDescription, Lattice, ResidualReport, SweepRow
from travelwave.domain.entity.solution import PowerLawSolution
from travelwave.domain.service import closed_form
from travelwave.domain.service.nbody_reference import pair_forces, relative_force
from travelwave.domain.service.wave_kernel import wave_argument_array
from travelwave.utils.logger import get_logger, log_function_call

logger = get_logger(__name__)

# (N, q, p) -> (N, q, p)
RightHandSide = Callable[[np.ndarray], np.ndarray]
# (points (N, dim), times (N,)) -> (N, K)
FieldFn = Callable[[np.ndarray, np.ndarray], np.ndarray]

NORM_FLOOR = 1e-300
MARGIN_FACTOR = 10.0


class TravelingField:
    """Psi(r~, t) = Psi(w(r~, t)) for a closed-form solution"""

    singular_on_front = True

    def __init__(self, solution: PowerLawSolution, params: WaveParams):
        self.solution = solution
        self.params = params

    def __call__(self, points: np.ndarray, times: np.ndarray) -> np.ndarray:
        w = wave_argument_array(self.params, points, times)
        values = closed_form.evaluate_many(self.solution, w, 0)
        return values.reshape(len(w), -1)

    def __repr__(self) -> str:
        return f"TravelingField({self.solution.provenance.value}, mu={self.params.mu})"


def companion_rhs(provenance: Provenance, body: BodyConfig) -> RightHandSide:
    """f(Psi) of the relative system (q = 1) or of NCME (q = 2)"""
    if provenance == Provenance.RELATIVE_TWO_BODY:
        return lambda psi: relative_force(psi[:, 0, :], body)[:, None, :]

    def ncme(psi: np.ndarray) -> np.ndarray:
        a1, a2 = pair_forces(psi[:, 0, :], psi[:, 1, :], body)
        return np.stack([a1, a2], axis=1)

    return ncme


def zero_rhs(psi: np.ndarray) -> np.ndarray:
    return np.zeros_like(psi)


def _residual_norms(lhs: np.ndarray, rhs: np.ndarray) -> tuple[float, float, np.ndarray]:
    """Max |lhs - rhs| and max relative residual per block; arrays are (N, q, p)"""
    diff = np.linalg.norm(lhs - rhs, axis=2)
    scale = np.maximum(np.maximum(np.linalg.norm(lhs, axis=2), np.linalg.norm(rhs, axis=2)), NORM_FLOOR)
    rel = diff / scale
    return float(np.max(diff)), float(np.max(rel)), np.max(rel, axis=0)


@log_function_call
def ode_residual(
    sol: PowerLawSolution,
    body: BodyConfig,
    params: WaveParams,
    w_grid: Sequence[float],
    rhs: Optional[RightHandSide] = None,
) -> ResidualReport:
    """(mu^2 - lambda_j^2 |v|^2) d2Psi_j/dw2 - f_j(Psi) per block over the grid"""
    if params.q != sol.q or params.p != sol.p:
        raise RejectedInputError(
            f"parameters describe {params.q} blocks of {params.p}, solution has {sol.q} of {sol.p}"
        )
    w = np.asarray(w_grid, dtype=float)
    psi = closed_form.evaluate_many(sol, w, 0)
    accel = closed_form.evaluate_many(sol, w, 2)
    factors = np.array([params.wave_speed_factor(j) for j in range(sol.q)])
    lhs = factors[None, :, None] * accel
    rhs = rhs or companion_rhs(sol.provenance, body)
    max_abs, max_rel, per_block = _residual_norms(lhs, rhs(psi))

    equation = EquationId.NCME_ODE if sol.provenance == Provenance.NCME_COLLISION else EquationId.COMPANION_ODE
    logger.debug(f"{equation.value} residual over {w.size} points: rel {max_rel!r}")
    return ResidualReport(
        equation_id=equation,
        max_abs_residual=max_abs,
        max_rel_residual=max_rel,
        grid=GridDescription(kind=GridKind.W_GRID, points=w.size,
                             bounds=((float(w.min()), float(w.max())),)),
        block_rel_residuals=tuple(float(x) for x in per_block),
    )


def check_lattice_margin(params: WaveParams, lattice: Lattice) -> None:
    """Reject lattices whose stencils could reach within 10 h (|v| + |mu|) of w = 0"""
    if lattice.dim != len(params.v):
        raise RejectedInputError(f"lattice dimension {lattice.dim} differs from dim(v) = {len(params.v)}")
    v = params.v_array
    lo, hi = np.array(lattice.lower), np.array(lattice.upper)
    spatial_min = float(np.sum(np.minimum(v * lo, v * hi)))
    spatial_max = float(np.sum(np.maximum(v * lo, v * hi)))
    time_terms = (-params.mu * lattice.t_min, -params.mu * lattice.t_max)
    w_min = spatial_min + min(time_terms) + params.c
    w_max = spatial_max + max(time_terms) + params.c
    margin = MARGIN_FACTOR * max(lattice.spacings) * (params.v_norm + abs(params.mu))
    if w_min < margin and w_max > -margin:
        raise SingularLatticeError(
            f"lattice w-range [{w_min!r}, {w_max!r}] comes within {margin!r} of the front w = 0",
            details={"w_min": w_min, "w_max": w_max, "margin": margin},
        )


def second_differences(field: FieldFn, points: np.ndarray, times: np.ndarray, h: float):
    """Psi, central d2Psi/dt2 and the central-difference Laplacian in r~ (stencil [1, -2, 1] / h^2)"""
    center = np.asarray(field(points, times), dtype=float)
    inv_h2 = 1.0 / (h * h)
    psi_tt = (field(points, times + h) - 2.0 * center + field(points, times - h)) * inv_h2
    laplacian = np.zeros_like(center)
    for axis in range(points.shape[1]):
        shift = np.zeros(points.shape[1])
        shift[axis] = h
        laplacian += (field(points + shift, times) - 2.0 * center + field(points - shift, times)) * inv_h2
    return center, psi_tt, laplacian


def _order(previous: SweepRow, current: SweepRow) -> Optional[float]:
    if previous.max_abs <= 0 or current.max_abs <= 0:
        return None
    return math.log(previous.max_abs / current.max_abs) / math.log(previous.h / current.h)


def _sweep(
    field: FieldFn,
    lattice: Lattice,
    blocks: int,
    operator: Callable[[np.ndarray, np.ndarray, np.ndarray], tuple[np.ndarray, np.ndarray]],
) -> tuple[list[SweepRow], np.ndarray]:
    points, times = lattice.nodes()
    rows: list[SweepRow] = []
    per_block = np.zeros(blocks)
    for h in sorted(lattice.spacings, reverse=True):
        center, psi_tt, laplacian = second_differences(field, points, times, h)
        lhs, rhs = operator(center, psi_tt, laplacian)
        shape = (len(times), blocks, -1)
        max_abs, max_rel, per_block = _residual_norms(lhs.reshape(shape), rhs.reshape(shape))
        row = SweepRow(h=h, max_abs=max_abs, max_rel=max_rel)
        if rows:
            row = row.model_copy(update={"order": _order(rows[-1], row)})
        rows.append(row)
    return rows, per_block


def _lattice_report(
    equation: EquationId, lattice: Lattice, rows: list[SweepRow], per_block: np.ndarray
) -> ResidualReport:
    finest = rows[-1]
    order = None
    if len(rows) >= 2:
        order = _order(rows[0], finest)
    return ResidualReport(
        equation_id=equation,
        max_abs_residual=finest.max_abs,
        max_rel_residual=finest.max_rel,
        grid=GridDescription(
            kind=GridKind.LATTICE,
            points=lattice.points ** (lattice.dim + 1),
            spacings=tuple(row.h for row in rows),
            bounds=lattice.bounds(),
        ),
        estimated_order=order,
        block_rel_residuals=tuple(float(x) for x in per_block),
        sweep=tuple(rows),
    )


@log_function_call
def companion_pde_residual(
    field: FieldFn,
    params: WaveParams,
    body: BodyConfig,
    lattice: Lattice,
    rhs: Optional[RightHandSide] = None,
) -> ResidualReport:
    """Finite-difference residual of d2Psi/dt2 - lambda^2 Lap Psi = f(Psi)"""
    if getattr(field, "singular_on_front", False):
        check_lattice_margin(params, lattice)
    if rhs is None:
        solution = getattr(field, "solution", None)
        if solution is None:
            raise RejectedInputError("a right-hand side is required for fields without a closed form")
        rhs = companion_rhs(solution.provenance, body)
    lambda_sq = params.lambda_sq_array
    q, p = params.q, params.p

    def operator(center, psi_tt, laplacian):
        if center.shape[1] != p * q:
            raise RejectedInputError(f"field has {center.shape[1]} components, lambda^2 has {p * q}")
        lhs = psi_tt - lambda_sq[None, :] * laplacian
        return lhs, rhs(center.reshape(-1, q, p)).reshape(center.shape)

    rows, per_block = _sweep(field, lattice, q, operator)
    report = _lattice_report(EquationId.COMPANION_PDE, lattice, rows, per_block)
    logger.debug(f"companion PDE residual {report.max_abs_residual!r}, order {report.estimated_order!r}")
    return report


@log_function_call
def linear_wave_residual(field: FieldFn, params: WaveParams, lattice: Lattice) -> ResidualReport:
    """Finite-difference residual of |v|^2 d2Psi/dt2 - mu^2 Lap Psi = 0"""
    if params.v_norm_sq == 0:
        raise InapplicableCheckError(
            "linear wave check is inapplicable for v = 0: the identity reduces to 0 = 0 only when Lap Psi = 0"
        )
    if getattr(field, "singular_on_front", False):
        check_lattice_margin(params, lattice)
    v_sq, mu_sq = params.v_norm_sq, params.mu * params.mu

    def operator(center, psi_tt, laplacian):
        return v_sq * psi_tt, mu_sq * laplacian

    rows, per_block = _sweep(field, lattice, 1, operator)
    return _lattice_report(EquationId.LINEAR_WAVE, lattice, rows, per_block)
