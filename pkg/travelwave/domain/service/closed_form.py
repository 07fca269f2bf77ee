"""
Closed-form power-law traveling waves of the 2-body companion wave equations.

Every constructor returns alpha_j |w|^(2/3) S_j blocks; |w|^(2/3) is taken as
(w^2)^(1/3), so a solution is real on either side of w = 0.
"""

import math
from typing import Iterable, Sequence

import numpy as np

from travelwave.core.exceptions import (
    DegenerateWaveSpeedError,
    InadmissibleParametersError,
    RejectedInputError,
    SignInconsistencyError,
    SolutionDomainError,
)
from travelwave.domain.entity.enums import Provenance
from travelwave.domain.entity.model import BodyConfig, StackedVector, WaveParams
from travelwave.domain.entity.solution import PowerLawSolution, SolutionBlock, ThetaPair
from travelwave.utils.logger import get_logger, log_function_call

logger = get_logger(__name__)

UNIT_TOLERANCE = 1e-12
DEGENERATE_TOLERANCE = 1e-14


def cube_root(x: float) -> float:
    """Positive real cube root of x > 0: exp(log(x)/3) polished by one Newton step"""
    if not x > 0:
        raise RejectedInputError(f"cube root needs a positive argument, got {x}")
    y = math.exp(math.log(x) / 3.0)
    return y - (y * y * y - x) / (3.0 * y * y)


def gamma_hat(G: float) -> float:
    return cube_root(4.5 * G)


def unit_direction(direction: Sequence[float], dim: int = 3) -> np.ndarray:
    u = np.asarray(direction, dtype=float).ravel()
    if u.shape != (dim,):
        raise RejectedInputError(f"direction must have dimension {dim}, got {u.size}")
    norm = float(np.linalg.norm(u))
    if abs(norm - 1.0) > UNIT_TOLERANCE:
        raise RejectedInputError(
            f"direction must be a unit vector (|U| = {norm!r})", details={"direction": u.tolist()}
        )
    return u


def speed_factor(params: WaveParams, j: int) -> float:
    """mu^2 - lambda_j^2 |v|^2, rejected when it vanishes"""
    lam_v = params.block_lambda_sq(j) * params.v_norm_sq
    factor = params.mu * params.mu - lam_v
    if abs(factor) <= DEGENERATE_TOLERANCE * max(params.mu * params.mu, lam_v):
        raise DegenerateWaveSpeedError(
            f"degenerate wave speed: mu^2 = lambda_{j + 1}^2 |v|^2",
            details={"block": j, "mu": params.mu, "lambda_sq": params.block_lambda_sq(j),
                     "v_norm_sq": params.v_norm_sq},
        )
    return factor


def _require_blocks(params: WaveParams, q: int) -> None:
    if params.p != 3 or params.q != q:
        raise RejectedInputError(
            f"expected p = 3 and q = {q} blocks of lambda^2, got p = {params.p}, q = {params.q}"
        )


@log_function_call
def compute_thetas(body: BodyConfig, params: WaveParams) -> ThetaPair:
    _require_blocks(params, 2)
    theta1 = body.G * body.m2 / speed_factor(params, 0)
    theta2 = body.G * body.m1 / speed_factor(params, 1)
    return ThetaPair(theta1=theta1, theta2=theta2)


@log_function_call
def relative_2body_solution(body: BodyConfig, params: WaveParams, direction: Sequence[float]) -> PowerLawSolution:
    """Psi_12(w) = w^(2/3) |S_1| U with |S_1|^3 = 9 G (m1+m2) / (2 |mu^2 - lambda_12^2 |v|^2|)"""
    _require_blocks(params, 1)
    u = unit_direction(direction)
    factor = speed_factor(params, 0)
    if factor < 0:
        raise SignInconsistencyError(
            "sign inconsistency: mu^2 - lambda_12^2 |v|^2 < 0, the power-law ansatz has no solution",
            details={"factor": factor},
        )
    norm = cube_root(9.0 * body.G * body.total_mass / (2.0 * abs(factor)))
    logger.debug(f"relative solution |S_1| = {norm!r}")
    return PowerLawSolution(
        provenance=Provenance.RELATIVE_TWO_BODY,
        blocks=(SolutionBlock(alpha=1.0, S=norm * u),),
    )


def relative_2body_family(
    body: BodyConfig, params: WaveParams, directions: Iterable[Sequence[float]]
) -> list[PowerLawSolution]:
    """The union of relative solutions over the given unit directions U"""
    return [relative_2body_solution(body, params, u) for u in directions]


def pair_norm(thetas: ThetaPair) -> float:
    """|S_2| from |S_1 - S_2| = |1 + theta_1/theta_2| |S_2| = (9 (theta_1 + theta_2) / 2)^(1/3)"""
    return cube_root(4.5 * thetas.total) / abs(1.0 + thetas.ratio)


def newtonian_pair_norm(body: BodyConfig) -> float:
    """|S_2| from |S_2|^3 = 9 G m1^3 / (2 (m1+m2)^2), the w = t reduction"""
    return cube_root(9.0 * body.G * body.m1 ** 3 / (2.0 * body.total_mass ** 2))


@log_function_call
def two_body_pair_solution(body: BodyConfig, params: WaveParams, direction: Sequence[float]) -> PowerLawSolution:
    """Psi_1 = -(theta_1/theta_2) w^(2/3) |S_2| U, Psi_2 = w^(2/3) |S_2| U"""
    u = unit_direction(direction)
    thetas = compute_thetas(body, params)
    if not thetas.positive:
        raise InadmissibleParametersError(
            f"θ₁+θ₂ > 0 required (θ₁ = {thetas.theta1!r}, θ₂ = {thetas.theta2!r})",
            details={"theta1": thetas.theta1, "theta2": thetas.theta2},
        )
    s2 = pair_norm(thetas) * u
    return PowerLawSolution(
        provenance=Provenance.TWO_BODY_PAIR,
        blocks=(SolutionBlock(alpha=-thetas.ratio, S=s2), SolutionBlock(alpha=1.0, S=s2)),
        thetas=thetas,
    )


@log_function_call
def ncme_collision_solution(body: BodyConfig, direction: Sequence[float]) -> PowerLawSolution:
    """
    r_1(t) = -g m2 (m1+m2)^(-2/3) t^(2/3) U, r_2(t) = +g m1 (m1+m2)^(-2/3) t^(2/3) U, g = (9G/2)^(1/3).

    r_2 carries a positive sign: it keeps m1 r_1 + m2 r_2 = 0 and satisfies NCME.
    """
    u = unit_direction(direction)
    s2 = gamma_hat(body.G) * body.m1 * body.total_mass ** (-2.0 / 3.0) * u
    return PowerLawSolution(
        provenance=Provenance.NCME_COLLISION,
        blocks=(SolutionBlock(alpha=-body.m2 / body.m1, S=s2), SolutionBlock(alpha=1.0, S=s2)),
        thetas=ThetaPair(theta1=body.G * body.m2, theta2=body.G * body.m1),
    )


def profile(w) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """|w|^(2/3) and its first two derivatives on the real branch (w^2)^(1/3)"""
    w = np.asarray(w, dtype=float)
    w_sq = w * w
    value = np.cbrt(w_sq)
    inv = 1.0 / (value * value)  # |w|^(-4/3)
    return value, (2.0 / 3.0) * w * inv, -(2.0 / 9.0) * inv


def _check_domain(sol: PowerLawSolution, w) -> np.ndarray:
    w = np.asarray(w, dtype=float)
    a, b = sol.domain
    outside = (w == 0) | ~((w > a) & (w < b))
    if np.any(outside):
        bad = w[outside] if w.ndim else w
        raise SolutionDomainError(
            f"w outside the solution domain ({a}, {b}) or on the collision singularity w = 0",
            details={"w": np.atleast_1d(bad)[:5].tolist(), "domain": [a, b]},
        )
    return w


def evaluate_many(sol: PowerLawSolution, w, order: int = 0) -> np.ndarray:
    """Psi, dPsi/dw or d2Psi/dw2 at each w; shape (N, q, p)"""
    w = np.atleast_1d(_check_domain(sol, w))
    factors = profile(w)[order]
    return factors[:, None, None] * sol.coefficients()[None, :, :]


def _stacked(sol: PowerLawSolution, w: float, order: int) -> StackedVector:
    values = evaluate_many(sol, float(w), order)[0]
    return StackedVector(blocks=values, p=sol.p, q=sol.q)


def evaluate(sol: PowerLawSolution, w: float) -> StackedVector:
    return _stacked(sol, w, 0)


def d1(sol: PowerLawSolution, w: float) -> StackedVector:
    return _stacked(sol, w, 1)


def d2(sol: PowerLawSolution, w: float) -> StackedVector:
    return _stacked(sol, w, 2)


def specific_energy(sol: PowerLawSolution, body: BodyConfig, t) -> np.ndarray:
    """E(t) = |Delta'|^2/2 - G(m1+m2)/|Delta| for a relative solution read with w = t"""
    if sol.q != 1:
        raise RejectedInputError("specific energy is defined for the relative solution (q = 1)")
    position = evaluate_many(sol, t, 0)[:, 0, :]
    velocity = evaluate_many(sol, t, 1)[:, 0, :]
    return 0.5 * np.sum(velocity * velocity, axis=1) - body.G * body.total_mass / np.linalg.norm(position, axis=1)


def angular_momentum(sol: PowerLawSolution, t) -> np.ndarray:
    """Delta x Delta' for a relative solution read with w = t"""
    if sol.q != 1:
        raise RejectedInputError("angular momentum is defined for the relative solution (q = 1)")
    return np.cross(evaluate_many(sol, t, 0)[:, 0, :], evaluate_many(sol, t, 1)[:, 0, :])
