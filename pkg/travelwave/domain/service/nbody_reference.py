"""
Newtonian reference for the 2-body and relative 2-body problems.

The right-hand sides and a fixed-step classical RK4 integrator serve as an
oracle independent of the closed-form constructors.
"""

import math

import numpy as np

from travelwave.core.exceptions import (
    CollisionProximityError,
    CollisionSingularityError,
    RejectedInputError,
)
from travelwave.domain.entity.model import BodyConfig
from travelwave.domain.entity.phase import PhaseState, Trajectory
from travelwave.domain.entity.solution import PowerLawSolution
from travelwave.domain.service import closed_form
from travelwave.utils.logger import get_logger, log_function_call

logger = get_logger(__name__)

COLLISION_THRESHOLD = 1e-8


def pair_forces(r1: np.ndarray, r2: np.ndarray, body: BodyConfig) -> tuple[np.ndarray, np.ndarray]:
    """NCME accelerations for arrays of positions with shape (..., 3)"""
    diff = r2 - r1
    dist = np.linalg.norm(diff, axis=-1, keepdims=True)
    if np.any(dist == 0):
        raise CollisionSingularityError("coincident bodies: r_1 = r_2")
    inv_cube = 1.0 / dist ** 3
    return body.G * body.m2 * diff * inv_cube, -body.G * body.m1 * diff * inv_cube


def relative_force(delta: np.ndarray, body: BodyConfig) -> np.ndarray:
    """-G(m1+m2) Delta / |Delta|^3 for arrays with shape (..., 3)"""
    dist = np.linalg.norm(delta, axis=-1, keepdims=True)
    if np.any(dist == 0):
        raise CollisionSingularityError("collision: Delta_12 = 0")
    return -body.G * body.total_mass * delta / dist ** 3


def ncme_rhs(state: PhaseState, body: BodyConfig) -> np.ndarray:
    """Accelerations (a_1, a_2) as a (2, 3) array"""
    if state.q != 2:
        raise RejectedInputError("ncme_rhs needs a 2-body state")
    positions = state.position_array()
    a1, a2 = pair_forces(positions[0], positions[1], body)
    return np.stack([a1, a2])


def relative_rhs(delta, body: BodyConfig) -> np.ndarray:
    delta = np.asarray(delta, dtype=float)
    if delta.shape != (3,):
        raise RejectedInputError(f"Delta must be a 3-vector, got shape {delta.shape}")
    return relative_force(delta, body)


def _derivative(y: np.ndarray, q: int, body: BodyConfig) -> np.ndarray:
    half = 3 * q
    positions = y[:half].reshape(q, 3)
    if q == 1:
        acc = relative_force(positions[0], body)
    else:
        acc = np.concatenate(pair_forces(positions[0], positions[1], body))
    return np.concatenate([y[half:], acc.ravel()])


def _separation(y: np.ndarray, q: int) -> float:
    if q == 1:
        return float(np.linalg.norm(y[:3]))
    return float(np.linalg.norm(y[:3] - y[3:6]))


def _trajectory(times: list, states: list, q: int) -> Trajectory:
    ys = np.array(states)
    half = 3 * q
    n = len(times)
    return Trajectory(
        times=np.array(times),
        positions=ys[:, :half].reshape(n, q, 3),
        velocities=ys[:, half:].reshape(n, q, 3),
    )


@log_function_call
def rk4_integrate(
    initial: PhaseState,
    body: BodyConfig,
    t_end: float,
    h: float,
    collision_threshold: float = COLLISION_THRESHOLD,
) -> Trajectory:
    """
    Classical fixed-step RK4 from initial.t to t_end, sampled at every step.

    The last step is shortened to land on t_end. Raises CollisionProximityError
    (carrying the last valid state) once the separation drops below the threshold.
    """
    if not h > 0:
        raise RejectedInputError(f"step size must be positive, got {h}")
    if not t_end > initial.t:
        raise RejectedInputError(f"t_end = {t_end} must exceed the initial time {initial.t}")

    q = initial.q
    y = initial.flat()
    t = initial.t
    steps = max(1, math.ceil((t_end - t) / h - 1e-9))
    times, states = [t], [y]

    for i in range(steps):
        dt = h if i < steps - 1 else t_end - t
        try:
            k1 = _derivative(y, q, body)
            k2 = _derivative(y + 0.5 * dt * k1, q, body)
            k3 = _derivative(y + 0.5 * dt * k2, q, body)
            k4 = _derivative(y + dt * k3, q, body)
        except CollisionSingularityError:
            k1 = None
        y_next = None if k1 is None else y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if y_next is None or _separation(y_next, q) < collision_threshold:
            last = PhaseState.from_flat(y, q, t)
            logger.warning(f"RK4 aborted near collision at t = {t!r}")
            raise CollisionProximityError(
                f"separation below {collision_threshold} after t = {t!r}",
                last_state=last,
                trajectory=_trajectory(times, states, q),
                details={"t": t, "step": i},
            )
        y = y_next
        t = initial.t + (i + 1) * h if i < steps - 1 else t_end
        times.append(t)
        states.append(y)

    logger.debug(f"RK4 finished {steps} steps of h = {h!r}")
    return _trajectory(times, states, q)


def initial_state_from_solution(sol: PowerLawSolution, t0: float) -> PhaseState:
    """Closed-form position and velocity at t0, reading the solution with w = t"""
    position = closed_form.evaluate_many(sol, t0, 0)[0]
    velocity = closed_form.evaluate_many(sol, t0, 1)[0]
    return PhaseState(positions=position, velocities=velocity, t=t0)


def deviation_from_solution(trajectory: Trajectory, sol: PowerLawSolution) -> float:
    """Largest |r(t) - closed form(t)| over all samples and bodies"""
    exact = closed_form.evaluate_many(sol, trajectory.times, 0)
    return float(np.max(np.linalg.norm(trajectory.positions - exact, axis=2)))
