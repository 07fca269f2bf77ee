import numpy as np
import pytest

from travelwave.core.exceptions import CollisionProximityError, CollisionSingularityError, RejectedInputError
from travelwave.domain.entity.model import BodyConfig, WaveParams
from travelwave.domain.entity.phase import PhaseState
from travelwave.domain.service import closed_form
from travelwave.domain.service.nbody_reference import (
    deviation_from_solution,
    initial_state_from_solution,
    ncme_rhs,
    pair_forces,
    relative_rhs,
    rk4_integrate,
)


@pytest.fixture
def parabolic(unit_body):
    return closed_form.relative_2body_solution(unit_body, WaveParams.newtonian(q=1), (1, 0, 0))


class TestForces:
    def test_pair_attracts(self, unit_body):
        a1, a2 = pair_forces(np.zeros(3), np.array([1.0, 0, 0]), unit_body)
        np.testing.assert_array_equal(a1, [1, 0, 0])
        np.testing.assert_array_equal(a2, [-1, 0, 0])

    def test_momentum_balance(self, rng):
        body = BodyConfig(G=1.5, m1=2.0, m2=0.5)
        a1, a2 = pair_forces(rng.normal(size=(10, 3)), rng.normal(size=(10, 3)), body)
        np.testing.assert_allclose(body.m1 * a1 + body.m2 * a2, 0.0, atol=1e-12)

    def test_relative_force(self, unit_body):
        np.testing.assert_allclose(relative_rhs((2, 0, 0), unit_body), [-0.5, 0, 0])
        with pytest.raises(CollisionSingularityError):
            relative_rhs((0, 0, 0), unit_body)
        with pytest.raises(RejectedInputError):
            relative_rhs((1, 0), unit_body)

    def test_ncme_needs_two_bodies(self, unit_body):
        state = PhaseState(positions=[[1, 0, 0]], velocities=[[0, 0, 0]])
        with pytest.raises(RejectedInputError):
            ncme_rhs(state, unit_body)
        pair = PhaseState(positions=[[0, 0, 0], [2, 0, 0]], velocities=[[0, 0, 0], [0, 0, 0]])
        np.testing.assert_allclose(ncme_rhs(pair, unit_body), [[0.25, 0, 0], [-0.25, 0, 0]])


class TestRk4:
    def test_initial_state(self, parabolic):
        state = initial_state_from_solution(parabolic, 1.0)
        a = 9 ** (1 / 3)
        np.testing.assert_allclose(state.position_array(), [[a, 0, 0]], rtol=1e-14)
        np.testing.assert_allclose(state.velocity_array(), [[2 * a / 3, 0, 0]], rtol=1e-14)

    def test_lands_on_end_time(self, unit_body, parabolic):
        trajectory = rk4_integrate(initial_state_from_solution(parabolic, 1.0), unit_body, 2.0, 0.1)
        assert len(trajectory) == 11
        assert trajectory.times[0] == 1.0 and trajectory.times[-1] == 2.0

    def test_shortened_last_step(self, unit_body, parabolic):
        trajectory = rk4_integrate(initial_state_from_solution(parabolic, 1.0), unit_body, 1.25, 0.1)
        np.testing.assert_allclose(trajectory.times, [1.0, 1.1, 1.2, 1.25])

    def test_fourth_order_convergence(self, unit_body, parabolic):
        initial = initial_state_from_solution(parabolic, 1.0)
        coarse = deviation_from_solution(rk4_integrate(initial, unit_body, 2.0, 0.1), parabolic)
        fine = deviation_from_solution(rk4_integrate(initial, unit_body, 2.0, 0.05), parabolic)
        assert 12.0 < coarse / fine < 20.0

    def test_tracks_the_parabolic_orbit(self, unit_body, parabolic):
        trajectory = rk4_integrate(initial_state_from_solution(parabolic, 1.0), unit_body, 2.0, 1e-3)
        assert deviation_from_solution(trajectory, parabolic) < 1e-8
        assert np.max(np.abs(trajectory.energy(unit_body))) < 1e-8
        np.testing.assert_allclose(trajectory.angular_momentum(unit_body), 0.0, atol=1e-12)

    def test_tracks_the_collision_pair(self):
        body = BodyConfig(G=1.0, m1=1.0, m2=3.0)
        sol = closed_form.ncme_collision_solution(body, (0.0, 0.6, 0.8))
        trajectory = rk4_integrate(initial_state_from_solution(sol, 1.0), body, 2.0, 1e-3)
        assert trajectory.q == 2
        assert deviation_from_solution(trajectory, sol) < 1e-8
        momentum = body.m1 * trajectory.velocities[:, 0, :] + body.m2 * trajectory.velocities[:, 1, :]
        np.testing.assert_allclose(momentum, 0.0, atol=1e-12)

    def test_aborts_before_collision(self, unit_body):
        initial = PhaseState(positions=[[1, 0, 0]], velocities=[[0, 0, 0]], t=0.0)
        with pytest.raises(CollisionProximityError) as info:
            rk4_integrate(initial, unit_body, 2.0, 1e-3, collision_threshold=0.05)
        last = info.value.last_state
        assert 0.5 < last.t < np.pi / 4
        assert np.linalg.norm(last.position_array()) >= 0.05
        assert info.value.trajectory.times[-1] == last.t

    @pytest.mark.parametrize("t_end, h", [(2.0, 0.0), (2.0, -0.1), (0.5, 0.1)])
    def test_rejects_bad_steps(self, unit_body, parabolic, t_end, h):
        with pytest.raises(RejectedInputError):
            rk4_integrate(initial_state_from_solution(parabolic, 1.0), unit_body, t_end, h)


class TestReferenceIdentities:
    def test_relative_force_is_the_pair_difference(self, rng):
        body = BodyConfig(G=1.0, m1=0.5, m2=1.5)
        r1, r2 = rng.normal(size=3), rng.normal(size=3)
        a1, a2 = pair_forces(r1, r2, body)
        np.testing.assert_allclose(relative_rhs(r1 - r2, body), a1 - a2, rtol=1e-14, atol=1e-14)
        np.testing.assert_allclose(relative_rhs((0, 2, 0), BodyConfig(G=1.0, m1=1.0, m2=1.0)), [0, -0.5, 0])

    def test_circular_orbit(self, unit_body):
        initial = PhaseState(positions=[[1, 0, 0]], velocities=[[0, np.sqrt(2.0), 0]], t=0.0)
        period = 2 * np.pi / np.sqrt(2.0)
        trajectory = rk4_integrate(initial, unit_body, period, 1e-3)
        np.testing.assert_allclose(np.linalg.norm(trajectory.positions[:, 0, :], axis=1), 1.0, atol=1e-6)

    def test_pair_difference_follows_the_relative_system(self):
        body = BodyConfig(G=1.0, m1=1.0, m2=3.0)
        full = initial_state_from_solution(closed_form.ncme_collision_solution(body, (0.0, 0.6, 0.8)), 1.0)
        relative = PhaseState(
            positions=[full.position_array()[0] - full.position_array()[1]],
            velocities=[full.velocity_array()[0] - full.velocity_array()[1]],
            t=1.0,
        )
        pair_run = rk4_integrate(full, body, 2.0, 1e-3)
        relative_run = rk4_integrate(relative, body, 2.0, 1e-3)
        np.testing.assert_allclose(pair_run.relative_positions(), relative_run.relative_positions(), atol=1e-8)
