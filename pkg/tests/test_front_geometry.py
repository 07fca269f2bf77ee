import math

import numpy as np
import pytest

from travelwave.core.exceptions import (
    NoSpatialFrontError,
    RejectedInputError,
    SingularFrontError,
    UnsupportedChartError,
)
from travelwave.domain.entity.enums import ChartKind, FrontShape, Provenance
from travelwave.domain.entity.front import CoordinateChart, FrontSurface, Plane
from travelwave.domain.entity.model import BodyConfig, WaveParams
from travelwave.domain.entity.solution import PowerLawSolution, SolutionBlock
from travelwave.domain.service import closed_form
from travelwave.domain.service.front_geometry import (
    advance_plane,
    detect_front,
    fit_blowup_exponent,
    front_locus_time,
    front_surface_chart,
    gradient_magnitude,
    gradient_vector,
    labelled_gradient,
    tangent_plane_family,
    two_body_front_equivalence,
)
from travelwave.domain.service.wave_kernel import compute_wave_argument

SPHERICAL = CoordinateChart(kind=ChartKind.SPHERICAL)
CYLINDRICAL = CoordinateChart(kind=ChartKind.CYLINDRICAL)
CARTESIAN = CoordinateChart(kind=ChartKind.CARTESIAN)


@pytest.fixture
def relative(unit_body, moving_params):
    return closed_form.relative_2body_solution(unit_body, moving_params, (1, 0, 0))


@pytest.fixture
def pair(unit_body, pair_params):
    return closed_form.two_body_pair_solution(unit_body, pair_params, (0.0, 0.6, 0.8))


class TestGradient:
    def test_direction_is_v_and_minus_mu(self, relative, moving_params):
        slope = (2 / 3) * 3 ** (1 / 3)
        np.testing.assert_allclose(gradient_vector(relative, moving_params, 1.0, 0),
                                   slope * np.array([1, 0, 0, -2]), rtol=1e-14)

    def test_front_itself_is_singular(self, relative, moving_params):
        with pytest.raises(SingularFrontError):
            gradient_vector(relative, moving_params, 0.0, 0)

    def test_component_out_of_range(self, relative, moving_params):
        with pytest.raises(RejectedInputError):
            gradient_vector(relative, moving_params, 1.0, 3)
        with pytest.raises(RejectedInputError):
            gradient_vector(relative, moving_params, 1.0, 0, block=1)

    @pytest.mark.parametrize("chart", [SPHERICAL, CYLINDRICAL, CARTESIAN], ids=lambda c: c.kind.value)
    def test_blows_up_like_cube_root(self, relative, moving_params, chart):
        w = 10.0 ** -np.arange(1, 9)
        magnitudes = np.array([
            np.linalg.norm(list(labelled_gradient(chart, relative, moving_params, x, 0).values())) for x in w
        ])
        assert fit_blowup_exponent(w, magnitudes) == pytest.approx(-1 / 3, abs=0.01)
        assert np.all(np.diff(magnitudes) > 0)
        np.testing.assert_allclose(magnitudes, gradient_magnitude(relative, moving_params, w, 0), rtol=1e-14)

    def test_gradient_behind_the_front(self, relative, moving_params):
        ahead = gradient_vector(relative, moving_params, 1.0, 0)
        np.testing.assert_allclose(gradient_vector(relative, moving_params, -1.0, 0), -ahead, rtol=1e-14)
        w = -(10.0 ** -np.arange(1, 9))
        assert fit_blowup_exponent(w, gradient_magnitude(relative, moving_params, w, 0)) == pytest.approx(-1 / 3, abs=0.01)

    def test_chart_labels(self, relative, moving_params):
        labelled = labelled_gradient(SPHERICAL, relative, moving_params, 1.0, 0)
        assert list(labelled) == ["rho", "theta", "phi", "t"]
        assert labelled["theta"] == 0.0 and labelled["t"] < 0

    def test_detector(self, relative, moving_params):
        mask = detect_front(relative, moving_params, [1e-20, 1e-3, 1.0, 0.0], 0)
        assert mask.tolist() == [True, False, False, True]

    def test_detector_scans_across_the_front(self, relative, moving_params):
        mask = detect_front(relative, moving_params, [-1.0, -1e-20, 0.0, 1e-20, 1.0], 0)
        assert mask.tolist() == [False, True, True, True, False]

    def test_exponent_fit_rejects_bad_samples(self):
        with pytest.raises(RejectedInputError):
            fit_blowup_exponent([1.0, 2.0], [1.0])
        with pytest.raises(RejectedInputError):
            fit_blowup_exponent([0.0, 1.0], [1.0, 2.0])


class TestFrontLocus:
    def test_hessian_normal_form(self):
        params = WaveParams.block_constant(mu=2.0, v=(3, 4, 0), block_lambda_sq=(1.0,), c=1.0)
        plane = front_locus_time(params, 3.0)
        np.testing.assert_allclose(plane.normal, [0.6, 0.8, 0.0])
        assert plane.offset == pytest.approx(1.0)
        assert plane.signed_distance(np.array(plane.tangency_point)) == pytest.approx(0.0, abs=1e-15)

    def test_static_wave_has_a_singular_instant(self):
        params = WaveParams.block_constant(mu=4.0, v=(0, 0, 0), block_lambda_sq=(1.0,), c=2.0)
        with pytest.raises(NoSpatialFrontError) as info:
            front_locus_time(params, 1.0)
        assert info.value.singular_time == 0.5

    def test_front_moves_at_speed_mu(self, moving_params):
        later = advance_plane(front_locus_time(moving_params, 1.0), moving_params.mu, 2.0)
        assert later == front_locus_time(moving_params, 3.0)

    def test_plane_samples_lie_on_the_plane(self):
        plane = Plane(normal=(0.0, 0.6, 0.8), offset=2.0)
        points = plane.sample(extent=3.0, count=4)
        assert points.shape == (16, 3)
        np.testing.assert_allclose(plane.signed_distance(points), 0.0, atol=1e-14)
        assert plane.distance_from_origin() == 2.0

    def test_normal_must_be_unit(self):
        with pytest.raises(ValueError):
            Plane(normal=(1.0, 1.0, 0.0), offset=0.0)


class TestTangentPlanes:
    def test_every_plane_touches_the_sphere(self, rng):
        directions = rng.normal(size=(16, 3))
        directions /= np.linalg.norm(directions, axis=1, keepdims=True)
        surface = tangent_plane_family(2.0, 1.5, directions)
        assert surface.shape == FrontShape.TANGENT_PLANES and surface.radius == 3.0
        assert len(surface.planes) == 16
        assert all(plane.distance_from_origin() == 3.0 for plane in surface.planes)
        np.testing.assert_allclose(np.linalg.norm(surface.vertices(), axis=1), 3.0, rtol=1e-14)
        assert surface.quadric_residual() <= 1e-12

    @pytest.mark.parametrize("directions", [[(1.0, 1.0, 0.0)], []])
    def test_rejects_bad_directions(self, directions):
        with pytest.raises(RejectedInputError):
            tangent_plane_family(1.0, 1.0, directions)

    def test_rejects_negative_time(self):
        with pytest.raises(RejectedInputError):
            tangent_plane_family(1.0, -1.0, [(1.0, 0.0, 0.0)])

    def test_cartesian_chart_defaults_to_v(self):
        surface = front_surface_chart(CARTESIAN, 2.0, 1.0, v=(0.0, 0.0, 1.0))
        assert surface.planes[0].normal == (0.0, 0.0, 1.0)
        assert surface.planes[0].offset == 2.0


class TestChartFronts:
    def test_sphere(self):
        surface = front_surface_chart(SPHERICAL, 2.0, 1.5)
        assert surface.shape == FrontShape.SPHERE
        assert surface.samples.shape == (64, 128, 3)
        assert surface.quadric_residual() <= 1e-12
        assert surface.header()["vertices"] == 64 * 128

    def test_cylinder(self):
        surface = front_surface_chart(CYLINDRICAL, 2.0, 1.5, resolution=(8, 5))
        assert surface.shape == FrontShape.CYLINDER
        assert surface.samples.shape == (8, 5, 3)
        assert surface.quadric_residual() <= 1e-12
        z = surface.vertices()[:, 2]
        assert (z.min(), z.max()) == (-6.0, 6.0)

    def test_front_at_time_zero_collapses(self):
        surface = front_surface_chart(SPHERICAL, 2.0, 0.0, resolution=(4, 4))
        np.testing.assert_array_equal(surface.vertices(), 0.0)

    @pytest.mark.parametrize("v, c", [((0.0, 1.0, 0.0), 0.0), ((1.0, 0.0, 0.0), 1.0)])
    def test_other_waves_are_unsupported(self, v, c):
        with pytest.raises(UnsupportedChartError, match="v = \\(1, 0, 0\\) and c = 0 only"):
            front_surface_chart(SPHERICAL, 1.0, 1.0, v=v, c=c)

    def test_resolution_floor(self):
        with pytest.raises(RejectedInputError):
            front_surface_chart(CYLINDRICAL, 1.0, 1.0, resolution=(1, 4))

    def test_spherical_chart_mapping(self):
        point = SPHERICAL.to_cartesian(np.array([2.0, math.pi / 2, 0.0]))
        np.testing.assert_allclose(point, [2.0, 0.0, 0.0], atol=1e-15)

    def test_surface_time_cannot_be_negative(self):
        with pytest.raises(ValueError):
            FrontSurface(chart=SPHERICAL, time=-1.0, mu=1.0, shape=FrontShape.SPHERE, radius=-1.0,
                         samples=np.zeros((1, 3)))


class TestPairEquivalence:
    def test_both_bodies_share_the_front(self, pair, pair_params):
        report = two_body_front_equivalence(pair, pair_params)
        assert report.equivalent
        assert report.slopes == pytest.approx((-1 / 3, -1 / 3), abs=0.01)
        assert report.expected_ratio == pytest.approx(1.5)
        assert report.magnitude_ratio == pytest.approx(1.5, rel=1e-12)
        assert report.normal == pair_params.v

    def test_static_pair(self):
        params = WaveParams.block_constant(mu=1.0, v=(0, 0, 0), block_lambda_sq=(1.0, 1.0), c=0.5)
        sol = closed_form.two_body_pair_solution(BodyConfig(G=1.0, m1=1.0, m2=2.0), params, (1, 0, 0))
        report = two_body_front_equivalence(sol, params)
        assert report.equivalent
        assert "single instant" in report.description

    def test_needs_a_pair(self, relative, moving_params):
        with pytest.raises(RejectedInputError):
            two_body_front_equivalence(relative, moving_params)


class TestFrontProperties:
    def test_gradient_magnitude_formula(self):
        sol = PowerLawSolution(provenance=Provenance.RELATIVE_TWO_BODY, blocks=(SolutionBlock(alpha=1.0, S=(1, 0, 0)),))
        params = WaveParams.block_constant(mu=1.0, v=(1, 0, 0), block_lambda_sq=(0.5,))
        one, eight = gradient_magnitude(sol, params, [1.0, 8.0], 0)
        assert one == pytest.approx((2 / 3) * math.sqrt(2), rel=1e-15)
        assert eight / one == pytest.approx(0.5, rel=1e-15)

    def test_plane_points_have_zero_wave_argument(self):
        params = WaveParams.block_constant(mu=1.5, v=(0.3, -2.0, 1.0), block_lambda_sq=(1.0,), c=0.7)
        plane = front_locus_time(params, 2.0)
        for point in plane.sample(extent=5.0, count=6):
            assert compute_wave_argument(params, point, 2.0) == pytest.approx(0.0, abs=1e-12)

    def test_offset_front_crosses_the_origin(self):
        params = WaveParams.block_constant(mu=2.0, v=(0, 1, 0), block_lambda_sq=(1.0,), c=3.0)
        assert front_locus_time(params, 1.5).offset == 0.0

    def test_tangency_against_sphere_samples(self, rng):
        directions = rng.normal(size=(1000, 3))
        directions /= np.linalg.norm(directions, axis=1, keepdims=True)
        surface = tangent_plane_family(1.0, 2.0, directions)
        sphere = front_surface_chart(SPHERICAL, 1.0, 2.0, resolution=(33, 64)).vertices()
        for plane in surface.planes:
            gaps = plane.offset - sphere @ plane.normal_array
            assert gaps.min() >= -1e-12
            np.testing.assert_allclose(plane.closest_point_to_origin(), plane.tangency_point, atol=1e-15)

    @pytest.mark.parametrize("chart", [SPHERICAL, CYLINDRICAL, CARTESIAN])
    def test_radius_grows_linearly(self, chart):
        first = front_surface_chart(chart, 2.0, 1.0, resolution=(4, 4))
        later = front_surface_chart(chart, 2.0, 3.5, resolution=(4, 4))
        assert later.radius - first.radius == 2.0 * 2.5
