import io

import numpy as np
import pytest

from curvelab.flows import (CFLViolation, FlowKind, NumericalAbort, cfl_limit, evolve,
                            log_perimeter_gradient, solve_w, solve_w_fixed_point, ucmcf_velocity,
                            velocity)
from curvelab.geometry import (curvature_vector, make_circle, make_ellipse, perimeter,
                               reparametrize_constant_speed, signed_area)
from curvelab.projection import coherent_inner, ndiv, normal_part


@pytest.fixture(scope="module")
def ellipse128():
    return reparametrize_constant_speed(make_ellipse(2.0, 1.0, 128))


@pytest.mark.parametrize("text,kind", [("mcf", FlowKind.MCF), ("modified", FlowKind.MODIFIED_MCF),
                                       ("Modified-MCF", FlowKind.MODIFIED_MCF),
                                       ("ucmcf", FlowKind.UCMCF), (FlowKind.UCMCF, FlowKind.UCMCF)])
def test_kind_parse(text, kind):
    assert FlowKind.parse(text) is kind


def test_kind_parse_rejects():
    with pytest.raises(ValueError):
        FlowKind.parse("willmore")


class TestW:
    @pytest.mark.parametrize("r", [0.5, 1.0, 2.0])
    def test_zero_on_circle(self, r):
        assert np.max(np.abs(solve_w(make_circle(r, n=64)))) < 1e-10

    def test_zero_mean(self, ellipse256):
        assert abs(np.mean(solve_w(ellipse256))) < 1e-13

    def test_fixed_point_agrees(self, ellipse256):
        assert np.max(np.abs(solve_w(ellipse256) - solve_w_fixed_point(ellipse256))) < 1e-6

    def test_scale_invariant(self, ellipse256):
        np.testing.assert_allclose(solve_w(ellipse256.scaled(3.0)), solve_w(ellipse256),
                                   atol=1e-10)

    def test_requires_constant_speed(self):
        with pytest.raises(ValueError):
            solve_w(make_ellipse(2.0, 1.0, 64))


class TestVelocities:
    @pytest.mark.parametrize("kind", list(FlowKind))
    def test_circle_all_kinds_agree(self, unit_circle, kind):
        np.testing.assert_allclose(velocity(unit_circle, kind), curvature_vector(unit_circle),
                                   atol=1e-8)

    def test_ucmcf_differs_from_mcf(self, ellipse256):
        diff = ucmcf_velocity(ellipse256) - curvature_vector(ellipse256)
        assert np.sqrt(np.mean(np.sum(diff**2, axis=1))) > 1e-3

    def test_modified_has_mcf_normal_part(self, ellipse256):
        np.testing.assert_allclose(normal_part(ellipse256, velocity(ellipse256, "modified")),
                                   curvature_vector(ellipse256), atol=1e-10)

    @pytest.mark.parametrize("kind", ["modified", "ucmcf"])
    def test_coherent_kinds(self, ellipse512, kind):
        v = velocity(ellipse512, kind)
        assert np.max(np.abs(ndiv(ellipse512, v))) < 1e-6

    def test_gradient_sign(self, ellipse256):
        np.testing.assert_allclose(log_perimeter_gradient(ellipse256), -ucmcf_velocity(ellipse256))

    def test_gradient_is_steepest(self, ellipse256):
        # <grad R, grad R> equals the first variation of log-perimeter along grad R
        g = log_perimeter_gradient(ellipse256)
        h = curvature_vector(ellipse256)
        first_variation = -np.mean(np.sum(h * g, axis=1))
        assert coherent_inner(ellipse256, g, g) == pytest.approx(first_variation, rel=1e-10)


class TestEvolve:
    def test_cfl_violation(self, ellipse128):
        with pytest.raises(CFLViolation):
            evolve(ellipse128, "mcf", t_end=0.01, dt=10 * cfl_limit(ellipse128))

    def test_cfl_is_numerical_abort(self):
        assert issubclass(CFLViolation, NumericalAbort)

    @pytest.mark.parametrize("t_end,dt", [(0.0, 1e-4), (0.01, -1.0)])
    def test_bad_times(self, ellipse128, t_end, dt):
        with pytest.raises(ValueError):
            evolve(ellipse128, "mcf", t_end=t_end, dt=dt)

    def test_circle_mcf_radius(self):
        traj = evolve(make_circle(1.0, n=64), "mcf", t_end=0.1, dt=1e-3)
        assert traj.perimeter[-1] / (2 * np.pi) == pytest.approx(np.sqrt(0.8), abs=1e-8)

    @pytest.mark.parametrize("kind", ["mcf", "modified"])
    def test_area_rate(self, ellipse128, kind):
        # normal speed is the curvature, so area falls at rate 2 pi
        traj = evolve(ellipse128, kind, t_end=0.01, dt=1e-4)
        assert traj.area[0] - traj.area[-1] == pytest.approx(2 * np.pi * 0.01, rel=1e-6)

    def test_ucmcf_energy_identity(self, ellipse128):
        dt = 5e-5
        traj = evolve(ellipse128, "ucmcf", t_end=20 * dt, dt=dt)
        rate = np.gradient(np.log(traj.perimeter), traj.times)[10]
        mid = traj.curves[traj.curve_times.tolist().index(traj.times[10])]
        g = log_perimeter_gradient(mid, speed_tol=1e-3)
        assert rate == pytest.approx(-coherent_inner(mid, g, g, speed_tol=1e-3), rel=1e-4)

    @pytest.mark.parametrize("kind", ["modified", "ucmcf"])
    def test_coherent_flows_keep_markers_uniform(self, ellipse128, kind):
        traj = evolve(ellipse128, kind, t_end=0.01, dt=1e-4, reparam_every=0)
        assert np.max(traj.speed_cv) < 1e-5

    def test_record_every(self, ellipse128):
        traj = evolve(ellipse128, "mcf", t_end=1e-3, dt=1e-4, record_every=4)
        assert len(traj.times) == 11
        np.testing.assert_allclose(traj.curve_times, [0.0, 4e-4, 8e-4, 1e-3], atol=1e-15)

    def test_csv(self, ellipse128):
        traj = evolve(ellipse128, "mcf", t_end=2e-4, dt=1e-4)
        buf = io.StringIO()
        traj.to_csv(buf)
        lines = buf.getvalue().splitlines()
        assert lines[0] == "t,perimeter,area,max_kappa,speed_cv"
        assert len(lines) == 4
        assert float(lines[1].split(",")[2]) == pytest.approx(signed_area(ellipse128))

    def test_perimeter_decreases(self, ellipse128):
        traj = evolve(ellipse128, "ucmcf", t_end=0.01, dt=1e-4)
        assert np.all(np.diff(traj.perimeter) < 0)
        assert traj.perimeter[0] == pytest.approx(perimeter(ellipse128))
