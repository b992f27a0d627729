import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvelab import loops
from curvelab.criteria import (CurvePath, criterion_mm, criterion_sv, criterion_sv_translation,
                               loop_integral_mm, loop_integral_sv, quantity_q, translation_vector)
from curvelab.geometry import (ClosedCurve, make_circle, make_ellipse, perimeter,
                               reparametrize_constant_speed)

from .conftest import random_smooth_curve


def perimeter_one(curve):
    return curve.scaled(1.0 / perimeter(curve))


@pytest.fixture(scope="module")
def small_mixed_sv():
    target = loops.triangle_target(1, eps=0.1, nodes_per_shoulder=8)
    return loops.morph_scale_path(target, m=32)


class TestPointwise:
    @pytest.mark.parametrize("r", [0.5, 1.0, 2.0])
    @pytest.mark.parametrize("center", [(0.0, 0.0), (0.3, -1.2)])
    def test_circle_nullity(self, r, center):
        c = make_circle(r, center, 128)
        assert abs(criterion_sv(c)) < 1e-8 * max(1.0, r**4)
        assert np.max(np.abs(criterion_mm(c))) < 1e-8
        for u in ((1, 0), (0, 1), (1, 1)):
            assert abs(criterion_sv_translation(c, u)) < 1e-8

    @settings(max_examples=10, deadline=None)
    @given(st.floats(-np.pi, np.pi))
    def test_rotation_invariance(self, angle):
        c = random_smooth_curve(np.random.default_rng(1), n=256)
        base = criterion_sv(c)
        assert criterion_sv(c.rotated(angle, center=(0.0, 0.0))) == pytest.approx(base, rel=1e-10)

    def test_reparametrizes_internally(self):
        raw = make_ellipse(2.0, 1.0, 512)
        assert criterion_sv(raw) == pytest.approx(criterion_sv(reparametrize_constant_speed(raw)),
                                                  rel=1e-10)

    def test_translation_is_half_the_variation(self):
        c = reparametrize_constant_speed(random_smooth_curve(np.random.default_rng(5), n=512))
        u = np.array([0.6, 0.8])
        d = []
        for h in (1e-3, 5e-4):
            d.append((criterion_sv(c.translated(h * u)) - criterion_sv(c.translated(-h * u)))
                     / (2 * h))
        assert d[-1] == pytest.approx(2 * criterion_sv_translation(c, u), rel=1e-6)

    def test_u_normalized(self, ellipse256):
        c = ellipse256.translated((0.3, 0.0))
        assert criterion_sv_translation(c, (5.0, 0.0)) == pytest.approx(
            criterion_sv_translation(c, (1.0, 0.0)))

    @pytest.mark.parametrize("u", [(0.0, 0.0), (1.0, 2.0, 3.0)])
    def test_bad_u(self, ellipse256, u):
        with pytest.raises(ValueError):
            criterion_sv_translation(ellipse256, u)

    def test_arclength_form(self, ellipse256):
        p = perimeter(ellipse256)
        c = ellipse256.translated((0.1, 0.2))
        np.testing.assert_allclose(translation_vector(c, "arclength"),
                                   translation_vector(c) * (2 * np.pi / p) ** 3)
        with pytest.raises(ValueError):
            translation_vector(c, "polar")

    def test_mm_symmetric_curve(self):
        # egg shape symmetric about the vertical axis
        th = np.linspace(0, 2 * np.pi, 256, endpoint=False)
        r = 1.0 + 0.2 * np.sin(th)
        c = ClosedCurve(np.column_stack([r * np.cos(th), r * np.sin(th)]))
        v = criterion_mm(c)
        assert abs(v[0]) < 1e-8 and abs(v[1]) > 1e-3

    def test_mm_scaling(self, ellipse256):
        # D^2 Phi scales linearly, so the integral scales cubically
        np.testing.assert_allclose(criterion_mm(ellipse256.scaled(2.0).translated((1.0, 0.0))),
                                   8 * criterion_mm(ellipse256), atol=1e-12)


class TestQuantityQ:
    def test_circle(self):
        q = quantity_q(perimeter_one(make_circle(1.0, n=256)))
        assert abs(q.kernel) < 1e-8 and abs(q.reduced) < 1e-8

    def test_wrong_perimeter(self, ellipse256):
        with pytest.raises(ValueError, match="rescale"):
            quantity_q(ellipse256)

    @settings(max_examples=5, deadline=None)
    @given(st.integers(0, 10_000))
    def test_forms_agree(self, seed):
        c = perimeter_one(random_smooth_curve(np.random.default_rng(seed), n=1024))
        q = quantity_q(c)
        assert abs(q.kernel - q.reduced) < 1e-5

    def test_reduced_is_half_criterion(self):
        c = perimeter_one(reparametrize_constant_speed(make_ellipse(2.0, 1.0, 256)))
        assert quantity_q(c).reduced == pytest.approx(-0.5 * criterion_sv(c), rel=1e-12)

    def test_translation_variation(self):
        c = perimeter_one(reparametrize_constant_speed(make_ellipse(2.0, 1.0, 256)))
        u = np.array([1.0, 0.0])
        h = 1e-4
        fd = (quantity_q(c.translated(h * u)).reduced
              - quantity_q(c.translated(-h * u)).reduced) / (2 * h)
        assert fd == pytest.approx(-criterion_sv_translation(c, u), rel=1e-6, abs=1e-12)


class TestCurvePath:
    def test_too_short(self):
        c = make_circle(1.0, n=32)
        with pytest.raises(ValueError):
            CurvePath((c, c, c))

    def test_grid_mismatch(self):
        with pytest.raises(ValueError):
            CurvePath(tuple(make_circle(1.0, n=32 + 16 * (k % 2)) for k in range(8)))

    def test_velocity_shape_mismatch(self):
        cs = tuple(make_circle(1.0, n=32) for _ in range(8))
        with pytest.raises(ValueError):
            CurvePath(cs, tuple(np.zeros((16, 2)) for _ in range(8)))

    def test_not_closed(self):
        frames = [make_circle(1.0 + 0.1 * k, n=32) for k in range(9)]
        with pytest.raises(ValueError, match="not closed"):
            CurvePath.from_frames(frames, endpoint=True)

    def test_from_frames_closed(self):
        t = np.arange(9) / 8
        frames = [make_circle(1.0 + 0.2 * np.sin(2 * np.pi * s), n=32) for s in t]
        path = CurvePath.from_frames(frames, endpoint=True)
        assert path.m == 8

    def test_spectral_velocity_exact_for_scaling(self):
        path = loops.circle_scale_path(m=16, n=32)
        t = np.arange(16) / 16
        rate = 0.3 * 2 * np.pi * np.cos(2 * np.pi * t)
        expected = rate[:, None, None] * make_circle(1.0, n=32).points[None]
        np.testing.assert_allclose(path.velocity_array(), expected, atol=1e-12)

    def test_centered_velocity_order(self):
        errs = []
        for m in (16, 32):
            path = loops.circle_scale_path(m=m, n=32)
            cen = CurvePath(path.curves, method="centered")
            errs.append(np.max(np.abs(cen.velocity_array() - path.velocity_array())))
        assert errs[0] / errs[1] == pytest.approx(4.0, rel=0.05)

    def test_reversed_twice(self):
        path = loops.circle_scale_path(m=8, n=32)
        back = path.reversed().reversed()
        np.testing.assert_array_equal(back.stacked(), path.stacked())


class TestLoops:
    def test_circle_scale_zero(self):
        path = loops.circle_scale_path(m=32, n=64)
        for res in (loop_integral_sv(path), loop_integral_mm(path)):
            assert abs(res.value) < 1e-6
            assert abs(res.value) <= res.error_estimate

    def test_shape_scale_zero(self):
        path = loops.shape_scale_path(make_ellipse(2.0, 1.0, 128), m=32)
        assert abs(loop_integral_sv(path).value) < 1e-5
        assert abs(loop_integral_mm(path).value) < 1e-5

    def test_ellipse_retrace_zero(self):
        path = loops.ellipse_retrace_path(m=16, n=256)
        assert abs(loop_integral_sv(path).value) < 1e-10
        assert abs(loop_integral_mm(path).value) < 1e-10

    def test_hv_telescopes(self, small_mixed_sv):
        res = loop_integral_sv(small_mixed_sv)
        assert abs(res.terms["hv"]) < 1e-6
        assert res.terms["goal2"] == pytest.approx(res.terms["grad"], rel=1e-6)
        assert abs(loop_integral_mm(small_mixed_sv).terms["hv"]) < 1e-6

    def test_reversal(self, small_mixed_sv):
        fwd, back = loop_integral_sv(small_mixed_sv), loop_integral_sv(small_mixed_sv.reversed())
        assert abs(fwd.value + back.value) < 1e-10
        fwd, back = loop_integral_mm(small_mixed_sv), loop_integral_mm(small_mixed_sv.reversed())
        assert abs(fwd.value + back.value) < 1e-10 * max(1.0, abs(fwd.value))

    def test_refinement_stable(self):
        target = loops.triangle_target(1, eps=0.1, nodes_per_shoulder=8)
        a = loop_integral_sv(loops.morph_scale_path(target, m=32))
        b = loop_integral_sv(loops.morph_scale_path(target, m=64))
        assert abs(a.value - b.value) < 5 * a.error_estimate

    def test_mixed_sv_matches_scale_oracle(self, small_mixed_sv):
        # value = 8 pi^3 int (log l)' K(shape_t) dt with K the kernel form of quantity_q
        t = np.arange(small_mixed_sv.m) / small_mixed_sv.m
        dlog = -0.5 * np.log(2.0) * 2 * np.pi * np.cos(2 * np.pi * t)
        kern = np.array([quantity_q(perimeter_one(c)).kernel for c in small_mixed_sv.curves])
        oracle = 8 * np.pi**3 * np.mean(dlog * kern)
        res = loop_integral_sv(small_mixed_sv)
        assert res.value == pytest.approx(oracle, rel=1e-3)
        assert abs(res.value) > 10 * res.error_estimate

    def test_nonuniform_path_rejected(self):
        raw = tuple(make_ellipse(2.0 + 0.1 * np.sin(2 * np.pi * k / 8), 1.0, 64) for k in range(8))
        with pytest.raises(ValueError, match="constant speed"):
            loop_integral_sv(CurvePath(raw))

    @pytest.mark.parametrize("recipe", ["nope"])
    def test_unknown_recipe(self, recipe):
        with pytest.raises(ValueError):
            loops.build(recipe)

    @pytest.mark.parametrize("m", [6, 9])
    def test_bad_m(self, m):
        with pytest.raises(ValueError):
            loops.circle_scale_path(m=m)
