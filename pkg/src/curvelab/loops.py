"""Closed paths of curves used to probe conservativity.

Mixed loops morph a circle into a target shape at perimeter 1, scale up,
morph back and scale down.  With the default ``"smooth"`` schedule the morph
weight and the log-scale are trigonometric in ``t``, so marker positions are
smooth and periodic in time and Fourier time derivatives converge
geometrically.  The ``"legs"`` schedule runs the four moves as straight
segments one after another.
"""

from __future__ import annotations

import numpy as np

from .counterexamples import figure1_spec, figure2_spec, mollified_polygon, resolved_size
from .criteria import CurvePath
from .geometry import ClosedCurve, make_circle, make_ellipse, perimeter, reparametrize_constant_speed

RECIPES = ("circle-scale", "shape-scale", "mixed-sv", "mixed-mm", "ellipse-retrace")


def _times(m: int) -> np.ndarray:
    if m < 8 or m % 2:
        raise ValueError("m must be an even count of at least 8")
    return np.arange(m) / m


def _normalized(curve: ClosedCurve) -> ClosedCurve:
    c = curve.translated(-curve.points.mean(axis=0))
    return c.scaled(1.0 / perimeter(c))


def circle_scale_path(m: int = 200, n: int = 128, amplitude: float = 0.3) -> CurvePath:
    """Circles of radius ``1 + amplitude sin(2 pi t)``."""
    t = _times(m)
    base = make_circle(1.0, n=n)
    return CurvePath(tuple(base.scaled(1.0 + amplitude * np.sin(2 * np.pi * s)) for s in t))


def shape_scale_path(shape: ClosedCurve | None = None, m: int = 200,
                     amplitude: float = 0.5) -> CurvePath:
    """A fixed shape rescaled to perimeter ``1.5 + amplitude sin(2 pi t)``."""
    if shape is None:
        shape = make_ellipse(2.0, 1.0, n=256)
    base = _normalized(reparametrize_constant_speed(shape))
    t = _times(m)
    return CurvePath(tuple(base.scaled(1.5 + amplitude * np.sin(2 * np.pi * s)) for s in t))


def matched_circle(target: ClosedCurve) -> ClosedCurve:
    """Perimeter-1 circle about the target's centroid, node 0 in the direction of its node 0."""
    center = target.points.mean(axis=0)
    d = target.points[0] - center
    phase = np.arctan2(d[1], d[0])
    th = phase + 2.0 * np.pi * np.arange(target.n) / target.n
    r = 1.0 / (2.0 * np.pi)
    return ClosedCurve(center + r * np.column_stack([np.cos(th), np.sin(th)]))


def _schedule(t: np.ndarray, kind: str, scale: float):
    if kind == "smooth":
        w = 0.5 * (1.0 - np.cos(2 * np.pi * t))
        log_l = 0.5 * np.log(scale) * (1.0 - np.sin(2 * np.pi * t))
        return w, np.exp(log_l)
    if kind == "legs":
        u = 4.0 * t
        leg = np.minimum(u.astype(int), 3)
        f = u - leg
        w = np.choose(leg, [f, np.ones_like(f), 1.0 - f, np.zeros_like(f)])
        length = np.choose(leg, [np.ones_like(f), 1.0 + (scale - 1.0) * f,
                                 np.full_like(f, scale), scale - (scale - 1.0) * f])
        return w, length
    raise ValueError(f"unknown schedule {kind!r}")


def morph_scale_path(target: ClosedCurve, m: int = 200, scale: float = 2.0,
                     schedule: str = "smooth") -> CurvePath:
    """Loop circle -> target (perimeter 1) -> scale up -> back to circle -> scale down.

    Intermediate shapes are pointwise convex combinations of the matched
    constant-speed parametrizations, resampled to constant speed and
    normalized to perimeter 1 before scaling.
    """
    b = _normalized(reparametrize_constant_speed(target))
    a = matched_circle(b)
    w, length = _schedule(_times(m), schedule, scale)
    frames = []
    for wk, lk in zip(w, length):
        mix = ClosedCurve((1.0 - wk) * a.points + wk * b.points)
        frames.append(_normalized(reparametrize_constant_speed(mix)).scaled(lk))
    method = "spectral" if schedule == "smooth" else "centered"
    return CurvePath(tuple(frames), None, method)


def ellipse_retrace_path(m: int = 200, n: int = 256, aspect: float = 2.0) -> CurvePath:
    """Circle to ellipse of the given aspect ratio and back, at enclosed area ``pi``.

    The path retraces itself, so every loop integral over it vanishes.
    """
    w, _ = _schedule(_times(m), "smooth", 2.0)
    frames = []
    for wk in w:
        r = 1.0 + (aspect - 1.0) * wk
        frames.append(reparametrize_constant_speed(make_ellipse(np.sqrt(r), 1.0 / np.sqrt(r), n=n)))
    return CurvePath(tuple(frames))


def triangle_target(figure: int, eps: float = 0.05, n: int | None = None,
                    nodes_per_shoulder: int = 4) -> ClosedCurve:
    spec = figure1_spec(eps) if figure == 1 else figure2_spec(eps)
    if n is None:
        n = resolved_size(spec, nodes_per_shoulder)
    return mollified_polygon(spec, n)


def build(recipe: str, m: int = 200, n: int | None = None, eps: float = 0.05,
          schedule: str = "smooth") -> CurvePath:
    """Construct a named loop."""
    if recipe == "circle-scale":
        return circle_scale_path(m, n or 128)
    if recipe == "shape-scale":
        return shape_scale_path(make_ellipse(2.0, 1.0, n=n or 256), m)
    if recipe == "mixed-sv":
        return morph_scale_path(triangle_target(1, eps, n), m, schedule=schedule)
    if recipe == "mixed-mm":
        return morph_scale_path(triangle_target(2, eps, n), m, schedule=schedule)
    if recipe == "ellipse-retrace":
        return ellipse_retrace_path(m, n or 256)
    raise ValueError(f"unknown loop recipe {recipe!r}")
