"""Conservativity criteria for velocity fields on curve space.

Pointwise criteria are evaluated on the constant-speed parametrization of a
curve over ``[0, 2 pi]`` (speed ``p / 2 pi``), with ``D^2 Phi`` the second
``theta`` derivative.  Loop integrals pair a field with the velocity of a
closed path of curves; a field that is a metric gradient integrates to zero
around every such loop.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _spectral
from .elliptic import SPEED_TOL, green_matrix
from .geometry import (ClosedCurve, arclength_derivative, curvature_vector, perimeter,
                       reparametrize_constant_speed, speed, speed_cv)
from .projection import coherent_projection, modified_mcf_field, normal_part

# inputs this close to constant speed are used as they are
_UNIFORM_CV = 1e-9


def as_constant_speed(curve: ClosedCurve) -> ClosedCurve:
    if speed_cv(curve) <= _UNIFORM_CV:
        return curve
    return reparametrize_constant_speed(curve)


def _moments(curve: ClosedCurve):
    c = as_constant_speed(curve)
    d2 = _spectral.derivative(c.points, 2)
    return c, d2, np.sum(d2**2, axis=1)


def criterion_sv(curve: ClosedCurve) -> float:
    """``int |Phi|^2 |D^2 Phi|^2 - (1/2pi) int |Phi|^2 int |D^2 Phi|^2`` (dtheta)."""
    c, _, a2 = _moments(curve)
    r2 = np.sum(c.points**2, axis=1)
    w = 2.0 * np.pi / c.n
    return float(w * np.sum(r2 * a2) - w * np.sum(r2) * np.sum(a2) / c.n)


def _translation_vector(c: ClosedCurve, a2: np.ndarray) -> np.ndarray:
    w = 2.0 * np.pi / c.n
    return w * (c.points.T @ a2) - w * c.points.sum(axis=0) * np.sum(a2) / c.n


def criterion_sv_translation(curve: ClosedCurve, u=(1.0, 0.0), form: str = "theta") -> float:
    """Variation of :func:`criterion_sv` under translation along ``u``.

    ``form="theta"`` gives ``int Phi.u |D^2 Phi|^2 dtheta - (1/2pi) int Phi.u
    int |D^2 Phi|^2``.  ``form="arclength"`` gives ``int Phi.u kappa^2 ds -
    (1/p) int Phi.u ds int kappa^2 ds``, which differs by the factor
    ``(2 pi / p)^3``.
    """
    u = np.asarray(u, dtype=float)
    norm = np.linalg.norm(u)
    if u.shape != (2,) or norm == 0:
        raise ValueError("u must be a nonzero plane vector")
    vec = translation_vector(curve, form=form)
    return float(vec @ (u / norm))


def translation_vector(curve: ClosedCurve, form: str = "theta") -> np.ndarray:
    """Both components of :func:`criterion_sv_translation` at once."""
    c, _, a2 = _moments(curve)
    vec = _translation_vector(c, a2)
    if form == "theta":
        return vec
    if form == "arclength":
        return vec * (2.0 * np.pi / perimeter(c)) ** 3
    raise ValueError(f"unknown form {form!r}")


def criterion_mm(curve: ClosedCurve) -> np.ndarray:
    """``int |D^2 Phi|^2 D^2 Phi dtheta`` as a plane vector."""
    c, d2, a2 = _moments(curve)
    return (2.0 * np.pi / c.n) * (a2 @ d2)


class QuantityQ(NamedTuple):
    kernel: float
    reduced: float


def quantity_q(curve: ClosedCurve) -> QuantityQ:
    """Kernel and reduced forms of the scale-derivative pairing on a perimeter-1 curve.

    ``kernel = int int G(theta, xi) |D^2 Phi(xi)|^2 (D^2 Phi . Phi)(theta)``
    and ``reduced = -(1/2) int |Phi|^2 |D^2 Phi|^2 + (1/4pi) int |Phi|^2
    int |D^2 Phi|^2``; the two agree through integration by parts.
    """
    p = perimeter(curve)
    if abs(p - 1.0) > 1e-8:
        raise ValueError(f"curve perimeter is {p:.10g}; rescale to 1 first")
    c, d2, a2 = _moments(curve)
    n = c.n
    w = 2.0 * np.pi / n
    b = np.sum(d2 * c.points, axis=1)
    # removing the mean of a2 makes G act through its zero-mean part G - pi/6
    kernel = w * w * b @ (green_matrix(n) @ (a2 - a2.mean()))
    r2 = np.sum(c.points**2, axis=1)
    reduced = -0.5 * w * np.sum(r2 * a2) + w * w * np.sum(r2) * np.sum(a2) / (4.0 * np.pi)
    return QuantityQ(float(kernel), float(reduced))


# --------------------------------------------------------------------------
# closed paths in curve space


@dataclass(frozen=True, eq=False)
class CurvePath:
    """Closed path of curves sampled at ``t_k = k/m`` for ``k < m``, 1-periodic in ``t``.

    Velocities come from explicit samples when given, otherwise from the
    Fourier derivative in ``t`` of matched marker positions
    (``method="centered"`` uses second-order centered differences).
    """

    curves: tuple
    velocities: tuple | None = None
    method: str = "spectral"

    def __post_init__(self):
        curves = tuple(self.curves)
        if len(curves) < 4:
            raise ValueError("a path needs at least four time samples")
        n = curves[0].n
        if any(c.n != n for c in curves):
            raise ValueError("all curves on a path must share the node count")
        if self.method not in ("spectral", "centered"):
            raise ValueError(f"unknown velocity method {self.method!r}")
        object.__setattr__(self, "curves", curves)
        if self.velocities is not None:
            vel = tuple(np.asarray(v, dtype=float) for v in self.velocities)
            if len(vel) != len(curves) or any(v.shape != (n, 2) for v in vel):
                raise ValueError("velocities must match the curves one to one")
            object.__setattr__(self, "velocities", vel)

    @property
    def m(self) -> int:
        return len(self.curves)

    @property
    def n(self) -> int:
        return self.curves[0].n

    def stacked(self) -> np.ndarray:
        return np.stack([c.points for c in self.curves])

    def velocity_array(self) -> np.ndarray:
        if self.velocities is not None:
            return np.stack(self.velocities)
        x = self.stacked()
        if self.method == "centered":
            return (np.roll(x, -1, axis=0) - np.roll(x, 1, axis=0)) * (self.m / 2.0)
        return 2.0 * np.pi * _spectral.derivative(x, 1)

    def reversed(self) -> CurvePath:
        """Same loop traversed backwards: ``t -> 1 - t``."""
        order = [0] + list(range(self.m - 1, 0, -1))
        curves = tuple(self.curves[k] for k in order)
        vel = None
        if self.velocities is not None:
            vel = tuple(-self.velocities[k] for k in order)
        return CurvePath(curves, vel, self.method)

    def coarsened(self) -> CurvePath:
        """Every other time sample (``m`` must be even)."""
        if self.m % 2:
            raise ValueError("coarsening needs an even number of samples")
        vel = None if self.velocities is None else self.velocities[::2]
        return CurvePath(self.curves[::2], vel, self.method)

    @classmethod
    def from_frames(cls, frames, *, endpoint: bool = False, resample: bool = True,
                    align: bool = True, method: str = "spectral", tol: float = 1e-8) -> CurvePath:
        """Build a path from curve frames.

        With ``endpoint=True`` the last frame must repeat the first (within
        ``tol`` relative to the curve size) and is dropped.  Frames are
        resampled to constant speed and, when ``align`` is set, rolled by
        whole nodes to minimize the L2 displacement from their predecessor.
        """
        frames = list(frames)
        if endpoint:
            first, last = frames[0], frames[-1]
            if first.n != last.n:
                raise ValueError("path is not closed: end frames differ in size")
            gap = np.max(np.abs(first.points - last.points))
            if gap > tol * np.max(np.abs(first.points)):
                raise ValueError(f"path is not closed: end frames differ by {gap:.3e}")
            frames = frames[:-1]
        if resample:
            frames = [reparametrize_constant_speed(c) for c in frames]
        if align:
            frames = _align_phases(frames)
        return cls(tuple(frames), None, method)


def _best_roll(ref: np.ndarray, pts: np.ndarray) -> int:
    # circular cross-correlation through the FFT
    corr = np.fft.irfft(np.conj(np.fft.rfft(ref, axis=0)) * np.fft.rfft(pts, axis=0),
                        n=len(ref), axis=0).sum(axis=1)
    return int(np.argmax(corr))


def _align_phases(frames):
    out = [frames[0]]
    for c in frames[1:]:
        if c.n != out[-1].n:
            raise ValueError("all frames must share the node count")
        k = _best_roll(out[-1].points, c.points)
        out.append(c.roll(k) if k else c)
    total = _best_roll(out[-1].points, out[0].points)
    if total:
        raise ValueError("phase alignment does not close around the loop")
    return out


# --------------------------------------------------------------------------
# loop integrals


@dataclass(frozen=True)
class LoopResult:
    """Loop integral with its parts and a time-discretization error bar.

    ``terms`` maps sub-term names to their time integrals; ``error_estimate``
    is ``|I_m - I_{m/2}|`` plus a rounding floor.
    """

    value: float
    error_estimate: float
    terms: dict
    m: int

    def as_row(self):
        return [self.m, self.value, self.error_estimate]


def _rounding_floor(samples: np.ndarray, n: int) -> float:
    m = len(samples)
    scale = np.mean(np.sum(np.abs(samples), axis=1))
    return float(16.0 * np.sqrt(n * m) * np.finfo(float).eps * scale)


def _check_speed(path: CurvePath, tol: float):
    worst = max(speed_cv(c) for c in path.curves)
    if worst > tol:
        raise ValueError(f"path curves are not constant speed (speed CV {worst:.2e})")


def _sv_samples(path: CurvePath, speed_tol: float) -> np.ndarray:
    vel = path.velocity_array()
    rows = []
    for c, v in zip(path.curves, vel):
        pv, u = coherent_projection(c, v, speed_tol=speed_tol)
        h = curvature_vector(c)
        _, sigma = modified_mcf_field(c, speed_tol=speed_tol)
        l = perimeter(c)
        hv = np.einsum("ij,ij->i", h, pv)
        grad = arclength_derivative(c, sigma) * arclength_derivative(c, u)
        # normalized measure: grid means equal curve averages at constant speed
        rows.append((np.mean(hv), np.mean(grad), -np.mean(sigma * hv), l))
    return np.array(rows)


def _mm_samples(path: CurvePath) -> np.ndarray:
    vel = path.velocity_array()
    rows = []
    for c, v in zip(path.curves, vel):
        vn = normal_part(c, v)
        h = curvature_vector(c)
        hv = np.einsum("ij,ij->i", h, vn)
        ds = speed(c) * (2.0 * np.pi / c.n)
        rows.append((np.sum(hv * ds), np.sum(np.sum(h * h, axis=1) * hv * ds)))
    return np.array(rows)


def loop_integral_sv(path: CurvePath, speed_tol: float = SPEED_TOL) -> LoopResult:
    """``int_0^1 avg(H.V + d_s Sigma d_s U) dt`` around a closed coherent path.

    The velocity is projected onto the coherent space first.  ``terms``
    holds ``hv`` (telescopes to the change of log perimeter, so zero),
    ``grad`` (the remainder, equal to the value up to ``hv``) and ``goal2``,
    the reduced form ``-int avg(Sigma H.V) dt``, which equals ``grad``.
    """
    _check_speed(path, max(speed_tol, 1e-6))

    def run(p):
        s = _sv_samples(p, speed_tol)
        return s, float(np.mean(s[:, 0] + s[:, 1]))

    samples, value = run(path)
    err = _rounding_floor(samples[:, :3], path.n)
    if path.m % 2 == 0 and path.m >= 8:
        _, coarse = run(path.coarsened())
        err += abs(value - coarse)
    terms = {"hv": float(np.mean(samples[:, 0])), "grad": float(np.mean(samples[:, 1])),
             "goal2": float(np.mean(samples[:, 2]))}
    return LoopResult(value, err, terms, path.m)


def loop_integral_mm(path: CurvePath) -> LoopResult:
    """``int_0^1 int (1 + |H|^2) H.V_perp ds dt`` around a closed path.

    ``terms["hv"]`` is the perimeter part ``int int H.V ds dt``; ``terms["h3v"]``
    is the rest.
    """

    def run(p):
        s = _mm_samples(p)
        return s, float(np.mean(s[:, 0] + s[:, 1]))

    samples, value = run(path)
    err = _rounding_floor(samples, path.n)
    if path.m % 2 == 0 and path.m >= 8:
        _, coarse = run(path.coarsened())
        err += abs(value - coarse)
    terms = {"hv": float(np.mean(samples[:, 0])), "h3v": float(np.mean(samples[:, 1]))}
    return LoopResult(value, err, terms, path.m)
