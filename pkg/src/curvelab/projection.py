"""Projection of velocity fields onto the coherent tangent space.

A field ``V`` on a curve is coherent when its tangential divergence is
constant; flowing a curve along a coherent field keeps the marker density
uniform.  The projection keeps the normal part of ``V`` and replaces its
tangential part by the arclength gradient of a zero-mean potential ``U``
solving ``-Delta U = <V.H> - V.H``.
"""

import numpy as np

from .elliptic import SPEED_TOL, solve_curve_poisson
from .geometry import (ClosedCurve, _check_grid, arclength_derivative, curvature_vector,
                       frames, integrate_over_curve, tangential_divergence)


def ndiv(curve: ClosedCurve, field) -> np.ndarray:
    """Tangential divergence minus its average over the curve."""
    div = tangential_divergence(curve, field)
    return div - integrate_over_curve(curve, div, normalized=True)


def normal_part(curve: ClosedCurve, field) -> np.ndarray:
    v = _check_grid(curve, field)
    _, nrm = frames(curve)
    return np.einsum("ij,ij->i", v, nrm)[:, None] * nrm


def coherent_projection(curve: ClosedCurve, field, speed_tol: float = SPEED_TOL):
    """Return ``(P(V), U)`` for a constant-speed curve.

    ``P(V) = V_perp + (d_s U) T``.
    """
    v = _check_grid(curve, field)
    h = curvature_vector(curve)
    vh = np.einsum("ij,ij->i", v, h)
    # grid mean equals the curve average at constant speed and keeps the
    # problem solvable on slightly non-uniform RK stage curves
    rhs = np.mean(vh) - vh
    rhs -= np.mean(rhs)
    u = solve_curve_poisson(curve, rhs, speed_tol=speed_tol)
    tan, _ = frames(curve)
    pv = normal_part(curve, v) + arclength_derivative(curve, u)[:, None] * tan
    return pv, u


def modified_mcf_field(curve: ClosedCurve, speed_tol: float = SPEED_TOL):
    """Tangentially modified curvature field ``(H + (d_s Sigma) T, Sigma)``.

    ``Sigma`` is the zero-mean solution of ``-Delta Sigma = <|H|^2> - |H|^2``;
    this is the coherent projection of ``H`` itself.
    """
    return coherent_projection(curve, curvature_vector(curve), speed_tol=speed_tol)


def coherent_inner(curve: ClosedCurve, a, b, speed_tol: float = SPEED_TOL) -> float:
    """Metric pairing ``avg(P(A) . P(B))`` over the curve.

    Rigid sliding ``c T`` projects to zero, so fields differing by it pair
    identically.
    """
    pa, _ = coherent_projection(curve, a, speed_tol=speed_tol)
    pb, _ = coherent_projection(curve, b, speed_tol=speed_tol)
    return float(np.mean(np.einsum("ij,ij->i", pa, pb)))
