"""Zero-mean periodic Poisson problems ``-u'' = f`` on [0, 2*pi].

Two independent solvers are provided: diagonal inversion in Fourier space and
quadrature against the closed-form Green's kernel.  They are meant to check
each other.
"""

import numpy as np

from . import _spectral
from .geometry import ClosedCurve, perimeter, speed

MEAN_TOL = 1e-10
SPEED_TOL = 1e-6


def green_eval(theta, xi):
    """Green's kernel of ``-d^2/dtheta^2`` on the circle.

    ``G = (xi - theta)^2 / (4 pi) + min(xi, theta) - (xi + theta)/2 + pi/3``
    for arguments in ``[0, 2 pi]``; broadcasts over arrays.  Its average over
    either argument is the constant ``pi/6``, which is invisible on
    zero-mean data.
    """
    theta = np.asarray(theta, dtype=float)
    xi = np.asarray(xi, dtype=float)
    two_pi = 2.0 * np.pi
    if np.any((theta < 0) | (theta > two_pi)) or np.any((xi < 0) | (xi > two_pi)):
        raise ValueError("Green's kernel arguments must lie in [0, 2*pi]")
    return ((xi - theta) ** 2 / (4.0 * np.pi) + np.minimum(xi, theta)
            - 0.5 * (xi + theta) + np.pi / 3.0)


def green_matrix(n: int) -> np.ndarray:
    th = _spectral.grid(n)
    return green_eval(th[:, None], th[None, :])


def _check_mean(rhs):
    f = np.asarray(rhs, dtype=float)
    scale = np.max(np.abs(f)) if f.size else 0.0
    mean = np.mean(f)
    if abs(mean) > MEAN_TOL * scale:
        raise ValueError(
            f"right-hand side has mean {mean:.3e}; the periodic problem requires zero mean")
    return f


def solve_poisson_spectral(rhs) -> np.ndarray:
    """Zero-mean ``u`` with ``-u'' = rhs`` by Fourier diagonalization."""
    f = _check_mean(rhs)
    n = f.shape[0]
    k = _spectral.wavenumbers(n)
    spec = np.fft.rfft(f)
    spec[0] = 0.0
    spec[1:] /= k[1:] ** 2
    return np.fft.irfft(spec, n=n)


def solve_poisson_kernel(rhs, corrected: bool = True) -> np.ndarray:
    """Zero-mean ``u`` with ``-u'' = rhs`` by Green's-kernel quadrature.

    The kernel's first derivative jumps by -1 on the diagonal, which sits on
    a grid node.  The plain trapezoidal rule is then second order; the
    Euler-Maclaurin kink correction ``-h^2 f / 12`` lifts it to fourth.
    """
    f = _check_mean(rhs)
    n = f.shape[0]
    h = 2.0 * np.pi / n
    u = green_matrix(n) @ f * h
    if corrected:
        u -= h * h / 12.0 * f
    return u


def check_constant_speed(curve: ClosedCurve, tol: float = SPEED_TOL) -> None:
    sp = speed(curve)
    cv = np.std(sp) / np.mean(sp)
    if cv > tol:
        raise ValueError(
            f"curve is not constant speed (speed CV {cv:.2e} > {tol:.0e}); "
            "reparametrize it first")


def laplace_beltrami_scale(curve: ClosedCurve) -> float:
    """Factor ``(2 pi / l)^2`` with ``Delta_Gamma = factor * d_theta^2``."""
    return (2.0 * np.pi / perimeter(curve)) ** 2


def solve_curve_poisson(curve: ClosedCurve, rhs, speed_tol: float = SPEED_TOL) -> np.ndarray:
    """Zero-mean ``U`` with ``-Delta_Gamma U = rhs`` on a constant-speed curve."""
    check_constant_speed(curve, speed_tol)
    f = np.asarray(rhs, dtype=float)
    if f.shape != (curve.n,):
        raise ValueError(f"rhs has shape {f.shape}, curve has {curve.n} nodes")
    return solve_poisson_spectral(f) / laplace_beltrami_scale(curve)
