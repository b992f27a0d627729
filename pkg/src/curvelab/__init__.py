"""Numerical experiments on coherent curve flows and corner counterexamples."""

from .geometry import ClosedCurve, load_curve, make_circle, make_ellipse, save_curve

__all__ = ["ClosedCurve", "load_curve", "make_circle", "make_ellipse", "save_curve"]
__version__ = "0.1.0"
