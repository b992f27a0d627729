"""Command-line harness: ``curvelab {flow,criterion,counterexample,loop}``.

Exit status is 0 on success, 2 on bad input and 3 when a computation aborts
for numerical reasons.  Tables go to ``--out`` or standard output as CSV
with ``%.12e`` floats.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import criteria, loops
from .counterexamples import (PolygonSpec, figure1_spec, figure2_spec, mm_divergence_sweep,
                              mollified_polygon, resolved_size, sv_contradiction_sweep)
from .flows import FlowKind, NumericalAbort, evolve
from .geometry import ClosedCurve, curve_from_function, make_circle, make_ellipse, save_curve
from .records import ExperimentRecord

EXIT_USAGE = 2
EXIT_ABORT = 3


class UsageError(Exception):
    pass


def _float_list(text: str):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise UsageError(f"not a comma-separated list of numbers: {text!r}") from exc


def _perturb(curve: ClosedCurve, amplitude: float, seed: int) -> ClosedCurve:
    """Random smooth radial perturbation with modes 2..6."""
    if amplitude == 0:
        return curve
    rng = np.random.default_rng(seed)
    coef = rng.normal(size=(5, 2)) * amplitude / np.arange(2, 7)[:, None]
    th = curve.theta
    modes = np.arange(2, 7)[:, None] * th[None, :]
    bump = coef[:, 0] @ np.cos(modes) + coef[:, 1] @ np.sin(modes)
    center = curve.points.mean(axis=0)
    return ClosedCurve(center + (curve.points - center) * (1.0 + bump)[:, None])


def _load_input(path: str, n: int | None) -> ClosedCurve:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    if "vertices" in data:
        spec = PolygonSpec.from_dict(data)
        return mollified_polygon(spec, n or resolved_size(spec))
    curve = ClosedCurve.from_dict(data)
    if n and n != curve.n:
        raise UsageError(f"--n {n} does not match the {curve.n} nodes in {path}")
    return curve


def _curve_from_args(args) -> ClosedCurve:
    if args.input:
        curve = _load_input(args.input, args.n)
    elif args.shape == "circle":
        curve = make_circle(args.r, n=args.n or 128)
    elif args.shape == "ellipse":
        curve = make_ellipse(args.a, args.b, n=args.n or 128)
    elif args.shape in ("fig1", "fig2"):
        spec = figure1_spec(args.eps) if args.shape == "fig1" else figure2_spec(args.eps)
        curve = mollified_polygon(spec, args.n or resolved_size(spec))
    elif args.shape == "limacon":
        curve = curve_from_function(
            lambda t: np.column_stack([(1 + 0.3 * np.cos(t)) * np.cos(t),
                                       (1 + 0.3 * np.cos(t)) * np.sin(t)]), args.n or 128)
    else:
        raise UsageError(f"unknown shape {args.shape!r}")
    return _perturb(curve, args.perturb, args.seed)


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_flow(args) -> int:
    curve = _curve_from_args(args)
    traj = evolve(curve, FlowKind.parse(args.kind), args.t_end, args.dt,
                  reparam_every=args.reparam_every, cfl=args.cfl,
                  record_every=args.record_every)
    buf = io.StringIO()
    traj.to_csv(buf)
    _write(buf.getvalue(), args.out)
    if args.snapshots:
        folder = Path(args.snapshots)
        folder.mkdir(parents=True, exist_ok=True)
        for k, c in enumerate(traj.curves):
            save_curve(c, folder / f"snapshot_{k:05d}.json")
    return 0


def cmd_criterion(args) -> int:
    curve = _curve_from_args(args)
    which = args.which
    if which == "sv":
        rec = ExperimentRecord("criterion_sv", ("n", "value"))
        rec.add(curve.n, criteria.criterion_sv(curve))
    elif which == "sv-translation":
        u = np.array(_float_list(args.u))
        if u.shape != (2,) or not np.any(u):
            raise UsageError("--u needs two numbers, not both zero")
        u = u / np.linalg.norm(u)
        rec = ExperimentRecord("criterion_sv_translation", ("n", "u_x", "u_y", "value"))
        rec.add(curve.n, u[0], u[1], criteria.criterion_sv_translation(curve, u, form=args.form))
    elif which == "mm":
        v = criteria.criterion_mm(curve)
        rec = ExperimentRecord("criterion_mm", ("n", "value_x", "value_y"))
        rec.add(curve.n, v[0], v[1])
    else:
        from .geometry import perimeter
        q = criteria.quantity_q(curve.scaled(1.0 / perimeter(curve)))
        rec = ExperimentRecord("quantity_q", ("n", "kernel", "reduced"))
        rec.add(curve.n, q.kernel, q.reduced)
    _write(rec.to_csv(), args.out)
    return 0


def cmd_counterexample(args) -> int:
    eps = _float_list(args.eps_list)
    if args.figure == 1:
        rec = sv_contradiction_sweep(eps, n=args.n, nodes_per_shoulder=args.nodes_per_shoulder,
                                     jobs=args.jobs)
    else:
        rec = mm_divergence_sweep(eps, n=args.n, nodes_per_shoulder=args.nodes_per_shoulder,
                                  apex_scale=args.apex_scale, jobs=args.jobs)
    _write(rec.to_csv(), args.out)
    if args.metadata:
        Path(args.metadata).write_text(rec.to_json())
    return 0


_DEFAULT_INTEGRALS = {"circle-scale": ("sv", "mm"), "shape-scale": ("sv", "mm"),
                      "mixed-sv": ("sv",), "mixed-mm": ("mm",),
                      "ellipse-retrace": ("sv", "mm")}


def cmd_loop(args) -> int:
    path = loops.build(args.recipe, m=args.m, n=args.n, eps=args.eps, schedule=args.schedule)
    which = _DEFAULT_INTEGRALS[args.recipe] if args.integral == "auto" else (args.integral,)
    rec = ExperimentRecord("loop", ("integral", "m", "n", "value", "error_estimate", "hv_term"))
    for name in which:
        res = criteria.loop_integral_sv(path) if name == "sv" else criteria.loop_integral_mm(path)
        rec.add(name, path.m, path.n, res.value, res.error_estimate, res.terms["hv"])
        print(f"{name}: {res.value:.12e} +/- {res.error_estimate:.3e}", file=sys.stderr)
    _write(rec.to_csv(), args.out)
    return 0


def _positive(kind):
    def parse(text):
        try:
            value = kind(text)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from exc
        if value <= 0:
            raise argparse.ArgumentTypeError(f"expected a positive value, got {text}")
        return value
    return parse


def _add_common(p):
    p.add_argument("--seed", type=int, default=12345, help="seed for random perturbations")
    p.add_argument("--out", help="output file (default: standard output)")


def _add_curve_source(p, shapes):
    p.add_argument("--shape", choices=shapes, default="circle")
    p.add_argument("--input", help="curve JSON or polygon JSON")
    p.add_argument("--n", type=_positive(int), help="node count")
    p.add_argument("--r", type=_positive(float), default=1.0, help="circle radius")
    p.add_argument("--a", type=_positive(float), default=2.0, help="ellipse semi-axis along x")
    p.add_argument("--b", type=_positive(float), default=1.0, help="ellipse semi-axis along y")
    p.add_argument("--eps", type=_positive(float), default=0.04, help="corner scale for fig1/fig2")
    p.add_argument("--perturb", type=float, default=0.0,
                   help="amplitude of a random smooth radial perturbation")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="curvelab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("flow", help="evolve a curve under MCF, modified MCF or UCMCF")
    _add_common(p)
    _add_curve_source(p, ["circle", "ellipse", "limacon"])
    p.add_argument("--kind", choices=[k.value for k in FlowKind], default="mcf")
    p.add_argument("--dt", type=_positive(float), required=True)
    p.add_argument("--t-end", type=_positive(float), required=True)
    p.add_argument("--reparam-every", type=int, default=10, help="0 disables resampling")
    p.add_argument("--cfl", type=_positive(float), default=0.2)
    p.add_argument("--record-every", type=_positive(int), default=100,
                   help="keep every k-th curve for snapshots")
    p.add_argument("--snapshots", help="directory for curve JSON snapshots")
    p.set_defaults(func=cmd_flow)

    p = sub.add_parser("criterion", help="evaluate a pointwise criterion on one curve")
    _add_common(p)
    _add_curve_source(p, ["circle", "ellipse", "limacon", "fig1", "fig2"])
    p.add_argument("--which", choices=["sv", "sv-translation", "mm", "q"], default="sv")
    p.add_argument("--u", default="1,0", help="translation direction for sv-translation")
    p.add_argument("--form", choices=["theta", "arclength"], default="theta")
    p.set_defaults(func=cmd_criterion)

    p = sub.add_parser("counterexample", help="eps sweep on a mollified triangle")
    _add_common(p)
    p.add_argument("--figure", type=int, choices=[1, 2], required=True)
    p.add_argument("--eps-list", required=True, help="decreasing comma-separated eps values")
    p.add_argument("--n", type=_positive(int), help="fixed node count (default: resolve shoulders)")
    p.add_argument("--nodes-per-shoulder", type=_positive(int), default=8)
    p.add_argument("--apex-scale", type=_positive(float), default=0.2)
    p.add_argument("--jobs", type=_positive(int), default=1)
    p.add_argument("--metadata", help="write the sweep record with fit metadata as JSON")
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("loop", help="loop integral over a closed path of curves")
    _add_common(p)
    p.add_argument("--recipe", choices=list(loops.RECIPES), required=True)
    p.add_argument("--m", type=_positive(int), default=200, help="time samples (even)")
    p.add_argument("--n", type=_positive(int), help="node count")
    p.add_argument("--eps", type=_positive(float), default=0.05)
    p.add_argument("--schedule", choices=["smooth", "legs"], default="smooth")
    p.add_argument("--integral", choices=["auto", "sv", "mm"], default="auto")
    p.set_defaults(func=cmd_loop)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NumericalAbort as exc:
        print(f"numerical abort: {exc}", file=sys.stderr)
        return EXIT_ABORT
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
