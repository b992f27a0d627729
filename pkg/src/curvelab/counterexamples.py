"""Mollified polygons and their corner asymptotics.

Each convex corner of opening angle ``alpha`` is rewritten, in a frame whose
``y`` axis is the interior bisector, as the graph of ``cot(alpha/2)|x|`` on
``[-eps, eps]``.  The graph is replaced by ``u`` with ``u'' = phi``, where
``phi`` is an even bump equal to a constant ``K`` on ``|x| < eps - delta``
with ``exp(-1/t)`` smoothstep shoulders of width ``delta``.  The bump mass is
exactly ``2 cot(alpha/2)``, so ``u`` meets the straight edges with matching
value and slope, and the glued curve is smooth.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from numpy.polynomial import Chebyshev
from scipy.integrate import quad

from .geometry import ClosedCurve

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(24)


def _transition(t):
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    pos = t > 0
    out[pos] = np.exp(-1.0 / t[pos])
    return out


def smoothstep(t):
    """C-infinity step from 0 at ``t <= 0`` to 1 at ``t >= 1``."""
    t = np.clip(np.asarray(t, dtype=float), 0.0, 1.0)
    a = _transition(t)
    b = _transition(1.0 - t)
    return a / (a + b)


@lru_cache(maxsize=1)
def _smoothstep_integrals():
    # degree 100 reproduces the smoothstep to ~1e-13 on [0, 1]
    cheb = Chebyshev.interpolate(smoothstep, 100, domain=[0.0, 1.0])
    first = cheb.integ(lbnd=0.0)
    second = first.integ(lbnd=0.0)
    return first, second, float(second(1.0))


def _check_corner(eps, alpha, margin):
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    if not 0.0 < alpha < np.pi:
        raise ValueError(f"opening angle must lie in (0, pi), got {alpha}")
    if not 0.0 < margin < eps:
        raise ValueError(f"shoulder width must lie in (0, eps), got {margin}")


@dataclass(frozen=True)
class MollifiedCorner:
    """Graph ``u`` replacing ``cot(alpha/2)|x|`` on ``[-eps, eps]``.

    Calling the object evaluates ``u``; ``slope`` is ``u'`` and ``phi`` is
    ``u''``.  ``margin`` is the shoulder width (``eps**2`` by default).
    """

    eps: float
    alpha: float
    margin: float | None = None
    cot: float = field(init=False)
    plateau: float = field(init=False)
    height: float = field(init=False)
    base: float = field(init=False)

    def __post_init__(self):
        margin = self.eps**2 if self.margin is None else float(self.margin)
        _check_corner(self.eps, self.alpha, margin)
        cot = 1.0 / np.tan(self.alpha / 2.0)
        height = 2.0 * cot / (2.0 * self.eps - margin)
        plateau = self.eps - margin
        _, _, i2_one = _smoothstep_integrals()
        rise = height * plateau**2 / 2 + cot * margin - height * margin**2 * i2_one
        object.__setattr__(self, "margin", margin)
        object.__setattr__(self, "cot", cot)
        object.__setattr__(self, "height", height)
        object.__setattr__(self, "plateau", plateau)
        object.__setattr__(self, "base", cot * self.eps - rise)

    @property
    def K(self) -> float:
        return self.height

    def _t(self, y):
        return np.clip((self.eps - y) / self.margin, 0.0, 1.0)

    def phi(self, x):
        y = np.abs(np.asarray(x, dtype=float))
        out = np.where(y <= self.plateau, self.height,
                       self.height * smoothstep(self._t(y)))
        return np.where(y >= self.eps, 0.0, out)

    def slope(self, x):
        x = np.asarray(x, dtype=float)
        y = np.minimum(np.abs(x), self.eps)
        first, _, _ = _smoothstep_integrals()
        shoulder = (self.height * self.plateau
                    + self.height * self.margin * (0.5 - first(self._t(y))))
        g = np.where(y <= self.plateau, self.height * y, shoulder)
        g = np.where(np.abs(x) >= self.eps, self.cot, g)
        return np.sign(x) * g

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        y = np.minimum(np.abs(x), self.eps)
        _, second, i2_one = _smoothstep_integrals()
        k, a, d = self.height, self.plateau, self.margin
        inner = self.base + k * y**2 / 2
        outer = (self.base + k * a**2 / 2 + self.cot * (y - a)
                 - k * d**2 * (i2_one - second(self._t(y))))
        u = np.where(y <= a, inner, outer)
        # beyond the window the graph is the straight edge itself
        return np.where(np.abs(x) > self.eps, self.cot * np.abs(x), u)

    # arclength measured from x = 0 along x >= 0
    def _half_arclength(self, y):
        y = np.asarray(y, dtype=float)
        k, a = self.height, self.plateau
        yp = np.minimum(y, a)
        kp = k * yp
        s = 0.5 * (yp * np.sqrt(1.0 + kp**2) + np.arcsinh(kp) / k)
        over = y > a
        if np.any(over):
            lo = a
            hi = y[over]
            nodes = lo + (hi - lo)[:, None] * (_GL_NODES[None, :] + 1.0) / 2.0
            g = self.slope(nodes)
            s_sh = ((hi - lo) / 2.0) * (np.sqrt(1.0 + g**2) @ _GL_WEIGHTS)
            s = s.copy()
            s[over] += s_sh
        return s

    @property
    def length(self) -> float:
        return float(2.0 * self._half_arclength(np.array([self.eps]))[0])

    def x_at_arclength(self, sigma):
        """Invert arclength ``sigma`` in ``[0, length]`` measured from ``x = -eps``."""
        sigma = np.asarray(sigma, dtype=float)
        half = self.length / 2.0
        target = np.abs(sigma - half)
        sign = np.where(sigma >= half, 1.0, -1.0)
        table_y = np.linspace(0.0, self.eps, 257)
        table_s = self._half_arclength(table_y)
        y = np.interp(target, table_s, table_y)
        for _ in range(30):
            resid = self._half_arclength(y) - target
            step = resid / np.sqrt(1.0 + self.slope(y) ** 2)
            y = np.clip(y - step, 0.0, self.eps)
            if np.max(np.abs(step), initial=0.0) < 1e-16 * self.eps:
                break
        return sign * y


def bump_phi(eps: float, alpha: float, margin: float | None = None):
    """Even bump on ``[-eps, eps]`` with mass ``2 cot(alpha/2)``."""
    return MollifiedCorner(eps, alpha, margin).phi


def corner_graph(eps: float, alpha: float, margin: float | None = None) -> MollifiedCorner:
    return MollifiedCorner(eps, alpha, margin)


def _corner_quad(corner: MollifiedCorner, integrand) -> float:
    e, a = corner.eps, corner.plateau
    # sign-changing integrands (moments) need an absolute floor
    floor = 1e-15 * abs(quad(lambda x: abs(integrand(x)), -e, e, epsrel=1e-6,
                             points=(-a, a), limit=200)[0])
    total = 0.0
    for lo, hi in ((-e, -a), (-a, a), (a, e)):
        val, _ = quad(integrand, lo, hi, epsabs=floor, epsrel=1e-13, limit=200)
        total += val
    return total


def corner_energy_constant(alpha: float) -> float:
    """``c(alpha) = cot(alpha/2) int_{-cot}^{cot} (1+x^2)^(-5/2) dx`` in closed form."""
    if not 0.0 < alpha < np.pi:
        raise ValueError(f"opening angle must lie in (0, pi), got {alpha}")
    c = 1.0 / np.tan(alpha / 2.0)
    anti = c * (3.0 + 2.0 * c * c) / (3.0 * (1.0 + c * c) ** 1.5)
    return float(c * 2.0 * anti)


def corner_energy_numeric(alpha: float, eps: float, margin: float | None = None) -> float:
    """``int kappa^2 ds`` over one mollified corner, by adaptive quadrature."""
    cr = MollifiedCorner(eps, alpha, margin)
    return _corner_quad(cr, lambda x: cr.phi(x) ** 2 / (1.0 + cr.slope(x) ** 2) ** 2.5)


def corner_cubed_numeric(alpha: float, eps: float, margin: float | None = None,
                         exponent: float = 4.5) -> float:
    """``int (u'')^3 / (1 + (u')^2)^exponent dx`` over one mollified corner.

    The default exponent 9/2 is the displayed integrand; ``kappa^3 ds`` itself
    corresponds to ``exponent = 4``.  Both grow like ``eps**-2``.
    """
    cr = MollifiedCorner(eps, alpha, margin)
    return _corner_quad(cr, lambda x: cr.phi(x) ** 3 / (1.0 + cr.slope(x) ** 2) ** exponent)


def _opening_angles(vertices: np.ndarray) -> np.ndarray:
    prev = np.roll(vertices, 1, axis=0) - vertices
    nxt = np.roll(vertices, -1, axis=0) - vertices
    cosang = np.einsum("ij,ij->i", prev, nxt) / (
        np.linalg.norm(prev, axis=1) * np.linalg.norm(nxt, axis=1))
    return np.arccos(np.clip(cosang, -1.0, 1.0))


@dataclass(frozen=True, eq=False)
class PolygonSpec:
    """Convex counterclockwise polygon with a mollification half-width per corner.

    ``bump_margin`` of ``None`` gives each corner the shoulder width
    ``eps_i**2``; a number ``m`` gives ``m * eps_i``.
    """

    vertices: np.ndarray
    eps: np.ndarray
    bump_margin: float | None = None

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        e = np.broadcast_to(np.asarray(self.eps, dtype=float), (len(v),)).copy()
        if v.ndim != 2 or v.shape[1] != 2 or len(v) < 3:
            raise ValueError("need at least three vertices in the plane")
        x, y = v[:, 0], v[:, 1]
        area = 0.5 * np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y)
        if area <= 0:
            raise ValueError("vertices must be ordered counterclockwise")
        edges = np.roll(v, -1, axis=0) - v
        turn = edges[:, 0] * np.roll(edges, -1, axis=0)[:, 1] - edges[:, 1] * np.roll(edges, -1, axis=0)[:, 0]
        if np.any(turn <= 0):
            raise ValueError("polygon must be strictly convex")
        lengths = np.linalg.norm(edges, axis=1)
        shortest = np.minimum(lengths, np.roll(lengths, 1))
        if np.any(e <= 0) or np.any(e >= shortest / 3.0):
            raise ValueError("each eps must be positive and below a third of its adjacent edges")
        alpha = _opening_angles(v)
        reach = e / np.sin(alpha / 2.0)
        if np.any(reach + np.roll(reach, -1) >= lengths):
            raise ValueError("corner windows overlap along an edge")
        if self.bump_margin is not None and not 0.0 < self.bump_margin < 1.0:
            raise ValueError("bump_margin must lie in (0, 1)")
        v.setflags(write=False)
        e.setflags(write=False)
        object.__setattr__(self, "vertices", v)
        object.__setattr__(self, "eps", e)

    @property
    def angles(self) -> np.ndarray:
        return _opening_angles(self.vertices)

    def margins(self) -> np.ndarray:
        if self.bump_margin is None:
            return self.eps**2
        return self.bump_margin * self.eps

    def corners(self):
        return [MollifiedCorner(float(e), float(a), float(m))
                for e, a, m in zip(self.eps, self.angles, self.margins())]

    def to_dict(self) -> dict:
        return {"vertices": self.vertices.tolist(), "eps": self.eps.tolist(),
                "bump_margin": self.bump_margin}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> PolygonSpec:
        try:
            return cls(data["vertices"], data["eps"], data.get("bump_margin"))
        except KeyError as exc:
            raise ValueError(f"polygon record lacks {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> PolygonSpec:
        return cls.from_dict(json.loads(text))


FIG1_VERTICES = np.array([[-1.0 / 3.0, -np.sqrt(3.0) / 3.0],
                          [2.0 / 3.0, -np.sqrt(3.0) / 3.0],
                          [-1.0 / 3.0, 2.0 * np.sqrt(3.0) / 3.0]])
FIG2_VERTICES = np.array([[0.0, 1.0], [-1.0, 0.0], [1.0, 0.0]])
FIG2_APEX_SCALE = 0.2


def figure1_spec(eps: float) -> PolygonSpec:
    """Right triangle with angles pi/2, pi/3, pi/6 and vertex centroid at 0."""
    return PolygonSpec(FIG1_VERTICES, [eps, eps, eps])


def figure2_spec(eps: float, apex_scale: float = FIG2_APEX_SCALE) -> PolygonSpec:
    """Isosceles right triangle, apex (0, 1) mollified at a fixed scale."""
    return PolygonSpec(FIG2_VERTICES, [apex_scale, eps, eps])


@dataclass(frozen=True)
class _Piece:
    kind: str
    start: float
    length: float
    origin: np.ndarray
    xhat: np.ndarray
    yhat: np.ndarray
    corner: MollifiedCorner | None = None
    offset: float = 0.0   # corner arclength at the piece start


def _frame(spec: PolygonSpec, i: int):
    v = spec.vertices
    k = len(v)
    prev = v[(i - 1) % k] - v[i]
    nxt = v[(i + 1) % k] - v[i]
    e_prev = prev / np.linalg.norm(prev)
    e_next = nxt / np.linalg.norm(nxt)
    bis = e_prev + e_next
    bis /= np.linalg.norm(bis)
    xhat = e_next - np.dot(e_next, bis) * bis
    xhat /= np.linalg.norm(xhat)
    return xhat, bis, e_prev, e_next


def _pieces(spec: PolygonSpec):
    corners = spec.corners()
    k = len(corners)
    frames = [_frame(spec, i) for i in range(k)]
    pieces = []
    pos = 0.0

    def add_corner(i, lo, hi):
        nonlocal pos
        xh, yh, _, _ = frames[i]
        pieces.append(_Piece("corner", pos, hi - lo, spec.vertices[i], xh, yh, corners[i], lo))
        pos += hi - lo

    def add_edge(i):
        nonlocal pos
        j = (i + 1) % k
        _, _, _, e_next = frames[i]
        _, _, e_prev_j, _ = frames[j]
        start = spec.vertices[i] + corners[i].eps / np.sin(corners[i].alpha / 2) * e_next
        stop = spec.vertices[j] + corners[j].eps / np.sin(corners[j].alpha / 2) * e_prev_j
        length = float(np.linalg.norm(stop - start))
        pieces.append(_Piece("edge", pos, length, start, (stop - start) / length, None))
        pos += length

    half0 = corners[0].length / 2
    add_corner(0, half0, corners[0].length)
    add_edge(0)
    for i in range(1, k):
        add_corner(i, 0.0, corners[i].length)
        add_edge(i)
    add_corner(0, 0.0, half0)
    return pieces, pos


def polygon_perimeter(spec: PolygonSpec) -> float:
    return _pieces(spec)[1]


def _resolution_nodes(spec: PolygonSpec, nodes_per_shoulder: int = 8) -> int:
    p = polygon_perimeter(spec)
    need = max(nodes_per_shoulder * p / np.min(spec.margins()),
               32 * p / min(c.length for c in spec.corners()))
    return int(2 ** np.ceil(np.log2(need)))


def resolved_size(spec: PolygonSpec, nodes_per_shoulder: int = 8, cap: int = 2**21) -> int:
    """Power of two putting ``nodes_per_shoulder`` nodes across the narrowest shoulder."""
    return int(min(_resolution_nodes(spec, nodes_per_shoulder), cap))


def mollified_polygon(spec: PolygonSpec, n: int) -> ClosedCurve:
    """Sample the mollified polygon at ``n`` nodes equally spaced in arclength.

    Node 0 sits at the middle of the first corner.  Arclength is exact on
    each piece (closed form on corner plateaus, Gauss-Legendre on shoulders).
    """
    pieces, total = _pieces(spec)
    for c in spec.corners():
        if c.length * n / total < 32:
            raise ValueError(f"n = {n} puts fewer than 32 nodes in a corner window")
    s = total * np.arange(n) / n
    starts = np.array([pc.start for pc in pieces])
    idx = np.searchsorted(starts, s, side="right") - 1
    pts = np.empty((n, 2))
    for j, pc in enumerate(pieces):
        sel = idx == j
        if not np.any(sel):
            continue
        local = s[sel] - pc.start
        if pc.kind == "edge":
            pts[sel] = pc.origin + local[:, None] * pc.xhat
        else:
            x = pc.corner.x_at_arclength(local + pc.offset)
            pts[sel] = (pc.origin + x[:, None] * pc.xhat
                        + pc.corner(x)[:, None] * pc.yhat)
    return ClosedCurve(pts)


def seam_tangent_jumps(spec: PolygonSpec) -> np.ndarray:
    """Tangent-angle mismatch (radians) where each corner graph meets its edges."""
    jumps = []
    for i, cr in enumerate(spec.corners()):
        xh, yh, e_prev, e_next = _frame(spec, i)
        for x, edge_dir in ((cr.eps, e_next), (-cr.eps, -e_prev)):
            t = xh + cr.slope(x) * yh
            t /= np.linalg.norm(t)
            jumps.append(abs(np.arctan2(t[0] * edge_dir[1] - t[1] * edge_dir[0], t @ edge_dir)))
    return np.array(jumps)


def polygon_integrals(spec: PolygonSpec) -> dict:
    """Curve integrals of the mollified polygon by piecewise adaptive quadrature.

    Independent of the sampled representation; edges contribute in closed
    form, corners through their graphs.  Keys: ``perimeter``, ``turning``
    (int kappa ds), ``moment`` (int Phi ds), ``kappa2`` (int kappa^2 ds),
    ``moment_kappa2`` (int Phi kappa^2 ds), ``kappa3_normal``
    (int kappa^3 N ds).
    """
    pieces, total = _pieces(spec)
    out = {"perimeter": total, "turning": 0.0, "moment": np.zeros(2), "kappa2": 0.0,
           "moment_kappa2": np.zeros(2), "kappa3_normal": np.zeros(2)}
    for i, cr in enumerate(spec.corners()):
        xh, yh, _, _ = _frame(spec, i)
        v = spec.vertices[i]

        def geom(x, cr=cr, xh=xh, yh=yh, v=v):
            g = cr.slope(x)
            w = np.sqrt(1.0 + g * g)
            kap = cr.phi(x) / w**3
            pos = v + x * xh + cr(x) * yh
            nrm = (-g * xh + yh) / w
            return pos, kap, w, nrm

        out["turning"] += _corner_quad(cr, lambda x: geom(x)[1] * geom(x)[2])
        out["kappa2"] += _corner_quad(cr, lambda x: geom(x)[1] ** 2 * geom(x)[2])
        for c in range(2):
            out["moment"][c] += _corner_quad(cr, lambda x: geom(x)[0][c] * geom(x)[2])
            out["moment_kappa2"][c] += _corner_quad(
                cr, lambda x: geom(x)[0][c] * geom(x)[1] ** 2 * geom(x)[2])
            out["kappa3_normal"][c] += _corner_quad(
                cr, lambda x: geom(x)[3][c] * geom(x)[1] ** 3 * geom(x)[2])
    for pc in pieces:
        if pc.kind == "edge":
            out["moment"] += (pc.origin + 0.5 * pc.length * pc.xhat) * pc.length
    return out


def sv_translation_limit_terms(spec: PolygonSpec) -> dict:
    """Arclength-form translation criterion from :func:`polygon_integrals`.

    Returns the full value ``int Phi kappa^2 ds - (1/p) int Phi ds int kappa^2 ds``
    and its leading part ``int Phi kappa^2 ds`` separately.
    """
    q = polygon_integrals(spec)
    full = q["moment_kappa2"] - q["moment"] / q["perimeter"] * q["kappa2"]
    return {"value": full, "leading": q["moment_kappa2"], "integrals": q}


# --------------------------------------------------------------------------
# epsilon sweeps

SWEEP_COLUMNS = ("eps", "n", "value_x", "value_y", "eps_times_value", "error_estimate")


def _check_eps_list(eps_list):
    eps = [float(e) for e in eps_list]
    if len(eps) < 2:
        raise ValueError("a sweep needs at least two eps values")
    if any(b >= a for a, b in zip(eps, eps[1:])):
        raise ValueError("eps values must be strictly decreasing")
    return eps


def _map(func, items, jobs):
    if jobs <= 1:
        return [func(x) for x in items]
    from concurrent.futures import ProcessPoolExecutor
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, items))


def _sv_point(args):
    from .criteria import translation_vector
    eps, n, q = args
    spec = figure1_spec(eps)
    n = n or resolved_size(spec, q)
    fine = translation_vector(mollified_polygon(spec, n), form="arclength")
    coarse = translation_vector(mollified_polygon(spec, n // 2), form="arclength")
    return eps, n, fine, float(np.max(np.abs(fine - coarse)))


def _mm_point(args):
    from .criteria import criterion_mm
    eps, n, q, apex = args
    spec = figure2_spec(eps, apex)
    n = n or resolved_size(spec, q)
    fine = criterion_mm(mollified_polygon(spec, n))
    coarse = criterion_mm(mollified_polygon(spec, n // 2))
    return eps, n, fine, float(np.max(np.abs(fine - coarse)))


def sv_contradiction_sweep(eps_list, n: int | None = None, nodes_per_shoulder: int = 8,
                           jobs: int = 1):
    """Arclength-form translation criterion on the first triangle across ``eps``.

    Each row holds both components, ``eps * value_x`` and the change against
    half the node count.  A final row with ``eps = 0`` carries the
    ``a/eps + b`` extrapolations of both components (``eps_times_value`` is
    ``a_x``) and the fit residual as its error column.  The metadata also
    records the leading-order corner sum with and without the centroid term.
    """
    from .records import ExperimentRecord, fit_inverse_eps
    eps = _check_eps_list(eps_list)
    pts = _map(_sv_point, [(e, n, nodes_per_shoulder) for e in eps], jobs)
    rec = ExperimentRecord("sv_contradiction", SWEEP_COLUMNS)
    for e, nn, v, err in pts:
        rec.add(e, nn, v[0], v[1], e * v[0], err)
    fx = fit_inverse_eps(eps, rec.column("value_x"))
    fy = fit_inverse_eps(eps, rec.column("value_y"))
    rec.add(0.0, 0, fx.a, fy.a, fx.a, fx.residual)
    rec.metadata.update(limit_x=fx.a, limit_y=fy.a, residual_x=fx.residual,
                        residual_y=fy.residual, corner_sum_x=float(corner_sum_fig1()[0]),
                        centroid_corrected_x=float(corner_limit_fig1()[0]),
                        centroid_corrected_y=float(corner_limit_fig1()[1]))
    return rec


def mm_divergence_sweep(eps_list, n: int | None = None, nodes_per_shoulder: int = 8,
                        apex_scale: float = FIG2_APEX_SCALE, jobs: int = 1):
    """``criterion_mm`` on the second triangle across ``eps``.

    ``eps_times_value`` is ``eps * value_y``; the final row holds the
    ``a/eps^2 + b`` extrapolation coefficients and ``ratios`` in the metadata
    compare consecutive vertical components.
    """
    from .records import ExperimentRecord, fit_inverse_eps
    eps = _check_eps_list(eps_list)
    pts = _map(_mm_point, [(e, n, nodes_per_shoulder, apex_scale) for e in eps], jobs)
    rec = ExperimentRecord("mm_divergence", SWEEP_COLUMNS)
    for e, nn, v, err in pts:
        rec.add(e, nn, v[0], v[1], e * v[1], err)
    vy = rec.column("value_y")
    fy = fit_inverse_eps(eps, vy, order=2)
    fx = fit_inverse_eps(eps, rec.column("value_x"), order=2)
    rec.add(0.0, 0, fx.a, fy.a, fy.a, fy.residual)
    rec.metadata.update(ratios=(vy[1:] / vy[:-1]).tolist(), coefficient_y=fy.a,
                        residual_y=fy.residual)
    return rec


def corner_sum_fig1() -> np.ndarray:
    """Leading ``1/eps`` coefficient of ``int Phi kappa^2 ds`` on the first triangle.

    Each corner contributes its vertex times ``c(alpha)``.
    """
    v = FIG1_VERTICES
    return sum(v[i] * corner_energy_constant(a) for i, a in enumerate(_opening_angles(v)))


def corner_limit_fig1() -> np.ndarray:
    """Leading ``1/eps`` coefficient of the full translation criterion.

    Subtracting the mean term moves each vertex to the perimeter centroid of
    the triangle, which is not the vertex centroid.
    """
    v = FIG1_VERTICES
    edges = np.roll(v, -1, axis=0) - v
    lengths = np.linalg.norm(edges, axis=1)
    centroid = ((v + 0.5 * edges) * lengths[:, None]).sum(axis=0) / lengths.sum()
    return sum((v[i] - centroid) * corner_energy_constant(a)
               for i, a in enumerate(_opening_angles(v)))
