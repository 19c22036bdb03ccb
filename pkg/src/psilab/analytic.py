"""Closed-form oracles: parametric meshes, the sphere gradient-blowup family,
and the extremal radial functions of the sharp inequalities.

Everything here has an exact formula, so these objects calibrate the
discrete pipeline: the mesh generators feed the curvature and gradient
kernels known answers, and the radial functions reproduce equality cases
of the Sobolev-type inequalities under adaptive quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import quad

from .errors import DIVERGENT
from .mesh import TriMesh, VertexField
from .special_fn import unit_ball_volume

__all__ = [
    "RadialFunction",
    "make_sphere",
    "make_disk",
    "make_cap",
    "make_catenoid",
    "make_clifford_torus",
    "make_surface",
    "example51_field",
    "example51_profile",
    "example51_surface_lp",
    "example51_gradient_integrals",
    "gn_extremal",
    "logsobolev_extremal",
    "radial_lp",
    "radial_gradient_lp",
    "radial_entropy",
]


# ---------------------------------------------------------------------------
# parametric surfaces


_ICO_T = (1.0 + math.sqrt(5.0)) / 2.0
_ICO_VERTS = np.array(
    [
        (-1, _ICO_T, 0), (1, _ICO_T, 0), (-1, -_ICO_T, 0), (1, -_ICO_T, 0),
        (0, -1, _ICO_T), (0, 1, _ICO_T), (0, -1, -_ICO_T), (0, 1, -_ICO_T),
        (_ICO_T, 0, -1), (_ICO_T, 0, 1), (-_ICO_T, 0, -1), (-_ICO_T, 0, 1),
    ],
    dtype=float,
)
_ICO_FACES = np.array(
    [
        (0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11),
        (1, 5, 9), (5, 11, 4), (11, 10, 2), (10, 7, 6), (7, 1, 8),
        (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8), (3, 8, 9),
        (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1),
    ],
    dtype=int,
)


def make_sphere(subdiv: int = 3, radius: float = 1.0) -> TriMesh:
    """Icosphere: midpoint-subdivided icosahedron projected to the sphere."""
    if subdiv < 0:
        raise ValueError("subdiv must be >= 0")
    verts = [tuple(v) for v in _ICO_VERTS / np.linalg.norm(_ICO_VERTS[0])]
    faces = [tuple(f) for f in _ICO_FACES]
    for _ in range(subdiv):
        cache: dict[tuple[int, int], int] = {}

        def midpoint(a: int, b: int) -> int:
            key = (a, b) if a < b else (b, a)
            if key not in cache:
                p = 0.5 * (np.asarray(verts[a]) + np.asarray(verts[b]))
                p /= np.linalg.norm(p)
                cache[key] = len(verts)
                verts.append(tuple(p))
            return cache[key]

        nxt = []
        for a, b, c in faces:
            ab, bc, ca = midpoint(a, b), midpoint(b, c), midpoint(c, a)
            nxt.extend([(a, ab, ca), (ab, b, bc), (ca, bc, c), (ab, bc, ca)])
        faces = nxt
    v = np.asarray(verts)
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    return TriMesh(radius * v, np.asarray(faces, dtype=int))


def _polar_grid(rings: int, segments: int | None):
    """Index layout of a pole-centered structured grid: pole + rings of fixed width."""
    if rings < 2:
        raise ValueError("rings must be >= 2")
    if segments is None:
        segments = max(16, 2 * rings)
    tris = []
    # fan around the pole (vertex 0); ring j starts at 1 + (j-1)*segments
    def vid(j, k):
        return 1 + (j - 1) * segments + (k % segments)

    for k in range(segments):
        tris.append((0, vid(1, k), vid(1, k + 1)))
    for j in range(1, rings):
        for k in range(segments):
            a, b = vid(j, k), vid(j, k + 1)
            c, d = vid(j + 1, k), vid(j + 1, k + 1)
            tris.append((a, c, d))
            tris.append((a, d, b))
    return segments, np.asarray(tris, dtype=int)


def make_disk(radius: float = 1.0, rings: int = 16, segments: int | None = None) -> TriMesh:
    """Flat disk in the z = 0 plane, pole-centered polar triangulation."""
    if radius <= 0:
        raise ValueError("radius must be > 0")
    segments, tris = _polar_grid(rings, segments)
    pts = [(0.0, 0.0, 0.0)]
    for j in range(1, rings + 1):
        r = radius * j / rings
        for k in range(segments):
            a = 2.0 * math.pi * k / segments
            pts.append((r * math.cos(a), r * math.sin(a), 0.0))
    return TriMesh(np.asarray(pts), tris)


def make_cap(aperture: float, rings: int = 16, segments: int | None = None) -> TriMesh:
    """Spherical cap of the unit sphere: polar angle up to ``aperture`` radians."""
    if not 0 < aperture < math.pi:
        raise ValueError("aperture must lie in (0, pi)")
    segments, tris = _polar_grid(rings, segments)
    pts = [(0.0, 0.0, 1.0)]
    for j in range(1, rings + 1):
        phi = aperture * j / rings
        for k in range(segments):
            a = 2.0 * math.pi * k / segments
            pts.append((math.sin(phi) * math.cos(a), math.sin(phi) * math.sin(a), math.cos(phi)))
    return TriMesh(np.asarray(pts), tris)


def make_catenoid(t_max: float = 1.0, nt: int = 24, ntheta: int = 48) -> TriMesh:
    """Catenoid band (cosh t cos a, cosh t sin a, t), |t| <= t_max: minimal, with boundary."""
    if t_max <= 0 or nt < 2 or ntheta < 3:
        raise ValueError("need t_max > 0, nt >= 2, ntheta >= 3")
    pts = []
    for i in range(nt + 1):
        t = -t_max + 2.0 * t_max * i / nt
        c = math.cosh(t)
        for k in range(ntheta):
            a = 2.0 * math.pi * k / ntheta
            pts.append((c * math.cos(a), c * math.sin(a), t))
    tris = []
    for i in range(nt):
        for k in range(ntheta):
            a = i * ntheta + k
            b = i * ntheta + (k + 1) % ntheta
            c = (i + 1) * ntheta + k
            d = (i + 1) * ntheta + (k + 1) % ntheta
            tris.append((a, c, d))
            tris.append((a, d, b))
    return TriMesh(np.asarray(pts), np.asarray(tris, dtype=int))


def make_clifford_torus(subdiv: int = 32) -> TriMesh:
    """Clifford torus (cos s, sin s, cos t, sin t)/sqrt(2) in R^4, closed, codimension 2."""
    if subdiv < 3:
        raise ValueError("subdiv must be >= 3")
    n = subdiv
    pts = np.empty((n * n, 4))
    for i in range(n):
        s = 2.0 * math.pi * i / n
        for j in range(n):
            t = 2.0 * math.pi * j / n
            pts[i * n + j] = (math.cos(s), math.sin(s), math.cos(t), math.sin(t))
    pts /= math.sqrt(2.0)
    tris = []
    for i in range(n):
        for j in range(n):
            a = i * n + j
            b = i * n + (j + 1) % n
            c = ((i + 1) % n) * n + j
            d = ((i + 1) % n) * n + (j + 1) % n
            tris.append((a, c, d))
            tris.append((a, d, b))
    return TriMesh(pts, np.asarray(tris, dtype=int))


def make_surface(kind: str, **kwargs) -> TriMesh:
    """Dispatch by name: sphere, disk, cap, catenoid, clifford-torus."""
    table = {
        "sphere": make_sphere,
        "disk": make_disk,
        "cap": make_cap,
        "catenoid": make_catenoid,
        "clifford-torus": make_clifford_torus,
    }
    if kind not in table:
        raise ValueError(f"unknown surface kind {kind!r}; choose from {sorted(table)}")
    return table[kind](**kwargs)


# ---------------------------------------------------------------------------
# the gradient-blowup family on the unit sphere


def example51_field(lam: float, points) -> np.ndarray:
    """Field on the unit sphere: lambda*r on the polar cap r <= 1/lambda
    (upper hemisphere), 1 everywhere else; r is the cylindrical radius."""
    if lam < 1:
        raise ValueError("lambda must be >= 1")
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    r = np.hypot(pts[:, 0], pts[:, 1])
    on_cap = (pts[:, 2] > 0) & (r <= 1.0 / lam)
    out = np.where(on_cap, lam * r, 1.0)
    return out if np.asarray(points).ndim > 1 else float(out[0])


def example51_vertex_field(lam: float, mesh: TriMesh) -> VertexField:
    return VertexField(example51_field(lam, mesh.vertices), mesh=mesh)


def _example51_s0(lam: float) -> float:
    return math.sqrt(2.0 * (1.0 + math.sqrt(max(1.0 - 1.0 / lam**2, 0.0))))


def example51_profile(lam: float) -> "RadialFunction":
    """Exact planar rearrangement profile of the sphere field.

    rho(s) = 1 up to s0 = sqrt(2(1 + sqrt(1 - 1/lambda^2))), then
    lambda*sqrt(1 - (s^2/2 - 1)^2) out to the support radius 2. With
    w = s^2/2 - 1 the derivative magnitude on the outer band is
    lambda*w*s/sqrt(1 - w^2).
    """
    if lam < 1:
        raise ValueError("lambda must be >= 1")
    s0 = _example51_s0(lam)

    def value(s):
        s = np.asarray(s, dtype=float)
        w = 0.5 * s * s - 1.0
        outer = lam * np.sqrt(np.maximum(1.0 - w * w, 0.0))
        return np.where(s <= s0, 1.0, np.where(s < 2.0, outer, 0.0))

    def derivative(s):
        s = np.asarray(s, dtype=float)
        w = 0.5 * s * s - 1.0
        denom = np.sqrt(np.maximum(1.0 - w * w, 1e-300))
        d = -lam * w * s / denom
        return np.where((s > s0) & (s < 2.0), d, 0.0)

    return RadialFunction(value=value, derivative=derivative, n=2, support=2.0)


def example51_surface_lp(lam: float, p: float) -> float:
    """Integral of u_lambda^p over the unit sphere, exact up to 1-d quadrature.

    The field is 1 off the polar cap; on the cap the surface element over
    the projected disk is dx dy / sqrt(1 - r^2).
    """
    if lam < 1 or p < 1:
        raise ValueError("need lambda >= 1 and p >= 1")
    a = 1.0 / lam
    cap_area = 2.0 * math.pi * (1.0 - math.sqrt(1.0 - a * a))
    cap_int, _ = quad(lambda r: lam**p * r ** (p + 1.0) / math.sqrt(1.0 - r * r), 0.0, a)
    return (4.0 * math.pi - cap_area) + 2.0 * math.pi * cap_int


def example51_gradient_integrals(lam: float, p: float):
    """Gradient p-energies of the sphere field and of its planar rearrangement.

    surface: the tangential gradient of lambda*r on the sphere has magnitude
    lambda*cos(phi) (polar angle phi), and integrating its p-th power over
    the cap gives the closed form
    2 pi lambda^p (1 - (1 - 1/lambda^2)^((p+1)/2)) / (p+1), which behaves
    like pi lambda^(p-2) for large lambda.

    plane: 2 pi lambda^p 2^(p/2) * integral of w^p (1-w)^(-p/2) dw over
    (sqrt(1 - 1/lambda^2), 1), evaluated after the substitution w = 1 - y^2
    which removes the endpoint singularity. The integrand behaves like
    (2 - s)^(-p/2) at the support radius, so the integral is classified
    divergent exactly when p >= 2, by the exponent test rather than by
    quadrature overflow.
    """
    if lam < 1 or p < 1:
        raise ValueError("need lambda >= 1 and p >= 1")
    surface = (
        2.0 * math.pi * lam**p * (1.0 - (1.0 - 1.0 / lam**2) ** (0.5 * (p + 1.0))) / (p + 1.0)
    )
    if p >= 2.0:
        return surface, DIVERGENT
    w0 = math.sqrt(1.0 - 1.0 / lam**2)
    y0 = math.sqrt(1.0 - w0)

    def integrand(y):
        w = 1.0 - y * y
        return 2.0 * w**p * y ** (1.0 - p)

    core, _ = quad(integrand, 0.0, y0)
    plane = 2.0 * math.pi * lam**p * 2.0 ** (0.5 * p) * core
    return surface, plane


# ---------------------------------------------------------------------------
# radial functions and their integrals


@dataclass
class RadialFunction:
    """Radial function r -> value with a closed-form derivative.

    ``support`` may be math.inf; ``log_value``, when supplied, evaluates
    log(value) stably for entropy integrands whose plain value underflows.
    """

    value: Callable
    derivative: Callable
    n: int
    support: float = math.inf
    log_value: Callable | None = None

    def __call__(self, r):
        return self.value(r)


def _sphere_area_factor(n: int) -> float:
    return n * unit_ball_volume(n)


_QUAD_OPTS = dict(epsabs=0.0, epsrel=1e-10, limit=400)


def _radial_quad(fn, n: int, support: float) -> float:
    """Adaptive quadrature of fn(r) * n omega_n r^(n-1) dr over the support."""
    area = _sphere_area_factor(n)

    def g(r):
        return fn(r) * area * r ** (n - 1)

    if math.isinf(support):
        total, _ = quad(g, 0.0, math.inf, **_QUAD_OPTS)
    else:
        total, _ = quad(g, 0.0, support, **_QUAD_OPTS)
    return total


def radial_lp(rf: RadialFunction, p: float) -> float:
    """L^p norm of a radial function on R^n."""
    if p < 1:
        raise ValueError("p must be >= 1")
    return _radial_quad(lambda r: float(rf.value(r)) ** p, rf.n, rf.support) ** (1.0 / p)


def radial_gradient_lp(rf: RadialFunction, p: float) -> float:
    """Integral of |rho'|^p over R^n (not a norm)."""
    if p < 1:
        raise ValueError("p must be >= 1")
    return _radial_quad(lambda r: abs(float(rf.derivative(r))) ** p, rf.n, rf.support)


def radial_entropy(rf: RadialFunction, p: float) -> float:
    """Integral of u^p ln(u^p) over R^n.

    Where the function supplies log_value the integrand is evaluated as
    p * exp(p*L) * L, which stays finite long after u^p itself underflows.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    if rf.log_value is not None:

        def fn(r):
            L = float(rf.log_value(r))
            ep = p * L
            return p * math.exp(ep) * L if ep > -700.0 else 0.0

    else:

        def fn(r):
            v = float(rf.value(r))
            if v <= 0.0:
                return 0.0
            return p * v**p * math.log(v)

    return _radial_quad(fn, rf.n, rf.support)


def gn_extremal(n: int, p: float, q: float, a: float = 1.0, b: float = 1.0) -> RadialFunction:
    """Extremal of the sharp Gagliardo-Nirenberg inequality on R^n:
    a * (1 + b r^(p/(p-1)))^(-(p-1)/(q-p))."""
    if not (1.0 < p < n and p < q):
        raise ValueError("need 1 < p < n and q > p")
    if a <= 0 or b <= 0:
        raise ValueError("need a > 0 and b > 0")
    pp = p / (p - 1.0)
    ex = (p - 1.0) / (q - p)

    def value(r):
        r = np.asarray(r, dtype=float)
        return a * (1.0 + b * r**pp) ** (-ex)

    def derivative(r):
        r = np.asarray(r, dtype=float)
        return -a * ex * b * pp * r ** (pp - 1.0) * (1.0 + b * r**pp) ** (-ex - 1.0)

    return RadialFunction(value=value, derivative=derivative, n=n, support=math.inf)


def logsobolev_extremal(n: int, p: float, s: float) -> RadialFunction:
    """Extremal family of the sharp log-Sobolev inequality:
    C * exp(-(1/s) r^(p/(p-1))), normalized so the L^p norm is 1.

    The decaying (negative) exponent is used; the growing variant is not
    integrable and admits no normalizing constant.
    """
    if not 1.0 < p < n:
        raise ValueError("need 1 < p < n")
    if s <= 0:
        raise ValueError("need s > 0")
    pp = p / (p - 1.0)
    area = _sphere_area_factor(n)
    # integral of exp(-(p/s) r^pp) * area * r^(n-1) dr, closed form via Gamma
    # substitution t = (p/s) r^pp gives (area/pp) * (s/p)^(n/pp) * Gamma(n/pp)
    from .special_fn import gamma as _gamma

    raw = (area / pp) * (s / p) ** (n / pp) * _gamma(n / pp)
    C = raw ** (-1.0 / p)
    logC = math.log(C)

    def value(r):
        r = np.asarray(r, dtype=float)
        return C * np.exp(-(r**pp) / s)

    def derivative(r):
        r = np.asarray(r, dtype=float)
        return -C * (pp / s) * r ** (pp - 1.0) * np.exp(-(r**pp) / s)

    def log_value(r):
        r = np.asarray(r, dtype=float)
        return logC - r**pp / s

    return RadialFunction(value=value, derivative=derivative, n=n, support=math.inf, log_value=log_value)
