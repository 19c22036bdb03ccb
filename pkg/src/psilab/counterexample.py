"""The gradient-blowup family on the closed unit sphere.

The sphere is excluded from the curvature-bounded rearrangement inequality
(its total mean curvature 4 sqrt(pi) exceeds the admissible threshold
2 sqrt(pi)), and this module quantifies how badly the inequality fails
there: the planar gradient p-energy of the rearranged field u_lambda grows
like lambda^(2p-2) while the surface energy decays like lambda^(p-2), so
for 1 < p < 2 the quotient outruns any prescribed factor N at a finite
threshold lambda, and for p >= 2 the planar energy is outright divergent.

Both ratio conventions are carried per sweep row: the quotient against the
full right-hand side (surface energy plus the curvature term, which tends
to a constant and therefore dominates the denominator) and the quotient
against the surface gradient energy alone, whose log-log slope in lambda
is p.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .analytic import (
    example51_gradient_integrals,
    example51_surface_lp,
    example51_vertex_field,
    make_sphere,
)
from .errors import DIVERGENT, ConvergenceFailure, is_divergent
from .mesh import p1_gradient_lp

__all__ = [
    "SweepRow",
    "sweep",
    "find_lambda_bar",
    "asymptotic_check",
    "sweep_to_csv",
    "resolve_jobs",
]


@dataclass
class SweepRow:
    """One lambda sample of the blowup sweep.

    ``curvature_term`` is the exact integral of |H|^p u^p with |H| = 2 on
    the unit sphere. ``ratio`` divides the planar energy by the full
    right-hand side; ``gradient_ratio`` divides by the surface energy
    alone. ``mesh_surface`` is the optional discrete cross-check of the
    surface energy; ``flagged`` marks rows where the polar cap is too small
    for the cross-check mesh to resolve.
    """

    lam: float
    p: float
    surface_grad_p: float
    curvature_term: float
    plane_grad_p: object  # float or the Divergent marker
    ratio: float
    gradient_ratio: float
    mesh_surface: float | None = None
    flagged: bool = False


def resolve_jobs(jobs: int | None = None) -> int:
    """Worker count: explicit argument, else the PSILAB_JOBS variable, else 1."""
    if jobs is not None:
        return max(1, jobs)
    env = os.environ.get("PSILAB_JOBS", "")
    try:
        return max(1, int(env))
    except ValueError:
        return 1


def _one_row(lam: float, p: float, mesh=None) -> SweepRow:
    surface, plane = example51_gradient_integrals(lam, p)
    curvature = 2.0**p * example51_surface_lp(lam, p)
    if is_divergent(plane):
        ratio = math.inf
        gradient_ratio = math.inf
    else:
        ratio = plane / (surface + curvature)
        gradient_ratio = plane / surface
    row = SweepRow(
        lam=lam,
        p=p,
        surface_grad_p=surface,
        curvature_term=curvature,
        plane_grad_p=plane,
        ratio=ratio,
        gradient_ratio=gradient_ratio,
    )
    if mesh is not None:
        field = example51_vertex_field(lam, mesh)
        row.mesh_surface = p1_gradient_lp(mesh, field, p)
        deviation = abs(row.mesh_surface - surface) / surface
        # beyond lambda ~ 20 the cap holds too few triangles to trust
        row.flagged = lam > 20.0 or deviation > 0.05
    return row


def sweep(p: float, lam_list, mesh_check: bool = False, subdiv: int = 5, jobs: int | None = None):
    """Closed-form sweep over lambda, optionally cross-checked on an icosphere."""
    if p < 1:
        raise ValueError("p must be >= 1")
    lams = [float(l) for l in lam_list]
    if any(l < 1 for l in lams):
        raise ValueError("lambda values must be >= 1")
    mesh = make_sphere(subdiv) if mesh_check else None
    workers = resolve_jobs(jobs)
    if workers == 1 or len(lams) <= 1:
        return [_one_row(l, p, mesh) for l in lams]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda l: _one_row(l, p, mesh), lams))


def sweep_to_csv(rows) -> str:
    """Plot-friendly CSV: one row per lambda, Divergent spelled out."""
    lines = ["lambda,p,surface_grad_p,curvature_term,plane_grad_p,ratio,gradient_ratio,mesh_surface,flagged"]
    for r in rows:
        plane = "divergent" if is_divergent(r.plane_grad_p) else repr(r.plane_grad_p)
        ratio = "inf" if math.isinf(r.ratio) else repr(r.ratio)
        gratio = "inf" if math.isinf(r.gradient_ratio) else repr(r.gradient_ratio)
        ms = "" if r.mesh_surface is None else repr(r.mesh_surface)
        lines.append(
            f"{r.lam!r},{r.p!r},{r.surface_grad_p!r},{r.curvature_term!r},{plane},{ratio},{gratio},{ms},{int(r.flagged)}"
        )
    return "\n".join(lines) + "\n"


_LAMBDA_CEILING = 1e12


def find_lambda_bar(N: float, p: float) -> float:
    """Smallest lambda (3 significant digits) where the planar energy exceeds
    N times the full right-hand side.

    For p >= 2 the planar energy is divergent for every lambda, so the
    threshold is 1. The search walks a geometric grid (factor 1.1) and
    bisects the first bracket; running past the ceiling reports a failure
    instead of guessing.
    """
    if N <= 0:
        raise ValueError("N must be > 0")
    if p <= 1:
        raise ValueError("p must be > 1")
    if p >= 2:
        return 1.0

    def excess(lam: float) -> float:
        row = _one_row(lam, p)
        return row.plane_grad_p - N * (row.surface_grad_p + row.curvature_term)

    lo = 1.0
    f_lo = excess(lo)
    if f_lo > 0:
        return lo
    hi = lo
    while hi < _LAMBDA_CEILING:
        hi = lo * 1.1
        if excess(hi) > 0:
            break
        lo = hi
    else:
        raise ConvergenceFailure(
            f"no threshold below lambda = {_LAMBDA_CEILING} for N = {N}, p = {p}"
        )
    # bisect to 3 significant digits
    while (hi - lo) > 5e-4 * hi:
        mid = 0.5 * (lo + hi)
        if excess(mid) > 0:
            hi = mid
        else:
            lo = mid
    return hi


def asymptotic_check(p: float, lam: float):
    """Computed-to-asymptote ratios for the two gradient integrals.

    Returns (surface_ratio, plane_ratio, plane_ratio_corrected): the surface
    energy against pi lambda^(p-2), and the planar energy against both
    closures of its leading constant, the printed
    2^(2p - p/2) / (2 - p) form and the 2^(p+1) / (2 - p) form obtained by
    integrating the exact profile. Only the second tends to 1.
    """
    if not 1.0 <= p < 2.0:
        raise ValueError("requires 1 <= p < 2")
    if lam < 1:
        raise ValueError("lambda must be >= 1")
    surface, plane = example51_gradient_integrals(lam, p)
    surface_ratio = surface / (math.pi * lam ** (p - 2.0))
    scale = math.pi * lam ** (2.0 * p - 2.0) / (2.0 - p)
    plane_ratio = plane / (scale * 2.0 ** (2.0 * p - 0.5 * p))
    plane_ratio_corrected = plane / (scale * 2.0 ** (p + 1.0))
    return surface_ratio, plane_ratio, plane_ratio_corrected
