"""Command-line surface.

Five subcommands: ``constants`` prints the closed-form constants table,
``curvature`` reports discrete curvature of an OFF/nOFF mesh, ``rearrange``
converts weighted samples or a mesh field into a radial profile, ``verify``
runs one inequality check, and ``counterexample`` sweeps the sphere blowup
family. Exit code 0 means success with every check passing, 1 means at
least one verification failed, and 2 means a usage or domain error.

The defaults prefer the corrected readings of the misprint-suspect
constants and the trace convention for the sphere's total curvature; the
literal printed variants are echoed alongside in every constants table so
nothing is hidden.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import constants as const
from .analytic import make_surface
from .counterexample import find_lambda_bar, resolve_jobs, sweep, sweep_to_csv
from .errors import DIVERGENT, is_divergent
from .measure_space import (
    DiscreteMeasuredFunction,
    Interpolation,
    lebesgue,
    model_space,
    rearrange,
)
from .mesh import TriMesh, VertexField, load_mesh, mean_curvature, sample_field
from .verify import (
    monotone_preset,
    reports_to_csv,
    verify_gn,
    verify_isoperimetric,
    verify_log_sobolev,
    verify_michael_simon_p1,
    verify_model_space_ps,
    verify_monotonicity_principle,
    verify_p_sobolev,
    verify_polya_szego,
    verify_spectral_gap,
)

__all__ = ["main", "dispatch"]


def _parse_iso(text: str):
    if text == "michael-simon":
        return const.michael_simon()
    if text.startswith("brendle:"):
        return const.brendle(int(text.split(":", 1)[1]))
    raise ValueError(f"--iso must be michael-simon or brendle:m, got {text!r}")


def _egn_reading(text: str) -> const.EgnReading:
    return const.EgnReading.LITERAL if text == "literal" else const.EgnReading.GAMMA_CORRECTED


def _spectral_reading(text: str) -> const.SpectralReading:
    return (
        const.SpectralReading.LITERAL
        if text == "literal"
        else const.SpectralReading.FABER_KRAHN_CONSISTENT
    )


def _emit(text: str, out_path: str | None):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _load_mesh_arg(path: str) -> TriMesh:
    with open(path) as fh:
        return load_mesh(fh)


def _load_field_arg(path: str, mesh: TriMesh) -> VertexField:
    with open(path) as fh:
        return VertexField.from_csv(fh, mesh)


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="psilab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="write output to this path instead of stdout")
        p.add_argument("--format", choices=["json", "csv"], default="json")

    pc = sub.add_parser("constants", help="closed-form constants table")
    pc.add_argument("--n", type=int, required=True)
    pc.add_argument("--K", type=float, default=0.0)
    pc.add_argument("--p", type=float)
    pc.add_argument("--q", type=float)
    pc.add_argument("--iso", default="brendle:1")
    common(pc)

    pm = sub.add_parser("curvature", help="discrete mean curvature of an OFF/nOFF mesh")
    pm.add_argument("--mesh", required=True)
    pm.add_argument(
        "--convention",
        choices=["paper", "trace"],
        default="trace",
        help="reference convention echoed for the unit sphere's total curvature",
    )
    common(pm)

    pr = sub.add_parser("rearrange", help="radial rearrangement of samples or a mesh field")
    src = pr.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="CSV of value,weight samples")
    src.add_argument("--mesh", help="OFF/nOFF mesh; requires --field")
    pr.add_argument("--field", help="CSV of vertex_index,value")
    pr.add_argument("--target", choices=["lebesgue", "model"], default="lebesgue")
    pr.add_argument("--n", type=int, default=2)
    pr.add_argument("--K", type=float, default=0.0)
    pr.add_argument("--iso", default="brendle:1")
    pr.add_argument("--interpolation", choices=["step", "linear"], default="step")
    pr.add_argument("--subdivision", type=int, default=2)
    common(pr)

    pv = sub.add_parser("verify", help="run one inequality check")
    pv.add_argument(
        "check",
        choices=["ps", "model", "iso", "sobolev", "gn", "spectral", "logsob", "ms1", "mono"],
    )
    pv.add_argument("--mesh", required=True)
    pv.add_argument("--field", help="CSV of vertex_index,value")
    pv.add_argument("--p", type=float, default=2.0)
    pv.add_argument("--q", type=float)
    pv.add_argument("--K", type=float, default=0.0)
    pv.add_argument("--iso", default="brendle:1")
    pv.add_argument("--reading", choices=["literal", "corrected"], default="corrected")
    pv.add_argument("--preset", default="sobolev-l1", help="monotone-spec preset for the mono check")
    pv.add_argument("--subdivision", type=int, default=2)
    pv.add_argument("--tolerance", type=float)
    common(pv)

    px = sub.add_parser("counterexample", help="sphere blowup sweep and thresholds")
    px.add_argument("--p", type=float, required=True)
    px.add_argument("--lambda", dest="lams", type=float, nargs="+", default=[10.0])
    px.add_argument("--N", type=float, help="also locate the blowup threshold for this factor")
    px.add_argument("--mesh-check", action="store_true")
    px.add_argument("--subdiv", type=int, default=5)
    px.add_argument("--jobs", type=int)
    px.add_argument("--plot-data", action="store_true", help="emit gnuplot-friendly columns")
    common(px)
    return ap


def _cmd_constants(args) -> int:
    choice = _parse_iso(args.iso)
    table = const.build_constants_table(args.n, args.K, choice, args.p, args.q)
    if args.format == "json":
        _emit(json.dumps(table.as_dict(), indent=2), args.out)
    else:
        rows = table.as_dict()
        lines = ["key,value"] + [f"{k},{v}" for k, v in rows.items()]
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_curvature(args) -> int:
    mesh = _load_mesh_arg(args.mesh)
    report = mean_curvature(mesh)
    if args.format == "json":
        payload = json.loads(report.to_json())
        conv = (
            const.TcConvention.PAPER_FORMULA
            if args.convention == "paper"
            else const.TcConvention.TRACE_DERIVED
        )
        payload["unit_sphere_reference"] = const.tc_unit_sphere(2, conv)
        _emit(json.dumps(payload, indent=2), args.out)
    else:
        _emit(report.to_csv(), args.out)
    return 0


def _cmd_rearrange(args) -> int:
    if args.mesh:
        if not args.field:
            raise ValueError("--mesh requires --field")
        mesh = _load_mesh_arg(args.mesh)
        dmf = sample_field(mesh, _load_field_arg(args.field, mesh), args.subdivision)
    else:
        with open(args.input) as fh:
            dmf = DiscreteMeasuredFunction.from_csv(fh)
    if args.target == "lebesgue":
        target = lebesgue(args.n)
    else:
        target = model_space(args.n, args.K, _parse_iso(args.iso).value(args.n))
    interp = (
        Interpolation.RIGHT_CONTINUOUS_STEP
        if args.interpolation == "step"
        else Interpolation.PIECEWISE_LINEAR
    )
    profile = rearrange(dmf, target, interp)
    _emit(profile.to_json() if args.format == "json" else profile.to_csv(), args.out)
    return 0


def _cmd_verify(args) -> int:
    mesh = _load_mesh_arg(args.mesh)
    choice = _parse_iso(args.iso)
    field = _load_field_arg(args.field, mesh) if args.field else None
    kw = dict(subdivision=args.subdivision, tolerance=args.tolerance)
    if args.check == "ps":
        reports = [verify_polya_szego(mesh, field, args.p, args.K, choice, **kw)]
    elif args.check == "model":
        reports = [verify_model_space_ps(mesh, field, args.p, args.K, choice, **kw)]
    elif args.check == "iso":
        regions = [np.arange(len(mesh.triangles))]
        reports = verify_isoperimetric(mesh, args.K, choice, regions)
    elif args.check == "sobolev":
        reports = [verify_p_sobolev(mesh, field, args.p, args.K, choice, **kw)]
    elif args.check == "gn":
        if args.q is None:
            raise ValueError("gn check requires --q")
        reports = [
            verify_gn(
                mesh,
                args.p,
                args.q,
                args.K,
                choice,
                _egn_reading(args.reading),
                f=field,
                **kw,
            )
        ]
    elif args.check == "spectral":
        reports = [
            verify_spectral_gap(mesh, field, args.K, choice, _spectral_reading(args.reading), **kw)
        ]
    elif args.check == "logsob":
        reports = [verify_log_sobolev(mesh, args.p, f=field, **kw)]
    elif args.check == "ms1":
        reports = [verify_michael_simon_p1(mesh, field, choice, **kw)]
    else:
        spec = monotone_preset(args.preset, n=2, p=args.p if args.preset == "p-sobolev" else None)
        reports = [verify_monotonicity_principle(mesh, field, spec, args.K, choice, **kw)]
    if args.format == "json":
        _emit(json.dumps([r.as_dict() for r in reports], indent=2), args.out)
    else:
        _emit(reports_to_csv(reports), args.out)
    return 0 if all(r.passed for r in reports) else 1


def _cmd_counterexample(args) -> int:
    rows = sweep(args.p, args.lams, mesh_check=args.mesh_check, subdiv=args.subdiv, jobs=args.jobs)
    payload: dict = {}
    if args.N is not None:
        payload["lambda_bar"] = {"N": args.N, "p": args.p, "value": find_lambda_bar(args.N, args.p)}
    if args.format == "csv" or args.plot_data:
        text = sweep_to_csv(rows)
        if args.plot_data:
            # gnuplot reads whitespace-separated columns; keep the header as a comment
            lines = text.strip().split("\n")
            text = "# " + lines[0].replace(",", " ") + "\n"
            text += "\n".join(line.replace(",", " ") for line in lines[1:]) + "\n"
        if payload:
            text += f"# lambda_bar {payload['lambda_bar']['value']!r}\n"
        _emit(text, args.out)
    else:
        payload["rows"] = [
            {
                "lambda": r.lam,
                "p": r.p,
                "surface_grad_p": r.surface_grad_p,
                "curvature_term": r.curvature_term,
                "plane_grad_p": "divergent" if is_divergent(r.plane_grad_p) else r.plane_grad_p,
                "ratio": "inf" if math.isinf(r.ratio) else r.ratio,
                "gradient_ratio": "inf" if math.isinf(r.gradient_ratio) else r.gradient_ratio,
                "mesh_surface": r.mesh_surface,
                "flagged": r.flagged,
            }
            for r in rows
        ]
        _emit(json.dumps(payload, indent=2), args.out)
    return 0


def dispatch(argv=None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help
        return int(exc.code or 0)
    handlers = {
        "constants": _cmd_constants,
        "curvature": _cmd_curvature,
        "rearrange": _cmd_rearrange,
        "verify": _cmd_verify,
        "counterexample": _cmd_counterexample,
    }
    try:
        return handlers[args.command](args)
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"psilab: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(dispatch())
