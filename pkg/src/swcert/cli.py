"""
Command line front end.

    swcert analyze-curve --input curve.json --out out/ [--svg]
    swcert limacon       --input limacon.json --out out/ [--svg]
    swcert catenoid      --input catenoid.json --out out/ [--obj]
    swcert certify       --input certify.json --out out/ --mode theorem1|theorem2|general
                         [--sweep-eps lo:hi:n]

Exit codes: 0 pass (or success), 1 certification failed, 2 input error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import catenoid as cat
from .certify import (
    c_branches,
    general_conditions_check,
    sig12,
    theorem1_threshold,
    theorem2_check,
    _clean,
)
from .curve import curve_from_spec
from .errors import SWCertError
from .limacon import Limacon, LoopType, graph_lemma_radius, inner_loop_disk, limacon_svg, near_cusp
from .weingarten import check_assumption1, from_spec

EXIT_PASS, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class InputError(Exception):
    pass


def _load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from None


def _dump(obj) -> str:
    return json.dumps(_clean(obj), indent=2) + "\n"


def _write(outdir: Path, name: str, text: str):
    outdir.mkdir(parents=True, exist_ok=True)
    (outdir / name).write_text(text, encoding="utf-8")


def _num(spec, key, default=None):
    if key not in spec:
        if default is not None:
            return default
        raise InputError(f"missing required field {key!r}")
    try:
        value = float(spec[key])
    except (TypeError, ValueError):
        raise InputError(f"field {key!r} must be a number") from None
    if math.isnan(value):
        raise InputError(f"field {key!r} must be a number")
    return value


def _curve_svg(curve, size=480):
    pts = np.asarray(curve.points)
    (cx, cy), w = curve.center, curve.omega
    lo = min(cx - w, pts[:, 0].min()), min(cy - w, pts[:, 1].min())
    hi = max(cx + w, pts[:, 0].max()), max(cy + w, pts[:, 1].max())
    pad = 0.05 * max(hi[0] - lo[0], hi[1] - lo[1])
    vb = (lo[0] - pad, -hi[1] - pad, hi[0] - lo[0] + 2 * pad, hi[1] - lo[1] + 2 * pad)

    def circle(x, y, r, color, dash=""):
        style = f' stroke-dasharray="{dash}"' if dash else ""
        return (
            f'<circle cx="{x:.6f}" cy="{-y:.6f}" r="{r:.6f}" fill="none" stroke="{color}" '
            f'vector-effect="non-scaling-stroke"{style}/>'
        )

    def osculating(i, radius):
        n = len(pts)
        tangent = pts[(i + 1) % n] - pts[i - 1]
        tangent = tangent / np.hypot(*tangent)
        inward = np.array([-tangent[1], tangent[0]])  # points are counter-clockwise
        c = pts[i] + radius * inward
        return circle(c[0], c[1], radius, "blue", "3 2")

    poly = " ".join(f"{x:.6f},{-y:.6f}" for x, y in np.vstack([pts, pts[:1]]))
    body = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="{vb[0]:.6f} {vb[1]:.6f} {vb[2]:.6f} {vb[3]:.6f}">',
        f'<polyline points="{poly}" fill="none" stroke="black" vector-effect="non-scaling-stroke"/>',
        circle(cx, cy, w, "red"),
        osculating(curve.argmax, 1.0 / curve.Lambda),
        osculating(curve.argmin, 1.0 / curve.lam),
        "</svg>",
    ]
    return "\n".join(body) + "\n"


def cmd_analyze_curve(args):
    spec = _load(args.input)
    curve = curve_from_spec(spec, seed=args.seed)
    r = graph_lemma_radius(curve.Lambda, curve.lam)
    report = {
        "kind": curve.kind,
        "n_samples": len(curve.points),
        "Lambda": curve.Lambda,
        "lambda": curve.lam,
        "omega": curve.omega,
        "center": list(curve.center),
        "r_gamma_lower": r.r_lower,
        "r_gamma_upper": r.r_upper,
        "strictly_convex": True,
        "circle": curve.is_circle,
    }
    text = _dump(report)
    _write(args.out, "curve.json", text)
    if args.svg:
        _write(args.out, "curve.svg", _curve_svg(curve))
    sys.stdout.write(text)
    return EXIT_PASS


def cmd_limacon(args):
    spec = _load(args.input) if args.input else {}
    a = args.a if args.a is not None else _num(spec, "a")
    c = args.c if args.c is not None else _num(spec, "c")
    L = Limacon(a, c)
    report = {"a": a, "c": c, "type": L.loop_type.value, "near_cusp": near_cusp(a, c)}
    if L.loop_type is LoopType.TWO_LOOPS:
        disk = inner_loop_disk(a, c)
        report.update(center=list(disk.center), r_in=disk.r_in, r_out=disk.r_out)
    text = _dump(report)
    _write(args.out, "limacon.json", text)
    if args.svg:
        _write(args.out, "limacon.svg", limacon_svg(L))
    sys.stdout.write(text)
    return EXIT_PASS


def cmd_catenoid(args):
    spec = _load(args.input)
    m0 = _num(spec, "m0")
    r0 = _num(spec, "r0")
    prof = cat.CatenoidProfile(m0, r0)
    hs = prof.hstar
    report = {"m0": m0, "r0": r0, "hstar": hs, "h_star": r0 * hs}
    if prof.bounded:
        report["h_total"] = cat.total_height(m0)
        report["height_bound"] = prof.total_height_bound
        report["divergent"] = False
    else:
        report["h_total"] = None
        report["divergent"] = True
    report["r1"] = prof.radius_at(r0 * hs)
    report["neck_diagram"] = prof.neck_diagram()
    cap = _num(spec, "height_cap", r0 * hs)
    nu = int(spec.get("nu", 32))
    nv = int(spec.get("nv", 64))
    mesh = cat.revolve_mesh(m0, r0, cap, nu, nv, mirror=bool(spec.get("mirror", False)))
    report["height_cap"] = cap
    report["boundary_radius"] = float(mesh.level_radii[-1])
    s_max = _num(spec, "s_max", float(mesh.level_radii[-1]))
    _write(args.out, "profile.csv", cat.profile_csv(m0, r0, max(s_max, r0 * (1 + 1e-9)), int(spec.get("n_profile", 200))))
    if args.obj:
        _write(args.out, "catenoid.obj", cat.mesh_to_obj(mesh))
    text = _dump(report)
    _write(args.out, "catenoid.json", text)
    sys.stdout.write(text)
    return EXIT_PASS


def _curvature_inputs(spec, seed):
    if "curve" in spec:
        curve = curve_from_spec(spec["curve"], seed=seed)
        return curve.Lambda, curve.lam, curve.omega
    return _num(spec, "Lambda"), _num(spec, "lambda"), _num(spec, "omega")


def _parse_sweep(text):
    try:
        lo, hi, n = text.split(":")
        lo, hi, n = float(lo), float(hi), int(n)
    except ValueError:
        raise InputError(f"--sweep-eps expects lo:hi:n, got {text!r}") from None
    if n < 1:
        raise InputError("--sweep-eps needs n >= 1")
    return np.linspace(lo, hi, n) if n > 1 else np.array([lo])


def cmd_certify(args):
    spec = _load(args.input)
    mode = args.mode or spec.get("mode")
    if mode not in ("theorem1", "theorem2", "general"):
        raise InputError(f"--mode must be theorem1, theorem2 or general, got {mode!r}")

    if mode == "theorem2":
        if "g" in spec:
            W = from_spec(spec["g"])
            alpha, beta = W.alpha, W.beta
            if beta is None:
                raise InputError("g has no cylinder curvature (not CMC type)")
        else:
            alpha, beta = _num(spec, "alpha"), _num(spec, "beta")
        if "curve" in spec:
            Lambda, lam, omega = _curvature_inputs(spec, args.seed)
        else:
            Lambda, lam = _num(spec, "Lambda"), _num(spec, "lambda")
            omega = _num(spec, "omega") if "omega" in spec else None
        eps = _num(spec, "epsilon")
        report = theorem2_check(Lambda, lam, eps, alpha, beta, omega=omega)
        if args.sweep_eps:
            rows = ["epsilon,C_first,C_second,beta_lower,beta_upper,overall"]
            for e in _parse_sweep(args.sweep_eps):
                r = theorem2_check(Lambda, lam, float(e), alpha, beta)
                first, second = c_branches(float(e), Lambda, lam)
                it = r.intermediates
                rows.append(
                    f"{sig12(float(e))!r},{sig12(first)!r},{sig12(second)!r},"
                    f"{sig12(it['beta_lower'])!r},{sig12(it['beta_upper'])!r},{r.overall}"
                )
            _write(args.out, "sweep.csv", "\n".join(rows) + "\n")
    else:
        Lambda, lam, omega = _curvature_inputs(spec, args.seed)
        if "g" not in spec:
            raise InputError("missing required field 'g'")
        W = from_spec(spec["g"])
        m0 = _num(spec, "m0")
        if mode == "theorem1":
            horizon = _num(spec, "horizon", 1e3 * max(W.alpha, 1.0))
            a1 = check_assumption1(W, m0, horizon)
            d = _num(spec, "d") if "d" in spec else None
            report = theorem1_threshold(Lambda, lam, omega, W, m0, assumption1=a1, d=d)
        else:
            r_gamma = graph_lemma_radius(Lambda, lam).r_lower
            if "h_star" in spec:
                h_star = _num(spec, "h_star")
            elif "epsilon" in spec:
                h_star = _num(spec, "epsilon") * r_gamma
            else:
                h_star = r_gamma * cat.hstar(m0)
            report = general_conditions_check(Lambda, lam, omega, m0, h_star, W)

    text = json.dumps(report.to_dict(), indent=2) + "\n"
    _write(args.out, "report.json", text)
    sys.stdout.write(text)
    return EXIT_PASS if report.passed else EXIT_FAIL


def build_parser():
    p = argparse.ArgumentParser(
        prog="swcert",
        description="Certify disk-type hypotheses for special Weingarten surfaces with convex planar boundary.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--input", type=Path, help="JSON input file")
        sp.add_argument("--out", type=Path, default=Path("out"), help="output directory (created if absent)")
        sp.add_argument("--seed", type=int, default=0, help="seed for the enclosing-circle shuffle")

    sp = sub.add_parser("analyze-curve", help="curvature extremes and enclosing radius of a convex curve")
    common(sp)
    sp.add_argument("--svg", action="store_true", help="also write curve.svg")
    sp.set_defaults(func=cmd_analyze_curve, needs_input=True)

    sp = sub.add_parser("limacon", help="classify a limacon and compute its inner-loop disks")
    common(sp)
    sp.add_argument("--a", type=float, help="distance from base point to circle center")
    sp.add_argument("--c", type=float, help="circle radius")
    sp.add_argument("--svg", action="store_true", help="also write limacon.svg")
    sp.set_defaults(func=cmd_limacon, needs_input=False)

    sp = sub.add_parser("catenoid", help="catenoid of k2 = m0 k1: heights, profile CSV, mesh")
    common(sp)
    sp.add_argument("--obj", action="store_true", help="also write catenoid.obj")
    sp.set_defaults(func=cmd_catenoid, needs_input=True)

    sp = sub.add_parser("certify", help="check theorem hypotheses and write report.json")
    common(sp)
    sp.add_argument("--mode", choices=["theorem1", "theorem2", "general"])
    sp.add_argument("--sweep-eps", metavar="LO:HI:N", help="theorem2 only: write sweep.csv over epsilon")
    sp.set_defaults(func=cmd_certify, needs_input=True)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PASS if exc.code in (0, None) else EXIT_ERROR
    if args.needs_input and args.input is None:
        print(json.dumps({"error": "InputError", "message": "--input is required"}), file=sys.stderr)
        return EXIT_ERROR
    try:
        return args.func(args)
    except (InputError, SWCertError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return EXIT_ERROR
    except Exception as exc:  # any other failure is still an input-level error for the caller
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
