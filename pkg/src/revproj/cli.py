"""Command line interface.

Subcommands: ``project`` (one point through the map), ``verify`` (residual
table over all identity checks, exit 0 iff every check passes), ``classify``
(existence verdict for a named, quadratic or CSV profile), and the emitters
``export-graticule``, ``export-mesh``, ``table``.

Exit codes: 0 success/pass, 1 check failure or non-existence verdict,
2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys

import numpy as np

from . import verifier
from .errors import IoFailure, RevprojError
from .export import GraticuleSpec, MeshSpec, export_graticule_svg, export_mesh_obj, sample_table_csv
from .profile import (
    DomainInterval,
    GeneralProfile,
    SurfacePoint,
    admissible_interval,
    make_quadratic_profile,
    profile_jet,
    reference_interval,
)
from .projection import Branch, make_projection_params, project

# Residual tolerances enforced by ``verify``; a check fails when its max
# residual meets or exceeds the bound.
VERIFY_TOLERANCES = {
    "fd_isometry": 1e-8,
    "analytic_isometry": 1e-12,
    "straightness": 1e-12,
    "structural": 1e-10,
    "ode_oracle": 1e-8,
}


def _add_profile_flags(sub):
    sub.add_argument("--c", type=float, required=True, help="coefficient c of f^2 = c u^2 + d u + k")
    sub.add_argument("--d", type=float, required=True, help="coefficient d")
    sub.add_argument("--k", type=float, required=True, help="coefficient k")


def _add_params_flags(sub):
    sub.add_argument("--c0", type=float, default=0.0, help="integration constant of b(t)")
    sub.add_argument(
        "--theta0-branch",
        choices=("principal", "mirror"),
        default="principal",
        help="principal arcsin branch for theta0, or its supplement",
    )
    sub.add_argument("--case", choices=("a", "b"), default="a", help="solution branch")


def _params_from_args(p, args):
    return make_projection_params(
        p,
        c0=args.c0,
        branch=Branch.CASE_A if args.case == "a" else Branch.CASE_B,
        t_base=0.0,
        mirror_theta0=args.theta0_branch == "mirror",
    )


def _parse_grid(text):
    try:
        nt_str, nu_str = text.lower().split("x")
        nt, nu = int(nt_str), int(nu_str)
    except ValueError:
        raise argparse.ArgumentTypeError("--grid expects NTxNU, e.g. 50x50")
    if nt < 2 or nu < 2:
        raise argparse.ArgumentTypeError("--grid sizes must be at least 2")
    return nt, nu


def _cmd_project(args):
    p = make_quadratic_profile(args.c, args.d, args.k)
    params = _params_from_args(p, args)
    q = project(p, params, SurfacePoint(args.t, args.u))
    # adding +0.0 folds IEEE negative zero into "0"
    print("%.12g %.12g" % (q.x + 0.0, q.y + 0.0))
    return 0


def _cmd_verify(args):
    p = make_quadratic_profile(args.c, args.d, args.k)
    params = _params_from_args(p, args)
    nt, nu = args.grid
    u_span = reference_interval(p)
    rng = np.random.default_rng(args.seed)

    rows = []
    rep_u, rep_t = verifier.check_local_isometry(p, params, u_span, nt=nt, nu=nu, fd_step=args.fd_step)
    rows.append((rep_u.identity_name + " [fd]", rep_u, VERIFY_TOLERANCES["fd_isometry"]))
    rows.append((rep_t.identity_name + " [fd]", rep_t, VERIFY_TOLERANCES["fd_isometry"]))
    rep_u, rep_t = verifier.check_local_isometry(p, params, u_span, nt=nt, nu=nu, fd_step=0.0)
    rows.append((rep_u.identity_name + " [analytic]", rep_u, VERIFY_TOLERANCES["analytic_isometry"]))
    rows.append((rep_t.identity_name + " [analytic]", rep_t, VERIFY_TOLERANCES["analytic_isometry"]))

    u_line = np.linspace(u_span.lo, u_span.hi, 16)
    worst_straightness = None
    for t in rng.uniform(0.0, 2.0 * math.pi, size=3):
        rep = verifier.check_meridian_straightness(p, params, float(t), u_line)
        if worst_straightness is None or rep.max_abs_residual > worst_straightness.max_abs_residual:
            worst_straightness = rep
    rows.append((worst_straightness.identity_name, worst_straightness, VERIFY_TOLERANCES["straightness"]))

    u_samples = rng.uniform(u_span.lo, u_span.hi, size=1000)
    for rep in verifier.check_structural_identities(p, u_samples):
        rows.append((rep.identity_name, rep, VERIFY_TOLERANCES["structural"]))

    rep = verifier.ode_oracle_a(p, u_span.lo, u_span.hi, step=1e-3)
    rows.append((rep.identity_name, rep, VERIFY_TOLERANCES["ode_oracle"]))

    all_pass = True
    print("%-42s %12s %12s %9s  %s" % ("check", "max", "mean", "tol", "status"))
    for label, rep, tol in rows:
        ok = rep.max_abs_residual < tol
        all_pass &= ok
        print(
            "%-42s %12.3e %12.3e %9.0e  %s"
            % (label, rep.max_abs_residual, rep.mean_abs_residual, tol, "pass" if ok else "FAIL")
        )
    print("overall: %s" % ("pass" if all_pass else "FAIL"))
    return 0 if all_pass else 1


def _load_csv_profile(path):
    try:
        with open(path, newline="") as handle:
            reader = csv.reader(handle)
            header = next(reader, None)
            if header is None or [h.strip() for h in header] != ["u", "f"]:
                raise ValueError("CSV profile needs header 'u,f' (got %r)" % (header,))
            rows = []
            for line_no, r in enumerate(reader, start=2):
                if not r:
                    continue
                if len(r) != 2:
                    raise ValueError("CSV profile line %d needs exactly u,f" % line_no)
                rows.append((float(r[0]), float(r[1])))
    except OSError as exc:
        raise IoFailure("cannot read %s: %s" % (path, exc)) from exc
    u_values = [r[0] for r in rows]
    f_values = [r[1] for r in rows]
    gp = GeneralProfile.from_table(u_values, f_values)
    spacing = max(b - a for a, b in zip(u_values, u_values[1:]))
    # the monotone-cubic interpolant is only C^1, so differencing must
    # stride well past the knot spacing
    fd_step = max(1e-3, 4.0 * spacing)
    return gp, fd_step


def _resolve_profile_arg(text):
    """Returns (GeneralProfile, fd_step) for a --profile argument."""
    if text in verifier.BUILTIN_PROFILES:
        return verifier.BUILTIN_PROFILES[text](), 1e-3
    if text.startswith("quadratic:"):
        try:
            c, d, k = (float(v) for v in text[len("quadratic:"):].split(","))
        except ValueError:
            raise ValueError("--profile quadratic:c,d,k expects three numbers")
        p = make_quadratic_profile(c, d, k)
        span = reference_interval(p)
        return GeneralProfile(evaluator=lambda u: profile_jet(p, u)[0], domain=span), 1e-3
    if text.startswith("csv:"):
        return _load_csv_profile(text[len("csv:"):])
    raise ValueError("--profile must be sphere, pseudosphere, quadratic:c,d,k or csv:PATH")


def _cmd_classify(args):
    gp, fd_step = _resolve_profile_arg(args.profile)
    verdict = verifier.existence_classifier(gp, fd_step=fd_step, threshold=args.threshold)
    print("exists: %s" % ("true" if verdict.exists else "false"))
    print("residual_sup: %.6g" % verdict.residual_sup)
    if verdict.fitted is not None:
        print("fitted: c=%.9g d=%.9g k=%.9g" % verdict.fitted)
    print("curvature_range: [%.6g, %.6g]" % verdict.curvature_range)
    return 0 if verdict.exists else 1


def _cmd_export_graticule(args):
    p = make_quadratic_profile(args.c, args.d, args.k)
    params = _params_from_args(p, args)
    u_range = admissible_interval(p, DomainInterval(args.u0, args.u1))
    spec = GraticuleSpec(
        t_range=(args.t0, args.t1),
        u_range=u_range,
        n_meridians=args.meridians,
        n_parallels=args.parallels,
        samples_per_curve=args.samples,
    )
    summary = export_graticule_svg(p, params, spec, args.output)
    print("wrote %s: %d meridians, %d parallels" % (summary["path"], summary["meridians"], summary["parallels"]))
    return 0


def _cmd_export_mesh(args):
    p = make_quadratic_profile(args.c, args.d, args.k)
    u_range = admissible_interval(p, DomainInterval(args.u0, args.u1))
    u_ref = args.u_ref if args.u_ref is not None else u_range.lo
    spec = MeshSpec(t_divisions=args.t_div, u_divisions=args.u_div, u_range=u_range, u_ref=u_ref)
    summary = export_mesh_obj(p, spec, args.output)
    print("wrote %s: %d vertices, %d faces" % (summary["path"], summary["vertices"], summary["faces"]))
    return 0


def _cmd_table(args):
    p = make_quadratic_profile(args.c, args.d, args.k)
    params = _params_from_args(p, args)
    u_range = admissible_interval(p, DomainInterval(args.u0, args.u1))
    nt, nu = args.grid
    grid = [
        (t, u)
        for t in np.linspace(args.t0, args.t1, nt)
        for u in np.linspace(u_range.lo, u_range.hi, nu)
    ]
    summary = sample_table_csv(p, params, grid, args.output)
    print("wrote %s: %d rows" % (summary["path"], summary["rows"]))
    return 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="revproj",
        description="Plane projections of surfaces of revolution with quadratic squared profile.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("project", help="map one surface point to the plane")
    _add_profile_flags(sp)
    _add_params_flags(sp)
    sp.add_argument("--t", type=float, required=True)
    sp.add_argument("--u", type=float, required=True)
    sp.set_defaults(handler=_cmd_project)

    sp = sub.add_parser("verify", help="run all residual checks, exit 0 iff every one passes")
    _add_profile_flags(sp)
    _add_params_flags(sp)
    sp.add_argument("--grid", type=_parse_grid, default=(50, 50), help="NTxNU sample grid")
    sp.add_argument("--fd-step", type=float, default=1e-5)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(handler=_cmd_verify)

    sp = sub.add_parser("classify", help="existence verdict for an arbitrary profile")
    sp.add_argument(
        "--profile",
        required=True,
        help="sphere | pseudosphere | quadratic:c,d,k | csv:PATH (header u,f)",
    )
    sp.add_argument("--threshold", type=float, default=1e-4)
    sp.set_defaults(handler=_cmd_classify)

    sp = sub.add_parser("export-graticule", help="write the projected graticule as SVG")
    _add_profile_flags(sp)
    _add_params_flags(sp)
    sp.add_argument("--t0", type=float, default=0.0)
    sp.add_argument("--t1", type=float, default=math.pi)
    sp.add_argument("--u0", type=float, default=0.2)
    sp.add_argument("--u1", type=float, default=2.0)
    sp.add_argument("--meridians", type=int, default=9)
    sp.add_argument("--parallels", type=int, default=5)
    sp.add_argument("--samples", type=int, default=64)
    sp.add_argument("-o", "--output", required=True)
    sp.set_defaults(handler=_cmd_export_graticule)

    sp = sub.add_parser("export-mesh", help="write the embedded surface as Wavefront OBJ")
    _add_profile_flags(sp)
    sp.add_argument("--t-div", type=int, default=64)
    sp.add_argument("--u-div", type=int, default=32)
    sp.add_argument("--u0", type=float, default=0.05)
    sp.add_argument("--u1", type=float, default=2.0)
    sp.add_argument("--u-ref", type=float, default=None, help="height anchor; defaults to u0")
    sp.add_argument("-o", "--output", required=True)
    sp.set_defaults(handler=_cmd_export_mesh)

    sp = sub.add_parser("table", help="write a t,u,x,y sample table as CSV")
    _add_profile_flags(sp)
    _add_params_flags(sp)
    sp.add_argument("--grid", type=_parse_grid, default=(5, 5), help="NTxNU sample grid")
    sp.add_argument("--t0", type=float, default=0.0)
    sp.add_argument("--t1", type=float, default=math.pi)
    sp.add_argument("--u0", type=float, default=0.2)
    sp.add_argument("--u1", type=float, default=2.0)
    sp.add_argument("-o", "--output", required=True)
    sp.set_defaults(handler=_cmd_table)

    return parser


def cli_dispatch(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.handler(args)
    except IoFailure as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3
    except (RevprojError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


def main(argv=None) -> int:
    return cli_dispatch(argv)


if __name__ == "__main__":
    sys.exit(main())
