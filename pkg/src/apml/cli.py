"""``apml`` command-line front end.

Every subcommand builds a :class:`~apml.report.RunReport`; ``--json`` prints it
as the only thing on stdout.  Exit codes: 0 pass, 1 failed check, 2 bad input,
3 numerical non-convergence, 4 scale guard.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import time

import numpy as np

from . import __version__, charvar, hyperbolic, mahler, verify
from .numerics import BACKEND, RootFindingError
from .polycore import boundary_slopes, divides_exactly, newton_polygon, parse_poly
from .report import RunReport

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_NONCONV, EXIT_SCALE = 0, 1, 2, 3, 4


class NonConvergence(ArithmeticError):
    pass


def _vars(arg):
    return tuple(v.strip() for v in arg.split(",")) if arg else None


def _triangulation(args) -> tuple[hyperbolic.Triangulation, str]:
    if args.fig8:
        return hyperbolic.builtin_fig8(), "builtin:fig8"
    if not args.file:
        raise ValueError("give a triangulation file or --fig8")
    return hyperbolic.load_triangulation(args.file), args.file


def _target(text) -> hyperbolic.HolonomyPoint:
    """``"x"`` (free longitude) or ``"x,y"``, each a Python complex literal."""
    if text is None:
        return hyperbolic.COMPLETE
    parts = [complex(p.strip().replace(" ", "")) for p in text.split(",")]
    if len(parts) == 1:
        return hyperbolic.HolonomyPoint(parts[0])
    if len(parts) == 2:
        return hyperbolic.HolonomyPoint(parts[0], parts[1])
    raise ValueError(f"target {text!r} must be 'x' or 'x,y'")


# ---------------------------------------------------------------------------
# commands


def cmd_mahler(args, rep: RunReport):
    P = parse_poly(args.poly, _vars(args.vars))
    used = P.used_vars()
    rep.inputs.update(poly=P, method=args.method)
    if len(used) > 2:
        raise ValueError(f"at most two variables supported, got {used}")
    method = args.method
    if method == "auto":
        method = "univariate" if len(used) <= 1 else "sliced"
    if method == "univariate":
        if len(used) > 1:
            raise ValueError("univariate method needs a one-variable polynomial")
        r = mahler.mahler_univariate(P, tol=args.tol or 1e-12)
    else:
        Q = P if len(P.vars) == 2 else P.with_vars(_pad_two(used))
        if method == "sliced":
            r = mahler.mahler_bivariate_sliced(Q, tol=args.tol or 1e-9, threads=args.threads)
            if not r.diagnostics.get("quadrature_converged", True):
                raise NonConvergence("outer quadrature hit its panel budget")
        else:
            r = mahler.mahler_bivariate_grid(Q, args.N)
    rep.results.update(value=r.value, error_estimate=r.error_estimate, method=r.method, **r.diagnostics)


def _pad_two(used):
    names = list(used)
    for cand in ("x", "y", "_u", "_v"):
        if len(names) == 2:
            break
        if cand not in names:
            names.append(cand)
    return tuple(names)


def cmd_volume(args, rep: RunReport):
    T, src = _triangulation(args)
    target = _target(args.target)
    rep.inputs.update(triangulation=src, n=T.n, target=[target.x, target.y])
    s = hyperbolic.solve_shapes(T, target)
    res = hyperbolic.residuals(T, s, target)
    rep.results.update(
        shapes=s.z,
        geometric=s.geometric,
        volume=hyperbolic.volume(s),
        residual_norm=float(np.max(np.abs(res))),
        residuals=np.abs(res),
    )


def cmd_eliminate(args, rep: RunReport):
    T, src = _triangulation(args)
    rep.inputs["triangulation"] = src
    E = hyperbolic.eliminate_H(T)
    rep.results["polynomial"] = E
    if args.expect:
        want = parse_poly(args.expect, ("x", "y"))
        rep.inputs["expect"] = want
        q = divides_exactly(E, want)
        rep.results["divisible"] = q is not None
        if q is not None:
            rep.results["quotient"] = q
        rep.check("expected polynomial divides the eliminated one", q is not None, E, want)


def cmd_slopes(args, rep: RunReport):
    P = parse_poly(args.poly, _vars(args.vars))
    used = P.used_vars()
    if len(used) > 2 or (len(P.vars) > 2):
        P = P.with_vars(used)
    if len(P.vars) != 2:
        raise ValueError("slopes needs a polynomial in exactly two variables (pass --vars x,y)")
    rep.inputs["poly"] = P
    N = newton_polygon(P)
    s = boundary_slopes(N)
    rep.results.update(vars=list(P.vars), vertices=[list(v) for v in N.vertices], slopes=s.slopes,
                       horizontal_sides=s.horizontal)


def cmd_equations(args, rep: RunReport):
    G = charvar.GroupPresentation.parse(args.relators)
    rep.inputs.update(relators=args.relators, generators=G.n_generators)
    eqs = charvar.presentation_to_equations(G)
    expected = 4 * len(G.relators) + G.n_generators
    rep.results.update(count=len(eqs), equations=eqs)
    rep.check("equation count 4k+n", len(eqs) == expected, len(eqs), expected)


def cmd_dvol(args, rep: RunReport):
    T, src = _triangulation(args)
    ts = [float(t) for t in args.t.split(",")]
    rep.inputs.update(triangulation=src, t=ts, h=args.h)
    rows = [hyperbolic.dvol_check(T, t0, h=args.h) for t0 in ts]
    for r in rows:
        rep.results[f"t={r['t0']:g}"] = {k: r[k] for k in ("finite_diff", "ln_abs_y", "ratio", "volume")}
    ratios = [r["ratio"] for r in rows if r["ratio"] is not None]
    if not ratios:
        raise ValueError("ln|y| vanished at every sample")
    mean = float(np.mean(ratios))
    spread = (max(ratios) - min(ratios)) / abs(mean) if mean else math.inf
    rep.results["constant"] = mean
    rep.check("ratio dVol/dt / ln|y| constant (relative spread)", spread < 0.02, spread, 0.0, 0.02)


def cmd_verify(args, rep: RunReport):
    names = verify.SUITES if args.suite == "all" else (args.suite,)
    rep.inputs.update(suite=args.suite, tol=args.tol, seed=verify.seed())
    verify.run(names, rep, tol=args.tol, threads=args.threads)


COMMANDS = {
    "mahler": cmd_mahler,
    "volume": cmd_volume,
    "eliminate": cmd_eliminate,
    "slopes": cmd_slopes,
    "equations": cmd_equations,
    "dvol": cmd_dvol,
    "verify": cmd_verify,
}


# ---------------------------------------------------------------------------
# parser and dispatch


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="apml", description="Mahler measures, hyperbolic volumes and A-polynomials.")
    ap.add_argument("--version", action="version", version=f"apml {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the run report as JSON only")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mahler", parents=[common], help="Mahler measure of a 1- or 2-variable polynomial")
    p.add_argument("poly")
    p.add_argument("--method", choices=("auto", "univariate", "sliced", "grid"), default="auto")
    p.add_argument("--tol", type=float)
    p.add_argument("--N", type=int, default=2048, help="grid size for --method grid")
    p.add_argument("--vars", help="comma-separated variable order, e.g. x,y")
    p.add_argument("--threads", type=int)

    def tri(p):
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--fig8", action="store_true", help="use the bundled figure-8 triangulation")
        g.add_argument("file", nargs="?", help="triangulation JSON file")

    p = sub.add_parser("volume", parents=[common], help="solve shapes and report the volume")
    tri(p)
    p.add_argument("--target", help="holonomy target 'x' or 'x,y' (default: complete structure 1,1)")

    p = sub.add_parser("eliminate", parents=[common], help="eliminate shapes to get H(x, y)")
    tri(p)
    p.add_argument("--expect", help="polynomial expected to divide the result")

    p = sub.add_parser("slopes", parents=[common], help="Newton polygon boundary slopes")
    p.add_argument("poly")
    p.add_argument("--vars")

    p = sub.add_parser("equations", parents=[common], help="SL2 representation equations of a presentation")
    p.add_argument("relators", help='relators like "abAB", comma separated')

    p = sub.add_parser("dvol", parents=[common], help="dVol/dt against ln|y| along x = exp(it)")
    tri(p)
    p.add_argument("--t", default="0.1,0.15,0.2")
    p.add_argument("--h", type=float, default=1e-4)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=verify.SUITES + ("all",))
    p.add_argument("--tol", type=float, help="override every numeric tolerance")
    p.add_argument("--threads", type=int)
    return ap


def _exit_code(exc: BaseException) -> int:
    if isinstance(exc, (hyperbolic.ScaleGuardError, charvar.PresentationTooLarge)):
        return EXIT_SCALE
    if isinstance(exc, (ArithmeticError, RootFindingError)):
        return EXIT_NONCONV
    return EXIT_INPUT


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    rep = RunReport(command=args.command)
    rep.inputs["backend"] = BACKEND
    t0 = time.perf_counter()
    code = EXIT_OK
    error = None
    try:
        COMMANDS[args.command](args, rep)
    except (ValueError, ArithmeticError, OSError, KeyError, json.JSONDecodeError) as exc:
        code = _exit_code(exc)
        error = f"{type(exc).__name__}: {exc}"
    rep.wall_time = time.perf_counter() - t0
    if code == EXIT_OK and not rep.passed:
        code = EXIT_FAIL
    if error:
        rep.results["error"] = error
    if args.json:
        d = rep.as_dict()
        d["exit_code"] = code
        print(json.dumps(d, indent=2))
    else:
        print(rep.to_text())
        if error:
            print(error, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
