"""Verification bundles behind ``apml verify``.

Each suite appends checks to a :class:`RunReport`.  ``tol`` overrides every
numeric tolerance of a suite; exact symbolic checks ignore it.
"""
from __future__ import annotations

import cmath
import math
import os
from fractions import Fraction

import numpy as np

from . import charvar, hyperbolic, mahler
from .numerics import bloch_wigner, integrate_adaptive, li2
from .polycore import A_FIG8, H_FIG8, boundary_slopes, divides_exactly, newton_polygon, parse_poly, \
    reciprocity_check, substitute_var
from .report import RunReport

SUITES = ("smyth", "fig8", "charvar", "numerics")
DEFAULT_TOL = {"smyth": 1e-6, "fig8": 1e-5}

COMPLETE_SHAPE = (1 + 1j * math.sqrt(3)) / 2
OTHER_SIXTH_ROOT = (-1 + 1j * math.sqrt(3)) / 2


def seed() -> int:
    return int(os.environ.get("APML_SEED", "0"))


def _t(tol, default):
    return default if tol is None else tol


def suite_smyth(rep: RunReport, tol=None, threads=None):
    r = mahler.verify_smyth(tol=_t(tol, DEFAULT_TOL["smyth"]))
    rep.results.update(smyth_lhs=r["lhs"], smyth_rhs=r["rhs"])
    rep.close("smyth: m(1+x+y) = 3*sqrt(3)/(4*pi) * L(chi_-3, 2)", r["lhs"], r["rhs"], r["tolerance"])


def fig8_headline(threads=None) -> tuple[float, float, mahler.MahlerResult]:
    T = hyperbolic.builtin_fig8()
    vol = hyperbolic.volume(hyperbolic.solve_shapes(T))
    mH = mahler.mahler_bivariate_sliced(H_FIG8, tol=1e-9, threads=threads)
    return math.pi * mH.value, vol, mH


def ah_bridge() -> dict:
    """Compare H(M^2, -L) and the literal H(M^2, L) against -A(M, L)."""
    v = ("M", "L")
    M2 = parse_poly("M^2", v)
    negL = parse_poly("-L", v)
    h_lit = substitute_var(substitute_var(H_FIG8, "x", M2), "y", parse_poly("L", v)).with_vars(v)
    h_neg = substitute_var(substitute_var(H_FIG8, "x", M2), "y", negL).with_vars(v)
    return {
        "H(M^2,-L) == -A": h_neg == -A_FIG8,
        "H(M^2,L) == -A": h_lit == -A_FIG8,
        "H(M^2,L)": h_lit,
        "H(M^2,-L)": h_neg,
    }


def suite_fig8(rep: RunReport, tol=None, threads=None):
    tol = _t(tol, DEFAULT_TOL["fig8"])
    T = hyperbolic.builtin_fig8()
    s = hyperbolic.solve_shapes(T)
    res = float(np.max(np.abs(hyperbolic.residuals(T, s, hyperbolic.COMPLETE))))
    vol = hyperbolic.volume(s)
    rep.results.update(
        shapes=s.z,
        volume=vol,
        distance_to_other_sixth_root=abs(s.z[0] - OTHER_SIXTH_ROOT),
    )
    rep.check("fig8: complete-structure residual", res < min(1e-10, tol), res, 0.0, min(1e-10, tol))
    rep.close("fig8: shape = (1+i*sqrt(3))/2", float(np.max(np.abs(s.z - COMPLETE_SHAPE))), 0.0, min(1e-10, tol))
    rep.close("fig8: volume = 2*D(exp(i*pi/3))", vol, 2 * bloch_wigner(cmath.exp(1j * math.pi / 3)), min(1e-10, tol))

    pim, vol2, mH = fig8_headline(threads)
    rep.results.update(m_H=mH.value, pi_m_H=pim)
    rep.close("fig8: pi*m(H) = Vol", pim, vol2, tol)

    E = hyperbolic.eliminate_H(T)
    rep.results["eliminated"] = E
    q = divides_exactly(E, H_FIG8)
    rep.check("fig8: H divides eliminated polynomial", q is not None, q if q is not None else "none", "quotient")
    toy = hyperbolic.eliminate_H(hyperbolic.bundled("toy"))
    rep.check("toy: elimination gives x + y - 1", toy == parse_poly("x + y - 1", ("x", "y")), toy, "x + y - 1")

    br = ah_bridge()
    rep.results["unsigned_identity_H(M^2,L)=-A_holds"] = br["H(M^2,L) == -A"]
    rep.results["sign_deviation"] = "H(M^2,-L) = -A(M,L) holds; the literal H(M^2,L) = -A(M,L) does not"
    rep.check("A/H bridge: H(M^2,-L) = -A(M,L)", br["H(M^2,-L) == -A"], br["H(M^2,-L)"], -A_FIG8)
    rep.check("A: reciprocity A(1/M,1/L) ~ A(M,L)", reciprocity_check(A_FIG8), True, True)
    sl = boundary_slopes(newton_polygon(A_FIG8))
    rep.check("A: boundary slopes", sl.slopes == {Fraction(-4), Fraction(4)}, sl.slopes, {-4, 4})

    ratios = [hyperbolic.dvol_check(T, t0, h=1e-4)["ratio"] for t0 in (0.10, 0.15, 0.20)]
    spread = (max(ratios) - min(ratios)) / abs(np.mean(ratios))
    rep.results["dvol_constant"] = float(np.mean(ratios))
    rep.check("dVol/dt proportional to ln|y| (relative spread)", spread < 0.02, spread, 0.0, 0.02)


def suite_charvar(rep: RunReport, tol=None, threads=None):
    _, verdict = charvar.fig8_defect()
    rep.check("fig8 defect: zero diagonal", verdict["diagonal_zero"], verdict["diagonal_zero"], True)
    rep.check("fig8 defect: top right = unit * Z", verdict["top_right_unit_times_Z"], verdict["top_right_quotient"], "unit")
    rep.check(
        "fig8 defect: bottom left = (u-2) * unit * Z",
        verdict["bottom_left_u_minus_2_times_Z"],
        verdict["bottom_left_quotient"],
        "unit",
    )
    rep.check("elliptic identity x^2(u-1)^2 - (u^3-2u+1) + (u-1)Z = 0", charvar.elliptic_identity_check(),
              charvar.elliptic_identity(), 0)
    red = charvar.reducible_trace_check()
    rep.check("reducible: tr(rho(a) rho(b)^-1) = 2", red["trace_ab_inv_is_2"], red["trace_ab_inv"], 2)
    ok = charvar.trace_identity_check(100, seed=seed(), symbolic=True)
    rep.check("tr(AB) + tr(AB^-1) = tr(A) tr(B), 100 random pairs + symbolic", ok, ok, True)
    for name, P in (("torus", charvar.TORUS_PRESENTATION), ("figure-8", charvar.FIG8_PRESENTATION)):
        k, n = len(P.relators), P.n_generators
        cnt = len(charvar.presentation_to_equations(P))
        rep.check(f"equation count 4k+n ({name})", cnt == 4 * k + n, cnt, 4 * k + n)


def suite_numerics(rep: RunReport, tol=None, threads=None):
    def jensen(alpha):
        f = lambda t: math.log(abs(alpha - cmath.exp(2j * math.pi * t))) if alpha else 0.0
        return integrate_adaptive(f, 0.0, 1.0, tol=1e-12).value

    for alpha in (0, 0.5, 0.9, 1.1, 2, 10):
        rep.close(f"Jensen alpha={alpha}", jensen(alpha), math.log(max(1.0, alpha)), _t(tol, 1e-8))
    rep.close("Jensen alpha=1", jensen(1.0), 0.0, _t(tol, 1e-4))

    rng = np.random.default_rng(seed())
    worst_conj = worst_three = 0.0
    for _ in range(100):
        z = complex(rng.uniform(-3, 3), rng.uniform(0.01, 3))
        d = bloch_wigner(z)
        worst_conj = max(worst_conj, abs(bloch_wigner(z.conjugate()) + d))
        worst_three = max(worst_three, abs(bloch_wigner(1 - 1 / z) - d), abs(bloch_wigner(1 / (1 - z)) - d))
    rep.close("D(conj z) = -D(z)", worst_conj, 0.0, _t(tol, 1e-12))
    rep.close("D(z) = D(1-1/z) = D(1/(1-z))", worst_three, 0.0, _t(tol, 1e-10))
    worst_refl = 0.0
    for _ in range(100):
        r, th = math.sqrt(rng.uniform(0, 1)), rng.uniform(-math.pi, math.pi)
        z = cmath.rect(r, th)
        lhs = li2(z) + li2(1 - z)
        rhs = math.pi ** 2 / 6 - cmath.log(z) * cmath.log(1 - z)
        worst_refl = max(worst_refl, abs(lhs - rhs))
    rep.close("Li2(z) + Li2(1-z) = pi^2/6 - log z log(1-z)", worst_refl, 0.0, _t(tol, 1e-11))

    for name, P in (("1+x+y", parse_poly("1 + x + y")), ("H", H_FIG8), ("1+x+1/x+y+1/y", parse_poly("1 + x + x^-1 + y + y^-1"))):
        a = mahler.mahler_bivariate_sliced(P, tol=1e-9, threads=threads)
        b = mahler.mahler_bivariate_grid(P, 4096)
        bound = max(3e-3, a.error_estimate + b.error_estimate) if tol is None else tol
        rep.results[f"m({name}) sliced"] = a.value
        rep.results[f"m({name}) grid"] = b.value
        rep.close(f"sliced vs grid: {name}", a.value, b.value, bound)


RUNNERS = {"smyth": suite_smyth, "fig8": suite_fig8, "charvar": suite_charvar, "numerics": suite_numerics}


def run(names, rep: RunReport, tol=None, threads=None):
    for n in names:
        RUNNERS[n](rep, tol=tol, threads=threads)
    return rep
