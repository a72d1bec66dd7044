"""Mahler measures of integer Laurent polynomials in one and two variables.

Three engines:

* ``mahler_univariate``: Jensen's formula, ``log|a0| + sum log+|root|``.
* ``mahler_bivariate_sliced``: fix one variable on the unit circle, apply the
  univariate formula to the other and integrate the result adaptively.
* ``mahler_bivariate_grid``: plain mean of ``log|P|`` over an N x N torus
  grid, used as an independent cross-check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .numerics import integrate_adaptive, kernels, roots
from .polycore import MultiPoly, PolyError, UniComplexPoly, _BivariateTable, parse_poly

SMYTH_FACTOR = 3 * math.sqrt(3) / (4 * math.pi)
EPS = np.finfo(float).eps


@dataclass(frozen=True)
class MahlerResult:
    value: float
    error_estimate: float
    method: str
    diagnostics: dict = field(default_factory=dict)


def _int_coeffs(p) -> tuple[list, int]:
    """Coefficients (constant first) of a univariate input plus its monomial shift."""
    if isinstance(p, str):
        p = parse_poly(p)
    if isinstance(p, MultiPoly):
        used = p.used_vars()
        if len(used) > 1:
            raise PolyError(f"expected a univariate polynomial, got variables {used}")
        if p.is_zero():
            raise PolyError("Mahler measure of the zero polynomial")
        if not used:
            return [p.constant_value()], 0
        q = p.with_vars(used)
        lo = q.min_degree(used[0])
        hi = q.degree(used[0])
        return [q.coeff((lo + k,)) for k in range(hi - lo + 1)], lo
    if isinstance(p, UniComplexPoly):
        return list(p.coeffs), p.shift
    return list(p), 0


def mahler_univariate(p, tol: float = 1e-12) -> MahlerResult:
    """Mahler measure of a one-variable polynomial via Jensen's formula.

    ``p`` may be a univariate :class:`MultiPoly`, a :class:`UniComplexPoly`, or a
    coefficient sequence (constant term first).
    """
    c, _ = _int_coeffs(p)
    c = np.asarray(c, dtype=complex)
    nz = np.flatnonzero(c)
    if not nz.size:
        raise PolyError("Mahler measure of the zero polynomial")
    c = c[nz[0]: nz[-1] + 1]  # monomial factors have measure zero
    lead = abs(c[-1])
    if len(c) == 1:
        return MahlerResult(math.log(lead), 0.0, "univariate-jensen", {"degree": 0})
    rs = roots(c, tol=tol)
    mods = np.abs(rs.roots)
    value = math.log(lead) + float(np.sum(np.log(np.maximum(mods, 1.0))))
    # first-order root perturbation from the backward error
    dc = c[1:] * np.arange(1, len(c))
    dp = np.abs(np.polyval(dc[::-1], rs.roots))
    scale = np.polyval(np.abs(c[::-1]), mods)
    with np.errstate(divide="ignore", invalid="ignore"):
        dz = np.where(dp > 0, (rs.residuals + EPS) * scale / dp, math.sqrt(EPS) * (1 + mods))
    near_or_out = mods + dz >= 1.0
    err = float(np.sum(dz[near_or_out] / np.maximum(mods[near_or_out], 1.0)))
    return MahlerResult(value, err, "univariate-jensen", {"degree": len(c) - 1})


def cyclotomic_test(p, tol: float = 1e-8) -> bool:
    """True iff every root lies within ``tol`` of the unit circle.

    Monomial factors are ignored (they are units on the torus); a constant
    counts as cyclotomic only when it is +-1.
    """
    c, _ = _int_coeffs(p)
    c = np.asarray(c, dtype=complex)
    nz = np.flatnonzero(c)
    if not nz.size:
        raise PolyError("cyclotomic test of the zero polynomial")
    c = c[nz[0]: nz[-1] + 1]
    if len(c) == 1:
        return bool(abs(abs(c[0]) - 1) < tol)
    if abs(abs(c[-1]) - 1) > tol:
        return False
    return bool(np.all(np.abs(np.abs(roots(c).roots) - 1) < tol))


# ---------------------------------------------------------------------------
# two variables


def _two_var(P) -> MultiPoly:
    if isinstance(P, str):
        P = parse_poly(P)
    if P.is_zero():
        raise PolyError("Mahler measure of the zero polynomial")
    if len(P.vars) > 2:
        used = P.used_vars()
        if len(used) > 2:
            raise PolyError(f"at most two variables supported, got {used}")
        P = P.with_vars(used)
    while len(P.vars) < 2:
        P = P.with_vars(P.vars + ("_" * (len(P.vars) + 1),))
    return P


def _unit_circle_angles(c: Sequence[complex], tol: float = 1e-7) -> list[float]:
    c = np.asarray(c, dtype=complex)
    nz = np.flatnonzero(c)
    c = c[nz[0]: nz[-1] + 1]
    if len(c) < 2:
        return []
    rs = roots(c)
    return sorted(
        float(np.angle(z) / (2 * np.pi)) % 1.0 for z in rs.roots if abs(abs(z) - 1) < tol
    )


class _SliceIntegrand:
    """theta -> sum_j log+|alpha_j(theta)| for the slice roots alpha_j."""

    def __init__(self, table: _BivariateTable):
        self.table = table
        self.calls = 0

    def logmods(self, theta: float) -> np.ndarray:
        s = self.table.slice(theta)
        self.calls += 1
        if s.degree < 1:
            return np.zeros(0)
        with np.errstate(divide="ignore"):
            return np.log(np.abs(roots(s).roots))

    def __call__(self, theta: float) -> float:
        lm = self.logmods(theta)
        return float(np.sum(lm[lm > 0]))


def _crossings(fn: _SliceIntegrand, degree: int, scan: int, xtol: float = 1e-10) -> list[float]:
    """Angles where some slice root crosses the unit circle.

    Sorted log-moduli are continuous in theta, so each sign change of one of
    them between scan points brackets a crossing, refined by bisection.
    """
    thetas = np.linspace(0.0, 1.0, scan + 1)
    rows = []
    for t in thetas:
        lm = np.sort(fn.logmods(float(t)))[::-1]
        if len(lm) != degree:
            lm = np.full(degree, np.nan)
        rows.append(lm)
    rows = np.array(rows)
    found = []
    for k in range(degree):
        col = rows[:, k]
        for i in range(scan):
            a, b = col[i], col[i + 1]
            if not (np.isfinite(a) and np.isfinite(b)) or a * b > 0 or a == b == 0:
                continue
            lo, hi, flo = float(thetas[i]), float(thetas[i + 1]), a
            while hi - lo > xtol:
                mid = 0.5 * (lo + hi)
                lm = np.sort(fn.logmods(mid))[::-1]
                fm = lm[k] if len(lm) == degree else np.nan
                if not np.isfinite(fm):
                    break
                if (fm > 0) == (flo > 0):
                    lo, flo = mid, fm
                else:
                    hi = mid
            found.append(0.5 * (lo + hi))
    return sorted(set(round(t, 12) for t in found))


def _leading_unit_zeros(P: MultiPoly, which: int) -> int:
    table = _BivariateTable(P, which).table
    return len(_unit_circle_angles(table[-1]))


def mahler_bivariate_sliced(
    P,
    tol: float = 1e-7,
    which: int | None = None,
    scan: int = 256,
    threads: int | None = None,
    max_panels: int = 4000,
) -> MahlerResult:
    """Mahler measure of a two-variable Laurent polynomial by Jensen slicing.

    With ``P = a0(y) * prod_j (x - alpha_j(y))`` this computes
    ``m(a0) + integral over theta of sum_j log+|alpha_j(exp(2 pi i theta))|``.
    ``which`` selects the variable placed on the circle (default: the second
    one unless the first has a leading coefficient with fewer unit-circle
    zeros).  Root crossings of the unit circle and zeros of ``a0`` on the circle
    are located first and used as panel breakpoints.
    """
    P = _two_var(P)
    if which is None:
        which = 1
        if _leading_unit_zeros(P, 1) > _leading_unit_zeros(P, 0):
            which = 0
    table = _BivariateTable(P, which)
    a0 = table.table[-1]
    a0_int = [int(round(v)) for v in a0]
    a0_cyc = cyclotomic_test(a0_int)
    if a0_cyc:
        m0 = MahlerResult(0.0, 0.0, "univariate-jensen")
    else:
        m0 = mahler_univariate(a0_int)
    degree = table.table.shape[0] - 1
    diag = {
        "fixed_variable": P.vars[which],
        "degree": degree,
        "a0_cyclotomic": a0_cyc,
        "m_a0": m0.value,
    }
    if degree == 0:
        return MahlerResult(m0.value, m0.error_estimate, "bivariate-sliced", diag)
    fn = _SliceIntegrand(table)
    hints = _crossings(fn, degree, scan) + _unit_circle_angles(a0)
    scan_calls = fn.calls
    q = integrate_adaptive(fn, 0.0, 1.0, tol=tol, hint_points=hints, max_panels=max_panels, workers=threads)
    diag.update(
        hints=len(hints),
        panels=q.panels,
        evaluations=q.evaluations,
        scan_evaluations=scan_calls,
        quadrature_converged=q.converged,
    )
    return MahlerResult(m0.value + q.value, m0.error_estimate + q.error_estimate, "bivariate-sliced", diag)


def mahler_bivariate_grid(P, N: int = 2048) -> MahlerResult:
    """Mean of log|P| over the N x N torus grid (trapezoidal rule).

    Points where ``P`` vanishes numerically are skipped and counted.  The
    error estimate is the difference from the N/2 subgrid.
    """
    if N < 16 or N % 2:
        raise ValueError("grid size must be an even integer >= 16")
    P = _two_var(P)
    table = _BivariateTable(P, 1).table
    mean, skipped, mean_h, skipped_h = kernels.grid_logmean(table, N)
    return MahlerResult(
        float(mean),
        float(abs(mean - mean_h)),
        "bivariate-grid",
        {"N": N, "skipped": int(skipped), "skipped_half": int(skipped_h), "half_grid_value": float(mean_h)},
    )


# ---------------------------------------------------------------------------
# Smyth's identity


def chi3(n: int) -> int:
    """The odd character mod 3: 1, -1, 0 for n = 1, 2, 0 mod 3."""
    return (0, 1, -1)[n % 3]


def dirichlet_L_chi3(s: float = 2.0, tol: float = 1e-15) -> float:
    """L(chi_-3, s) = sum chi(n) n^-s for s > 1.

    Consecutive terms 1/(3k+1)^s - 1/(3k+2)^s are paired, summed directly for
    k < K and the remaining tail is replaced by its Euler-Maclaurin expansion.
    """
    if s <= 1:
        raise ValueError("the series is only used for s > 1")
    K = 64
    while True:
        f = lambda x: (3 * x + 1) ** -s - (3 * x + 2) ** -s
        df = lambda x: -3 * s * ((3 * x + 1) ** (-s - 1) - (3 * x + 2) ** (-s - 1))
        d3 = lambda x: -27 * s * (s + 1) * (s + 2) * ((3 * x + 1) ** (-s - 3) - (3 * x + 2) ** (-s - 3))
        d5 = lambda x: -243 * s * (s + 1) * (s + 2) * (s + 3) * (s + 4) * (
            (3 * x + 1) ** (-s - 5) - (3 * x + 2) ** (-s - 5)
        )
        head = math.fsum(f(k) for k in range(K))
        integral = ((3 * K + 1) ** (1 - s) - (3 * K + 2) ** (1 - s)) / (3 * (s - 1))
        tail = integral + f(K) / 2 - df(K) / 12 + d3(K) / 720
        if abs(d5(K)) / 30240 < tol or K > 1 << 20:
            return head + tail
        K *= 4


def verify_smyth(tol: float = 1e-6, quad_tol: float = 1e-9) -> dict:
    """Compare m(1 + x + y) with (3 sqrt 3 / 4 pi) L(chi_-3, 2)."""
    lhs = mahler_bivariate_sliced(parse_poly("1 + x + y", ("x", "y")), tol=quad_tol)
    rhs = SMYTH_FACTOR * dirichlet_L_chi3(2.0)
    diff = abs(lhs.value - rhs)
    return {
        "lhs": lhs.value,
        "rhs": rhs,
        "difference": diff,
        "error_estimate": lhs.error_estimate,
        "tolerance": tol,
        "passed": bool(diff < tol),
    }
