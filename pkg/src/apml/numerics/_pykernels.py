"""Pure-Python / numpy implementations of the hot kernels.

These mirror ``_ckernels.pyx`` function for function and are used when the
compiled extension is unavailable (or ``APML_PURE=1`` is set).
"""
import cmath
import math
from fractions import Fraction

import numpy as np

PI2_6 = math.pi ** 2 / 6
EPS = np.finfo(float).eps


def _bernoulli_even(count):
    """B_2, B_4, ... B_{2*count} as Fractions (Akiyama-Tanigawa)."""
    n_max = 2 * count
    a = [Fraction(0)] * (n_max + 1)
    out = {}
    for m in range(n_max + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out[m] = a[0]
    return [out[2 * k] for k in range(1, count + 1)]


# coefficients B_{2k} / (2k+1)! of the series Li2 = u - u^2/4 + sum c_k u^(2k+1)
LI2_BERNOULLI = [
    float(b / math.factorial(2 * k + 1)) for k, b in enumerate(_bernoulli_even(22), start=1)
]


def _li2_series(z):
    # Maclaurin, |z| <= 1/2: 2^-k/k^2 < 1e-17 by k = 50
    term = z
    total = z
    k = 1
    while True:
        k += 1
        term *= z
        add = term / (k * k)
        total += add
        if abs(add) < 1e-17 * abs(total) or k > 80:
            return total


def _li2_bernoulli(z):
    u = -cmath.log(1 - z)
    u2 = u * u
    total = u - u2 / 4
    p = u
    for c in LI2_BERNOULLI:
        p *= u2
        add = c * p
        total += add
        if abs(add) < 1e-17 * abs(total):
            break
    return total


def li2(z):
    """Principal-branch dilogarithm."""
    z = complex(z)
    if z == 0:
        return 0j
    if z == 1:
        return complex(PI2_6)
    r = abs(z)
    if r > 1:
        w = 1 / z
        return -PI2_6 - 0.5 * cmath.log(-z) ** 2 - li2(w)
    if r <= 0.5:
        return _li2_series(z)
    if z.real > 0.5:
        w = 1 - z
        return PI2_6 - cmath.log(z) * cmath.log(w) - li2(w)
    return _li2_bernoulli(z)


def bloch_wigner(z):
    """D(z) = Im Li2(z) + arg(1-z) log|z|; zero on the real line."""
    z = complex(z)
    if z.imag == 0.0:
        return 0.0
    return li2(z).imag + cmath.phase(1 - z) * math.log(abs(z))


def _horner2(c, z):
    p = 0j
    dp = 0j
    for a in c[::-1]:
        dp = dp * z + p
        p = p * z + a
    return p, dp


def aberth(coeffs, tol=1e-12, maxiter=200):
    """Roots of sum(coeffs[k] z^k) by Aberth-Ehrlich iteration.

    Returns ``(roots, iterations, converged)``.
    """
    c = [complex(a) for a in coeffs]
    n = len(c) - 1
    if n < 1:
        return np.zeros(0, complex), 0, True
    lead = c[-1]
    c = [a / lead for a in c]
    if n == 1:
        return np.array([-c[0]]), 0, True
    bound = 1 + max(abs(a) for a in c[:-1])
    # geometric mean of |roots| is a better start radius when it is much smaller
    r0 = abs(c[0]) ** (1.0 / n)
    radius = min(bound, max(r0, 1e-3))
    z = [radius * cmath.exp(1j * (2 * math.pi * k / n + 0.4 / n)) for k in range(n)]
    absc = [abs(a) for a in c]
    converged = False
    it = 0
    for it in range(1, maxiter + 1):
        biggest = 0.0
        backward_ok = True
        for k in range(n):
            zk = z[k]
            p, dp = _horner2(c, zk)
            if p == 0:
                continue
            scale = 0.0
            az = abs(zk)
            for a in reversed(absc):
                scale = scale * az + a
            if abs(p) > 8 * EPS * n * scale:
                backward_ok = False
            s = 0j
            for j in range(n):
                if j != k:
                    d = zk - z[j]
                    if d != 0:
                        s += 1 / d
            if dp == 0:
                w = p / (p * s) if s != 0 else 1e-8
            else:
                ratio = p / dp
                w = ratio / (1 - ratio * s)
            z[k] = zk - w
            rel = abs(w) / (1 + abs(zk))
            if rel > biggest:
                biggest = rel
        if biggest < tol or backward_ok:
            converged = True
            break
    return np.array(z), it, converged


def grid_logmean(table, N, zero_tol=1e-12):
    """Mean of log|P| over the N x N torus grid and over its N/2 subgrid.

    ``table[i, j]`` is the coefficient of x^i y^j.  Points where |P| falls
    below ``zero_tol * sum|coeffs|`` count as exact zeros and are skipped.
    Returns ``(mean_N, skipped_N, mean_half, skipped_half)``.
    """
    table = np.asarray(table, dtype=float)
    nx, ny = table.shape
    floor = zero_tol * np.abs(table).sum()
    k = np.arange(N)
    root = np.exp(2j * np.pi * k / N)
    xpow = root[:, None] ** np.arange(nx)[None, :]
    ypow = root[:, None] ** np.arange(ny)[None, :]
    right = table @ ypow.T  # (nx, N): coefficient of x^i at each y
    total = 0.0
    count = 0
    total_h = 0.0
    count_h = 0
    block = max(1, 2_000_000 // N)
    block += block % 2
    for start in range(0, N, block):
        vals = np.abs(xpow[start:start + block] @ right)
        ok = vals > floor
        total += np.log(vals[ok]).sum()
        count += int(ok.sum())
        sub = vals[(start % 2)::2, ::2]
        ok_h = sub > floor
        total_h += np.log(sub[ok_h]).sum()
        count_h += int(ok_h.sum())
    n_half = (N // 2) ** 2
    return (
        total / count if count else -np.inf,
        N * N - count,
        total_h / count_h if count_h else -np.inf,
        n_half - count_h,
    )
