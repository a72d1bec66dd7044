# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: Aberth root iteration, dilogarithm, torus-grid log mean.

Same signatures and return conventions as ``_pykernels``.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport log, M_PI

from ._pykernels import LI2_BERNOULLI

from libc.complex cimport cexp, clog, cabs, creal, cimag, carg

cdef double PI2_6 = M_PI * M_PI / 6.0
cdef double EPS = 2.220446049250313e-16
cdef double BERN[22]
for _k in range(22):
    BERN[_k] = LI2_BERNOULLI[_k]


cdef double complex _li2_series(double complex z) nogil:
    cdef double complex term = z, total = z, add
    cdef int k = 1
    while True:
        k += 1
        term = term * z
        add = term / (k * k)
        total = total + add
        if cabs(add) < 1e-17 * cabs(total) or k > 80:
            return total


cdef double complex _li2_bernoulli(double complex z) nogil:
    cdef double complex u = -clog(1 - z)
    cdef double complex u2 = u * u
    cdef double complex total = u - u2 / 4
    cdef double complex p = u, add
    cdef int k
    for k in range(22):
        p = p * u2
        add = BERN[k] * p
        total = total + add
        if cabs(add) < 1e-17 * cabs(total):
            break
    return total


cdef double complex _li2(double complex z) nogil:
    cdef double r
    cdef double complex w, lz
    if z == 0:
        return 0
    if z == 1:
        return PI2_6
    r = cabs(z)
    if r > 1:
        w = 1 / z
        lz = clog(-z)
        return -PI2_6 - 0.5 * lz * lz - _li2(w)
    if r <= 0.5:
        return _li2_series(z)
    if creal(z) > 0.5:
        w = 1 - z
        return PI2_6 - clog(z) * clog(w) - _li2(w)
    return _li2_bernoulli(z)


cdef double _bloch_wigner(double complex z) nogil:
    if cimag(z) == 0.0:
        return 0.0
    return cimag(_li2(z)) + carg(1 - z) * log(cabs(z))


def li2(z):
    """Principal-branch dilogarithm."""
    return complex(_li2(complex(z)))


def bloch_wigner(z):
    """D(z) = Im Li2(z) + arg(1-z) log|z|; zero on the real line."""
    return _bloch_wigner(complex(z))


def aberth(coeffs, double tol=1e-12, int maxiter=200):
    """Roots of sum(coeffs[k] z^k) by Aberth-Ehrlich iteration.

    Returns ``(roots, iterations, converged)``.
    """
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] c = np.array(coeffs, dtype=np.complex128)
    cdef int n = c.shape[0] - 1
    if n < 1:
        return np.zeros(0, complex), 0, True
    cdef double complex lead = c[n]
    cdef int k, j, it = 0
    for k in range(n + 1):
        c[k] = c[k] / lead
    if n == 1:
        return np.array([-c[0]]), 0, True
    cdef double bound = 0, r0, radius
    for k in range(n):
        if cabs(c[k]) > bound:
            bound = cabs(c[k])
    bound += 1
    r0 = cabs(c[0]) ** (1.0 / n)
    radius = min(bound, max(r0, 1e-3))
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] z = np.empty(n, dtype=np.complex128)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] absc = np.abs(c)
    for k in range(n):
        z[k] = radius * cexp(1j * (2 * M_PI * k / n + 0.4 / n))
    cdef double complex zk, p, dp, s, d, w, ratio
    cdef double biggest, rel, scale, az
    cdef bint backward_ok, converged = False
    with nogil:
        for it in range(1, maxiter + 1):
            biggest = 0
            backward_ok = True
            for k in range(n):
                zk = z[k]
                p = 0
                dp = 0
                for j in range(n, -1, -1):
                    dp = dp * zk + p
                    p = p * zk + c[j]
                if p == 0:
                    continue
                scale = 0
                az = cabs(zk)
                for j in range(n, -1, -1):
                    scale = scale * az + absc[j]
                if cabs(p) > 8 * EPS * n * scale:
                    backward_ok = False
                s = 0
                for j in range(n):
                    if j != k:
                        d = zk - z[j]
                        if d != 0:
                            s = s + 1 / d
                if dp == 0:
                    if s != 0:
                        w = 1 / s
                    else:
                        w = 1e-8
                else:
                    ratio = p / dp
                    w = ratio / (1 - ratio * s)
                z[k] = zk - w
                rel = cabs(w) / (1 + cabs(zk))
                if rel > biggest:
                    biggest = rel
            if biggest < tol or backward_ok:
                converged = True
                break
    return z, it, converged


def grid_logmean(table, int N, double zero_tol=1e-12):
    """Mean of log|P| over the N x N torus grid and over its N/2 subgrid.

    Returns ``(mean_N, skipped_N, mean_half, skipped_half)``.
    """
    cdef cnp.ndarray[cnp.float64_t, ndim=2] t = np.ascontiguousarray(table, dtype=np.float64)
    cdef int nx = t.shape[0], ny = t.shape[1]
    cdef double floor = zero_tol * np.abs(t).sum()
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] root = np.exp(2j * np.pi * np.arange(N) / N)
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] right = np.ascontiguousarray(
        (t @ (root[:, None] ** np.arange(ny)[None, :]).T))
    cdef int a, b, i
    cdef double complex x, v
    cdef double m, total = 0, total_h = 0
    cdef long count = 0, count_h = 0
    with nogil:
        for a in range(N):
            x = root[a]
            for b in range(N):
                v = right[nx - 1, b]
                for i in range(nx - 2, -1, -1):
                    v = v * x + right[i, b]
                m = cabs(v)
                if m > floor:
                    m = log(m)
                    total += m
                    count += 1
                    if a % 2 == 0 and b % 2 == 0:
                        total_h += m
                        count_h += 1
    cdef long n_half = (N // 2) * (N // 2)
    return (
        total / count if count else -np.inf,
        N * N - count,
        total_h / count_h if count_h else -np.inf,
        n_half - count_h,
    )
