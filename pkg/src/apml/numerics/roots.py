from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._backend import kernels


class RootFindingError(ArithmeticError):
    """Aberth iteration hit its cap without converging."""


@dataclass(frozen=True)
class RootSet:
    roots: np.ndarray
    residuals: np.ndarray  # relative backward error |p(z)| / sum |c_k| |z|^k
    multiplicity_hint: tuple[int, ...]

    def __len__(self):
        return len(self.roots)


def _coeffs(p) -> np.ndarray:
    c = getattr(p, "coeffs", p)
    c = np.asarray(c, dtype=complex).ravel()
    nz = np.flatnonzero(c)
    return c[: nz[-1] + 1] if nz.size else c[:0]


def _backward_error(c: np.ndarray, z: np.ndarray) -> np.ndarray:
    num = np.abs(np.polyval(c[::-1], z))
    den = np.polyval(np.abs(c[::-1]), np.abs(z))
    return num / np.where(den > 0, den, 1.0)


def _polish(c: np.ndarray, z: np.ndarray, steps: int = 2) -> np.ndarray:
    dc = c[1:] * np.arange(1, len(c))
    rev, drev = c[::-1], dc[::-1]
    z = z.copy()
    for _ in range(steps):
        p = np.polyval(rev, z)
        dp = np.polyval(drev, z)
        ok = dp != 0
        cand = z.copy()
        cand[ok] = z[ok] - p[ok] / dp[ok]
        better = np.abs(np.polyval(rev, cand)) < np.abs(p)
        z = np.where(better, cand, z)
    return z


def _multiplicities(z: np.ndarray, tol: float) -> tuple[int, ...]:
    out = []
    for k in range(len(z)):
        close = np.abs(z - z[k]) <= tol * (1 + abs(z[k]))
        out.append(int(close.sum()))
    return tuple(out)


def roots(p, tol: float = 1e-12, maxiter: int = 200) -> RootSet:
    """All complex roots of ``p`` (UniComplexPoly or coefficients, constant first).

    Simultaneous Aberth-Ehrlich iteration followed by guarded Newton polishing.
    Raises :class:`RootFindingError` if the iteration cap is reached.
    """
    c = _coeffs(p)
    if len(c) < 2:
        raise ValueError("roots() needs a polynomial of degree >= 1")
    z, it, ok = kernels.aberth(c, tol, maxiter)
    if not ok:
        raise RootFindingError(f"Aberth iteration did not converge in {maxiter} steps")
    z = _polish(c, np.asarray(z, dtype=complex))
    return RootSet(z, _backward_error(c, z), _multiplicities(z, 1e-6))
