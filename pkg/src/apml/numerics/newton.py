from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np


class SingularJacobianError(ArithmeticError):
    pass


@dataclass(frozen=True)
class NewtonOutcome:
    solution: np.ndarray
    residual_norm: float
    iterations: int
    converged: bool


def _sup(v) -> float:
    return float(np.max(np.abs(v))) if len(v) else 0.0


def jacobian_check(residual, jacobian, z, h: float = 1e-6) -> float:
    """Max relative gap between ``jacobian(z)`` and central differences."""
    z = np.asarray(z, dtype=complex)
    J = np.asarray(jacobian(z), dtype=complex)
    fd = np.empty_like(J)
    for i in range(len(z)):
        e = np.zeros(len(z), complex)
        e[i] = h
        fd[:, i] = (np.asarray(residual(z + e)) - np.asarray(residual(z - e))) / (2 * h)
    scale = max(1.0, float(np.max(np.abs(J))))
    return float(np.max(np.abs(J - fd))) / scale


def newton_solve(
    residual: Callable[[np.ndarray], np.ndarray],
    jacobian: Callable[[np.ndarray], np.ndarray],
    init,
    tol: float = 1e-12,
    maxiter: int = 100,
    max_halvings: int = 20,
    check_jacobian: bool = False,
) -> NewtonOutcome:
    """Damped Newton for F(z) = 0 with F: C^n -> C^m (m >= n, least squares if m > n).

    A step is halved (up to ``max_halvings`` times) until the residual sup-norm
    decreases.  Raises :class:`SingularJacobianError` when the Jacobian loses
    rank.
    """
    z = np.array(init, dtype=complex)
    if check_jacobian:
        gap = jacobian_check(residual, jacobian, z)
        if gap > 1e-6:
            raise ValueError(f"jacobian disagrees with finite differences (gap {gap:.2e})")
    F = np.asarray(residual(z), dtype=complex)
    norm = _sup(F)
    it = 0
    while norm >= tol and it < maxiter:
        it += 1
        J = np.asarray(jacobian(z), dtype=complex)
        if J.size == 0:
            break
        s = np.linalg.svd(J, compute_uv=False)
        if s[-1] <= 1e-14 * max(s[0], 1.0) or len(s) < len(z):
            raise SingularJacobianError(f"singular Jacobian at iteration {it}")
        step = np.linalg.lstsq(J, -F, rcond=None)[0]
        lam = 1.0
        for _ in range(max_halvings + 1):
            cand = z + lam * step
            Fc = np.asarray(residual(cand), dtype=complex)
            nc = _sup(Fc)
            if np.isfinite(nc) and nc < norm:
                break
            lam *= 0.5
        else:
            break
        z, F, norm = cand, Fc, nc
    return NewtonOutcome(z, norm, it, bool(norm < tol))
