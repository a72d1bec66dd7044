"""Floating-point kernels: roots, quadrature, dilogarithm, Newton.

The hot loops (Aberth iteration, Li2, torus-grid log means) come from the
compiled ``_ckernels`` extension when it is built, otherwise from
``_pykernels``.  ``BACKEND`` says which one is active.
"""
from ._backend import BACKEND, kernels
from .roots import RootFindingError, RootSet, roots
from .quadrature import QuadratureResult, integrate_adaptive
from .newton import NewtonOutcome, SingularJacobianError, newton_solve, jacobian_check


def li2(z) -> complex:
    """Principal-branch dilogarithm Li2(z)."""
    return kernels.li2(z)


def bloch_wigner(z) -> float:
    """Bloch-Wigner function ``Im Li2(z) + arg(1-z) log|z|``.

    Returns 0 on the real axis, including the limit points 0 and 1.
    """
    return kernels.bloch_wigner(z)


__all__ = [
    "BACKEND",
    "kernels",
    "RootFindingError",
    "RootSet",
    "roots",
    "QuadratureResult",
    "integrate_adaptive",
    "NewtonOutcome",
    "SingularJacobianError",
    "newton_solve",
    "jacobian_check",
    "li2",
    "bloch_wigner",
]
