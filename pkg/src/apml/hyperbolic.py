"""Ideal triangulations: gluing equations, shapes, volumes and holonomy curves.

A triangulation is pure exponent data.  Each gluing row ``(a, b, sign)``
stands for ``prod_i z_i^a_i (1 - z_i)^b_i = sign``; the cusp rows give the
holonomy coordinates ``x = prod z^e (1-z)^f`` and ``y = prod z^c (1-z)^d``.
"""
from __future__ import annotations

import cmath
import itertools
import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Sequence

import numpy as np

from .numerics import bloch_wigner, newton_solve
from .polycore import MultiPoly, PolyError, resultant

DEGENERATE = 1e-9
MAX_ELIMINATION_TETRAHEDRA = 4


class TriangulationError(ValueError):
    pass


class ShapeSolveError(ArithmeticError):
    pass


class ScaleGuardError(ValueError):
    """Input too large for exact elimination."""


class BranchJumpError(ArithmeticError):
    pass


@dataclass(frozen=True)
class GluingRow:
    a: tuple[int, ...]
    b: tuple[int, ...]
    sign: int = 1


@dataclass(frozen=True)
class Triangulation:
    n: int
    gluing_rows: tuple[GluingRow, ...]
    cusp_x: tuple[tuple[int, ...], tuple[int, ...]]  # (e, f)
    cusp_y: tuple[tuple[int, ...], tuple[int, ...]]  # (c, d)
    label: str = ""

    def __post_init__(self):
        if self.n < 0:
            raise TriangulationError("negative tetrahedron count")
        vecs = [v for r in self.gluing_rows for v in (r.a, r.b)] + list(self.cusp_x) + list(self.cusp_y)
        if any(len(v) != self.n for v in vecs):
            raise TriangulationError(f"every exponent vector must have length n = {self.n}")
        if len(self.gluing_rows) > max(self.n, 0):
            raise TriangulationError("more gluing rows than tetrahedra")
        if any(r.sign not in (1, -1) for r in self.gluing_rows):
            raise TriangulationError("gluing signs must be +1 or -1")

    @classmethod
    def from_dict(cls, d: dict) -> "Triangulation":
        try:
            n = int(d["n"])
            rows = tuple(
                GluingRow(tuple(map(int, g["a"])), tuple(map(int, g["b"])), int(g.get("sign", 1)))
                for g in d.get("gluing", [])
            )
            cx = d["cusp_x"]
            cy = d["cusp_y"]
            return cls(
                n,
                rows,
                (tuple(map(int, cx["e"])), tuple(map(int, cx["f"]))),
                (tuple(map(int, cy["c"])), tuple(map(int, cy["d"]))),
                str(d.get("label", "")),
            )
        except (KeyError, TypeError) as exc:
            raise TriangulationError(f"malformed triangulation document: {exc}") from exc

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "n": self.n,
            "gluing": [{"a": list(r.a), "b": list(r.b), "sign": r.sign} for r in self.gluing_rows],
            "cusp_x": {"e": list(self.cusp_x[0]), "f": list(self.cusp_x[1])},
            "cusp_y": {"c": list(self.cusp_y[0]), "d": list(self.cusp_y[1])},
        }


def load_triangulation(path) -> Triangulation:
    with open(path) as fh:
        return Triangulation.from_dict(json.load(fh))


def bundled(name: str) -> Triangulation:
    """Load one of the shipped triangulation files (``fig8`` or ``toy``)."""
    text = resources.files("apml").joinpath("data", f"{name}.json").read_text()
    return Triangulation.from_dict(json.loads(text))


def builtin_fig8() -> Triangulation:
    """Two-tetrahedron triangulation of the figure-8 knot complement."""
    return Triangulation(
        2,
        (GluingRow((1, 1), (1, 1), 1),),
        ((0, 1), (1, 0)),
        ((1, 0), (1, 0)),
        "figure-8",
    )


@dataclass(frozen=True)
class ShapeVector:
    z: np.ndarray

    def __post_init__(self):
        z = np.asarray(self.z, dtype=complex).ravel()
        if np.any(np.abs(z) < 1e-12) or np.any(np.abs(1 - z) < 1e-12):
            raise ShapeSolveError(f"shape parameter at 0 or 1: {z}")
        object.__setattr__(self, "z", z)

    @property
    def geometric(self) -> bool:
        return bool(np.all(self.z.imag > 0))

    def conjugate(self) -> "ShapeVector":
        return ShapeVector(np.conj(self.z))

    def __len__(self):
        return len(self.z)


@dataclass(frozen=True)
class HolonomyPoint:
    x: complex
    y: complex | None = None  # None: the longitude coordinate is left free

    def __post_init__(self):
        if self.x == 0 or self.y == 0:
            raise ValueError("holonomy coordinates must be nonzero")


COMPLETE = HolonomyPoint(1, 1)


def _mono(z, e, f):
    return complex(np.prod(z ** np.asarray(e)) * np.prod((1 - z) ** np.asarray(f)))


def _logmono(z, e, f):
    return complex(np.sum(np.asarray(e) * np.log(z) + np.asarray(f) * np.log(1 - z)))


def _principal(w: complex) -> complex:
    return complex(w.real, w.imag - 2 * math.pi * round(w.imag / (2 * math.pi)))


def _shapes(s) -> np.ndarray:
    return s.z if isinstance(s, ShapeVector) else np.asarray(s, dtype=complex)


def residuals(T: Triangulation, s, target: HolonomyPoint | None = None) -> np.ndarray:
    """Logarithmic residuals, reduced to the principal strip mod 2 pi i.

    One entry per gluing row, then (if ``target`` is given) the meridian and
    longitude rows against ``log x`` and ``log y``.
    """
    z = _shapes(s)
    if np.any(z == 0) or np.any(z == 1):
        raise ShapeSolveError("shape at 0 or 1")
    out = [_principal(_logmono(z, r.a, r.b) - (0j if r.sign == 1 else 1j * math.pi)) for r in T.gluing_rows]
    if target is not None:
        out.append(_principal(_logmono(z, *T.cusp_x) - cmath.log(target.x)))
        if target.y is not None:
            out.append(_principal(_logmono(z, *T.cusp_y) - cmath.log(target.y)))
    return np.array(out, dtype=complex)


def _rows(T: Triangulation, target: HolonomyPoint | None):
    rows = [(r.a, r.b, complex(r.sign)) for r in T.gluing_rows]
    if target is not None:
        rows.append((*T.cusp_x, complex(target.x)))
        if target.y is not None:
            rows.append((*T.cusp_y, complex(target.y)))
    return rows


def multiplicative_residuals(T: Triangulation, s, target: HolonomyPoint | None = None) -> np.ndarray:
    """``prod z^a (1-z)^b - rhs`` for each row (same layout as :func:`residuals`)."""
    z = _shapes(s)
    return np.array([_mono(z, e, f) - rhs for e, f, rhs in _rows(T, target)], dtype=complex)


def multiplicative_jacobian(T: Triangulation, s, target: HolonomyPoint | None = None) -> np.ndarray:
    z = _shapes(s)
    rows = _rows(T, target)
    J = np.zeros((len(rows), len(z)), dtype=complex)
    for k, (e, f, _) in enumerate(rows):
        m = _mono(z, e, f)
        J[k] = m * (np.asarray(e) / z - np.asarray(f) / (1 - z))
    return J


def solve_shapes(
    T: Triangulation,
    target: HolonomyPoint = COMPLETE,
    init=None,
    tol: float = 1e-12,
) -> ShapeVector:
    """Solve the gluing and cusp equations for the shapes by damped Newton.

    With ``target.y`` set the system may be overdetermined (gluing rows plus
    both cusp rows); Newton then takes least-squares steps and convergence
    still requires every residual to vanish.  Default start: all shapes
    ``exp(i pi / 3)``.
    """
    if T.n == 0:
        raise ShapeSolveError("triangulation has no tetrahedra")
    z0 = np.full(T.n, cmath.exp(1j * math.pi / 3)) if init is None else _shapes(init)
    if len(z0) != T.n:
        raise ShapeSolveError(f"initial shape vector has length {len(z0)}, expected {T.n}")
    if len(_rows(T, target)) < T.n:
        raise ShapeSolveError("underdetermined system: fewer equations than shapes")
    out = newton_solve(
        lambda z: multiplicative_residuals(T, z, target),
        lambda z: multiplicative_jacobian(T, z, target),
        z0,
        tol=tol,
    )
    z = out.solution
    if not out.converged:
        raise ShapeSolveError(f"Newton did not converge (residual {out.residual_norm:.3e})")
    if np.any(np.abs(z) < DEGENERATE) or np.any(np.abs(1 - z) < DEGENERATE):
        raise ShapeSolveError(f"converged to a degenerate shape {z}")
    return ShapeVector(z)


def volume(s) -> float:
    """Sum of Bloch-Wigner values of the shapes."""
    return float(sum(bloch_wigner(complex(w)) for w in _shapes(s)))


def holonomy(T: Triangulation, s) -> HolonomyPoint:
    z = _shapes(s)
    return HolonomyPoint(_mono(z, *T.cusp_x), _mono(z, *T.cusp_y))


# ---------------------------------------------------------------------------
# elimination


def _equation(vars, n, e, f, rhs: MultiPoly) -> MultiPoly:
    """``prod z^e (1-z)^f = rhs`` as ``left - rhs * right`` with nonnegative exponents."""
    one = MultiPoly.const(1, vars)
    left, right = one, one
    for i in range(n):
        zi = MultiPoly.var(f"z{i + 1}", vars)
        wi = one - zi
        for base, k in ((zi, e[i]), (wi, f[i])):
            if k > 0:
                left = left * base ** k
            elif k < 0:
                right = right * base ** (-k)
    return left - rhs * right


def gluing_polynomials(T: Triangulation) -> list[MultiPoly]:
    """Integer polynomial form of every gluing and cusp equation in z_i, x, y."""
    vars = tuple(f"z{i + 1}" for i in range(T.n)) + ("x", "y")
    eqs = [_equation(vars, T.n, r.a, r.b, MultiPoly.const(r.sign, vars)) for r in T.gluing_rows]
    eqs.append(_equation(vars, T.n, *T.cusp_x, MultiPoly.var("x", vars)))
    eqs.append(_equation(vars, T.n, *T.cusp_y, MultiPoly.var("y", vars)))
    return [p for p in eqs if not p.is_zero()]


def _eliminate(eqs: list[MultiPoly], order: Sequence[str]) -> list[MultiPoly] | None:
    eqs = [e.strip() for e in eqs]
    for var in order:
        having = [e for e in eqs if e.degree(var) > 0]
        if not having:
            continue
        rest = [e for e in eqs if e.degree(var) <= 0]
        pivot = min(having, key=lambda e: (e.degree(var), len(e)))
        others = [e for e in having if e is not pivot]
        for o in others:
            r = resultant(pivot, o, var)
            if r.is_zero():
                return None
            r = r.strip()
            if not r.is_constant():
                rest.append(r)
        eqs = rest
    return eqs


def eliminate_H(T: Triangulation) -> MultiPoly:
    """Eliminate all shapes from the gluing/cusp equations by iterated resultants.

    Returns a polynomial in ``(x, y)`` with monomial and integer content
    removed and a positive leading coefficient.  It vanishes on the holonomy
    curve but may carry extraneous factors.
    """
    if T.n > MAX_ELIMINATION_TETRAHEDRA:
        raise ScaleGuardError(f"elimination limited to n <= {MAX_ELIMINATION_TETRAHEDRA}, got {T.n}")
    eqs = gluing_polynomials(T)
    zvars = [f"z{i + 1}" for i in range(T.n)]
    if not any(e.degree(v) > 0 for e in eqs for v in zvars):
        raise PolyError("no equation involves a shape variable; nothing to eliminate")

    def load(v):
        return sum(e.degree(v) for e in eqs)

    first = sorted(zvars, key=load)
    orders = [first] + [list(p) for p in itertools.permutations(zvars) if list(p) != first]
    for order in orders:
        out = _eliminate(eqs, order)
        if out is None:
            continue
        out = [p for p in out if not p.is_constant()]
        if not out:
            raise PolyError("elimination left no relation between x and y")
        # more equations than shapes leaves several relations; keep the smallest
        best = min(out, key=lambda p: (p.total_degree(), len(p)))
        return best.with_vars(("x", "y")).strip()
    raise PolyError("every elimination order produced a zero resultant")


# ---------------------------------------------------------------------------
# dVol along the unit circle


def _track(T: Triangulation, z: np.ndarray, t_from: float, t_to: float, step: float) -> np.ndarray:
    n_steps = max(1, int(math.ceil(abs(t_to - t_from) / step)))
    for t in np.linspace(t_from, t_to, n_steps + 1)[1:]:
        new = solve_shapes(T, HolonomyPoint(cmath.exp(1j * t)), init=z).z
        if np.max(np.abs(new - z)) > 0.1:
            raise BranchJumpError(f"shape jumped by {np.max(np.abs(new - z)):.3f} at t = {t:.4g}")
        z = new
    return z


def shapes_on_circle(T: Triangulation, t: float, start=None, step: float = 1e-3) -> ShapeVector:
    """Shapes at ``x = exp(i t)``, continued from the complete structure at t = 0."""
    if start is None:
        start = solve_shapes(T, COMPLETE).z
    return ShapeVector(_track(T, np.asarray(start, complex), 0.0, t, step))


def dvol_check(T: Triangulation, t0: float, h: float = 1e-4, step: float = 1e-3) -> dict:
    """Central-difference dVol/dt along ``x = exp(i t)`` against ``log|y(t0)|``."""
    s0 = shapes_on_circle(T, t0, step=step)
    zp = _track(T, s0.z, t0, t0 + h, step)
    zm = _track(T, s0.z, t0, t0 - h, step)
    fd = (volume(zp) - volume(zm)) / (2 * h)
    y = holonomy(T, s0).y
    ln_y = math.log(abs(y))
    # |y| = 1 up to rounding: the ratio carries no information
    ratio = fd / ln_y if abs(ln_y) > 1e-12 else None
    return {
        "t0": t0,
        "h": h,
        "finite_diff": fd,
        "ln_abs_y": ln_y,
        "ratio": ratio,
        "volume": volume(s0),
        "shapes": s0.z,
    }
