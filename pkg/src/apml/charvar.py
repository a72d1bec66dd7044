"""Symbolic SL2 matrices over integer Laurent polynomial rings.

Compiles group presentations into representation-variety equations and
checks the figure-8 character-variety identities exactly.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping, Sequence

from .polycore import MultiPoly, divides_exactly, parse_poly

MAX_GENERATORS = 4


class PresentationError(ValueError):
    pass


class PresentationTooLarge(PresentationError):
    """More generators than the symbolic compiler accepts."""


def _p(text, vars=None) -> MultiPoly:
    return parse_poly(text, vars) if isinstance(text, str) else text


@dataclass(frozen=True)
class PolyMatrix2:
    p11: MultiPoly
    p12: MultiPoly
    p21: MultiPoly
    p22: MultiPoly
    unimodular: bool = False

    @classmethod
    def of(cls, rows, vars=None, unimodular=False) -> "PolyMatrix2":
        (a, b), (c, d) = rows
        conv = lambda e: MultiPoly.const(e, vars or ()) if isinstance(e, int) else _p(e, vars)
        return cls(conv(a), conv(b), conv(c), conv(d), unimodular)

    @classmethod
    def identity(cls, vars=()) -> "PolyMatrix2":
        one, zero = MultiPoly.const(1, vars), MultiPoly.zero(vars)
        return cls(one, zero, zero, one, True)

    def entries(self) -> tuple[MultiPoly, ...]:
        return (self.p11, self.p12, self.p21, self.p22)

    def det(self) -> MultiPoly:
        return self.p11 * self.p22 - self.p12 * self.p21

    def checked(self) -> "PolyMatrix2":
        """Tag as unimodular after verifying det == 1 exactly."""
        if self.det() != 1:
            raise ValueError("determinant is not identically 1")
        return PolyMatrix2(*self.entries(), True)

    def __mul__(self, o: "PolyMatrix2") -> "PolyMatrix2":
        return PolyMatrix2(
            self.p11 * o.p11 + self.p12 * o.p21,
            self.p11 * o.p12 + self.p12 * o.p22,
            self.p21 * o.p11 + self.p22 * o.p21,
            self.p21 * o.p12 + self.p22 * o.p22,
            self.unimodular and o.unimodular,
        )

    def __sub__(self, o: "PolyMatrix2") -> "PolyMatrix2":
        return PolyMatrix2(*(a - b for a, b in zip(self.entries(), o.entries())))

    def __eq__(self, o) -> bool:
        return isinstance(o, PolyMatrix2) and all(a == b for a, b in zip(self.entries(), o.entries()))

    def __hash__(self):
        return hash(self.entries())

    def adjugate(self) -> "PolyMatrix2":
        return PolyMatrix2(self.p22, -self.p12, -self.p21, self.p11, self.unimodular)

    def inverse(self) -> "PolyMatrix2":
        if not self.unimodular:
            raise ValueError("inverse needs a matrix tagged unimodular (det = 1)")
        return self.adjugate()

    def trace(self) -> MultiPoly:
        return self.p11 + self.p22

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries())


def mul(a: PolyMatrix2, b: PolyMatrix2) -> PolyMatrix2:
    return a * b


def inverse_unimodular(m: PolyMatrix2) -> PolyMatrix2:
    return m.inverse()


def trace(m: PolyMatrix2) -> MultiPoly:
    return m.trace()


# ---------------------------------------------------------------------------
# words and presentations


@dataclass(frozen=True)
class GroupPresentation:
    n_generators: int
    relators: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n_generators < 1:
            raise PresentationError("need at least one generator")
        for w in self.relators:
            if not w:
                raise PresentationError("empty relator")
            if any(k == 0 or abs(k) > self.n_generators for k in w):
                raise PresentationError(f"generator index out of range in {w}")

    @classmethod
    def parse(cls, relators: str, n_generators: int | None = None) -> "GroupPresentation":
        """Letters a, b, c, ... are generators, upper case their inverses.

        ``"abAB"`` is the commutator; several relators are comma separated.
        """
        words = [w.strip() for w in relators.split(",") if w.strip()]
        out = []
        for w in words:
            if not w.isalpha() or not w.isascii():
                raise PresentationError(f"relator {w!r} must be ASCII letters")
            out.append(word_from_letters(w))
        top = max((abs(k) for w in out for k in w), default=1)
        return cls(n_generators or top, tuple(out))


def word_from_letters(w: str) -> tuple[int, ...]:
    return tuple((ord(ch) - 96) if ch.islower() else -(ord(ch) - 64) for ch in w)


def eval_word(word: Sequence[int] | str, assignment: Mapping[int, PolyMatrix2]) -> PolyMatrix2:
    """Left-to-right product, with adjugates for inverse letters."""
    if isinstance(word, str):
        word = word_from_letters(word)
    if not word:
        raise ValueError("empty word")
    out = None
    for k in word:
        if abs(k) not in assignment:
            raise KeyError(f"generator {abs(k)} has no assigned matrix")
        m = assignment[abs(k)]
        m = m if k > 0 else m.inverse()
        out = m if out is None else out * m
    return out


def generic_matrices(n: int) -> tuple[tuple[str, ...], dict[int, PolyMatrix2]]:
    names = tuple(f"{s}{i}" for i in range(1, n + 1) for s in "abcd")
    mats = {}
    for i in range(1, n + 1):
        a, b, c, d = (MultiPoly.var(f"{s}{i}", names) for s in "abcd")
        # formally unimodular: the det relation is one of the emitted equations
        mats[i] = PolyMatrix2(a, b, c, d, True)
    return names, mats


def presentation_to_equations(P: GroupPresentation) -> list[MultiPoly]:
    """Defining equations of Hom(G, SL2) in the 4n matrix entries.

    ``n`` determinant equations, then four entries of ``word - identity`` for
    each relator, with inverses written as adjugates: ``4k + n`` in total.
    """
    if P.n_generators > MAX_GENERATORS:
        raise PresentationTooLarge(f"at most {MAX_GENERATORS} generators supported")
    names, mats = generic_matrices(P.n_generators)
    eqs = [mats[i].det() - 1 for i in range(1, P.n_generators + 1)]
    ident = PolyMatrix2.identity(names)
    for w in P.relators:
        eqs.extend((eval_word(w, mats) - ident).entries())
    return eqs


FIG8_PRESENTATION = GroupPresentation.parse("AbaBabABaB")
"""Relator w a w^-1 b^-1 with w = a^-1 b a b^-1."""

TORUS_PRESENTATION = GroupPresentation.parse("abAB")


# ---------------------------------------------------------------------------
# figure-8 identities

FIG8_VARS = ("t", "u")


def fig8_matrices() -> tuple[PolyMatrix2, PolyMatrix2]:
    rho_a = PolyMatrix2.of((("t", 1), (0, "t^-1")), FIG8_VARS).checked()
    rho_b = PolyMatrix2.of((("t", 0), ("2 - u", "t^-1")), FIG8_VARS).checked()
    return rho_a, rho_b


def Z_poly() -> MultiPoly:
    """(x^2 - 2)(1 - u) + 1 - u + u^2."""
    return parse_poly("(x^2 - 2)*(1 - u) + 1 - u + u^2", ("x", "u"))


def _is_unit(q: MultiPoly | None) -> bool:
    return q is not None and q.is_monomial() and abs(q.terms[0][1]) == 1


def fig8_defect() -> tuple[PolyMatrix2, dict]:
    """rho(w) rho(a) - rho(b) rho(w) with w = a^-1 b a b^-1 and its verdict."""
    ra, rb = fig8_matrices()
    w = eval_word((-1, 2, 1, -2), {1: ra, 2: rb})
    defect = w * ra - rb * w
    Zt = Z_poly().substitute("x", parse_poly("t + t^-1", FIG8_VARS)).with_vars(FIG8_VARS)
    q12 = divides_exactly(defect.p12, Zt)
    q21 = divides_exactly(defect.p21, Zt * parse_poly("u - 2", FIG8_VARS))
    verdict = {
        "diagonal_zero": defect.p11.is_zero() and defect.p22.is_zero(),
        "top_right_unit_times_Z": _is_unit(q12),
        "bottom_left_u_minus_2_times_Z": _is_unit(q21),
        "top_right_quotient": None if q12 is None else q12.to_string(),
        "bottom_left_quotient": None if q21 is None else q21.to_string(),
    }
    verdict["passed"] = bool(
        verdict["diagonal_zero"] and verdict["top_right_unit_times_Z"] and verdict["bottom_left_u_minus_2_times_Z"]
    )
    return defect, verdict


def elliptic_identity(Z: MultiPoly | None = None) -> MultiPoly:
    """x^2 (u-1)^2 - (u^3 - 2u + 1) + (u - 1) Z, which should vanish identically."""
    Z = Z_poly() if Z is None else Z
    v = ("x", "u")
    return parse_poly("x^2*(u - 1)*(u - 1) - (u^3 - 2*u + 1)", v) + parse_poly("u - 1", v) * Z


def elliptic_identity_check(Z: MultiPoly | None = None) -> bool:
    return elliptic_identity(Z).is_zero()


def random_unimodular(rng: random.Random, max_len: int = 12) -> PolyMatrix2:
    """Product of random elementary matrices [[1, +-1], [0, 1]], [[1, 0], [+-1, 1]]."""
    m = [[1, 0], [0, 1]]
    for _ in range(rng.randint(1, max_len)):
        s = rng.choice((1, -1))
        e = [[1, s], [0, 1]] if rng.random() < 0.5 else [[1, 0], [s, 1]]
        m = [[m[i][0] * e[0][j] + m[i][1] * e[1][j] for j in range(2)] for i in range(2)]
    return PolyMatrix2.of(m, unimodular=True)


def trace_identity_holds(A: PolyMatrix2, B: PolyMatrix2) -> bool:
    """tr(AB) + tr(AB^-1) == tr(A) tr(B), exactly."""
    return (A * B).trace() + (A * B.inverse()).trace() == A.trace() * B.trace()


def trace_identity_check(samples: int = 100, seed: int | None = None, symbolic: bool = False) -> bool:
    rng = random.Random(seed)
    ok = all(trace_identity_holds(random_unimodular(rng), random_unimodular(rng)) for _ in range(samples))
    if symbolic:
        ok = ok and symbolic_trace_identity().is_zero()
    return ok


def symbolic_trace_identity() -> MultiPoly:
    """tr(AB) + tr(A adj B) - tr A tr B for generic 2x2 symbols.

    Vanishes without using det = 1, since B + adj(B) = tr(B) I.
    """
    names, mats = generic_matrices(2)
    A, B = mats[1], mats[2]
    return (A * B).trace() + (A * B.adjugate()).trace() - A.trace() * B.trace()


def reducible_trace_check() -> dict:
    """Upper-triangular rho(a), rho(b) with equal diagonals m, 1/m."""
    v = ("m", "s1", "s2")
    ra = PolyMatrix2.of((("m", "s1"), (0, "m^-1")), v).checked()
    rb = PolyMatrix2.of((("m", "s2"), (0, "m^-1")), v).checked()
    ab_inv = ra * rb.inverse()
    ab = ra * rb
    m2 = parse_poly("m^2", v)
    m_2 = parse_poly("m^-2", v)
    ra0 = PolyMatrix2(ra.p11, MultiPoly.zero(v), ra.p21, ra.p22, True)
    rb0 = PolyMatrix2(rb.p11, MultiPoly.zero(v), rb.p21, rb.p22, True)
    commutator = eval_word((1, 2, -1, -2), {1: ra0, 2: rb0})
    out = {
        "trace_ab_inv": ab_inv.trace().to_string(),
        "trace_ab_inv_is_2": ab_inv.trace() == 2,
        "ab_inv_unipotent": ab_inv.p11 == 1 and ab_inv.p22 == 1 and ab_inv.p21.is_zero(),
        "ab_diagonal": ab.p11 == m2 and ab.p22 == m_2 and ab.p21.is_zero(),
        "trace_ab": ab.trace().to_string(),
        "diagonal_commutator_trace_2": commutator.trace() == 2,
    }
    out["passed"] = all(v for k, v in out.items() if isinstance(v, bool))
    return out
