"""Exact multivariate Laurent polynomials over the integers.

A :class:`MultiPoly` is an immutable map from integer exponent vectors to
nonzero Python ints, tied to an ordered tuple of variable names.  Exponents
may be negative.  Everything here is exact; floating point only appears in
:func:`eval_complex` and :func:`specialize_slice`.
"""
from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

__all__ = [
    "PolyError",
    "ParseError",
    "MultiPoly",
    "NewtonPolygon",
    "UniComplexPoly",
    "Slopes",
    "parse_poly",
    "add",
    "mul",
    "neg",
    "substitute_var",
    "eval_complex",
    "specialize_slice",
    "resultant",
    "resultant_bareiss",
    "resultant_subres",
    "exact_quotient",
    "divides_exactly",
    "newton_polygon",
    "boundary_slopes",
    "reciprocity_check",
    "A_FIG8",
    "H_FIG8",
]

EXPONENT_LIMIT = 2**31
BAREISS_MAX_DEGREE = 12


class PolyError(ValueError):
    """Invalid polynomial operation (bad substitution, degenerate input)."""


class ParseError(PolyError):
    def __init__(self, msg: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{msg} at position {pos}")


def _grlex_key(exp: tuple[int, ...]):
    return (sum(exp), exp)


class MultiPoly:
    """Immutable integer Laurent polynomial in named variables.

    ``terms`` is a tuple of ``(exponents, coeff)`` pairs sorted by descending
    graded-lex order on the exponent vectors; coefficients are never zero.
    """

    __slots__ = ("vars", "terms", "_map", "_hash")

    def __init__(self, vars: Sequence[str], terms: Mapping[tuple[int, ...], int] | Iterable = ()):
        vars = tuple(vars)
        if len(set(vars)) != len(vars):
            raise PolyError(f"duplicate variable names in {vars}")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[int, ...], int] = {}
        n = len(vars)
        for exp, c in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != n:
                raise PolyError(f"exponent {exp} does not match variables {vars}")
            c = int(c)
            if c:
                acc[exp] = acc.get(exp, 0) + c
        acc = {e: c for e, c in acc.items() if c}
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "_map", acc)
        object.__setattr__(
            self, "terms", tuple(sorted(acc.items(), key=lambda t: _grlex_key(t[0]), reverse=True))
        )
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # construction -------------------------------------------------------

    @classmethod
    def zero(cls, vars: Sequence[str] = ()) -> "MultiPoly":
        return cls(vars, {})

    @classmethod
    def const(cls, c: int, vars: Sequence[str] = ()) -> "MultiPoly":
        return cls(vars, {(0,) * len(tuple(vars)): c})

    @classmethod
    def var(cls, name: str, vars: Sequence[str] | None = None) -> "MultiPoly":
        vars = tuple(vars) if vars is not None else (name,)
        if name not in vars:
            vars = vars + (name,)
        exp = tuple(1 if v == name else 0 for v in vars)
        return cls(vars, {exp: 1})

    @classmethod
    def monomial(cls, vars: Sequence[str], exp: Sequence[int], coeff: int = 1) -> "MultiPoly":
        return cls(vars, {tuple(exp): coeff})

    @classmethod
    def from_univariate(cls, coeffs: Sequence[int], var: str = "x") -> "MultiPoly":
        """Build from integer coefficients, constant term first."""
        return cls((var,), {(k,): c for k, c in enumerate(coeffs)})

    # basic queries ------------------------------------------------------

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return dict(self._map)

    def coeff(self, exp: Sequence[int]) -> int:
        return self._map.get(tuple(exp), 0)

    def is_zero(self) -> bool:
        return not self._map

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._map)

    def is_monomial(self) -> bool:
        return len(self._map) == 1

    def __len__(self) -> int:
        return len(self._map)

    def __bool__(self) -> bool:
        return bool(self._map)

    def constant_value(self) -> int:
        if not self.is_constant():
            raise PolyError("polynomial is not constant")
        return self._map.get((0,) * len(self.vars), 0)

    def used_vars(self) -> tuple[str, ...]:
        return tuple(v for i, v in enumerate(self.vars) if any(e[i] for e in self._map))

    def leading_term(self) -> tuple[tuple[int, ...], int]:
        if not self.terms:
            raise PolyError("zero polynomial has no leading term")
        return self.terms[0]

    def _idx(self, var: str) -> int:
        try:
            return self.vars.index(var)
        except ValueError:
            return -1

    def degree(self, var: str) -> int:
        """Highest exponent of ``var``; -1 for the zero polynomial."""
        if not self._map:
            return -1
        i = self._idx(var)
        return max(e[i] for e in self._map) if i >= 0 else 0

    def min_degree(self, var: str) -> int:
        if not self._map:
            return 0
        i = self._idx(var)
        return min(e[i] for e in self._map) if i >= 0 else 0

    def total_degree(self) -> int:
        return max((sum(e) for e in self._map), default=-1)

    # variable universe --------------------------------------------------

    def with_vars(self, vars: Sequence[str]) -> "MultiPoly":
        """Re-express over ``vars``, which must contain every used variable."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        pos = []
        for i, v in enumerate(self.vars):
            j = vars.index(v) if v in vars else -1
            pos.append(j)
        out = {}
        for exp, c in self._map.items():
            new = [0] * len(vars)
            for i, e in enumerate(exp):
                if e:
                    if pos[i] < 0:
                        raise PolyError(f"variable {self.vars[i]!r} is used but missing from {vars}")
                    new[pos[i]] = e
            out[tuple(new)] = c
        return MultiPoly(vars, out)

    def drop_unused(self) -> "MultiPoly":
        return self.with_vars(self.used_vars())

    def _align(self, other) -> tuple["MultiPoly", "MultiPoly"]:
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(int(other), self.vars)
        if other.vars == self.vars:
            return self, other
        vars = self.vars + tuple(v for v in other.vars if v not in self.vars)
        return self.with_vars(vars), other.with_vars(vars)

    # arithmetic ---------------------------------------------------------

    def __add__(self, other) -> "MultiPoly":
        if not isinstance(other, (MultiPoly, int)):
            return NotImplemented
        a, b = self._align(other)
        out = dict(a._map)
        for e, c in b._map.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(a.vars, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.vars, {e: -c for e, c in self._map.items()})

    def __sub__(self, other) -> "MultiPoly":
        if not isinstance(other, (MultiPoly, int)):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "MultiPoly":
        return (-self) + other

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, int):
            return MultiPoly(self.vars, {e: c * other for e, c in self._map.items()})
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = self._align(other)
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in a._map.items():
            for e2, c2 in b._map.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(a.vars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            if not self.is_monomial() or abs(self.terms[0][1]) != 1:
                raise PolyError("negative powers need a unit monomial")
            (exp, c), = self.terms
            return MultiPoly(self.vars, {tuple(e * k for e in exp): c ** (-k)})
        result = MultiPoly.const(1, self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = MultiPoly.const(other, self.vars)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = self._align(other)
        return a._map == b._map

    def __hash__(self) -> int:
        if self._hash is None:
            key = frozenset(
                (tuple((v, e) for v, e in zip(self.vars, exp) if e), c) for exp, c in self._map.items()
            )
            object.__setattr__(self, "_hash", hash(key))
        return self._hash

    # structure ----------------------------------------------------------

    def shift(self, exp: Sequence[int]) -> "MultiPoly":
        """Multiply by the Laurent monomial with exponent vector ``exp``."""
        return MultiPoly(self.vars, {tuple(a + b for a, b in zip(e, exp)): c for e, c in self._map.items()})

    def monomial_content(self) -> tuple[int, ...]:
        """Component-wise minimum exponent (the largest monomial factor)."""
        if not self._map:
            return (0,) * len(self.vars)
        return tuple(min(col) for col in zip(*self._map))

    def content(self) -> int:
        return reduce(math.gcd, (abs(c) for c in self._map.values()), 0)

    def strip(self) -> "MultiPoly":
        """Remove monomial and integer content; make the leading coefficient positive."""
        if not self._map:
            return self
        g = self.content()
        mc = self.monomial_content()
        sgn = 1 if self.terms[0][1] > 0 else -1
        return MultiPoly(
            self.vars, {tuple(a - b for a, b in zip(e, mc)): sgn * (c // g) for e, c in self._map.items()}
        )

    def clear_denominators(self) -> tuple["MultiPoly", tuple[int, ...]]:
        """Shift so every exponent is nonnegative; return (poly, applied shift)."""
        mc = self.monomial_content()
        sh = tuple(-m if m < 0 else 0 for m in mc)
        return (self.shift(sh) if any(sh) else self), sh

    def coeffs_in(self, var: str) -> dict[int, "MultiPoly"]:
        """Split as ``sum_k coeff_k * var**k``; coefficients keep the full variable list."""
        i = self._idx(var)
        if i < 0:
            return {0: self} if self._map else {}
        parts: dict[int, dict] = {}
        for e, c in self._map.items():
            k = e[i]
            parts.setdefault(k, {})[e[:i] + (0,) + e[i + 1:]] = c
        return {k: MultiPoly(self.vars, d) for k, d in parts.items()}

    def substitute(self, var: str, value: "MultiPoly") -> "MultiPoly":
        return substitute_var(self, var, value)

    def __call__(self, **assignment) -> complex:
        return eval_complex(self, assignment)

    # printing -----------------------------------------------------------

    def to_string(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for idx, (exp, c) in enumerate(self.terms):
            factors = []
            for v, e in zip(self.vars, exp):
                if e == 1:
                    factors.append(v)
                elif e:
                    factors.append(f"{v}^{e}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            if idx == 0:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append(("- " if c < 0 else "+ ") + body)
        return " ".join(out)

    __str__ = to_string

    def __repr__(self) -> str:
        return f"MultiPoly({self.to_string()!r}, vars={self.vars})"


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class _Parser:
    def __init__(self, text: str, vars: Sequence[str] | None):
        self.text = text
        self.fixed = vars is not None
        self.vars: list[str] = list(vars) if vars is not None else []
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m.group(0).strip() == "":
                break
            start = m.start(m.lastindex)
            if m.group(1):
                self.toks.append(("int", m.group(1), start))
            elif m.group(2):
                self.toks.append(("var", m.group(2), start))
            else:
                ch = m.group(3)
                if ch not in "+-*^()":
                    raise ParseError(f"unexpected character {ch!r}", start, text)
                self.toks.append(("op", ch, start))
            pos = m.end()
        self.toks.append(("end", "", len(text)))
        self.i = 0
        self.terms: list = []

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, value):
        t = self.take()
        if t[1] != value or t[0] != "op":
            raise ParseError(f"expected {value!r}, found {t[1] or 'end of input'!r}", t[2], self.text)

    def parse(self) -> dict:
        d = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise ParseError(f"unexpected token {t[1]!r}", t[2], self.text)
        return d

    # polynomials are dicts {name-exponent frozenset: coeff} while parsing
    @staticmethod
    def _add(a, b, sign=1):
        out = dict(a)
        for k, c in b.items():
            out[k] = out.get(k, 0) + sign * c
        return {k: c for k, c in out.items() if c}

    @staticmethod
    def _mul(a, b):
        out: dict = {}
        for k1, c1 in a.items():
            for k2, c2 in b.items():
                m = dict(k1)
                for v, e in k2:
                    m[v] = m.get(v, 0) + e
                k = frozenset((v, e) for v, e in m.items() if e)
                out[k] = out.get(k, 0) + c1 * c2
        return {k: c for k, c in out.items() if c}

    def expr(self):
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            d = self.term()
            if t[1] == "-":
                d = {k: -c for k, c in d.items()}
        else:
            d = self.term()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                d = self._add(d, self.term(), 1 if t[1] == "+" else -1)
            else:
                return d

    def term(self):
        d = self.factor()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] == "*":
                self.take()
                d = self._mul(d, self.factor())
            elif t[0] in ("int", "var") or (t[0] == "op" and t[1] == "("):
                raise ParseError("juxtaposition is not allowed; use '*'", t[2], self.text)
            else:
                return d

    def factor(self):
        t = self.take()
        kind, val, pos = t
        if kind == "int":
            base = {frozenset(): int(val)} if int(val) else {}
            if self.peek()[1] == "^" and self.peek()[0] == "op":
                raise ParseError("exponent on an integer literal", self.peek()[2], self.text)
            return base
        if kind == "var":
            if val not in self.vars:
                if self.fixed:
                    raise ParseError(f"unknown variable {val!r}", pos, self.text)
                self.vars.append(val)
            nt = self.peek()
            e = 1
            if nt[0] == "op" and nt[1] == "^":
                self.take()
                sgn = 1
                et = self.take()
                if et[0] == "op" and et[1] == "-":
                    sgn = -1
                    et = self.take()
                if et[0] != "int":
                    raise ParseError("expected integer exponent", et[2], self.text)
                e = sgn * int(et[1])
                if abs(e) >= EXPONENT_LIMIT:
                    raise ParseError("exponent overflow", et[2], self.text)
            return {frozenset([(val, e)]) if e else frozenset(): 1}
        if kind == "op" and val == "(":
            d = self.expr()
            self.expect(")")
            if self.peek()[0] == "op" and self.peek()[1] == "^":
                raise ParseError("exponent on a parenthesised expression is not supported", self.peek()[2], self.text)
            return d
        if kind == "op" and val == "-":
            return {k: -c for k, c in self.factor().items()}
        raise ParseError(f"unexpected token {val or 'end of input'!r}", pos, self.text)


def parse_poly(text: str, vars: Sequence[str] | None = None) -> MultiPoly:
    """Parse ``text`` into a canonical :class:`MultiPoly`.

    Grammar: integers, variables, ``+ - *``, ``^`` with a (possibly negative)
    integer exponent on a variable, and parentheses.  Multiplication must be
    explicit.  When ``vars`` is None the variables are taken in order of first
    appearance.
    """
    p = _Parser(text, vars)
    d = p.parse()
    names = tuple(p.vars)
    terms = {}
    for k, c in d.items():
        m = dict(k)
        terms[tuple(m.get(v, 0) for v in names)] = c
    return MultiPoly(names, terms)


# ---------------------------------------------------------------------------
# ring operations


def add(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    return p + q


def mul(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    return p * q


def neg(p: MultiPoly) -> MultiPoly:
    return -p


def substitute_var(p: MultiPoly, var: str, value: MultiPoly | str | int) -> MultiPoly:
    """Replace ``var`` by ``value`` everywhere in ``p``.

    Negative powers of ``var`` are only allowed when ``value`` is a unit
    monomial (``±`` a Laurent monomial), so that the result stays a Laurent
    polynomial.
    """
    if isinstance(value, str):
        value = parse_poly(value)
    if isinstance(value, int):
        value = MultiPoly.const(value)
    parts = p.coeffs_in(var)
    rest_vars = tuple(v for v in p.vars if v != var)
    if any(k < 0 for k in parts) and not (value.is_monomial() and abs(value.terms[0][1]) == 1):
        raise PolyError(f"cannot substitute a non-unit into negative powers of {var!r}")
    out = MultiPoly.zero(rest_vars + tuple(v for v in value.vars if v not in rest_vars))
    for k, c in parts.items():
        c = c.with_vars(rest_vars)
        out = out + c * (value ** k)
    return out


def eval_complex(p: MultiPoly, assignment: Mapping[str, complex]) -> complex:
    """Evaluate ``p`` in double precision.

    Variables not present in ``assignment`` raise ``KeyError`` when used.
    """
    used = p.used_vars()
    vals = {}
    for v in used:
        if v not in assignment:
            raise KeyError(f"no value assigned to {v!r}")
        vals[v] = complex(assignment[v])
    idx = [p.vars.index(v) for v in used]
    for v, i in zip(used, idx):
        if vals[v] == 0 and p.min_degree(v) < 0:
            raise PolyError(f"zero assigned to {v!r}, which has negative exponents")
    # power tables keep the evaluation exact in the coefficients and cheap in the exponents
    total = 0j
    for exp, c in p._map.items():
        t = complex(c)
        for v, i in zip(used, idx):
            e = exp[i]
            if e:
                t *= vals[v] ** e
        total += t
    return total


# ---------------------------------------------------------------------------
# univariate complex slices


@dataclass(frozen=True)
class UniComplexPoly:
    """Complex univariate polynomial, constant term first.

    ``shift`` records the monomial power that was factored out to clear
    negative exponents; it does not affect Mahler measures on the circle.
    """

    coeffs: np.ndarray
    shift: int = 0

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex).ravel()
        nz = np.flatnonzero(c)
        c = c[: nz[-1] + 1] if nz.size else c[:1] * 0
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if np.any(self.coeffs) else -1

    @property
    def leading(self) -> complex:
        return complex(self.coeffs[-1])

    def __call__(self, z):
        return np.polyval(self.coeffs[::-1], z)


class _BivariateTable:
    """Dense coefficient table of a two-variable Laurent polynomial.

    ``table[k, j]`` is the coefficient of ``x**(k + xoff) * y**(j + yoff)``
    where ``x`` is the free variable and ``y`` the specialised one.
    """

    def __init__(self, p: MultiPoly, which: int):
        if len(p.vars) != 2:
            raise PolyError(f"expected a polynomial in exactly two variables, got {p.vars}")
        free = 1 - which
        exps = list(p._map)
        self.xoff = min((e[free] for e in exps), default=0)
        self.yoff = min((e[which] for e in exps), default=0)
        dx = max((e[free] for e in exps), default=0) - self.xoff
        dy = max((e[which] for e in exps), default=0) - self.yoff
        self.table = np.zeros((dx + 1, dy + 1))
        for e, c in p._map.items():
            self.table[e[free] - self.xoff, e[which] - self.yoff] = float(c)

    def slice(self, theta: float) -> UniComplexPoly:
        dy = self.table.shape[1]
        ypow = np.exp(2j * np.pi * theta * (np.arange(dy) + self.yoff))
        return UniComplexPoly(self.table @ ypow, shift=self.xoff)


def specialize_slice(p: MultiPoly, which: int, theta: float) -> UniComplexPoly:
    """Fix variable ``which`` of ``p`` at ``exp(2*pi*i*theta)``.

    The result is a polynomial in the other variable with negative exponents
    cleared by a monomial shift (kept in ``.shift``), so that
    ``p(x, e(theta)) == slice(x) * x**shift``.
    """
    return _BivariateTable(p, which).slice(theta)


# ---------------------------------------------------------------------------
# exact division


def exact_quotient(p: MultiPoly, d: MultiPoly) -> MultiPoly | None:
    """Return ``q`` with ``p == d * q`` in the Laurent ring, or None.

    Uses lex-order long division; quotient terms are bounded below by the
    ratio of trailing terms, which guarantees termination with Laurent
    exponents.
    """
    if d.is_zero():
        raise PolyError("division by the zero polynomial")
    p, d = p._align(d)
    if p.is_zero():
        return MultiPoly.zero(p.vars)
    dmap = d._map
    dlead = max(dmap)
    dtrail = min(dmap)
    dlc = dmap[dlead]
    ptrail = min(p._map)
    floor = tuple(a - b for a, b in zip(ptrail, dtrail))
    # a true quotient has its exponents inside this box, which bounds the loop
    lo = [a - b for a, b in zip(p.monomial_content(), d.monomial_content())]
    hi = [max(col) - max(dcol) for col, dcol in zip(zip(*p._map), zip(*dmap))]
    rem = dict(p._map)
    q: dict[tuple[int, ...], int] = {}
    while rem:
        lead = max(rem)
        qe = tuple(a - b for a, b in zip(lead, dlead))
        if qe < floor or any(e < l or e > h for e, l, h in zip(qe, lo, hi)):
            return None
        c, r = divmod(rem[lead], dlc)
        if r:
            return None
        q[qe] = c
        for e, dc in dmap.items():
            k = tuple(a + b for a, b in zip(e, qe))
            v = rem.get(k, 0) - c * dc
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return MultiPoly(p.vars, q)


def divides_exactly(p: MultiPoly, d: MultiPoly) -> MultiPoly | None:
    """Quotient ``q`` with ``p = d*q`` exactly, or None if ``d`` does not divide ``p``.

    Monomials are units here, so a common monomial factor never blocks
    divisibility; the quotient carries it.
    """
    return exact_quotient(p, d)


def _div(p: MultiPoly, d: MultiPoly) -> MultiPoly:
    q = exact_quotient(p, d)
    if q is None:
        raise ArithmeticError("inexact division inside resultant computation")
    return q


# ---------------------------------------------------------------------------
# resultants


def _univariate_coeffs(p: MultiPoly, var: str, vars: tuple[str, ...]) -> list[MultiPoly]:
    parts = p.coeffs_in(var)
    if any(k < 0 for k in parts):
        raise PolyError(f"negative exponents in {var!r}; clear denominators first")
    deg = max(parts) if parts else -1
    zero = MultiPoly.zero(vars)
    return [parts[k].with_vars(vars) if k in parts else zero for k in range(deg + 1)]


def _prepare(p: MultiPoly, q: MultiPoly, var: str):
    if p.is_zero() or q.is_zero():
        raise PolyError("resultant of a zero polynomial")
    p, q = p._align(q)
    if var not in p.vars:
        raise PolyError(f"both polynomials are constant in {var!r}")
    rest = tuple(v for v in p.vars if v != var)
    pc = [c.with_vars(rest) for c in _univariate_coeffs(p, var, p.vars)]
    qc = [c.with_vars(rest) for c in _univariate_coeffs(q, var, q.vars)]
    if len(pc) == 1 and len(qc) == 1:
        raise PolyError(f"both polynomials are constant in {var!r}")
    return pc, qc, rest


def resultant_bareiss(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    """Sylvester resultant via fraction-free (Bareiss) elimination."""
    pc, qc, rest = _prepare(p, q, var)
    m, n = len(pc) - 1, len(qc) - 1
    zero = MultiPoly.zero(rest)
    if m == 0:
        return pc[0] ** n
    if n == 0:
        return qc[0] ** m
    size = m + n
    rows = []
    for i in range(n):
        row = [zero] * size
        for k, c in enumerate(reversed(pc)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k, c in enumerate(reversed(qc)):
            row[i + k] = c
        rows.append(row)
    return _bareiss_det(rows, rest)


def _bareiss_det(M: list[list[MultiPoly]], vars) -> MultiPoly:
    n = len(M)
    M = [list(r) for r in M]
    sign = 1
    prev = MultiPoly.const(1, vars)
    for k in range(n - 1):
        if M[k][k].is_zero():
            for i in range(k + 1, n):
                if not M[i][k].is_zero():
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return MultiPoly.zero(vars)
        pk = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            for j in range(k + 1, n):
                num = M[i][j] * pk - mik * M[k][j]
                M[i][j] = _div(num, prev) if not num.is_zero() else num
            M[i][k] = MultiPoly.zero(vars)
        prev = pk
    return M[n - 1][n - 1] * sign


def _prem(a: list[MultiPoly], b: list[MultiPoly]) -> list[MultiPoly]:
    """Pseudo-remainder of coefficient lists (constant first)."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - len(b) + 1
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        for k, c in enumerate(b):
            r[k + shift] = r[k + shift] - lr * c
        r.pop()
        e -= 1
        while r and r[-1].is_zero():
            r.pop()
    if e > 0:
        f = lb ** e
        r = [c * f for c in r]
    return r


def resultant_subres(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    """Sylvester resultant via the subresultant pseudo-remainder sequence."""
    A, B, rest = _prepare(p, q, var)
    one = MultiPoly.const(1, rest)
    s = 1
    if len(A) < len(B):
        if (len(A) - 1) % 2 and (len(B) - 1) % 2:
            s = -1
        A, B = B, A
    if len(B) == 1:
        return B[0] ** (len(A) - 1) * s
    g = h = one
    while True:
        da, db = len(A) - 1, len(B) - 1
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        R = _prem(A, B)
        if not R:
            return MultiPoly.zero(rest)
        A = B
        den = g * h ** delta
        B = [_div(c, den) for c in R]
        g = A[-1]
        h = _div(g ** delta, h ** (delta - 1)) if delta >= 1 else h
        if len(B) == 1:
            break
    da = len(A) - 1
    h = _div(B[0] ** da, h ** (da - 1)) if da >= 1 else h
    return h * s


def resultant(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    """Resultant of ``p`` and ``q`` with respect to ``var``.

    Bareiss on the Sylvester matrix while both degrees are at most 12,
    subresultant PRS beyond.  The result lives in the remaining variables.
    """
    if max(p.degree(var), q.degree(var)) <= BAREISS_MAX_DEGREE:
        return resultant_bareiss(p, q, var)
    return resultant_subres(p, q, var)


# ---------------------------------------------------------------------------
# Newton polygons


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


@dataclass(frozen=True)
class NewtonPolygon:
    """Counterclockwise hull vertices, starting at the lexicographically smallest."""

    vertices: tuple[tuple[int, int], ...]
    vars: tuple[str, str] = ("x", "y")

    @property
    def sides(self) -> tuple[tuple[int, int], ...]:
        v = self.vertices
        if len(v) < 2:
            return ()
        if len(v) == 2:
            return ((v[1][0] - v[0][0], v[1][1] - v[0][1]), (v[0][0] - v[1][0], v[0][1] - v[1][1]))
        return tuple(
            (v[(i + 1) % len(v)][0] - v[i][0], v[(i + 1) % len(v)][1] - v[i][1]) for i in range(len(v))
        )

    def contains(self, pt) -> bool:
        v = self.vertices
        if len(v) == 1:
            return tuple(pt) == v[0]
        if len(v) == 2:
            return _cross(v[0], v[1], pt) == 0 and min(v)[0] <= pt[0] <= max(v)[0] and \
                min(a[1] for a in v) <= pt[1] <= max(a[1] for a in v)
        return all(_cross(v[i], v[(i + 1) % len(v)], pt) >= 0 for i in range(len(v)))


def convex_hull(points: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    pts = sorted(set(points))
    if len(pts) <= 2:
        return tuple(pts)
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return tuple(lower[:-1] + upper[:-1])


def newton_polygon(p: MultiPoly) -> NewtonPolygon:
    if p.is_zero():
        raise PolyError("the zero polynomial has no Newton polygon")
    if len(p.vars) != 2:
        raise PolyError(f"Newton polygons need exactly two variables, got {p.vars}")
    return NewtonPolygon(convex_hull(e for e in p._map), p.vars)


class Slopes(NamedTuple):
    slopes: frozenset
    horizontal: int


def boundary_slopes(np_: NewtonPolygon) -> Slopes:
    """Side slopes as ``dM / dL`` with variables ordered (M, L).

    Sides with no change in the L-exponent are counted in ``horizontal``.
    """
    slopes = set()
    horizontal = 0
    for dm, dl in np_.sides:
        if dl == 0:
            horizontal += 1
        else:
            slopes.add(Fraction(dm, dl))
    return Slopes(frozenset(slopes), horizontal)


def reciprocity_check(p: MultiPoly) -> bool:
    """True iff ``p(1/M, 1/L)`` times a monomial equals ``±p``."""
    if p.is_zero():
        raise PolyError("reciprocity of the zero polynomial")
    exps = list(p._map)
    lo = [min(col) for col in zip(*exps)]
    hi = [max(col) for col in zip(*exps)]
    flipped = {tuple(l + h - e for e, l, h in zip(exp, lo, hi)): c for exp, c in p._map.items()}
    return flipped == p._map or flipped == {e: -c for e, c in p._map.items()}


A_FIG8 = parse_poly("-M^4 + L*(1 - M^2 - 2*M^4 - M^6 + M^8) - L^2*M^4", ("M", "L"))
H_FIG8 = parse_poly("y*(x^4 - x^3 - 2*x^2 - x + 1) + y^2*x^2 + x^2", ("x", "y"))
