import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from apml.polycore import (
    A_FIG8,
    H_FIG8,
    MultiPoly,
    ParseError,
    PolyError,
    add,
    boundary_slopes,
    convex_hull,
    divides_exactly,
    eval_complex,
    mul,
    neg,
    newton_polygon,
    parse_poly,
    reciprocity_check,
    resultant,
    resultant_bareiss,
    resultant_subres,
    specialize_slice,
    substitute_var,
)

XY = ("x", "y")


def P(text, vars=XY):
    return parse_poly(text, vars)


# ---------------------------------------------------------------------------
# parsing and printing


def test_parse_a_polynomial_has_seven_terms():
    assert len(A_FIG8) == 7
    assert A_FIG8.vars == ("M", "L")
    assert A_FIG8.coeff((4, 2)) == -1
    assert A_FIG8.coeff((4, 1)) == -2


def test_parse_zero_is_empty():
    z = parse_poly("0")
    assert z.is_zero() and z.terms == ()


def test_parse_negative_exponent():
    p = parse_poly("x*y^-1 + 1", XY)
    assert p.as_dict() == {(1, -1): 1, (0, 0): 1}


def test_parse_unary_minus_and_parens():
    assert parse_poly("-(x - 1)*-(x + 1)", ("x",)) == parse_poly("x^2 - 1", ("x",))


@pytest.mark.parametrize(
    "text",
    ["x y", "2x", "x^", "x + ", "(x + 1", "x^99999999999", "2^3", "(x+1)^2", "x ** 2", "x^y", ""],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_poly(text, XY)


def test_parse_error_reports_position():
    with pytest.raises(ParseError) as e:
        parse_poly("x + * y", XY)
    assert e.value.pos == 4


def test_unknown_variable():
    with pytest.raises(ParseError):
        parse_poly("x + z", XY)


def test_variables_inferred_in_order():
    assert parse_poly("b + a*c").vars == ("b", "a", "c")


@pytest.mark.parametrize("p", [A_FIG8, H_FIG8, parse_poly("x*y^-1 + 1"), parse_poly("-7"), parse_poly("0")])
def test_print_parse_round_trip(p):
    s = p.to_string()
    q = parse_poly(s, p.vars)
    assert q == p
    assert q.to_string() == s


def test_canonical_order_is_graded_lex():
    assert H_FIG8.to_string() == "x^4*y - x^3*y + x^2*y^2 - 2*x^2*y + x^2 - x*y + y"


# ---------------------------------------------------------------------------
# ring arithmetic

small_terms = st.dictionaries(
    st.tuples(st.integers(-2, 3), st.integers(-2, 3)), st.integers(-5, 5).filter(bool), max_size=5
)
polys = small_terms.map(lambda d: MultiPoly(XY, d))


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    assert neg(neg(a)) == a


@settings(max_examples=40, deadline=None)
@given(polys)
def test_canonical_form_idempotent(a):
    again = MultiPoly(a.vars, a.as_dict())
    assert again.terms == a.terms
    assert parse_poly(a.to_string(), XY) == a


@settings(max_examples=40, deadline=None)
@given(polys, polys.filter(lambda p: not p.is_zero()))
def test_divides_exactly_recovers_factor(a, d):
    q = divides_exactly(a * d, d)
    assert q is not None
    # Laurent ring: the quotient is determined up to a unit monomial
    assert q * d == a * d or (a.is_zero() and q.is_zero())


def test_free_function_ops():
    x = parse_poly("1 + x", ("x",))
    assert mul(x, parse_poly("1 - x", ("x",))) == parse_poly("1 - x^2", ("x",))
    assert add(x, neg(x)).is_zero()
    assert neg(MultiPoly.zero()).is_zero()


def test_union_of_variables():
    s = parse_poly("x") + parse_poly("y")
    assert set(s.vars) == {"x", "y"}
    assert s == P("x + y")


def test_laurent_power():
    m = P("x*y^-2")
    assert m ** -2 == P("x^-2*y^4")
    with pytest.raises(PolyError):
        P("x + 1") ** -1


def test_substitute_square_and_sign():
    v = ("M", "L")
    h = substitute_var(substitute_var(H_FIG8, "x", parse_poly("M^2", v)), "y", parse_poly("-L", v))
    assert h.with_vars(v) == -A_FIG8
    lit = substitute_var(substitute_var(H_FIG8, "x", parse_poly("M^2", v)), "y", parse_poly("L", v))
    assert lit.with_vars(v) != -A_FIG8


def test_substitute_non_unit_into_negative_power():
    with pytest.raises(PolyError):
        substitute_var(P("x^-1 + y"), "x", P("1 + y"))


def test_eval_complex():
    assert eval_complex(H_FIG8, {"x": 1, "y": 1}) == 0
    assert eval_complex(A_FIG8, {"M": 1, "L": 1}) == -4
    assert eval_complex(P("x*y^-1 + 1"), {"x": 2, "y": 2}) == 2
    with pytest.raises(PolyError):
        eval_complex(P("x*y^-1"), {"x": 1, "y": 0})


# ---------------------------------------------------------------------------
# slices


def test_slice_examples():
    s = specialize_slice(P("1 + x + y"), 1, 0.0)
    assert np.allclose(s.coeffs, [2, 1])
    s = specialize_slice(H_FIG8, 1, 0.0)
    assert np.allclose(s.coeffs, [1, -1, 0, -1, 1])
    s = specialize_slice(P("x*y^-1"), 1, 0.5)
    # -x: a constant slice carrying the monomial shift
    assert s.degree == 0 and s.shift == 1 and np.allclose(s.coeffs, [-1])


def test_slice_matches_evaluation():
    p = P("3*x^-1*y^2 + x*y - 2 + x^3*y^-1")
    rng = np.random.default_rng(1)
    for _ in range(10):
        th, x = rng.uniform(), complex(*rng.normal(size=2))
        s = specialize_slice(p, 1, th)
        y = np.exp(2j * np.pi * th)
        direct = eval_complex(p, {"x": x, "y": y})
        assert abs(s(x) * x ** s.shift - direct) < 1e-12 * (1 + abs(direct))


# ---------------------------------------------------------------------------
# resultants


def test_resultant_examples():
    v = ("x", "u")
    assert resultant(parse_poly("x - 3", v), parse_poly("x^2 - u", v), "x") == parse_poly("9 - u", v)
    assert resultant(P("x - 1"), P("x - 1"), "x").is_zero()


def test_resultant_constant_inputs_rejected():
    with pytest.raises(PolyError):
        resultant(P("y + 1"), P("y^2"), "x")


def _sympy_res(p, q, var):
    syms = sympy.symbols(p.vars)
    sp = sympy.sympify(p.to_string().replace("^", "**"), dict(zip(p.vars, syms)))
    sq = sympy.sympify(q.to_string().replace("^", "**"), dict(zip(p.vars, syms)))
    return sympy.expand(sympy.resultant(sp, sq, syms[p.vars.index(var)]))


def _random_poly(rng, vars, deg):
    terms = {}
    for _ in range(rng.randint(2, 5)):
        e = tuple(rng.randint(0, deg) for _ in vars)
        terms[e] = rng.randint(-4, 4) or 1
    return MultiPoly(vars, terms)


def test_bareiss_and_subresultant_agree_with_sympy():
    rng = random.Random(7)
    v = ("x", "y", "z")
    for _ in range(25):
        p, q = _random_poly(rng, v, 3), _random_poly(rng, v, 3)
        if p.degree("x") == 0 or q.degree("x") == 0:
            continue
        rb = resultant_bareiss(p, q, "x")
        rs = resultant_subres(p, q, "x")
        assert rb == rs
        oracle = _sympy_res(p, q, "x")
        got = sympy.expand(sympy.sympify(rb.to_string().replace("^", "**")) if not rb.is_zero() else 0)
        assert sympy.expand(got - oracle) == 0


def test_resultant_specialization_property():
    """Res vanishes wherever the specialized pair shares a root."""
    rng = random.Random(11)
    v = ("x", "a")
    checked = 0
    while checked < 60:
        r = rng.randint(-3, 3)
        f = _random_poly(rng, v, 3)
        g = _random_poly(rng, v, 3)
        # make the pair share the root x = r at a = a0
        a0 = rng.randint(-3, 3)
        f = f - MultiPoly.const(int(eval_complex(f, {"x": r, "a": a0}).real), v)
        g = g - MultiPoly.const(int(eval_complex(g, {"x": r, "a": a0}).real), v)
        if f.degree("x") < 1 or g.degree("x") < 1 or f.degree("x") > 4 or g.degree("x") > 4:
            continue
        R = resultant(f, g, "x")
        assert R.substitute("a", MultiPoly.const(a0, v)).is_zero()
        checked += 1


# ---------------------------------------------------------------------------
# divisibility


def test_divides_examples():
    assert divides_exactly(H_FIG8 * P("x^2*y"), H_FIG8) == P("x^2*y")
    assert divides_exactly(P("1 + x + y"), P("1 + x")) is None
    assert divides_exactly(P("x^2 - 1"), P("x - 1")) == P("x + 1")


def test_divides_up_to_monomial_and_sign():
    q = divides_exactly(P("x^-3*y*(1 + x)"), P("1 + x"))
    assert q is not None and q.is_monomial()


# ---------------------------------------------------------------------------
# Newton polygons and slopes


def _brute_hull(points):
    pts = sorted(set(points))
    if len(pts) <= 2:
        return set(pts)
    verts = set()
    for p in pts:
        others = [q for q in pts if q != p]
        # p is a vertex iff some line through p has all other points strictly on one side
        # equivalently p is not in the convex hull of the others
        if not _in_hull(p, others):
            verts.add(p)
    return verts


def _in_hull(p, pts):
    for a, b, c in itertools.combinations(pts, 3):
        if _cr(a, b, c) != 0 and _in_triangle(p, a, b, c):
            return True
    for a, b in itertools.combinations(pts, 2):
        if _on_segment(p, a, b):
            return True
    return False


def _cr(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _in_triangle(p, a, b, c):
    d1, d2, d3 = _cr(a, b, p), _cr(b, c, p), _cr(c, a, p)
    neg_ = d1 < 0 or d2 < 0 or d3 < 0
    pos = d1 > 0 or d2 > 0 or d3 > 0
    return not (neg_ and pos)


def _on_segment(p, a, b):
    return _cr(a, b, p) == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def test_a_polygon_vertices():
    N = newton_polygon(A_FIG8)
    assert set(N.vertices) == {(4, 0), (0, 1), (8, 1), (4, 2)}
    assert N.vertices[0] == min(N.vertices)


def test_small_polygons():
    assert set(newton_polygon(P("1 + x + y")).vertices) == {(0, 0), (1, 0), (0, 1)}
    assert newton_polygon(P("x^3*y^5")).vertices == ((3, 5),)


def test_hull_matches_brute_force():
    rng = random.Random(3)
    for _ in range(40):
        pts = [(rng.randint(-4, 4), rng.randint(-4, 4)) for _ in range(rng.randint(1, 9))]
        hull = convex_hull(pts)
        assert set(hull) == _brute_hull(pts)
        # counterclockwise, strictly convex
        n = len(hull)
        if n >= 3:
            assert all(_cr(hull[i], hull[(i + 1) % n], hull[(i + 2) % n]) > 0 for i in range(n))
        N = newton_polygon(MultiPoly(XY, {p: 1 for p in pts}))
        assert all(N.contains(p) for p in pts)


def test_boundary_slopes():
    s = boundary_slopes(newton_polygon(A_FIG8))
    assert s.slopes == {Fraction(-4), Fraction(4)}
    assert s.horizontal == 0
    s = boundary_slopes(newton_polygon(P("1 + x + y")))
    assert Fraction(-1) in s.slopes and s.horizontal == 1
    s = boundary_slopes(newton_polygon(P("x*y")))
    assert s.slopes == frozenset() and s.horizontal == 0


def test_newton_polygon_of_zero():
    with pytest.raises(PolyError):
        newton_polygon(MultiPoly.zero(XY))


# ---------------------------------------------------------------------------
# reciprocity


def test_reciprocity():
    assert reciprocity_check(A_FIG8)
    assert not reciprocity_check(P("1 + x + y"))
    assert reciprocity_check(P("3*x^2*y^-1"))
