import cmath
import random

import pytest

from apml import charvar as cv
from apml.charvar import GroupPresentation, PolyMatrix2, PresentationError
from apml.polycore import MultiPoly, eval_complex, parse_poly

TU = cv.FIG8_VARS


def T(text):
    return parse_poly(text, TU)


def test_inverse_is_adjugate():
    ra, _ = cv.fig8_matrices()
    inv = cv.inverse_unimodular(ra)
    assert inv == PolyMatrix2.of((("t^-1", -1), (0, "t")), TU)
    assert cv.mul(ra, inv) == PolyMatrix2.identity(TU)


def test_trace_of_rho_a():
    ra, _ = cv.fig8_matrices()
    assert cv.trace(ra) == T("t + t^-1")


def test_inverse_requires_unimodular_tag():
    m = PolyMatrix2.of((("t", 1), (0, "t")), TU)
    with pytest.raises(ValueError):
        m.inverse()
    with pytest.raises(ValueError):
        m.checked()


def test_eval_word_basics():
    ra, rb = cv.fig8_matrices()
    gens = {1: ra, 2: rb}
    assert cv.eval_word("aA", gens) == PolyMatrix2.identity(TU)
    w = cv.eval_word("AbaB", gens)
    assert w.det() == 1
    with pytest.raises(ValueError):
        cv.eval_word((), gens)
    with pytest.raises(KeyError):
        cv.eval_word("ac", gens)


def test_eval_word_concatenation():
    ra, rb = cv.fig8_matrices()
    gens = {1: ra, 2: rb}
    rng = random.Random(1)
    for _ in range(10):
        w1 = "".join(rng.choice("abAB") for _ in range(rng.randint(1, 5)))
        w2 = "".join(rng.choice("abAB") for _ in range(rng.randint(1, 5)))
        assert cv.eval_word(w1 + w2, gens) == cv.eval_word(w1, gens) * cv.eval_word(w2, gens)


def _rand_entry(rng, vars):
    return MultiPoly(vars, {(rng.randint(0, 2), rng.randint(0, 2)): rng.randint(-3, 3) for _ in range(3)})


def test_det_multiplicative():
    rng = random.Random(2)
    v = ("p", "q")
    for _ in range(10):
        M = PolyMatrix2(*(_rand_entry(rng, v) for _ in range(4)))
        N = PolyMatrix2(*(_rand_entry(rng, v) for _ in range(4)))
        assert (M * N).det() == M.det() * N.det()


# ---------------------------------------------------------------------------
# presentations


def test_parse_presentation():
    G = GroupPresentation.parse("abAB")
    assert G.n_generators == 2 and G.relators == ((1, 2, -1, -2),)
    assert GroupPresentation.parse("abAB, aaa").relators[1] == (1, 1, 1)


@pytest.mark.parametrize("bad", ["ab1", "a-b", "äb"])
def test_parse_presentation_errors(bad):
    with pytest.raises(PresentationError):
        GroupPresentation.parse(bad)


def test_presentation_invariants():
    with pytest.raises(PresentationError):
        GroupPresentation(0, ())
    with pytest.raises(PresentationError):
        GroupPresentation(2, ((),))
    with pytest.raises(PresentationError):
        GroupPresentation(2, ((1, 3),))


@pytest.mark.parametrize(
    "relators, n, count",
    [("abAB", 2, 6), ("AbaBabABaB", 2, 6), ("", 1, 1), ("abAB, aabb", 2, 10), ("abcABC", 3, 7)],
)
def test_equation_count(relators, n, count):
    G = GroupPresentation.parse(relators, n_generators=n) if relators else GroupPresentation(n, ())
    eqs = cv.presentation_to_equations(G)
    assert len(eqs) == count == 4 * len(G.relators) + G.n_generators


def test_free_group_equation():
    eqs = cv.presentation_to_equations(GroupPresentation(1, ()))
    assert eqs == [parse_poly("a1*d1 - b1*c1 - 1", ("a1", "b1", "c1", "d1"))]


def test_equations_vanish_on_a_representation():
    # the figure-8 pair at a point of Z = 0 satisfies the relator equations numerically
    u = 2.0 + 0.5j
    # solve Z(x, u) = 0 for x^2, then t from x = t + 1/t
    x2 = 2 - (1 - u + u * u) / (1 - u)
    x = cmath.sqrt(x2)
    t = (x + cmath.sqrt(x * x - 4)) / 2
    vals = {"a1": t, "b1": 1, "c1": 0, "d1": 1 / t, "a2": t, "b2": 0, "c2": 2 - u, "d2": 1 / t}

    for e in cv.presentation_to_equations(cv.FIG8_PRESENTATION):
        assert abs(eval_complex(e, vals)) < 1e-9


def test_scale_guard():
    with pytest.raises(cv.PresentationTooLarge):
        cv.presentation_to_equations(GroupPresentation.parse("abcdeABCDE"))


# ---------------------------------------------------------------------------
# figure-8 identities


def test_fig8_defect():
    defect, verdict = cv.fig8_defect()
    assert defect.p11.is_zero() and defect.p22.is_zero()
    assert verdict["passed"]
    assert verdict["top_right_unit_times_Z"] and verdict["bottom_left_u_minus_2_times_Z"]


def test_fig8_defect_entries_explicit():
    defect, _ = cv.fig8_defect()
    Zt = cv.Z_poly().substitute("x", T("t + t^-1")).with_vars(TU)
    assert defect.p12 in (Zt, -Zt)
    assert defect.p21 in (Zt * T("u - 2"), -Zt * T("u - 2"))


def test_elliptic_identity():
    assert cv.elliptic_identity_check()
    assert cv.elliptic_identity().is_zero()
    assert not cv.elliptic_identity_check(cv.Z_poly() + 1)


def test_elliptic_identity_integer_points():
    v = ("x", "u")
    rng = random.Random(5)
    good, bad = cv.elliptic_identity(), cv.elliptic_identity(cv.Z_poly() + 1)
    for _ in range(20):
        x, u = (MultiPoly.const(rng.randint(-50, 50), v) for _ in range(2))
        assert good.substitute("x", x).substitute("u", u).is_zero()
        # perturbed identity leaves u - 1, nonzero away from u = 1
        val = bad.substitute("x", x).substitute("u", u)
        assert val.is_zero() == (u == 1)


def test_trace_identity():
    I = PolyMatrix2.identity()
    assert cv.trace_identity_holds(I, I)
    assert cv.trace_identity_check(100, seed=0)
    assert cv.trace_identity_check(10, seed=3, symbolic=True)
    assert cv.symbolic_trace_identity().is_zero()


def test_random_unimodular_is_unimodular():
    rng = random.Random(4)
    for _ in range(20):
        assert cv.random_unimodular(rng).det() == 1


def test_reducible_traces():
    r = cv.reducible_trace_check()
    assert r["passed"]
    assert r["trace_ab_inv"] == "2"
    assert r["ab_inv_unipotent"] and r["ab_diagonal"] and r["diagonal_commutator_trace_2"]
