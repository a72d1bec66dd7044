import cmath
import json
import math
from pathlib import Path

import numpy as np
import pytest

from apml import hyperbolic as hyp
from apml.numerics import jacobian_check
from apml.polycore import H_FIG8, divides_exactly, eval_complex, parse_poly

W = cmath.exp(1j * math.pi / 3)
VOL_FIG8 = 2.0298832128193073
HERE = Path(__file__).parent


@pytest.fixture(scope="module")
def fig8():
    return hyp.builtin_fig8()


@pytest.fixture(scope="module")
def eliminated(fig8):
    return hyp.eliminate_H(fig8)


# ---------------------------------------------------------------------------
# data model


def test_builtin_fig8_layout(fig8):
    assert fig8.n == 2
    assert fig8.gluing_rows == (hyp.GluingRow((1, 1), (1, 1), 1),)
    assert fig8.cusp_y == ((1, 0), (1, 0))
    assert fig8.cusp_x == ((0, 1), (1, 0))
    assert len(fig8.gluing_rows) == fig8.n - 1


def test_bundled_files_match(fig8):
    assert hyp.bundled("fig8") == fig8
    toy = hyp.bundled("toy")
    assert toy.n == 1 and toy.gluing_rows == ()


def test_round_trip_dict(fig8, tmp_path):
    p = tmp_path / "t.json"
    p.write_text(json.dumps(fig8.to_dict()))
    assert hyp.load_triangulation(p) == fig8


@pytest.mark.parametrize(
    "doc",
    [
        {"n": 2, "cusp_x": {"e": [0], "f": [1, 0]}, "cusp_y": {"c": [1, 0], "d": [1, 0]}},
        {"n": 1, "gluing": [{"a": [1], "b": [1], "sign": 3}], "cusp_x": {"e": [1], "f": [0]}, "cusp_y": {"c": [0], "d": [1]}},
        {"n": 1, "cusp_x": {"e": [1], "f": [0]}},
        {"n": 1, "gluing": [{"a": [1], "b": [0]}, {"a": [0], "b": [1]}], "cusp_x": {"e": [1], "f": [0]},
         "cusp_y": {"c": [0], "d": [1]}},
    ],
)
def test_malformed_documents(doc):
    with pytest.raises(hyp.TriangulationError):
        hyp.Triangulation.from_dict(doc)


def test_shape_vector_rejects_degenerate():
    with pytest.raises(hyp.ShapeSolveError):
        hyp.ShapeVector([0.5, 1.0])
    with pytest.raises(hyp.ShapeSolveError):
        hyp.ShapeVector([1e-13])


def test_holonomy_point_nonzero():
    with pytest.raises(ValueError):
        hyp.HolonomyPoint(0, 1)


# ---------------------------------------------------------------------------
# residuals


def test_residuals_vanish_at_complete_structure(fig8):
    r = hyp.residuals(fig8, [W, W], hyp.COMPLETE)
    assert r.shape == (3,)
    assert np.max(np.abs(r)) < 1e-12


def test_residuals_direct_evaluation(fig8):
    z = 2j
    r = hyp.residuals(fig8, [z, z])
    direct = 2 * cmath.log(z * (1 - z))
    want = complex(direct.real, (direct.imag + math.pi) % (2 * math.pi) - math.pi)
    assert abs(r[0] - want) < 1e-14


def test_residuals_empty():
    toy = hyp.bundled("toy")
    assert hyp.residuals(toy, [0.3 + 0.2j]).size == 0


def test_multiplicative_jacobian_consistent(fig8):
    for target in (hyp.COMPLETE, hyp.HolonomyPoint(1.1 + 0.2j)):
        gap = jacobian_check(
            lambda z: hyp.multiplicative_residuals(fig8, z, target),
            lambda z: hyp.multiplicative_jacobian(fig8, z, target),
            [0.4 + 0.7j, 0.6 + 0.9j],
        )
        assert gap < 1e-6


# ---------------------------------------------------------------------------
# solving and volume


def test_solve_complete(fig8):
    s = hyp.solve_shapes(fig8)
    assert np.allclose(s.z, [W, W], atol=1e-12)
    assert s.geometric
    assert np.max(np.abs(hyp.residuals(fig8, s, hyp.COMPLETE))) < 1e-10
    # the other sixth root (-1 + sqrt(-3))/2 does not solve z(1 - z) = 1
    other = (-1 + 1j * math.sqrt(3)) / 2
    assert abs(other * (1 - other) - 1) > 1


def test_solve_conjugate_branch(fig8):
    s = hyp.solve_shapes(fig8, init=[W.conjugate(), W.conjugate()])
    assert np.allclose(s.z, [W.conjugate()] * 2, atol=1e-12)
    assert not s.geometric
    assert hyp.volume(s) == pytest.approx(-VOL_FIG8, abs=1e-12)


def test_solve_empty_triangulation():
    T = hyp.Triangulation(0, (), ((), ()), ((), ()))
    with pytest.raises(hyp.ShapeSolveError):
        hyp.solve_shapes(T)


def test_solve_toy_unreachable_complete_target():
    # x = z and y = 1 - z cannot both equal 1
    with pytest.raises(hyp.ShapeSolveError):
        hyp.solve_shapes(hyp.bundled("toy"))


def test_solve_toy_with_free_longitude():
    s = hyp.solve_shapes(hyp.bundled("toy"), hyp.HolonomyPoint(W))
    assert s.z[0] == pytest.approx(W, abs=1e-12)
    assert hyp.volume(s) == pytest.approx(VOL_FIG8 / 2, abs=1e-12)


def test_volume_values(fig8):
    assert hyp.volume(hyp.solve_shapes(fig8)) == pytest.approx(VOL_FIG8, abs=1e-12)
    assert hyp.volume([0.3, -2.0, 5.0]) == 0.0


def test_conjugate_volume_antisymmetric():
    s = hyp.ShapeVector([0.2 + 0.9j, 1.7 + 0.4j])
    assert hyp.volume(s.conjugate()) == pytest.approx(-hyp.volume(s), abs=1e-12)
    assert hyp.volume(s) > 0


def test_holonomy_complete(fig8):
    h = hyp.holonomy(fig8, hyp.solve_shapes(fig8))
    assert abs(h.x - 1) < 1e-12 and abs(h.y - 1) < 1e-12


def test_holonomy_trivial_exponents():
    T = hyp.Triangulation(2, (), ((0, 0), (0, 0)), ((0, 0), (0, 0)))
    h = hyp.holonomy(T, [0.3 + 1j, 2j])
    assert h.x == 1 and h.y == 1


def test_holonomy_lies_on_h(fig8):
    z1 = 2j
    # z2 (1 - z2) = 1 / (z1 (1 - z1))
    c = 1 / (z1 * (1 - z1))
    z2 = (1 + cmath.sqrt(1 - 4 * c)) / 2
    h = hyp.holonomy(fig8, [z1, z2])
    assert abs(eval_complex(H_FIG8, {"x": h.x, "y": h.y})) < 1e-9


def test_holonomy_reproduces_nearby_targets(fig8):
    rng = np.random.default_rng(0)
    for _ in range(10):
        x = 1 + 0.05 * complex(*rng.normal(size=2))
        s = hyp.solve_shapes(fig8, hyp.HolonomyPoint(x))
        assert abs(hyp.holonomy(fig8, s).x - x) < 1e-9
        assert np.max(np.abs(hyp.residuals(fig8, s, hyp.HolonomyPoint(x)))) < 1e-10


# ---------------------------------------------------------------------------
# elimination


def test_eliminate_fig8_divisible_by_h(eliminated):
    q = divides_exactly(eliminated, H_FIG8)
    assert q is not None
    assert eliminated.vars == ("x", "y")


def test_eliminate_toy():
    assert hyp.eliminate_H(hyp.bundled("toy")) == parse_poly("x + y - 1", ("x", "y"))


def test_eliminate_scale_guard():
    T = hyp.load_triangulation(HERE / "five.json")
    assert T.n == 5
    with pytest.raises(hyp.ScaleGuardError):
        hyp.eliminate_H(T)


def test_eliminate_nothing_to_do():
    T = hyp.Triangulation(1, (), ((0,), (0,)), ((0,), (0,)))
    with pytest.raises(ValueError):
        hyp.eliminate_H(T)


def test_gluing_polynomials_fig8(fig8):
    eqs = hyp.gluing_polynomials(fig8)
    v = eqs[0].vars
    z = dict(zip(v, (W, W, 1, 1)))
    for e in eqs:
        assert abs(eval_complex(e, z)) < 1e-12


def test_eliminated_vanishes_on_holonomy_curve(fig8, eliminated):
    rng = np.random.default_rng(42)
    for _ in range(50):
        x = cmath.exp(1j * rng.uniform(-0.6, 0.6))
        s = hyp.solve_shapes(fig8, hyp.HolonomyPoint(x))
        h = hyp.holonomy(fig8, s)
        val = eval_complex(eliminated, {"x": h.x, "y": h.y})
        assert abs(val) < 1e-6


def test_two_tetrahedron_variant_eliminates():
    # variant meridian row z2 (1 - z2) = x
    T = hyp.Triangulation(2, (hyp.GluingRow((1, 1), (1, 1), 1),), ((0, 1), (0, 1)), ((1, 0), (1, 0)))
    E = hyp.eliminate_H(T)
    s = hyp.solve_shapes(T, hyp.HolonomyPoint(cmath.exp(0.3j)))
    h = hyp.holonomy(T, s)
    assert abs(eval_complex(E, {"x": h.x, "y": h.y})) < 1e-8


# ---------------------------------------------------------------------------
# dVol


@pytest.fixture(scope="module")
def dvol_rows(fig8):
    return [hyp.dvol_check(fig8, t0, h=1e-4) for t0 in (0.10, 0.15, 0.20)]


def test_dvol_ratio_constant(dvol_rows):
    ratios = [r["ratio"] for r in dvol_rows]
    assert (max(ratios) - min(ratios)) / abs(np.mean(ratios)) < 0.02


def test_dvol_constant_is_plus_one(dvol_rows):
    for r in dvol_rows:
        assert r["ratio"] == pytest.approx(1.0, abs=1e-6)


def test_dvol_second_order(fig8):
    a = hyp.dvol_check(fig8, 0.15, h=2e-2)
    b = hyp.dvol_check(fig8, 0.15, h=1e-2)
    err = lambda r: abs(r["finite_diff"] - r["ln_abs_y"])
    assert err(b) <= err(a) / 2


def test_dvol_undefined_ratio_at_complete(fig8):
    r = hyp.dvol_check(fig8, 0.0, h=1e-4)
    assert r["ratio"] is None and abs(r["ln_abs_y"]) < 1e-12


def test_branch_jump_detected(fig8):
    with pytest.raises(hyp.BranchJumpError):
        hyp.shapes_on_circle(fig8, 3.0, step=1.0)
