import math
import random
from fractions import Fraction as F

import pytest
import sympy as sp
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from projevolute.dual import DualScalar
from projevolute.errors import DegenerateInput, DegenerateModuli, DivisionByZero, MapUndefined
from projevolute.evolute import Polygon
from projevolute.identities import random_moduli
from projevolute.pentagon import (
    PentagonModuli,
    _t_formula,
    degeneracy_report,
    golden_symmetric_points,
    invariant_I,
    jacobian_ratio_residual,
    moduli_from_pentagon,
    pentagon_from_moduli,
    regular_pentagon,
    t2_with_jacobian,
    t_map,
    t_map_geometric,
)
from projevolute.projective import HomTriple, ProjMap

M34 = PentagonModuli(F(3), F(4))


def test_pentagon_from_moduli_fifth_vertex():
    P = pentagon_from_moduli(M34)
    assert P[4] == HomTriple.point(3, 4, 1)
    assert P[0] == HomTriple.point(0, -1, 1) and P[3] == HomTriple.point(-1, 0, 1)


def test_pentagon_from_moduli_rejects_loci():
    with pytest.raises(DegenerateModuli) as exc:
        pentagon_from_moduli(PentagonModuli(F(0), F(1)))
    assert exc.value.loci == frozenset({"x=0"})
    with pytest.raises(DegenerateModuli) as exc:
        pentagon_from_moduli(PentagonModuli(F(-2), F(1)))
    assert "x+y+1=0" in exc.value.loci


def test_degeneracy_report():
    assert degeneracy_report(M34) == frozenset()
    assert degeneracy_report(PentagonModuli(F(-1), F(-1))) == {"x+1=0", "y+1=0"}
    assert degeneracy_report(PentagonModuli(F(-2), F(1))) == {"x+y+1=0"}


def test_moduli_from_frame_pentagon():
    assert moduli_from_pentagon(pentagon_from_moduli(M34)) == M34


def test_moduli_invariant_under_projective_map():
    M = ProjMap(((F(2), F(1), F(-3)), (F(0), F(5, 2), F(1)), (F(1), F(-1), F(4))))
    P = pentagon_from_moduli(M34).transformed(M)
    assert moduli_from_pentagon(P) == M34


def test_moduli_rejects_collinear_vertices():
    P = Polygon.from_affine([(F(0), F(0)), (F(1), F(0)), (F(2), F(1)), (F(1), F(2)), (F(2), F(0))])
    with pytest.raises(DegenerateInput):
        moduli_from_pentagon(P)


def test_regular_pentagon_moduli_are_golden():
    phi = (1 + math.sqrt(5)) / 2
    convex = moduli_from_pentagon(regular_pentagon())
    star = moduli_from_pentagon(regular_pentagon(step=2))
    assert convex.x == pytest.approx(1 - phi, rel=1e-12) and convex.y == pytest.approx(1 - phi, rel=1e-12)
    assert star.x == pytest.approx(phi, rel=1e-12) and star.y == pytest.approx(phi, rel=1e-12)
    for m in (convex, star):
        assert abs(1 + m.x - m.x * m.y) < 1e-12


def test_golden_points_solve_the_symmetric_equation():
    for m in golden_symmetric_points():
        assert m.x == m.y and abs(1 + m.x - m.x * m.y) < 1e-12


def test_t_map_spot_values():
    assert t_map(M34) == PentagonModuli(F(-20, 21), F(1, 6))
    assert t_map(PentagonModuli(F(1), F(1))) == PentagonModuli(F(-1), F(0))


def test_t_map_undefined_at_golden_point_reports_all_factors():
    phi = (1 + math.sqrt(5)) / 2
    with pytest.raises(MapUndefined) as exc:
        t_map(PentagonModuli(phi, phi))
    assert set(exc.value.factors) == {"-1-y+xy", "1+x-y^2", "1+y-x^2"}


def test_invariant_spot_values():
    assert invariant_I(M34) == F(40, 3)
    assert invariant_I(PentagonModuli(F(-1), F(7, 2))) == 0
    assert invariant_I(PentagonModuli(F(-20, 21), F(1, 6))) == F(-3, 40)
    with pytest.raises(DivisionByZero):
        invariant_I(PentagonModuli(F(0), F(2)))


def test_jacobian_residual_spot_values():
    assert jacobian_ratio_residual(M34) == 0
    assert jacobian_ratio_residual(PentagonModuli(F(-3), F(1, 2))) == 0
    with pytest.raises(MapUndefined):
        jacobian_ratio_residual(PentagonModuli(F(0), F(2)))


def test_t2_spot_values():
    m2 = t_map(t_map(M34))
    m4 = t_map(t_map(m2))
    assert m2 == PentagonModuli(F(-33124, 835), F(59643, 1145))
    assert m2.x < 0 < m2.y and m4.x < 0 < m4.y
    assert invariant_I(m2) == invariant_I(m4) == F(40, 3)


def test_dual_partials_match_finite_differences():
    m = PentagonModuli(0.37, -2.6)
    _, jac = t2_with_jacobian(m)
    h = 1e-6
    for j, (dx, dy) in enumerate(((h, 0.0), (0.0, h))):
        plus = _t2(m.x + dx, m.y + dy)
        minus = _t2(m.x - dx, m.y - dy)
        for i in range(2):
            fd = (plus[i] - minus[i]) / (2 * h)
            assert fd == pytest.approx(jac[i][j], rel=1e-6)


def _t2(x, y):
    return t_map(t_map(PentagonModuli(x, y))).as_tuple()


def test_dual_scalar_arithmetic():
    x = DualScalar.variable(F(2), 0)
    y = DualScalar.variable(F(3), 1)
    z = (x * y + 1) / (x - y) ** 2
    # d/dx (xy+1)/(x-y)^2 = y/(x-y)^2 - 2(xy+1)/(x-y)^3
    assert z.value == 7
    assert z.partials == (F(3) + 14, F(2) - 14)


def test_closed_form_matches_symbolic_oracle():
    x, y = sp.symbols("x y")
    xb = (1 + y) * (1 + x - x * y) ** 2 / ((1 + x) * (-1 - y + x * y) * (1 + x - y ** 2))
    yb = (x - y) ** 2 * (1 + x + y) / ((1 + y - x ** 2) * (1 + x - y ** 2))
    I = (x + 1) * (y + 1) * (x + y + 1) / (x * y)
    Ib = I.subs({x: xb, y: yb}, simultaneous=True)
    assert sp.simplify(I * Ib + 1) == 0
    rng = random.Random(3)
    for _ in range(20):
        m = random_moduli(rng, height=9)
        sub = {x: sp.Rational(m.x.numerator, m.x.denominator), y: sp.Rational(m.y.numerator, m.y.denominator)}
        got = _t_formula(m.x, m.y)
        assert (F(str(xb.subs(sub))), F(str(yb.subs(sub)))) == got


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_identities_at_random_rational_points(seed):
    m = random_moduli(random.Random(seed), height=12)
    image = t_map(m)
    assert invariant_I(m) * invariant_I(image) == -1
    assert t_map_geometric(m) == image
    assert jacobian_ratio_residual(m) == 0


@settings(max_examples=30, deadline=None)
@given(st.fractions(min_value=-9, max_value=9, max_denominator=9),
       st.fractions(min_value=-9, max_value=9, max_denominator=9))
def test_moduli_round_trip(x, y):
    m = PentagonModuli(x, y)
    assume(not degeneracy_report(m))
    assert moduli_from_pentagon(pentagon_from_moduli(m)) == m
