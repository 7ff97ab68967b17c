from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from projevolute.errors import DegenerateInput, PoleAtInput
from projevolute.hexagon import (
    FIXED,
    INFINITY,
    AxisAlignedHexagon,
    HexagonModuli,
    abcd,
    attractor_experiment,
    axis_aligned_residual,
    f_iterates,
    f_map,
    f_winding_number,
    hexagon_from_moduli,
    hexagon_step,
    moduli_from_hexagon,
    orbit_experiment,
    random_axis_aligned_start,
    renormalized_step,
    renormalized_step_geometric,
)
from projevolute.projective import HomTriple, ProjMap

GENERIC = HexagonModuli(F(2), F(3), F(1, 2), F(5, 2))


def test_abcd_examples():
    assert abcd(HexagonModuli(0, F(1, 2), 0, F(1, 2))) == (1, 0, 0, 0)
    assert abcd(HexagonModuli(1, 1, 1, 1)) == (3, 1, 1, 0)
    assert abcd(HexagonModuli(F(2), F(7, 3), F(-1), F(7, 3)))[3] == 0


def test_residual_examples():
    assert axis_aligned_residual(HexagonModuli(1, 1, 1, 1)) == (8, 0)
    assert axis_aligned_residual(HexagonModuli(0, F(1, 2), 0, F(1, 2))) == (0, 0)


def test_hexagon_from_moduli_frame():
    P = hexagon_from_moduli(GENERIC)
    assert [P[i] for i in range(4)] == [HomTriple.affine(F(a), F(b)) for a, b in ((0, 1), (-1, 1), (-1, 0), (0, 0))]
    assert moduli_from_hexagon(P) == GENERIC


def test_hexagon_from_moduli_rejects_collinear_triple():
    with pytest.raises(DegenerateInput):
        hexagon_from_moduli(HexagonModuli(F(1), F(0), F(2), F(3)))  # (-1,0), (0,0), (1,0)


def test_moduli_invariant_under_projective_map():
    M = ProjMap(((F(2), F(1), F(-3)), (F(0), F(5, 2), F(1)), (F(1), F(-1), F(4))))
    assert moduli_from_hexagon(hexagon_from_moduli(GENERIC).transformed(M)) == GENERIC


def test_axis_aligned_hexagons_land_on_quadric():
    for a, b in ((F(3), F(5)), (F(2, 7), F(-5, 3)), (F(5, 2), F(1, 3))):
        H = AxisAlignedHexagon(a, b)
        assert axis_aligned_residual(H.moduli()) == (0, 0)
        for shift in range(6):
            assert axis_aligned_residual(moduli_from_hexagon(H.polygon().shifted(shift))) == (0, 0)
            assert axis_aligned_residual(moduli_from_hexagon(H.polygon().reversed().shifted(shift))) == (0, 0)


def test_f_values():
    assert f_map(F(0)) == 1
    assert f_map(F(3)) == F(5, 8)
    assert f_map(F(1)) is INFINITY and f_map(F(-1)) is INFINITY
    assert f_map(INFINITY) == 0
    with pytest.raises(PoleAtInput):
        f_map(F(1), strict=True)
    assert f_iterates(F(0), 3) == [0, 1, INFINITY, 0]


def test_f_has_degree_two():
    assert abs(f_winding_number()) == 2


def test_renormalized_step_examples():
    assert renormalized_step(AxisAlignedHexagon(F(3), F(3)), "geometric") == AxisAlignedHexagon(F(5, 8), F(5, 8))
    assert renormalized_step(AxisAlignedHexagon(F(0), F(3))) == AxisAlignedHexagon(F(1), F(5, 8))
    step = renormalized_step(AxisAlignedHexagon(F(1), F(2)))
    assert step.a is INFINITY and step.degenerate
    with pytest.raises(DegenerateInput):
        renormalized_step_geometric(AxisAlignedHexagon(F(1), F(2)))


nonpole = st.fractions(min_value=-20, max_value=20, max_denominator=15).filter(
    lambda t: t not in (0, 1, -1) and f_map(t) not in (0, 1, -1))


@settings(max_examples=40, deadline=None)
@given(nonpole, nonpole)
def test_geometric_step_is_f_times_f(a, b):
    out = renormalized_step_geometric(AxisAlignedHexagon(a, b))
    assert (out.a, out.b) == (f_map(a), f_map(b))


def test_quadric_preserved_by_one_exact_step():
    m = AxisAlignedHexagon(F(3), F(-2, 5)).moduli()
    for labeling in (FIXED, "balanced"):
        assert axis_aligned_residual(hexagon_step(m, labeling)) == (0, 0)


def test_orbit_zero_iterations():
    orbit = orbit_experiment(GENERIC, 0)
    assert len(orbit.records) == 1 and orbit.records[0].moduli == GENERIC


def test_orbits_on_quadric_stay_on_quadric():
    rng = np.random.default_rng(0)
    for _ in range(10):
        orbit = orbit_experiment(random_axis_aligned_start(rng), 50)
        assert orbit.stopped is None
        assert max(max(r.quadric_residual, r.d_residual) for r in orbit.records) <= 1e-9


def test_attractor_run_is_deterministic_and_parallel_safe():
    a = attractor_experiment(seed=3, starts=8, iters=10)
    b = attractor_experiment(seed=3, starts=8, iters=10, workers=4)
    assert [o.records[-1].moduli for o in a.orbits] == [o.records[-1].moduli for o in b.orbits]
    assert a.as_dict() == b.as_dict()
