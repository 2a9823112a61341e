from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qplane.field import CycMatrix, make_field
from qplane.heis import psi
from qplane.ncalg import quantum_plane
from qplane.reps import (
    blowup_rep,
    center_point,
    central_character,
    chart_exponent_pattern,
    classify,
    decompose_semisimple,
    make_rep,
    nth_root,
    rep_from_center_point,
    section_rep,
    standard_rep,
    to_diagonal_form,
    trace_vanishing_failures,
    verify_rep,
)


def test_standard_rep_relations_and_characters():
    n = 5
    F = make_field(n)
    chars = []
    for j in range(n):
        rep = standard_rep(n, (1, 1, 1), j)
        assert verify_rep(rep)[0]
        pt = central_character(rep)
        assert pt.g == F.rho(j)
        assert pt.on_center()
        chars.append(pt)
    assert len(set(chars)) == n


def test_wrong_z_image_fails():
    A = quantum_plane(5)
    h = psi(5)
    with pytest.raises(ArithmeticError):
        make_rep(A, {"x": h.E1, "y": h.E2, "z": h.E1}, 5)


def test_zero_rep_is_valid():
    rep = make_rep(quantum_plane(5), {}, 5)
    assert verify_rep(rep)[0]
    assert classify(central_character(rep)).tag == "Origin"


def test_even_n_sign():
    pt = central_character(standard_rep(4, (1, 1, 1)))
    F = make_field(4)
    assert pt.w == -F.one
    assert pt.u == pt.v == F.one
    # the root for w = 1 at n = 4 is not rational, so the point is rejected honestly
    with pytest.raises(ValueError):
        rep_from_center_point(center_point(4, ("1", "1", "1", "0")))


@pytest.mark.parametrize("n", [4, 5, 7])
def test_traces_vanish_off_center(n):
    assert trace_vanishing_failures(standard_rep(n, (1, 1, 1), 1), n + 2) == []
    assert trace_vanishing_failures(standard_rep(n, (1, 1, 0)), n + 2) == []


rationals = st.fractions(min_value=-4, max_value=4, max_denominator=3)


@settings(max_examples=30, deadline=None)
@given(rationals, rationals, rationals, st.integers(0, 4))
def test_center_point_roundtrip(a, b, c, j):
    n = 5
    rep = standard_rep(n, (a, b, c), j)
    pt = central_character(rep)
    assert pt.on_center()
    back = rep_from_center_point(pt)
    assert central_character(back) == pt


def test_classify_strata():
    n = 5
    cases = {
        ((1, 1, 1), 1): ("Azumaya-off-V(xyz)", "FatPoint"),
        ((1, 1, 0), 0): ("Azumaya-on-V(xyz)", "PointSum"),
        ((0, 1, 0), 0): ("Line", "LineType"),
        ((0, 0, 0), 0): ("Origin", "Trivial"),
    }
    for (roots, j), (tag, mtype) in cases.items():
        st_ = classify(central_character(standard_rep(n, roots, j)))
        assert (st_.tag, st_.module_type) == (tag, mtype)


def test_nth_root():
    F = make_field(5)
    assert nth_root(F(32), 5) == F(2)
    assert nth_root(F(-32), 5) == F(-2)
    assert nth_root(F(Fraction(1, 243)), 5) == F(Fraction(1, 3))
    with pytest.raises(ValueError):
        nth_root(F(2), 5)
    with pytest.raises(ValueError):
        nth_root(F.zeta, 5)


def test_off_center_point_rejected():
    with pytest.raises(ValueError):
        rep_from_center_point(center_point(5, ("1", "1", "1", "0")))


def test_decompose_line_point():
    n = 5
    rep = standard_rep(n, (0, 1, 0))
    parts = decompose_semisimple(rep)
    assert len(parts) == n
    assert all(mult == 1 for _, mult, _ in parts)
    F = make_field(n)
    ys = {s.image("y").entry(0, 0) for s, _, _ in parts}
    assert ys == {F.rho(i) for i in range(n)}


def test_decompose_trivial_point():
    rep = standard_rep(5, (0, 0, 0))
    parts = decompose_semisimple(rep)
    assert len(parts) == 1 and parts[0][1] == 5


def test_decompose_needs_diagonal():
    with pytest.raises(ValueError):
        decompose_semisimple(standard_rep(5, (1, 0, 0)))


@pytest.mark.parametrize("params", [(1, 0, 0), (0, 0, 1)])
def test_to_diagonal_form(params):
    rep = blowup_rep("xyz", 5, params)
    diag = to_diagonal_form(rep)
    assert all(m.is_diagonal() for m in diag.images)
    assert verify_rep(diag)[0]
    assert len(decompose_semisimple(diag)) == 5
    # conjugation preserves traces of every image power
    for i in range(len(rep.images)):
        for k in range(1, 6):
            assert (rep.images[i] ** k).trace() == (diag.images[i] ** k).trace()


def test_blowup_reps_verify():
    for ideal in ("xz", "xyz"):
        for params in [(1, 1, 1), (1, 0, 1), (0, 1, 1), (0, 1, 0)]:
            assert verify_rep(blowup_rep(ideal, 5, params))[0]


@pytest.mark.parametrize("n", [5, 7])
def test_section_patterns(n):
    line = section_rep("line", n, (1, 1, 1))
    assert chart_exponent_pattern(line) == (1, 2, 1)
    origin = section_rep("origin", n, (1, 1, 1))
    assert chart_exponent_pattern(origin) == (1, 3, 1)
    assert origin.meta["w_power"] == 3


def test_section_power_two_on_origin_chart_fails():
    rep = section_rep("origin", 5, (1, 1, 1), w_power=2, check=False)
    assert chart_exponent_pattern(rep) == (1, 2, 1)
    assert not verify_rep(rep)[0]
    with pytest.raises(ArithmeticError):
        section_rep("origin", 5, (1, 1, 1), w_power=2)


def test_rep_json():
    doc = standard_rep(5, (1, 1, 1)).to_json()
    assert doc["dim"] == 5 and set(doc["images"]) == {"x", "y", "z"}
    assert doc["images"]["x"][4][0] == "1"
