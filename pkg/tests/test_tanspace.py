import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qplane.field import CycMatrix
from qplane.reps import blowup_rep, standard_rep
from qplane.tanspace import (
    Arrow,
    QuiverSetting,
    default_trace_bound,
    defect,
    ext_space,
    is_simple,
    local_quiver,
    normal_space,
    orbit_space,
    tangent_space,
    trep_dimension,
    vector_to_tangent,
)

POINTS = {"azumaya": ((1, 1, 1), 1), "line": ((0, 1, 0), 0), "trivial": ((0, 0, 0), 0)}


def rep_at(n, kind):
    roots, j = POINTS[kind]
    return standard_rep(n, roots, j)


def first_order(rep, tv, poly):
    """eps-coefficient of poly evaluated at rep + eps * tv, by direct expansion."""
    total = CycMatrix.zeros(rep.field, rep.dim)
    for word, c in poly.terms.items():
        for i in range(len(word)):
            left = rep.word(word[:i])
            right = rep.word(word[i + 1 :])
            total = total + (left * tv.deltas[word[i]] * right).scale(c)
    return total


@pytest.mark.parametrize(
    "kind,dims", [("azumaya", (27, 24)), ("line", (31, 20)), ("trivial", (72, 0))]
)
def test_dimensions_n5(kind, dims):
    rep = rep_at(5, kind)
    assert (tangent_space(rep).dim, orbit_space(rep).dim) == dims


@pytest.mark.parametrize("n", [4, 5])
@pytest.mark.parametrize("kind", ["azumaya", "line", "trivial"])
def test_trace_bound_stability(n, kind):
    rep = rep_at(n, kind)
    dims = {tangent_space(rep, D).dim for D in (n + 1, n + 2, 2 * n)}
    assert len(dims) == 1


@pytest.mark.parametrize("n", [4, 5])
@pytest.mark.parametrize("kind", ["azumaya", "line", "trivial"])
def test_all_words_agree_with_monomials(n, kind):
    rep = rep_at(n, kind)
    D = n
    assert tangent_space(rep, D, words="all").dim == tangent_space(rep, D).dim


@pytest.mark.parametrize("kind", ["azumaya", "line", "trivial"])
def test_orbit_inside_tangent(kind):
    rep = rep_at(5, kind)
    T = tangent_space(rep)
    for v in orbit_space(rep).vectors:
        assert T.contains(v)
        assert T.satisfies_equations(v)


def test_orbit_inside_tangent_blowups():
    for ideal, params in (("xz", (1, 1, 1)), ("xz", (1, 0, 1)), ("xyz", (1, 1, 1))):
        rep = blowup_rep(ideal, 5, params)
        T = tangent_space(rep)
        assert all(T.contains(v) for v in orbit_space(rep).vectors)


@pytest.mark.parametrize("kind", ["azumaya", "line", "trivial"])
def test_blockwise_consistency(kind):
    # tangent = orbit + dim Ext computed vertex pair by vertex pair
    rep = rep_at(5, kind)
    lq = local_quiver(rep)
    assert tangent_space(rep).dim == orbit_space(rep).dim + lq.quiver.ext_dimension()


@settings(max_examples=15, deadline=None)
@given(st.data())
def test_tangent_vectors_kill_relations_to_first_order(data):
    kind = data.draw(st.sampled_from(["azumaya", "line", "trivial"]))
    rep = rep_at(5, kind)
    T = tangent_space(rep)
    F = rep.field
    coeffs = [data.draw(st.integers(-2, 2)) for _ in T.basis]
    vec = {}
    for c, b in zip(coeffs, T.basis):
        for k, v in b.items():
            vec[k] = vec.get(k, F.zero) + v * c
    vec = {k: v for k, v in vec.items() if v}
    assert T.satisfies_equations(vec)
    tv = vector_to_tangent(vec, rep, T.block)
    for r in rep.pres.relations:
        assert first_order(rep, tv, r).is_zero()


def test_traced_subspace():
    rep = rep_at(5, "line")
    assert tangent_space(rep, traced=False).dim >= tangent_space(rep).dim


def test_line_point_orbit_shape():
    n = 5
    rep = rep_at(n, "line")
    O = orbit_space(rep)
    assert O.dim == n * n - n
    T = tangent_space(rep)
    for v in O.vectors:
        tv = vector_to_tangent(v, rep, T.block)
        assert tv["x"].is_zero() and tv["z"].is_zero()
        assert all(tv["y"].entry(i, i) == rep.field.zero for i in range(n))
    # every zero-diagonal D gives an orbit vector (0, D, 0)
    for i in range(n):
        for j in range(n):
            if i != j:
                assert O.span.contains({T.block.var(1, i, j): rep.field.one})


def test_azumaya_orbit():
    assert orbit_space(rep_at(5, "azumaya")).dim == 24
    assert is_simple(rep_at(5, "azumaya"))
    assert not is_simple(rep_at(5, "line"))


def test_normal_space_representatives():
    N = normal_space(rep_at(5, "azumaya"))
    assert N.dim == 3
    assert [lab for lab, _ in N.representatives] == ["delta_x", "delta_y", "delta_z"]


def test_ext_between_line_summands():
    n = 5
    lq = local_quiver(rep_at(n, "line"))
    counts = lq.quiver.arrow_counts()
    for i in range(n):
        assert counts[(i, (i + 1) % n)] == 1
        assert counts[(i, (i - 1) % n)] == 1
    assert lq.quiver.loops() == 1
    assert lq.quiver.total_arrows() == 2 * n + 1
    e = ext_space(lq.summands[0][0], lq.summands[2][0])
    assert e.dim == 0


@pytest.mark.parametrize("n,expected", [(4, (0, 3, 27)), (5, (0, 4, 45))])
def test_defects(n, expected):
    got = tuple(defect(rep_at(n, k)) for k in ("azumaya", "line", "trivial"))
    assert got == expected


def test_trep_dimensions():
    assert trep_dimension(rep_at(5, "azumaya").pres, 5) == 27
    assert trep_dimension(blowup_rep("xz", 5, (1, 1, 1)).pres, 5) == 28
    assert tangent_space(blowup_rep("xz", 5, (1, 1, 1))).dim == 28


def test_quiver_validation():
    with pytest.raises(ValueError):
        QuiverSetting((("a", 1),), (Arrow(0, 1, 1),))
    with pytest.raises(ValueError):
        QuiverSetting((("a", 1),), (Arrow(0, 0, 1, 2),))


def test_quiver_outputs():
    q = local_quiver(rep_at(5, "trivial")).quiver
    doc = q.to_json()
    assert json.loads(json.dumps(doc)) == doc
    assert doc["vertices"][0]["dim"] == 5
    assert doc["arrows"][0]["count"] == 3 and doc["arrows"][0]["marked"] == 3
    dot = q.to_dot()
    assert dot.startswith("digraph Q {") and "•••" in dot
    assert "| 0 | 0 | 3 | 3 |" in q.to_markdown()


def test_default_bound():
    assert default_trace_bound(5) == 7
    with pytest.raises(ValueError):
        tangent_space(rep_at(5, "azumaya"), 0)
