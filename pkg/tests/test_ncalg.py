import json
from dataclasses import replace
from functools import lru_cache
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qplane.ncalg import (
    NcPoly,
    adjoin_central,
    blowup_presentation,
    certify_relations,
    chart_algebra,
    contains_relation,
    embed,
    is_central,
    is_central_exponent,
    normal_form,
    quantum_plane,
    quantum_space,
    skew_plane,
    sort_word,
)
from qplane.reps import center_lambda, standard_rep


def four_letter(n=5):
    return quantum_space(
        n,
        ("a", "b", "c", "d"),
        {("a", "b"): 1, ("a", "c"): 2, ("a", "d"): 4, ("b", "c"): 3, ("b", "d"): 1, ("c", "d"): 2},
    )


def swap_oracle(pres):
    """Rewrite by single adjacent swaps in every possible order; all orders must agree."""

    @lru_cache(maxsize=None)
    def nf(word):
        results = set()
        for i in range(len(word) - 1):
            a, b = word[i], word[i + 1]
            if a > b:
                # a b = rho^e b a
                e = pres.commutation_exponent(a, b)
                sub_e, sub_w = nf(word[:i] + (b, a) + word[i + 2 :])
                results.add(((e + sub_e) % pres.n, sub_w))
        if not results:
            return 0, word
        assert len(results) == 1, word
        return results.pop()

    return nf


def test_yx_rewrites_to_xy():
    A = quantum_plane(5)
    yx = A.monomial("yx")
    assert normal_form(yx, A) == A.monomial("xy", A.field.rho(4))


def test_confluence_against_exhaustive_swaps():
    pres = four_letter()
    oracle = swap_oracle(pres)
    for length in range(1, 6):
        for w in product(range(4), repeat=length):
            assert sort_word(pres, w) == oracle(w)


def polys(pres, max_terms=4, max_len=5):
    m = len(pres.generators)
    F = pres.field
    word = st.lists(st.integers(0, m - 1), max_size=max_len).map(tuple)
    coeff = st.integers(-3, 3).map(F)
    return st.dictionaries(word, coeff, max_size=max_terms).map(lambda d: NcPoly(F, d))


A5 = quantum_plane(5)


@settings(max_examples=80, deadline=None)
@given(polys(A5))
def test_normal_form_idempotent(p):
    q = normal_form(p, A5)
    assert normal_form(q, A5) == q


@settings(max_examples=60, deadline=None)
@given(polys(A5, max_len=4), polys(A5, max_len=4))
def test_normal_form_is_multiplicative_mod_rewriting(p, q):
    assert normal_form(p * q, A5) == normal_form(normal_form(p, A5) * normal_form(q, A5), A5)


@settings(max_examples=40, deadline=None)
@given(polys(A5, max_terms=3, max_len=4))
def test_normal_form_preserves_matrix_value(p):
    rep = standard_rep(5, (1, 1, 1), 2)
    assert rep.evaluate(p) == rep.evaluate(normal_form(p, A5))


@pytest.mark.parametrize("n", [4, 5, 7])
def test_center_relation_scalar(n):
    A = quantum_plane(n)
    F = A.field
    lhs = A.monomial("x" * n + "y" * n + "z" * n)
    prod = normal_form(A.monomial("xyz") ** n, A)
    (word, mu), = prod.terms.items()
    assert word == next(iter(lhs.terms))
    lam = mu.inverse()
    assert lam.rho_exponent() is not None
    assert lam == center_lambda(n)
    # matrix evaluation on an Azumaya point
    rep = standard_rep(n, (1, 1, 1), 1)
    assert rep.evaluate(lhs) == rep.evaluate(A.monomial("xyz") ** n).scale(lam)


@pytest.mark.parametrize("n", [4, 5, 7])
def test_center_generators(n):
    A = quantum_plane(n)
    for text in ("x" * n, "y" * n, "z" * n, "xyz"):
        assert is_central(A.monomial(text), A)
    assert not is_central(A.monomial("xy"), A)
    assert is_central_exponent(A, (1, 1, 1))
    assert is_central_exponent(A, (n, 0, 0))
    assert not is_central_exponent(A, (1, 0, 0))


def test_skew_plane_center():
    C = skew_plane(5, 3)
    assert is_central(C.monomial("u" * 5), C)
    assert is_central(C.monomial("v" * 5), C)
    assert not is_central(C.monomial("uv"), C)


def test_chart_exponents():
    for chart, pattern in (("line", (1, 2, 1)), ("origin", (1, 3, 1))):
        C = chart_algebra(chart, 5)
        u, v, w = (C.index(c) for c in "uvw")
        assert (C.commutation_exponent(u, v), C.commutation_exponent(v, w), C.commutation_exponent(w, u)) == pattern


def test_adjoin_central():
    At = adjoin_central(quantum_plane(5))
    t = At.gen("t")
    for g in "xyz":
        assert normal_form(At.gen(g) * t - t * At.gen(g), At).is_zero()


@pytest.mark.parametrize("n", [4, 5, 7])
def test_blowup_line_relations(n):
    B = blowup_presentation("xz", n)
    F = B.field
    rho = F.rho(1)
    assert contains_relation(B, B.monomial("ZX") - B.monomial("XZ", rho))
    assert contains_relation(B, B.monomial("xZ") - B.monomial("Xz"))
    assert contains_relation(B, B.monomial("yX") - B.monomial("Xy", F.rho(n - 1)))
    for r in B.relations:
        assert embed(r, B).is_zero()


def test_blowup_origin_relations():
    B = blowup_presentation("xyz", 5)
    assert contains_relation(B, B.monomial("xY") - B.monomial("Xy"))
    for r in B.relations:
        assert embed(r, B).is_zero()


@pytest.mark.parametrize("n", [4, 5])
@pytest.mark.parametrize("ideal", ["xz", "xyz"])
def test_certify_relations(n, ideal):
    cert = certify_relations(blowup_presentation(ideal, n), 4)
    assert cert["ok"], cert


def test_certify_detects_missing_relation():
    B = blowup_presentation("xz", 5)
    # drop both exchange relations xZ ~ Xz and zX ~ Zx
    exchanges = [{B.parse_word("xZ"), B.parse_word("Xz")}, {B.parse_word("zX"), B.parse_word("Zx")}]
    trimmed = replace(B, relations=tuple(r for r in B.relations if set(r.terms) not in exchanges))
    assert len(trimmed.relations) == len(B.relations) - 2
    assert not certify_relations(trimmed, 2)["ok"]


def test_normal_form_rejects_embedded():
    B = blowup_presentation("xz", 5)
    with pytest.raises(ValueError):
        normal_form(B.monomial("xX"), B)


def test_presentation_json_roundtrips():
    B = blowup_presentation("xz", 5)
    doc = B.to_json()
    assert json.loads(json.dumps(doc)) == doc
    assert [g["name"] for g in doc["generators"]] == ["x", "y", "z", "X", "Z"]
    assert doc["ambient"]["name"] == "A[t]"
