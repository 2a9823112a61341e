from fractions import Fraction

import pytest
import sympy
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from hypothesis import given, settings
from hypothesis import strategies as st

from qplane.field import (
    ConductorMismatch,
    CycMatrix,
    cyclotomic_poly,
    euler_phi,
    make_field,
    rank_kernel,
    solve,
)

F5 = make_field(5)


def scalars(field, lo=-3, hi=3):
    return st.lists(st.integers(lo, hi), min_size=field.degree, max_size=field.degree).map(field.from_coeffs)


def matrices(field, max_dim=12, lo=-2, hi=2):
    @st.composite
    def build(draw):
        r = draw(st.integers(1, max_dim))
        c = draw(st.integers(1, max_dim))
        density = draw(st.sampled_from([0.15, 0.4, 1.0]))
        data = {}
        for i in range(r):
            for j in range(c):
                if draw(st.floats(0, 1)) < density:
                    v = draw(scalars(field, lo, hi))
                    if v:
                        data[(i, j)] = v
        return CycMatrix(field, r, c, data)

    return build()


def regular_matrix(M):
    """Rational matrix of M acting on Q(zeta)^cols written in the power basis."""
    field = M.field
    d = field.degree
    rows = [[QQ(0)] * (M.cols * d) for _ in range(M.rows * d)]
    for (i, j), v in M.items():
        for k in range(d):
            img = v * field.zeta ** k
            for m, c in enumerate(img.coeffs):
                rows[i * d + m][j * d + k] = QQ(c.numerator, c.denominator)
    return DomainMatrix(rows, (M.rows * d, M.cols * d), QQ)


@pytest.mark.parametrize("n", range(1, 31))
def test_cyclotomic_poly_matches_sympy(n):
    x = sympy.Symbol("x")
    expected = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()[::-1]
    assert list(cyclotomic_poly(n)) == [int(c) for c in expected]
    assert len(cyclotomic_poly(n)) - 1 == euler_phi(n)


@pytest.mark.parametrize("n", range(1, 25))
def test_cyclotomic_poly_by_recursive_division(n):
    # x^n - 1 = prod_{d | n} Phi_d
    x = sympy.Symbol("x")
    prod = sympy.Integer(1)
    for d in range(1, n + 1):
        if n % d == 0:
            prod *= sum(c * x ** i for i, c in enumerate(cyclotomic_poly(d)))
    assert sympy.expand(prod - (x ** n - 1)) == 0


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 7, 8, 12])
def test_zeta_has_order_n(n):
    F = make_field(n)
    assert F.zeta ** n == F.one
    assert all(F.zeta ** k != F.one for k in range(1, n))


@settings(max_examples=60, deadline=None)
@given(scalars(F5), scalars(F5), scalars(F5))
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == F5.zero
    if a:
        assert a * a.inverse() == F5.one
        assert (b / a) * a == b


F7 = make_field(7)


@settings(max_examples=40, deadline=None)
@given(scalars(F7))
def test_inverse_in_q_zeta7(a):
    if a:
        assert a * a.inverse() == F7.one


def test_rho_powers_wrap():
    assert F5.rho(7) == F5.rho(2)
    assert F5.rho(-1) == F5.rho(4)
    assert F5.rho(3).rho_exponent() == 3
    assert (F5.rho(1) + F5.one).rho_exponent() is None


def test_conductor_mismatch():
    with pytest.raises(ConductorMismatch):
        F5.one + make_field(7).one


def test_parse_roundtrip():
    for text in ["0", "1", "z", "-z^3", "1 + 2*z", "1/2*z^2 - 3"]:
        v = F5.parse(text)
        assert F5.parse(str(v)) == v


@settings(max_examples=100, deadline=None)
@given(matrices(F5))
def test_rank_plus_kernel_equals_columns(M):
    rank, kernel = rank_kernel(M)
    assert rank + len(kernel) == M.cols
    for v in kernel:
        assert (M * v).is_zero()
    # independent oracle: rank of the rational regular representation is phi(n) times the rank
    assert regular_matrix(M).rank() == rank * F5.degree


@settings(max_examples=60, deadline=None)
@given(matrices(F5, max_dim=8), st.data())
def test_solve_reverifies(M, data):
    x = CycMatrix.column(F5, [data.draw(scalars(F5)) for _ in range(M.cols)])
    b = M * x
    sol = solve(M, b)
    assert sol is not None
    assert M * sol.particular == b
    for k in sol.kernel:
        assert (M * k).is_zero()


def test_solve_invertible_with_dense_rhs():
    # regression: the right-hand side column must never be picked as a pivot
    n = 5
    M = CycMatrix.from_rows(F5, [[F5.rho((i * j) % n) for j in range(n)] for i in range(n)])
    for j in range(n):
        b = CycMatrix.column(F5, [F5.rho(j + i) + F5.one for i in range(n)])
        sol = solve(M, b)
        assert sol is not None and sol.unique
        assert M * sol.particular == b


def test_solve_diag_example():
    E2 = CycMatrix.diag(F5, [F5.rho(i) for i in range(5)])
    e1 = CycMatrix.column(F5, [F5.zero, F5.one, F5.zero, F5.zero, F5.zero])
    sol = solve(E2, e1)
    assert sol.particular == CycMatrix.column(F5, [F5.zero, F5.rho(-1), F5.zero, F5.zero, F5.zero])


def test_inconsistent_system():
    M = CycMatrix.from_rows(F5, [[F5.one, F5.one], [F5.one, F5.one]])
    b = CycMatrix.column(F5, [F5.one, F5.zero])
    assert solve(M, b) is None


def test_inverse_matches_identity():
    M = CycMatrix.from_rows(F5, [[F5.one, F5.zeta], [F5.rho(2), Fraction(3)]])
    assert M * M.inverse() == CycMatrix.identity(F5, 2)
