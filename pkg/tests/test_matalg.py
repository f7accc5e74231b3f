import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix, Poly, symbols

from repdim.exactlin import GF, QQ, rank
from repdim.matalg import combine, factor, minimal_polynomial, poly_eval, primary_split, radical


def upper_triangular_basis(field, n):
    out = []
    for i in range(n):
        for j in range(i, n):
            m = field.zeros((n, n))
            m[i, j] = 1
            out.append(m)
    return out


@pytest.mark.parametrize("field", [GF(2), GF(3), GF(5), QQ], ids=str)
def test_radical_of_upper_triangular(field):
    n = 4
    mats = upper_triangular_basis(field, n)
    rad = radical(field, mats)
    assert rad.shape[0] == n * (n - 1) // 2
    for row in rad:
        m = combine(field, row, mats)
        assert field.is_zero(np.tril(m))


@pytest.mark.parametrize("p", [2, 3])
def test_radical_of_modular_group_algebra(p):
    # GF(p)[C_p] in its regular representation: the radical has dimension p - 1
    f = GF(p)
    g = np.roll(np.eye(p, dtype=np.int64), 1, axis=1)
    mats = [np.linalg.matrix_power(g, k) % p for k in range(p)]
    assert radical(f, mats).shape[0] == p - 1


@given(st.lists(st.integers(0, 4), min_size=9, max_size=9))
@settings(max_examples=50, deadline=None)
def test_minimal_polynomial_divides_characteristic(vals):
    f = GF(5)
    m = f.array(np.array(vals).reshape(3, 3))
    mp = minimal_polynomial(f, m)
    assert f.is_zero(poly_eval(f, mp, m))
    x = symbols("x")
    char = Matrix(vals).reshape(3, 3).charpoly(x).as_expr()
    assert Poly(char, x, modulus=5).rem(Poly(list(reversed(mp)), x, modulus=5)).is_zero


def test_factor_over_gf5():
    f = GF(5)
    # (x - 1)^2 (x + 1) = x^3 - x^2 - x + 1
    facs = factor(f, [1, 4, 4, 1])
    assert sorted((tuple(c), e) for c, e in facs) == [((1, 1), 1), ((4, 1), 2)]


def test_primary_split_dimensions():
    f = GF(5)
    m = f.array([[1, 1, 0], [0, 1, 0], [0, 0, 3]])
    u, w = primary_split(f, m)
    assert sorted([u.shape[0], w.shape[0]]) == [1, 2]
    assert rank(f, np.concatenate([u, w])) == 3
    assert primary_split(f, f.array([[2, 1], [0, 2]])) is None
