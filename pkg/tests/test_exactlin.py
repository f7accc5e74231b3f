from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sympy import GF as SymGF, QQ as SymQQ
from sympy.polys.matrices import DomainMatrix

from repdim.exactlin import (
    GF,
    QQ,
    complement_rows,
    coordinates,
    intersect_row_spaces,
    inverse,
    kernel_basis,
    rank,
    row_space,
    rref,
    solve,
)


def sym_rank(field, m):
    if m.size == 0:
        return 0
    rows = [[int(x) if field.is_prime else x for x in r] for r in m.tolist()]
    dom = SymGF(field.p) if field.is_prime else SymQQ
    return DomainMatrix([[dom(x) for x in r] for r in rows], m.shape, dom).rank()


def matrices(field, max_dim=6):
    def build(shape_and_vals):
        (r, c), vals = shape_and_vals
        return field.array(np.array(vals[: r * c], dtype=object).reshape(r, c))

    vals = st.integers(0, field.p - 1) if field.is_prime else st.integers(-3, 3)
    return st.tuples(st.integers(1, max_dim), st.integers(1, max_dim)).flatmap(
        lambda s: st.tuples(st.just(s), st.lists(vals, min_size=s[0] * s[1], max_size=s[0] * s[1]))
    ).map(build)


FIELDS = [GF(2), GF(5), GF(7), QQ]


@pytest.mark.parametrize("field", FIELDS, ids=str)
@given(data=st.data())
@settings(max_examples=60, deadline=None)
def test_rank_matches_sympy(field, data):
    m = data.draw(matrices(field))
    assert rank(field, m) == sym_rank(field, m)


@pytest.mark.parametrize("field", FIELDS, ids=str)
@given(data=st.data())
@settings(max_examples=60, deadline=None)
def test_kernel_is_full_left_kernel(field, data):
    m = data.draw(matrices(field))
    k = kernel_basis(field, m)
    assert k.shape[0] == m.shape[0] - rank(field, m)
    if k.shape[0]:
        assert field.is_zero(field.matmul(k, m))
        assert rank(field, k) == k.shape[0]


@pytest.mark.parametrize("field", FIELDS, ids=str)
@given(data=st.data())
@settings(max_examples=60, deadline=None)
def test_solve_consistent_rhs(field, data):
    m = data.draw(matrices(field))
    rng = np.random.default_rng(data.draw(st.integers(0, 1000)))
    x0 = field.random(rng, (2, m.shape[0]))
    b = field.matmul(x0, m)
    x = solve(field, m, b)
    assert x is not None
    assert np.array_equal(field.matmul(x, m), b)


def test_solve_inconsistent():
    f = GF(5)
    m = f.array([[1, 0], [2, 0]])
    assert solve(f, m, f.array([0, 1])) is None


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_inverse_roundtrip(field):
    rng = np.random.default_rng(3)
    for _ in range(20):
        m = field.random(rng, (4, 4))
        if rank(field, m) < 4:
            with pytest.raises(ValueError):
                inverse(field, m)
            continue
        assert np.array_equal(field.matmul(m, inverse(field, m)), field.eye(4))


def test_rref_is_canonical():
    f = GF(5)
    m = f.array([[2, 4, 1], [1, 2, 4]])
    r, red, piv = rref(f, m)
    assert r == 2 and piv == [0, 2]
    assert red[0].tolist() == [1, 2, 0] and red[1].tolist() == [0, 0, 1]
    # the same space in another spanning set gives the same reduced basis
    m2 = f.matmul(f.array([[1, 1], [0, 3]]), m)
    assert np.array_equal(row_space(f, m2), row_space(f, m))


def test_rationals_stay_exact():
    m = QQ.array([[Fraction(1, 3), 1], [1, 3]])
    assert rank(QQ, m) == 1
    assert kernel_basis(QQ, m).tolist() == [[-3, 1]]


def test_intersection_and_complement():
    f = GF(7)
    u = f.array([[1, 0, 0], [0, 1, 0]])
    w = f.array([[0, 1, 0], [0, 0, 1]])
    inter = intersect_row_spaces(f, u, w)
    assert inter.tolist() == [[0, 1, 0]]
    comp = complement_rows(f, u, 3)
    assert rank(f, np.concatenate([u, comp])) == 3
    assert coordinates(f, u, f.array([[3, 4, 0]])).tolist() == [[3, 4]]
    with pytest.raises(ValueError):
        coordinates(f, u, f.array([[0, 0, 1]]))


def test_gf_rejects_non_prime():
    with pytest.raises(ValueError):
        GF(6)
