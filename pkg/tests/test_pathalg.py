import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from repdim.exactlin import GF, QQ, rank
from repdim.harness.corpus import data_path, load_algebra
from repdim.harness.formats import parse_algebra_text
from repdim.pathalg import (
    AlgebraError,
    Quiver,
    algebra_radical,
    algebra_socle,
    build_algebra,
    injective_module,
    is_selfinjective,
    projective_module,
    quotient_algebra,
)


def alg(text):
    return parse_algebra_text("repdim-algebra 1\n" + text).build()


def count_monomial_paths(quiver, monomials, max_len=12):
    """Brute-force oracle: paths avoiding every forbidden monomial as a factor."""
    n = 0
    for p in quiver.paths_up_to(max_len):
        word = p[1]
        if not any(word[i:i + len(m)] == m for m in monomials for i in range(len(word) - len(m) + 1)):
            n += 1
    return n


def test_truncated_polynomial_rings():
    for n in range(2, 6):
        A = alg(f"field: GF(5)\nvertices: 1\narrow: x 1 1\nrelation: x^{n}")
        assert A.dim == n
        assert algebra_radical(A).dim == n - 1
        assert algebra_socle(A).dim == 1


def test_corpus_dimensions():
    assert load_algebra("a53_l1.alg").dim == 4
    assert load_algebra("a55_b0.alg").dim == 36
    assert load_algebra("a55_b1.alg").dim == 36


@given(st.lists(st.sampled_from(["a*b", "b*a", "a*b*a", "b*a*b", "a*b*a*b", "b*a*b*a"]), min_size=2, max_size=4, unique=True))
@settings(max_examples=30, deadline=None)
def test_monomial_dimension_matches_path_count(rels):
    # two-cycle quiver; the ideal is admissible once both a*b*a*... words of some length die
    rels = sorted(set(rels) | {"a*b*a*b*a", "b*a*b*a*b"})
    text = "field: GF(3)\nvertices: 1 2\narrow: a 1 2\narrow: b 2 1\n" + "".join(f"relation: {r}\n" for r in rels)
    A = alg(text)
    q = A.quiver
    monos = [tuple(q.arrow_index(x) for x in r.split("*")) for r in rels]
    assert A.dim == count_monomial_paths(q, monos)


def test_commutativity_relation_exact_over_q():
    A = alg("field: QQ\nvertices: 1\narrow: x 1 1\narrow: y 1 1\nrelation: x*x\nrelation: y*y\nrelation: x*y - 1/2*y*x")
    assert A.dim == 4
    x, y = (A.path_element(A.quiver.path_from_arrows([n])) for n in "xy")
    xy, yx = A.multiply(x, y), A.multiply(y, x)
    half = QQ.scalar(QQ.inv(2))
    assert np.array_equal(xy, np.array([half * c for c in yx], dtype=object))
    assert rank(QQ, np.stack([xy, yx])) == 1


def test_degree_hint_gives_same_structure():
    spec = parse_algebra_text(data_path("a51.alg").read_text())
    A = spec.build()
    B = spec.build(degree_hint=9)
    assert A.basis == B.basis
    assert np.array_equal(A.mult, B.mult)


def test_associativity_on_random_elements(a51, a53):
    rng = np.random.default_rng(0)
    for A in [a51, *a53.values()]:
        A.check_associative()
        f = A.field
        for _ in range(20):
            x, y, z = (f.random(rng, (A.dim,)) for _ in range(3))
            assert np.array_equal(A.multiply(A.multiply(x, y), z), A.multiply(x, A.multiply(y, z)))


def test_unit_is_sum_of_vertices(a51):
    f = a51.field
    one = a51.one()
    x = f.random(np.random.default_rng(1), (a51.dim,))
    assert np.array_equal(a51.multiply(one, x), x)
    assert np.array_equal(a51.multiply(x, one), x)


@pytest.mark.parametrize("name", ["kx3.alg", "a51.alg", "a51p.alg", "a52.alg", "a53_l2.alg", "a55_b1.alg"])
def test_socle_invariants(name):
    A = load_algebra(name)
    f = A.field
    soc, rad = algebra_socle(A), algebra_radical(A)
    Q, proj = quotient_algebra(A, soc)
    assert A.dim == soc.dim + Q.dim
    for r in rad.rows:
        for s in soc.rows:
            assert f.is_zero(A.multiply(r, s))
            assert f.is_zero(A.multiply(s, r))


def test_nakayama_permutation():
    A = load_algebra("kx3.alg")
    assert is_selfinjective(A).permutation == (0,)
    assert is_selfinjective(load_algebra("a51.alg")) is not None


def test_hereditary_a2_not_selfinjective():
    A = alg("field: GF(5)\nvertices: 1 2\narrow: a 1 2")
    assert A.dim == 3
    assert projective_module(A, 0).dims != injective_module(A, 0).dims
    assert is_selfinjective(A) is None


def test_non_admissible_rejected():
    with pytest.raises(AlgebraError):
        alg("field: GF(5)\nvertices: 1\narrow: x 1 1\nrelation: x - x*x")
    with pytest.raises(AlgebraError):
        alg("field: GF(5)\nvertices: 1\narrow: x 1 1")  # infinite dimensional


def test_quiver_validation():
    with pytest.raises(AlgebraError):
        Quiver.from_names(["1", "1"], [])
    with pytest.raises(AlgebraError):
        Quiver.from_names(["1"], [("a", "1", "2")])
    with pytest.raises(AlgebraError):
        Quiver.from_names(["1", "2"], [("a", "1", "2"), ("a", "2", "1")])


def test_projective_dims_add_up(a51):
    dims = [projective_module(a51, i).dim for i in range(a51.quiver.num_vertices)]
    assert sum(dims) == a51.dim
