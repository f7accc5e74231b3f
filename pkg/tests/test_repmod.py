import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from repdim.exactlin import inverse, rank
from repdim.harness.corpus import load_algebra, uniserial_quotients
from repdim.harness.formats import parse_module_text
from repdim.harness.randmod import random_soc_annihilated
from repdim.pathalg import injective_module, projective_module
from repdim.repmod import (
    ModuleError,
    Representation,
    decompose,
    direct_sum,
    find_isomorphism,
    hom_basis,
    hom_dim,
    injective_envelope,
    is_indecomposable,
    is_isomorphic,
    length,
    module_radical,
    module_socle,
    module_top,
    projective_cover,
    simple_module,
)


def conjugate(X, rng):
    """``X`` in a random basis: arrows become ``T_s^-1 R T_t``."""
    f = X.field
    Ts = []
    for d in X.dims:
        while True:
            T = f.random(rng, (d, d))
            if rank(f, T) == d:
                break
        Ts.append(T)
    mats = []
    for a, m in zip(X.algebra.quiver.arrows, X.arrow_mats):
        s, t = a.source, a.target
        if m.size:
            mats.append(f.matmul(f.matmul(inverse(f, Ts[s]), m), Ts[t]))
        else:
            mats.append(m)
    return Representation(X.algebra, X.dims, mats)


def regular(A):
    return direct_sum([projective_module(A, i) for i in range(A.quiver.num_vertices)])[0]


@pytest.mark.parametrize("name", ["kx3.alg", "a51.alg", "a53_l2.alg"])
def test_hom_from_regular_is_whole_module(name):
    A = load_algebra(name)
    rng = np.random.default_rng(0)
    for _ in range(4):
        X = random_soc_annihilated(A, rng)
        assert hom_dim(regular(A), X) == X.dim


def test_uniserial_hom_dimensions(kx3):
    mods = uniserial_quotients(kx3)
    for i, X in enumerate(mods, 1):
        for j, Y in enumerate(mods, 1):
            assert hom_dim(X, Y) == min(i, j)


def test_hom_basis_elements_commute(a51):
    rng = np.random.default_rng(1)
    X = random_soc_annihilated(a51, rng)
    Y = random_soc_annihilated(a51, rng)
    basis = hom_basis(X, Y)
    assert all(b.commutes() for b in basis)
    if basis:
        assert rank(a51.field, np.stack([b.vector() for b in basis])) == len(basis)


def test_relation_violation_is_rejected(kx3):
    spec = parse_module_text("repdim-module 1\ndims: 3\nmatrix: x = 0 1 0; 0 0 1; 1 0 0\n")
    with pytest.raises(ModuleError):
        spec.build(kx3)


@pytest.mark.parametrize("name", ["kx3.alg", "a51.alg", "a53_l1.alg"])
def test_projective_cover_of_random_modules(name):
    A = load_algebra(name)
    rng = np.random.default_rng(2)
    for _ in range(4):
        X = random_soc_annihilated(A, rng)
        cov = projective_cover(X)
        assert cov.is_surjective()
        T, _ = module_top(X)
        dims = [projective_module(A, i).dim for i in range(A.quiver.num_vertices)]
        assert cov.source.dim == sum(t * d for t, d in zip(T.dims, dims))


def test_injective_envelope_dimensions(a51):
    rng = np.random.default_rng(3)
    X = random_soc_annihilated(a51, rng)
    env = injective_envelope(X)
    assert env.is_injective()
    S, _ = module_socle(X)
    dims = [injective_module(a51, i).dim for i in range(2)]
    assert env.target.dim == sum(s * d for s, d in zip(S.dims, dims))


def test_radical_socle_of_uniserial(kx3):
    P = projective_module(kx3, 0)
    R, _ = module_radical(P)
    S, _ = module_socle(P)
    assert (R.dim, S.dim, length(P)) == (2, 1, 3)


@given(seed=st.integers(0, 10_000))
@settings(max_examples=15, deadline=None)
def test_decomposition_recovers_summands(seed):
    A = load_algebra("a53_l1.alg")
    rng = np.random.default_rng(seed)
    parts = [random_soc_annihilated(A, rng, max_tops=1) for _ in range(2)]
    pieces = [R for X in parts for R, k in decompose(X).summands for _ in range(k)]
    X = conjugate(direct_sum(parts)[0], rng)
    d = decompose(X, seed)
    d.check()
    got = [R for R, k in d.summands for _ in range(k)]
    assert sorted(R.dim for R in got) == sorted(R.dim for R in pieces)
    assert all(is_indecomposable(R) for R in got)


def test_isomorphism_survives_base_change(a51):
    rng = np.random.default_rng(5)
    X = random_soc_annihilated(a51, rng)
    Y = conjugate(X, rng)
    iso = find_isomorphism(X, Y)
    assert iso is not None and iso.is_isomorphism() and iso.commutes()
    assert is_isomorphic(X, Y)
    assert not is_isomorphic(X, simple_module(a51, 0)) or X.dim == 1


def test_projectives_are_indecomposable(a51):
    for i in range(2):
        assert is_indecomposable(projective_module(a51, i))
    assert not is_indecomposable(direct_sum([simple_module(a51, 0), simple_module(a51, 1)])[0])
