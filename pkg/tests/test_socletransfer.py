import itertools

import numpy as np
import pytest

from repdim.approx import AddGenerator, resolve
from repdim.harness.corpus import load_algebra, load_module
from repdim.harness.randmod import random_sequence, random_soc_annihilated
from repdim.pathalg import projective_module
from repdim.exactlin import kernel_basis
from repdim.repmod import hom_basis, is_isomorphic, module_socle, morphism_spaces, projective_cover
from repdim.socletransfer import (
    NotSocleEquivalent,
    _combine,
    _solve_compatible,
    ar_sequence_of_projective,
    lemma_checks,
    sequence_with_terms,
    transfer_generator,
    transfer_resolution,
    transfer_sequence,
    verify_identification,
)


@pytest.fixture(scope="module")
def id51(a51, a51p):
    return verify_identification(a51, a51p)


@pytest.fixture(scope="module")
def id53(a53):
    return verify_identification(a53[1], a53[2])


def test_identifications_verify(a53):
    for a, b in itertools.combinations(range(1, 5), 2):
        ident = verify_identification(a53[a], a53[b])
        assert ident.quot_a.dim == 3


def test_different_quivers_rejected(a51):
    with pytest.raises(NotSocleEquivalent, match="quivers"):
        verify_identification(a51, load_algebra("a52.alg"))


def test_invalid_candidates_rejected(a53):
    with pytest.raises(NotSocleEquivalent, match="invertible"):
        verify_identification(a53[1], a53[2], [[1, 0, 0], [0, 1, 0], [0, 1, 0]])
    # e -> 2e breaks e * e = e
    with pytest.raises(NotSocleEquivalent, match="multiplicative"):
        verify_identification(a53[1], a53[2], [[2, 0, 0], [0, 1, 0], [0, 0, 1]])


def test_explicit_identity_matrix_agrees(a53):
    ident = verify_identification(a53[1], a53[3], [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert ident.iso_label == "explicit"


def test_reinterpretation_round_trip(id51, a51):
    rng = np.random.default_rng(0)
    for _ in range(5):
        X = random_soc_annihilated(a51, rng)
        Xb = id51.to_b(X)
        assert Xb.algebra is id51.algebra_b
        back = id51.to_a(Xb)
        assert all(np.array_equal(m, n) for m, n in zip(back.arrow_mats, X.arrow_mats))


def test_lemma_parts_b_to_d_hold(id51, id53):
    for ident in (id51, id53):
        for c in lemma_checks(ident):
            assert c.rad_iso and c.top_iso and c.soc_match and c.length_equal


def test_compatibility_holds_for_equal_parameter(a53):
    ident = verify_identification(a53[2], a53[2])
    assert all(c.compatibility for c in lemma_checks(ident))


@pytest.mark.parametrize("mu", [2, 3, 4])
def test_compatibility_fails_for_different_parameter(a53, mu):
    """Every (phi, psi) is enumerated: no pair of isomorphisms makes the square commute."""
    ident = verify_identification(a53[1], a53[mu])
    pr = ident.pairs[0]
    assert not pr.compatible
    assert _solve_compatible(pr.rad_b, pr.rad2, pr.top_b, pr.top2, pr.j, pr.p, pr.j2, pr.p2) is None


def test_compatibility_in_two_vertex_example(id51):
    assert [c.compatibility for c in lemma_checks(id51)] == [False, True]


@pytest.mark.parametrize("fixture", ["id51", "id53"])
def test_almost_split_sequences_transfer(fixture, request):
    ident = request.getfixturevalue(fixture)
    for i in range(ident.algebra_a.quiver.num_vertices):
        seq_a, seq_b = ar_sequence_of_projective(ident, i)
        assert seq_a.is_exact() and seq_b.is_exact()
        tr = transfer_sequence(ident, seq_a)
        assert tr.transferred.is_exact()
        assert tr.factorizations_hold()


def test_direct_transfer_at_compatible_vertex(id51):
    seq_a, _ = ar_sequence_of_projective(id51, 1)
    tr = transfer_sequence(id51, seq_a)
    assert tr.method == "direct"


def test_syzygy_counterexample(id51):
    """A sequence over A whose terms carry no exact sequence over A'."""
    rng = np.random.default_rng(0)
    seqs = [random_sequence(id51, rng) for _ in range(14)]
    seq = seqs[13]
    assert seq.N0.dim == 0
    # over A the kernel is the syzygy of X ...
    assert is_isomorphic(morphism_spaces(projective_cover(seq.X)).kernel, seq.Y)
    # ... over A' it is not
    cov = projective_cover(id51.to_b(seq.X))
    assert not is_isomorphic(morphism_spaces(cov).kernel, id51.to_b(seq.Y))
    cert = sequence_with_terms(id51, seq)
    assert cert.exists is False and cert.exhaustive
    with pytest.raises(Exception, match="no compatible choice"):
        transfer_sequence(id51, seq)


def test_terms_certificate_finds_witness_for_ar_sequence(id53):
    seq_a, _ = ar_sequence_of_projective(id53, 0)
    assert sequence_with_terms(id53, seq_a).exists is True


def test_projective_summand_rejected(id51, a51):
    seq_a, _ = ar_sequence_of_projective(id51, 0)
    bad = type(seq_a)(**{**seq_a.__dict__, "Y": projective_module(a51, 0)})
    with pytest.raises(Exception, match="projective direct summand"):
        transfer_sequence(id51, bad)


def test_resolution_transfer_over_a1(a53, n53):
    ident = verify_identification(a53[1], a53[1])
    gen = AddGenerator.from_parts(n53, a53[1])
    rng = np.random.default_rng(2)
    for _ in range(3):
        X = random_soc_annihilated(a53[1], rng)
        res = resolve(gen, X)
        res_b, reports = transfer_resolution(ident, gen, res)
        res_b.check()
        assert all(r.approximation and r.minimal and r.length_a == r.length_b for r in reports)


@pytest.mark.parametrize("mu", [1, 2, 3, 4])
def test_generator_transfer_53(a53, n53, mu):
    _, Nb, rep = transfer_generator(verify_identification(a53[1], a53[mu]), n53)
    assert rep.text == "3 vs 3"
    assert Nb.dims == n53.dims


def test_generator_transfer_51_against_endo(id51, a51):
    N = load_module("n51.mod", a51)
    assert transfer_generator(id51, N, cap=4, method="endo")[2].text == "3 vs 3"


@pytest.mark.parametrize("a, b", [("a53_l1.alg", "a53_l2.alg"), ("a51.alg", "a51p.alg")])
def test_lemma_e_fails_exhaustively(a, b):
    """Every solution of p'j'phi = psi pj has phi or psi singular at the incompatible vertex."""
    ident = verify_identification(load_algebra(a), load_algebra(b))
    pr = ident.pairs[0]
    assert not pr.compatible
    f = pr.rad_b.field
    bphi, bpsi = hom_basis(pr.rad_b, pr.rad2), hom_basis(pr.top_b, pr.top2)
    nv = range(len(pr.rad_b.dims))
    rows = [np.concatenate([f.matmul(f.matmul(g.mats[v], pr.j2.mats[v]), pr.p2.mats[v]).reshape(-1) for v in nv])
            for g in bphi]
    rows += [np.concatenate([f.reduce(-f.matmul(f.matmul(pr.j.mats[v], pr.p.mats[v]), s.mats[v])).reshape(-1) for v in nv])
             for s in bpsi]
    ker = kernel_basis(f, np.stack(rows))
    n = len(bphi)
    for c in itertools.product(range(f.p), repeat=ker.shape[0]):
        v = f.matmul(f.array([list(c)]), ker)[0]
        assert not (_combine(bphi, v[:n]).is_isomorphism() and _combine(bpsi, v[n:]).is_isomorphism())
