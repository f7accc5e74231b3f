import numpy as np
import pytest

from repdim.endoalg import (
    endomorphism_algebra,
    global_dimension,
    gldim_of_module,
    projective_dimension,
    projective_emodule,
    simple_emodule,
)
from repdim.harness.corpus import load_algebra, uniserial_quotients
from repdim.harness.formats import parse_algebra_text
from repdim.pathalg import projective_module
from repdim.repmod import direct_sum, hom_dim


def alg(text):
    return parse_algebra_text("repdim-algebra 1\n" + text).build()


def regular(A):
    return direct_sum([projective_module(A, i) for i in range(A.quiver.num_vertices)])[0]


A3 = "field: GF(3)\nvertices: 1 2 3\narrow: a 1 2\narrow: b 2 3\n"


def test_dimension_is_sum_of_homs(a51):
    mods = [projective_module(a51, 0), projective_module(a51, 1), *uniserial_quotients(a51, 0)[:2]]
    E = endomorphism_algebra(summands=mods)
    assert E.dim == sum(hom_dim(X, Y) for X in mods for Y in mods)
    E.check_associative()


def emul(E, x, y):
    f = E.field
    out = f.zeros(E.dim)
    for s in np.nonzero(x)[0]:
        for t in np.nonzero(y)[0]:
            out = f.reduce(out + x[s] * y[t] * E.mult[s, t])
    return out


def test_identity_is_unit(kx3):
    E = endomorphism_algebra(summands=uniserial_quotients(kx3))
    one = E.identity()
    for t in range(E.dim):
        e = E.field.eye(E.dim)[t]
        assert np.array_equal(emul(E, one, e), e)
        assert np.array_equal(emul(E, e, one), e)


@pytest.mark.parametrize(
    "text, expected",
    [
        (A3, 1),  # hereditary
        (A3 + "relation: a*b\n", 2),  # radical square zero linear A3
        ("field: GF(5)\nvertices: 1\n", 0),  # semisimple
    ],
)
def test_gldim_of_regular_module(text, expected):
    A = alg(text)
    assert global_dimension(endomorphism_algebra(regular(A))).value == expected


def test_auslander_algebras_have_gldim_two():
    for n in (2, 3, 4):
        A = alg(f"field: GF(5)\nvertices: 1\narrow: x 1 1\nrelation: x^{n}")
        assert gldim_of_module(direct_sum(uniserial_quotients(A))[0]).value == 2


def test_selfinjective_regular_hits_cap(kx3):
    rep = global_dimension(endomorphism_algebra(regular(kx3)), cap=4)
    assert rep.value is None and rep.text == ">=5"


def test_projective_simple_of_auslander_algebra(kx3):
    mods = uniserial_quotients(kx3)
    E = endomorphism_algebra(summands=mods)
    for i in range(E.num_vertices):
        P = projective_emodule(E, i)
        assert P.dim == sum(len(E.block_index[(i, j)]) for j in range(E.num_vertices))
        pd, _ = projective_dimension(P)
        assert pd == 0
    pds = [projective_dimension(simple_emodule(E, i))[0] for i in range(3)]
    assert max(pds) == 2 and min(pds) >= 1
