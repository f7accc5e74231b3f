"""Seeded random modules and short exact sequences for property checks."""
from __future__ import annotations

from typing import Optional

import numpy as np

from ..approx import AddGenerator, Stage, approximate, minimize
from ..pathalg import BoundQuiverAlgebra, algebra_socle, projective_module
from ..repmod import (
    Representation,
    direct_sum,
    generated_submodule_bases,
    module_radical,
    module_socle,
    morphism_spaces,
    quotient,
)
from ..socletransfer import ShortExactSequence, SocleIdentification, ar_sequence_of_projective, stage_sequence


def socle_quotients(A: BoundQuiverAlgebra) -> list[Representation]:
    """``P_i/soc P_i`` for every vertex."""
    out = []
    for i in range(A.quiver.num_vertices):
        P = projective_module(A, i)
        _, si = module_socle(P)
        out.append(quotient(P, list(si.mats))[0])
    return out


def random_soc_annihilated(A: BoundQuiverAlgebra, rng: np.random.Generator, max_tops: int = 2,
                           max_relations: int = 2, tops: Optional[list] = None) -> Representation:
    """A nonzero quotient of a sum of ``P_i/soc P_i`` by a random submodule of its radical.

    Such modules are annihilated by ``soc A`` and so have no projective summand
    when ``A`` is selfinjective.
    """
    tops = tops or socle_quotients(A)
    f = A.field
    while True:
        k = int(rng.integers(1, max_tops + 1))
        picks = [int(v) for v in rng.integers(0, len(tops), size=k)]
        Q = direct_sum([tops[v] for v in picks])[0]
        R, inc = module_radical(Q)
        gens = [f.zeros((0, d)) for d in Q.dims]
        for _ in range(int(rng.integers(0, max_relations + 1))):
            live = [v for v in range(len(R.dims)) if R.dims[v]]
            if not live:
                break
            v = live[int(rng.integers(0, len(live)))]
            vec = f.matmul(f.random(rng, (1, R.dims[v])), inc.mats[v])
            gens[v] = np.concatenate([gens[v], vec])
        X, _ = quotient(Q, generated_submodule_bases(Q, gens))
        if X.dim:
            return X


def random_sequence(ident: SocleIdentification, rng: np.random.Generator, tops=None,
                    ar_weight: float = 0.2, tries: int = 20) -> ShortExactSequence:
    """A short exact sequence ``0 -> Y -> N0 + P -> X -> 0`` over ``ident.algebra_a`` with ``P != 0``.

    Either the almost split sequence of a random projective, or the first
    stage of a minimal approximation resolution of a random ``X`` against a
    random ``N + A``.
    """
    A = ident.algebra_a
    tops = tops or socle_quotients(A)
    if rng.random() < ar_weight:
        return ar_sequence_of_projective(ident, int(rng.integers(0, A.quiver.num_vertices)), check_selfinjective=False)[0]
    for _ in range(tries):
        N = random_soc_annihilated(A, rng, tops=tops)
        X = random_soc_annihilated(A, rng, tops=tops)
        gen = AddGenerator.from_parts(N, A)
        app = minimize(approximate(gen, X))
        sp = morphism_spaces(app.map)
        seq = stage_sequence(Stage(app, sp.kernel, sp.kernel_inclusion))
        if seq.proj_vertices:
            return seq
    return ar_sequence_of_projective(ident, int(rng.integers(0, A.quiver.num_vertices)), check_selfinjective=False)[0]


def random_instance(A: BoundQuiverAlgebra, rng: np.random.Generator, tops=None):
    """A random generator-cogenerator ``N + A`` and a random target ``X``, both soc-annihilated."""
    tops = tops or socle_quotients(A)
    N = random_soc_annihilated(A, rng, tops=tops)
    X = random_soc_annihilated(A, rng, tops=tops)
    return AddGenerator.from_parts(N, A), X
