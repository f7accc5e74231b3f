"""Exhaustive search for small generators ``N`` minimising gldim End(N + A).

Candidates are the indecomposable modules annihilated by ``soc A`` of
dimension at most ``dim_cap``.  Every such module with top ``T`` is a
quotient ``Q/U`` where ``Q`` is a sum of ``P_i/soc P_i`` matching ``T`` and
``U`` lies in ``rad Q``; the submodules ``U`` are reached by descending
chains of maximal submodules starting at ``rad Q``.  Candidate sets ``N`` are
then all sets of pairwise non-isomorphic candidates with total dimension at
most ``dim_cap``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Optional

import numpy as np

from ..approx import DEFAULT_CAP, AddGenerator, endomorphism_gldim
from ..exactlin import complement_rows, kernel_basis, rank, rref
from ..pathalg import AlgebraError, BoundQuiverAlgebra, algebra_radical, projective_module
from ..repmod import (
    Representation,
    direct_sum,
    find_isomorphism_indecomposable,
    is_indecomposable,
    module_radical,
    module_socle,
    quotient,
    submodule,
)
from .randmod import socle_quotients


class SearchError(ValueError):
    pass


@dataclass
class SearchResult:
    module: Optional[Representation]
    summands: list
    value: Optional[int]
    candidates: list
    evaluated: int
    lower_bound: int
    history: list = dc_field(default_factory=list)  # (indices, gldim text)


def _key(f, bases) -> tuple:
    out = []
    for b in bases:
        if b.shape[0] == 0:
            out.append(())
            continue
        r, red, _ = rref(f, b)
        out.append(tuple(tuple(int(x) if f.is_prime else x for x in row) for row in red[:r]))
    return tuple(out)


def _maximal_submodules(f, X: Representation):
    """Per-vertex bases (in ``X`` coordinates) of every maximal submodule of ``X``."""
    R, rinc = module_radical(X)
    for v in range(len(X.dims)):
        r = rinc.mats[v]
        rk = r.shape[0]
        extra = X.dims[v] - rk
        if extra == 0:
            continue
        # complement of rad X at v, then every hyperplane of it
        comp = complement_rows(f, r, X.dims[v]) if rk else f.eye(X.dims[v])
        for normal in _projective_points(f, extra):
            # hyperplane = kernel of the functional ``normal`` on the complement
            hyper = kernel_basis(f, normal.reshape(-1, 1))
            rows = f.matmul(hyper, comp) if hyper.shape[0] else f.zeros((0, X.dims[v]))
            bases = []
            for u in range(len(X.dims)):
                if u == v:
                    bases.append(np.concatenate([r, rows]) if rk else rows)
                else:
                    bases.append(f.eye(X.dims[u]))
            yield bases


def _projective_points(f, n: int):
    """One nonzero vector per line in ``K^n`` (leading nonzero coordinate equal to 1)."""
    for lead in range(n):
        for tail in itertools.product(range(f.p), repeat=n - lead - 1):
            v = [0] * lead + [1] + list(tail)
            yield f.array(v)


def _submodules_down(Q: Representation, start_bases, min_dim: int):
    """All submodules of ``Q`` inside ``start`` with dimension >= ``min_dim``, by maximal-submodule descent."""
    f = Q.field
    seen = {}
    frontier = [[b for b in start_bases]]
    seen[_key(f, frontier[0])] = frontier[0]
    while frontier:
        nxt = []
        for bases in frontier:
            dim = sum(b.shape[0] for b in bases)
            if dim <= min_dim:
                continue
            U, inc = submodule(Q, bases)
            for sub in _maximal_submodules(f, U):
                glob = [f.matmul(s, m) if s.shape[0] else f.zeros((0, Q.dims[v]))
                        for v, (s, m) in enumerate(zip(sub, inc.mats))]
                k = _key(f, glob)
                if k not in seen:
                    seen[k] = glob
                    nxt.append(glob)
        frontier = nxt
    return list(seen.values())


def _has_simple_summand(X: Representation) -> bool:
    """``soc X`` not inside ``rad X``; for ``X`` not simple this means a simple summand splits off."""
    f = X.field
    _, si = module_socle(X)
    _, ri = module_radical(X)
    for v in range(len(X.dims)):
        s = si.mats[v]
        if s.shape[0] == 0:
            continue
        r = ri.mats[v]
        if r.shape[0] == 0 or rank(f, np.concatenate([r, s])) != r.shape[0]:
            return True
    return False


def candidate_indecomposables(A: BoundQuiverAlgebra, dim_cap: int, seed: int = 0) -> list[Representation]:
    """Indecomposable modules annihilated by ``soc A`` with dimension at most ``dim_cap``, up to isomorphism."""
    f = A.field
    if not f.is_prime:
        raise SearchError("search needs a finite prime field")
    tops = socle_quotients(A)
    n = A.quiver.num_vertices
    found: list[Representation] = []

    def add(X):
        for Y in found:
            if Y.dims == X.dims and find_isomorphism_indecomposable(X, Y) is not None:
                return
        found.append(X)

    for total in range(1, dim_cap + 1):
        for top in itertools.product(range(total + 1), repeat=n):
            if sum(top) != total:
                continue
            picks = [v for v in range(n) for _ in range(top[v])]
            Q = direct_sum([tops[v] for v in picks])[0]
            R, rinc = module_radical(Q)
            min_dim = Q.dim - dim_cap
            for U in _submodules_down(Q, list(rinc.mats), min_dim):
                if Q.dim - sum(b.shape[0] for b in U) > dim_cap:
                    continue
                X, _ = quotient(Q, U)
                if X.dim > 1 and _has_simple_summand(X):
                    continue
                if X.dim == 1 or is_indecomposable(X, seed):
                    add(X)
    found.sort(key=lambda X: (X.dim, X.dims))
    return found


def search_generator(A: BoundQuiverAlgebra, dim_cap: int = 4, seed: int = 0, cap: int = DEFAULT_CAP,
                     candidates: Optional[list] = None) -> SearchResult:
    """Smallest gldim End(N + A) over soc-annihilated ``N`` of total dimension at most ``dim_cap``.

    Sets are tried by (number of summands, total dimension, indices).  The
    search stops at the lower bound: 2 always, and 3 once it is known that
    no admissible set contains every candidate, since gldim 2 forces
    ``N + A`` to be an additive generator.
    """
    if algebra_radical(A).dim == 0:
        raise SearchError("repdim undefined for semisimple")
    cands = candidates if candidates is not None else candidate_indecomposables(A, dim_cap, seed)
    n = A.quiver.num_vertices
    projs = [projective_module(A, i) for i in range(n)]
    total_all = sum(X.dim for X in cands)
    lower = 2 if total_all <= dim_cap else 3
    best: Optional[int] = None
    best_set: Optional[tuple] = None
    history = []
    evaluated = 0
    sets = []
    for k in range(0, min(len(cands), dim_cap) + 1):
        for idx in itertools.combinations(range(len(cands)), k):
            d = sum(cands[i].dim for i in idx)
            if d <= dim_cap:
                sets.append((k, d, idx))
    sets.sort()
    for _, _, idx in sets:
        bound = cap if best is None else best - 1
        if bound < lower:
            break
        gen = AddGenerator(projs + [cands[i] for i in idx], list(range(n)) + [None] * len(idx))
        rep = endomorphism_gldim(gen, bound, seed, early_exit=True)
        evaluated += 1
        history.append((idx, rep.text))
        if rep.value is not None and (best is None or rep.value < best):
            best, best_set = rep.value, idx
            if best <= lower:
                break
    if best is None:
        return SearchResult(None, [], None, cands, evaluated, lower, history)
    mods = [cands[i] for i in best_set]
    N = direct_sum(mods)[0] if mods else None
    return SearchResult(N, mods, best, cands, evaluated, lower, history)
