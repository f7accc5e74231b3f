"""Endomorphism algebras of modules and their global dimension.

``End(M)`` is built in its basic version ``End(M_1 + ... + M_r)`` with one
copy of each indecomposable summand.  Basis elements live in blocks
``Hom(M_i, M_j)`` and multiply by composition in diagram order:
``a * b`` is ``a`` followed by ``b`` (matrix product ``A @ B``).  Right
modules over this algebra are stored per block vertex: a space ``V_j`` for
each summand and, for every basis element ``b`` of ``Hom(M_j, M_l)``, the
matrix of ``v -> v * b`` from ``V_j`` to ``V_l``.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

import numpy as np

from . import matalg
from .exactlin import Field, complement_rows, inverse, kernel_basis, rank, row_space, rref, solve
from .repmod import Representation, decompose, hom_space, identity

DEFAULT_CAP = 12


@dataclass
class EndomorphismAlgebra:
    """Basic endomorphism algebra with a block-adapted basis.

    ``elements[t]`` is the full matrix (``dim M_i x dim M_j``) of basis element
    ``t`` in block ``blocks[t] = (i, j)``.  On diagonal blocks the basis starts
    with the identity, continues with lifts of ``End(M_i)/J_i`` and ends with a
    basis of ``J_i``; ``radical_mask[t]`` marks basis elements of ``rad E``.
    ``mult[s, t]`` holds the coordinates of ``elements[s] @ elements[t]``
    (zero unless the blocks chain).
    """

    field: Field
    summands: list
    elements: list
    blocks: list
    radical_mask: np.ndarray
    mult: np.ndarray
    block_index: dict = dc_field(default_factory=dict)  # (i, j) -> list of basis indices

    @property
    def dim(self) -> int:
        return len(self.elements)

    @property
    def num_vertices(self) -> int:
        return len(self.summands)

    def identity(self) -> np.ndarray:
        out = self.field.zeros(self.dim)
        for i in range(self.num_vertices):
            out[self.block_index[(i, i)][0]] = 1
        return out

    def product(self, s: int, t: int) -> np.ndarray:
        return self.mult[s, t]

    def check_associative(self) -> None:
        f = self.field
        d = self.dim
        c = self.mult
        left = f.matmul(c.reshape(d * d, d), c.reshape(d, d * d)).reshape(d, d, d, d)
        right = f.matmul(c.reshape(d * d, d), c.transpose(1, 0, 2).reshape(d, d * d))
        right = right.reshape(d, d, d, d).transpose(2, 0, 1, 3)
        if not np.array_equal(left, right):
            raise ArithmeticError("endomorphism algebra is not associative")

    def top_dims(self) -> list[int]:
        """``dim_K End(M_i)/J_i`` per summand."""
        return [int(sum(1 for t in self.block_index[(i, i)] if not self.radical_mask[t])) for i in range(self.num_vertices)]


class _CoordSolver:
    """Coordinates of vectors in the span of fixed independent rows."""

    def __init__(self, field: Field, rows: np.ndarray):
        self.field = field
        self.n = rows.shape[0]
        if self.n:
            _, _, piv = rref(field, rows)
            self.piv = piv
            self.inv = inverse(field, rows[:, piv])

    def __call__(self, vecs: np.ndarray) -> np.ndarray:
        if self.n == 0:
            return self.field.zeros((vecs.shape[0], 0))
        return self.field.matmul(vecs[:, self.piv], self.inv)


def _adapted_basis(field: Field, M: Representation, hom_rows: np.ndarray) -> tuple[np.ndarray, int]:
    """Rebase ``End(M)`` as ``[id, top lifts..., J basis]``; returns rows and top size."""
    mats = [_unflatten(M, M, r) for r in hom_rows]
    J = matalg.radical(field, mats)
    jrows = field.matmul(J, hom_rows) if J.shape[0] else field.zeros((0, hom_rows.shape[1]))
    ident = identity(M).vector().reshape(1, -1)
    span = np.concatenate([ident, jrows]) if jrows.shape[0] else ident
    # complement inside End(M), expressed via coordinates
    coords = _CoordSolver(field, hom_rows)(span)
    extra = complement_rows(field, row_space(field, coords), hom_rows.shape[0])
    extra_rows = field.matmul(extra, hom_rows) if extra.shape[0] else field.zeros((0, hom_rows.shape[1]))
    parts = [ident, extra_rows, jrows]
    rows = np.concatenate([p for p in parts if p.shape[0]])
    return rows, 1 + extra_rows.shape[0]


def _unflatten(X: Representation, Y: Representation, vec: np.ndarray) -> np.ndarray:
    f = X.field
    out = f.zeros((X.dim, Y.dim))
    pos = 0
    for v, (a, b) in enumerate(zip(X.dims, Y.dims)):
        out[X.offsets[v]:X.offsets[v + 1], Y.offsets[v]:Y.offsets[v + 1]] = vec[pos:pos + a * b].reshape(a, b)
        pos += a * b
    return out


def endomorphism_algebra(M: Optional[Representation] = None, seed: int = 0, generator=None,
                         summands: Optional[Sequence[Representation]] = None) -> EndomorphismAlgebra:
    """Basic ``End(M)``; pass ``generator`` (an AddGenerator) or ``summands`` to skip decomposition."""
    if summands is None:
        if generator is not None:
            summands = generator.summands
        else:
            summands = [R for R, _ in decompose(M, seed).summands]
    summands = list(summands)
    f = summands[0].field
    r = len(summands)
    elements, blocks, radmask, index = [], [], [], {}
    solvers = {}
    for i in range(r):
        for j in range(r):
            rows = hom_space(summands[i], summands[j])
            top = 0
            if i == j:
                rows, top = _adapted_basis(f, summands[i], rows)
            solvers[(i, j)] = _CoordSolver(f, rows)
            idx = []
            for k, row in enumerate(rows):
                idx.append(len(elements))
                elements.append(_unflatten(summands[i], summands[j], row))
                blocks.append((i, j))
                radmask.append(not (i == j and k < top))
            index[(i, j)] = idx
    d = len(elements)
    mult = f.zeros((d, d, d))
    for i in range(r):
        for j in range(r):
            for l in range(r):
                left, right, out = index[(i, j)], index[(j, l)], index[(i, l)]
                if not left or not right or not out:
                    continue
                prods = [f.matmul(elements[s], elements[t]) for s in left for t in right]
                flat = np.stack([_flatten_hom(summands[i], summands[l], p) for p in prods])
                coords = solvers[(i, l)](flat)
                k = 0
                for s in left:
                    for t in right:
                        mult[s, t, out] = coords[k]
                        k += 1
    return EndomorphismAlgebra(f, summands, elements, blocks, np.array(radmask, dtype=bool), mult, index)


def _flatten_hom(X: Representation, Y: Representation, m: np.ndarray) -> np.ndarray:
    parts = [m[X.offsets[v]:X.offsets[v + 1], Y.offsets[v]:Y.offsets[v + 1]].reshape(-1) for v in range(len(X.dims))]
    return np.concatenate(parts)


# ---------------------------------------------------------------------------
# right E-modules


@dataclass
class EModule:
    """Right module over an :class:`EndomorphismAlgebra`.

    ``dims[j] = dim V e_j`` and ``acts[t]`` is the ``dims[i] x dims[j]`` matrix
    of basis element ``t`` in block ``(i, j)``.
    """

    algebra: EndomorphismAlgebra
    dims: list
    acts: list

    @property
    def dim(self) -> int:
        return int(sum(self.dims))

    def radical_bases(self) -> list[np.ndarray]:
        E = self.algebra
        f = E.field
        out = []
        for l in range(E.num_vertices):
            imgs = [self.acts[t] for t in range(E.dim) if E.radical_mask[t] and E.blocks[t][1] == l
                    and self.dims[E.blocks[t][0]] and self.dims[l]]
            if imgs and self.dims[l]:
                out.append(row_space(f, np.concatenate(imgs)))
            else:
                out.append(f.zeros((0, self.dims[l])))
        return out


def projective_emodule(E: EndomorphismAlgebra, i: int) -> EModule:
    """``e_i E``: block row ``i`` acted on by right multiplication."""
    f = E.field
    dims = [len(E.block_index[(i, j)]) for j in range(E.num_vertices)]
    acts = []
    for t in range(E.dim):
        j, l = E.blocks[t]
        rows, cols = E.block_index[(i, j)], E.block_index[(i, l)]
        if rows and cols:
            acts.append(E.mult[np.ix_(rows, [t], cols)][:, 0, :])
        else:
            acts.append(f.zeros((len(rows), len(cols))))
    return EModule(E, dims, acts)


def _submodule(V: EModule, bases: list[np.ndarray]) -> EModule:
    E = V.algebra
    f = E.field
    acts = []
    solvers = [_CoordSolver(f, b) for b in bases]
    for t in range(E.dim):
        j, l = E.blocks[t]
        if bases[j].shape[0] == 0 or bases[l].shape[0] == 0:
            acts.append(f.zeros((bases[j].shape[0], bases[l].shape[0])))
            continue
        img = f.matmul(bases[j], V.acts[t])
        acts.append(solvers[l](img))
    return EModule(E, [b.shape[0] for b in bases], acts)


def _quotient(V: EModule, bases: list[np.ndarray]) -> EModule:
    E = V.algebra
    f = E.field
    comps, projs = [], []
    for j, b in enumerate(bases):
        d = V.dims[j]
        c = complement_rows(f, b, d)
        comps.append(c)
        if d == 0:
            projs.append(f.zeros((0, 0)))
            continue
        full = np.concatenate([b, c]) if b.shape[0] else c
        projs.append(inverse(f, full)[:, b.shape[0]:])
    acts = []
    for t in range(E.dim):
        j, l = E.blocks[t]
        acts.append(f.matmul(f.matmul(comps[j], V.acts[t]), projs[l]))
    return EModule(E, [c.shape[0] for c in comps], acts)


def simple_emodule(E: EndomorphismAlgebra, i: int) -> EModule:
    P = projective_emodule(E, i)
    return _quotient(P, P.radical_bases())


@dataclass
class CoverStep:
    generators: list  # (vertex, vector) pairs
    syzygy_dims: list


def projective_cover_kernel(V: EModule) -> tuple[EModule, list[int]]:
    """Kernel of a minimal projective cover of ``V`` and the cover's vertex list."""
    E = V.algebra
    f = E.field
    rad = V.radical_bases()
    gens: list[tuple[int, np.ndarray]] = []
    # image of the cover so far, per vertex
    img = [f.zeros((0, d)) for d in V.dims]
    for j in range(E.num_vertices):
        if V.dims[j] == 0:
            continue
        while True:
            covered = np.concatenate([rad[j], img[j]]) if img[j].shape[0] else rad[j]
            have = rank(f, covered) if covered.shape[0] else 0
            if have == V.dims[j]:
                break
            cand = complement_rows(f, row_space(f, covered) if covered.shape[0] else covered, V.dims[j])
            v = cand[0]
            gens.append((j, v))
            for l in range(E.num_vertices):
                idx = E.block_index[(j, l)]
                if not idx or V.dims[l] == 0:
                    continue
                new = np.stack([f.matmul(v.reshape(1, -1), V.acts[t])[0] for t in idx])
                img[l] = row_space(f, np.concatenate([img[l], new])) if img[l].shape[0] else row_space(f, new)
    # the cover map, per target vertex l: rows indexed by basis of sum_g e_{j_g} E at l
    kbases, verts = [], [j for j, _ in gens]
    Ps = [projective_emodule(E, j) for j in verts]
    for l in range(E.num_vertices):
        rows = []
        for (j, v) in gens:
            for t in E.block_index[(j, l)]:
                rows.append(f.matmul(v.reshape(1, -1), V.acts[t])[0] if V.dims[l] else f.zeros(0))
        n = len(rows)
        if n == 0:
            kbases.append(f.zeros((0, 0)))
            continue
        m = np.stack(rows) if V.dims[l] else f.zeros((n, 0))
        kbases.append(kernel_basis(f, m) if V.dims[l] else f.eye(n))
    if not Ps:
        return EModule(E, [0] * E.num_vertices, [f.zeros((0, 0))] * E.dim), verts
    total = _direct_sum(E, Ps)
    kb = [k if k.shape[0] else f.zeros((0, total.dims[l])) for l, k in enumerate(kbases)]
    return _submodule(total, kb), verts


def _direct_sum(E: EndomorphismAlgebra, mods: Sequence[EModule]) -> EModule:
    f = E.field
    dims = [sum(m.dims[j] for m in mods) for j in range(E.num_vertices)]
    acts = []
    for t in range(E.dim):
        j, l = E.blocks[t]
        a = f.zeros((dims[j], dims[l]))
        r = c = 0
        for m in mods:
            a[r:r + m.dims[j], c:c + m.dims[l]] = m.acts[t]
            r += m.dims[j]
            c += m.dims[l]
        acts.append(a)
    return EModule(E, dims, acts)


@dataclass
class GlobalDimensionReport:
    """``value`` is the global dimension or ``None`` when some resolution hit the cap."""

    value: Optional[int]
    cap: int
    per_simple: list  # projective dimension per simple, or None when capped
    resolutions: list  # per simple: list of (cover vertices, syzygy dimension)

    @property
    def text(self) -> str:
        return str(self.value) if self.value is not None else f">={self.cap + 1}"

    def per_simple_text(self) -> list[str]:
        return [str(v) if v is not None else f">={self.cap + 1}" for v in self.per_simple]


def projective_dimension(V: EModule, cap: int = DEFAULT_CAP) -> tuple[Optional[int], list]:
    """Length of the minimal projective resolution of ``V``, ``None`` beyond ``cap``."""
    steps = []
    cur = V
    n = 0
    while True:
        K, verts = projective_cover_kernel(cur)
        steps.append((verts, K.dim))
        if K.dim == 0:
            return n, steps
        n += 1
        if n > cap:
            return None, steps
        cur = K


def global_dimension(E: EndomorphismAlgebra, cap: int = DEFAULT_CAP, early_exit: bool = False) -> GlobalDimensionReport:
    """Maximum projective dimension of the simples; ``early_exit`` stops at the first capped simple."""
    per, res = [], []
    for i in range(E.num_vertices):
        pd, steps = projective_dimension(simple_emodule(E, i), cap)
        per.append(pd)
        res.append(steps)
        if pd is None and early_exit:
            break
    value = None if any(p is None for p in per) else max(per)
    return GlobalDimensionReport(value, cap, per, res)


def gldim_of_module(M: Representation, cap: int = DEFAULT_CAP, seed: int = 0) -> GlobalDimensionReport:
    return global_dimension(endomorphism_algebra(M, seed), cap)
