"""Quiver representations as right modules over a bound quiver algebra.

A representation assigns a space ``K^dims[v]`` to each vertex and to each
arrow ``a: s -> t`` a ``dims[s] x dims[t]`` matrix; row vectors are acted on
from the right, so the path ``a*b`` acts by ``R_a @ R_b``.  A morphism
``X -> Y`` is a family of ``dims_X[v] x dims_Y[v]`` matrices ``F_v`` with
``R^X_a @ F_t == F_s @ R^Y_a`` for every arrow.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

import numpy as np

from . import matalg
from .exactlin import (
    Field,
    complement_rows,
    inverse,
    kernel_basis,
    rank,
    row_space,
    solve,
)

N_RANDOM_TRIES = 64
EXHAUSTIVE_LIMIT = 4096


class ModuleError(ValueError):
    pass


class DecompositionUndecided(RuntimeError):
    pass


class Representation:
    """A finite-dimensional right module given by vertex dimensions and arrow matrices."""

    def __init__(self, algebra, dims: Sequence[int], arrow_mats: Sequence, check: bool = True, name: str = ""):
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        self.name = name
        f = algebra.field
        q = algebra.quiver
        if len(self.dims) != q.num_vertices:
            raise ModuleError("one dimension per vertex required")
        if len(arrow_mats) != len(q.arrows):
            raise ModuleError("one matrix per arrow required")
        mats = []
        for a, m in zip(q.arrows, arrow_mats):
            m = f.array(m) if not (isinstance(m, np.ndarray) and m.dtype == f.dtype) else f.reduce(m)
            shape = (self.dims[a.source], self.dims[a.target])
            if m.size == 0:
                m = f.zeros(shape)
            m = m.reshape(shape) if m.shape != shape and m.size == shape[0] * shape[1] else m
            if m.shape != shape:
                raise ModuleError(f"arrow {a.name}: matrix shape {m.shape}, expected {shape}")
            mats.append(m)
        self.arrow_mats = tuple(mats)
        self.offsets = np.concatenate([[0], np.cumsum(self.dims)]).astype(int)
        if check:
            bad = self.relation_violation()
            if bad is not None:
                raise ModuleError(f"module violates relation {bad}")

    # -- basic data -----------------------------------------------------
    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def dim(self) -> int:
        return int(sum(self.dims))

    def __repr__(self) -> str:
        label = f"{self.name} " if self.name else ""
        return f"<Representation {label}dims={self.dims}>"

    def is_zero(self) -> bool:
        return self.dim == 0

    def path_action(self, path) -> np.ndarray:
        s, arrows = path
        f = self.field
        if not arrows:
            return f.eye(self.dims[s])
        out = self.arrow_mats[arrows[0]]
        for k in arrows[1:]:
            out = f.matmul(out, self.arrow_mats[k])
        return out

    def element_action(self, x: np.ndarray) -> np.ndarray:
        """Full ``dim x dim`` matrix of an algebra element acting on the module."""
        f = self.field
        A = self.algebra
        out = f.zeros((self.dim, self.dim))
        o = self.offsets
        for k in np.flatnonzero(x):
            s, t = int(A.sources[k]), int(A.targets[k])
            if self.dims[s] == 0 or self.dims[t] == 0:
                continue
            blk = self.path_action(A.basis[k])
            out[o[s]:o[s + 1], o[t]:o[t + 1]] = f.reduce(
                out[o[s]:o[s + 1], o[t]:o[t + 1]] + blk * x[k]
            )
        return out

    def relation_action(self, rel) -> np.ndarray:
        f = self.field
        (c0, p0) = rel[0]
        s, t = p0[0], self.algebra.quiver.path_target(p0)
        out = f.zeros((self.dims[s], self.dims[t]))
        for c, p in rel:
            out = f.reduce(out + self.path_action(p) * f.scalar(c))
        return out

    def relation_violation(self) -> Optional[str]:
        q = self.algebra.quiver
        for rel in self.algebra.relations:
            if not self.field.is_zero(self.relation_action(rel)):
                return " + ".join(f"{c}*{q.path_name(p)}" for c, p in rel)
        return None

    def full_arrow_matrix(self, k: int) -> np.ndarray:
        a = self.algebra.quiver.arrows[k]
        o = self.offsets
        out = self.field.zeros((self.dim, self.dim))
        out[o[a.source]:o[a.source + 1], o[a.target]:o[a.target + 1]] = self.arrow_mats[k]
        return out

    def same_structure(self, other: "Representation") -> bool:
        return self.dims == other.dims and all(
            np.array_equal(a, b) for a, b in zip(self.arrow_mats, other.arrow_mats)
        )


def zero_module(A) -> Representation:
    return Representation(A, [0] * A.quiver.num_vertices, [A.field.zeros((0, 0))] * len(A.quiver.arrows), check=False)


def simple_module(A, i: int) -> Representation:
    dims = [0] * A.quiver.num_vertices
    dims[i] = 1
    mats = [A.field.zeros((dims[a.source], dims[a.target])) for a in A.quiver.arrows]
    return Representation(A, dims, mats, check=False, name=f"S{A.quiver.vertices[i]}")


# ---------------------------------------------------------------------------
# morphisms


class ModuleMorphism:
    """Per-vertex matrices commuting with the arrow actions."""

    def __init__(self, source: Representation, target: Representation, mats: Sequence, check: bool = True):
        if source.algebra is not target.algebra:
            raise ModuleError("morphism between modules over different algebras")
        f = source.field
        self.source = source
        self.target = target
        out = []
        for v, m in enumerate(mats):
            shape = (source.dims[v], target.dims[v])
            m = f.array(m) if not isinstance(m, np.ndarray) else m
            if m.size == 0:
                m = f.zeros(shape)
            if m.shape != shape:
                raise ModuleError(f"vertex {v}: matrix shape {m.shape}, expected {shape}")
            out.append(m)
        self.mats = tuple(out)
        if check and not self.commutes():
            raise ModuleError("matrices do not commute with the arrow actions")

    @property
    def field(self) -> Field:
        return self.source.field

    def commutes(self) -> bool:
        f = self.field
        for k, a in enumerate(self.source.algebra.quiver.arrows):
            lhs = f.matmul(self.source.arrow_mats[k], self.mats[a.target])
            rhs = f.matmul(self.mats[a.source], self.target.arrow_mats[k])
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def then(self, other: "ModuleMorphism") -> "ModuleMorphism":
        """The composite ``other o self`` (first ``self``, then ``other``)."""
        if other.source is not self.target and not self.target.same_structure(other.source):
            raise ModuleError("morphisms not composable")
        f = self.field
        return ModuleMorphism(
            self.source, other.target, [f.matmul(a, b) for a, b in zip(self.mats, other.mats)], check=False
        )

    def __add__(self, other: "ModuleMorphism") -> "ModuleMorphism":
        f = self.field
        return ModuleMorphism(
            self.source, self.target, [f.reduce(a + b) for a, b in zip(self.mats, other.mats)], check=False
        )

    def __sub__(self, other: "ModuleMorphism") -> "ModuleMorphism":
        f = self.field
        return ModuleMorphism(
            self.source, self.target, [f.reduce(a - b) for a, b in zip(self.mats, other.mats)], check=False
        )

    def scale(self, c) -> "ModuleMorphism":
        f = self.field
        c = f.scalar(c)
        return ModuleMorphism(self.source, self.target, [f.reduce(a * c) for a in self.mats], check=False)

    def full_matrix(self) -> np.ndarray:
        f = self.field
        out = f.zeros((self.source.dim, self.target.dim))
        so, to = self.source.offsets, self.target.offsets
        for v, m in enumerate(self.mats):
            out[so[v]:so[v + 1], to[v]:to[v + 1]] = m
        return out

    def vector(self) -> np.ndarray:
        f = self.field
        parts = [m.reshape(-1) for m in self.mats]
        return np.concatenate(parts) if parts else f.zeros(0)

    def ranks(self) -> list[int]:
        return [rank(self.field, m) for m in self.mats]

    def is_zero(self) -> bool:
        return all(self.field.is_zero(m) for m in self.mats)

    def is_injective(self) -> bool:
        return sum(self.ranks()) == self.source.dim

    def is_surjective(self) -> bool:
        return sum(self.ranks()) == self.target.dim

    def is_isomorphism(self) -> bool:
        return self.source.dim == self.target.dim and self.is_injective()

    def equals(self, other: "ModuleMorphism") -> bool:
        return all(np.array_equal(a, b) for a, b in zip(self.mats, other.mats))

    def __repr__(self) -> str:
        return f"<ModuleMorphism {self.source.dims} -> {self.target.dims}>"


def identity(X: Representation) -> ModuleMorphism:
    return ModuleMorphism(X, X, [X.field.eye(d) for d in X.dims], check=False)


def zero_morphism(X: Representation, Y: Representation) -> ModuleMorphism:
    f = X.field
    return ModuleMorphism(X, Y, [f.zeros((a, b)) for a, b in zip(X.dims, Y.dims)], check=False)


def morphism_from_vector(X: Representation, Y: Representation, vec: np.ndarray) -> ModuleMorphism:
    mats = []
    pos = 0
    for a, b in zip(X.dims, Y.dims):
        mats.append(vec[pos:pos + a * b].reshape(a, b))
        pos += a * b
    return ModuleMorphism(X, Y, mats, check=False)


def inverse_morphism(f: ModuleMorphism) -> ModuleMorphism:
    if not f.is_isomorphism():
        raise ModuleError("morphism is not invertible")
    fld = f.field
    return ModuleMorphism(f.target, f.source, [inverse(fld, m) if m.size else m.T for m in f.mats], check=False)


def _hom_system(X: Representation, Y: Representation) -> np.ndarray:
    """Matrix ``C`` with ``Hom(X, Y) = {z : z @ C == 0}`` in flattened coordinates."""
    f = X.field
    q = X.algebra.quiver
    sizes = [a * b for a, b in zip(X.dims, Y.dims)]
    offs = np.concatenate([[0], np.cumsum(sizes)]).astype(int)
    n = int(offs[-1])
    blocks = []
    for k, a in enumerate(q.arrows):
        s, t = a.source, a.target
        neq = X.dims[s] * Y.dims[t]
        if neq == 0:
            continue
        c = f.zeros((n, neq))
        if sizes[t]:
            c[offs[t]:offs[t + 1]] = np.kron(X.arrow_mats[k].T, f.eye(Y.dims[t])) if X.dims[t] else 0
        if sizes[s]:
            c[offs[s]:offs[s + 1]] = f.reduce(
                c[offs[s]:offs[s + 1]] - np.kron(f.eye(X.dims[s]), Y.arrow_mats[k])
            )
        blocks.append(f.reduce(c))
    if not blocks:
        return f.zeros((n, 0))
    return np.concatenate(blocks, axis=1)


def hom_space(X: Representation, Y: Representation) -> np.ndarray:
    """Rows are flattened morphisms forming a basis of ``Hom(X, Y)``."""
    if X.algebra is not Y.algebra:
        raise ModuleError("Hom between modules over different algebras")
    f = X.field
    n = sum(a * b for a, b in zip(X.dims, Y.dims))
    if n == 0:
        return f.zeros((0, 0))
    c = _hom_system(X, Y)
    if c.shape[1] == 0:
        return f.eye(n)
    return kernel_basis(f, c)


def hom_basis(X: Representation, Y: Representation) -> list[ModuleMorphism]:
    return [morphism_from_vector(X, Y, row) for row in hom_space(X, Y)]


def hom_dim(X: Representation, Y: Representation) -> int:
    return hom_space(X, Y).shape[0]


# ---------------------------------------------------------------------------
# sub- and quotient modules


def _restrict_action(field, X: Representation, bases) -> list[np.ndarray]:
    mats = []
    for k, a in enumerate(X.algebra.quiver.arrows):
        u_s, u_t = bases[a.source], bases[a.target]
        if u_s.shape[0] == 0 or u_t.shape[0] == 0:
            if u_s.shape[0] and not field.is_zero(field.matmul(u_s, X.arrow_mats[k])):
                raise ModuleError("subspace is not a submodule")
            mats.append(field.zeros((u_s.shape[0], u_t.shape[0])))
            continue
        img = field.matmul(u_s, X.arrow_mats[k])
        coords = solve(field, u_t, img)
        if coords is None:
            raise ModuleError("subspace is not a submodule")
        mats.append(coords)
    return mats


def _norm_bases(X: Representation, bases) -> list[np.ndarray]:
    f = X.field
    out = []
    for v, b in enumerate(bases):
        if b is None or b.shape[0] == 0:
            out.append(f.zeros((0, X.dims[v])))
        else:
            out.append(row_space(f, b))
    return out


def submodule(X: Representation, bases) -> tuple[Representation, ModuleMorphism]:
    """Submodule spanned per vertex by the rows of ``bases[v]`` and its inclusion."""
    f = X.field
    bases = _norm_bases(X, bases)
    mats = _restrict_action(f, X, bases)
    S = Representation(X.algebra, [b.shape[0] for b in bases], mats, check=False)
    return S, ModuleMorphism(S, X, bases, check=False)


def quotient(X: Representation, bases) -> tuple[Representation, ModuleMorphism]:
    """Quotient by the submodule spanned by ``bases`` and the canonical projection."""
    f = X.field
    bases = _norm_bases(X, bases)
    _restrict_action(f, X, bases)  # validates the submodule
    comps, projs = [], []
    for v, b in enumerate(bases):
        d = X.dims[v]
        c = complement_rows(f, b, d)
        comps.append(c)
        if d == 0:
            projs.append(f.zeros((0, 0)))
            continue
        full = np.concatenate([b, c]) if b.shape[0] else c
        inv = inverse(f, full)
        projs.append(inv[:, b.shape[0]:])
    mats = []
    for k, a in enumerate(X.algebra.quiver.arrows):
        m = f.matmul(f.matmul(comps[a.source], X.arrow_mats[k]), projs[a.target])
        mats.append(m)
    Q = Representation(X.algebra, [c.shape[0] for c in comps], mats, check=False)
    return Q, ModuleMorphism(X, Q, projs, check=False)


def generated_submodule_bases(X: Representation, gens) -> list[np.ndarray]:
    """Per-vertex bases of the submodule generated by ``gens[v]`` (rows)."""
    f = X.field
    cur = _norm_bases(X, gens)
    changed = True
    while changed:
        changed = False
        for k, a in enumerate(X.algebra.quiver.arrows):
            if cur[a.source].shape[0] == 0 or X.dims[a.target] == 0:
                continue
            img = f.matmul(cur[a.source], X.arrow_mats[k])
            new = row_space(f, np.concatenate([cur[a.target], img]))
            if new.shape[0] > cur[a.target].shape[0]:
                cur[a.target] = new
                changed = True
    return cur


@dataclass
class MorphismSpaces:
    kernel: Representation
    kernel_inclusion: ModuleMorphism
    image: Representation
    image_epi: ModuleMorphism
    image_mono: ModuleMorphism
    cokernel: Representation
    cokernel_projection: ModuleMorphism


def morphism_spaces(fm: ModuleMorphism) -> MorphismSpaces:
    f = fm.field
    X, Y = fm.source, fm.target
    kbases = [kernel_basis(f, m) if m.shape[0] else f.zeros((0, 0)) for m in fm.mats]
    kbases = [k if k.size or X.dims[v] == 0 else f.zeros((0, X.dims[v])) for v, k in enumerate(kbases)]
    K, kinc = submodule(X, kbases)
    ibases = [row_space(f, m) if m.shape[0] else f.zeros((0, Y.dims[v])) for v, m in enumerate(fm.mats)]
    I, imono = submodule(Y, ibases)
    epi_mats = []
    for v, m in enumerate(fm.mats):
        if ibases[v].shape[0] == 0:
            epi_mats.append(f.zeros((X.dims[v], 0)))
        else:
            epi_mats.append(solve(f, ibases[v], m))
    iepi = ModuleMorphism(X, I, epi_mats, check=False)
    C, cproj = quotient(Y, ibases)
    if K.dim + I.dim != X.dim:
        raise ModuleError("rank bookkeeping failed for 0 -> ker -> X -> im -> 0")
    return MorphismSpaces(K, kinc, I, iepi, imono, C, cproj)


def module_radical(X: Representation) -> tuple[Representation, ModuleMorphism]:
    """``rad X``: the sum of the images of all arrow actions."""
    f = X.field
    q = X.algebra.quiver
    bases = []
    for v in range(q.num_vertices):
        imgs = [X.arrow_mats[k] for k, a in enumerate(q.arrows) if a.target == v and X.dims[a.source]]
        bases.append(row_space(f, np.concatenate(imgs)) if imgs and X.dims[v] else f.zeros((0, X.dims[v])))
    return submodule(X, bases)


def module_socle(X: Representation) -> tuple[Representation, ModuleMorphism]:
    """``soc X``: vectors killed by every arrow."""
    f = X.field
    q = X.algebra.quiver
    bases = []
    for v in range(q.num_vertices):
        outs = [X.arrow_mats[k] for k, a in enumerate(q.arrows) if a.source == v]
        if X.dims[v] == 0:
            bases.append(f.zeros((0, 0)))
        elif not outs or all(m.shape[1] == 0 for m in outs):
            bases.append(f.eye(X.dims[v]))
        else:
            bases.append(kernel_basis(f, np.concatenate(outs, axis=1)))
    return submodule(X, bases)


def module_top(X: Representation) -> tuple[Representation, ModuleMorphism]:
    R, inc = module_radical(X)
    return quotient(X, list(inc.mats))


def length(X: Representation) -> int:
    """Composition length, summing top multiplicities down the radical series."""
    total = 0
    cur = X
    while cur.dim:
        top, _ = module_top(cur)
        total += sum(top.dims)  # simples of a bound quiver algebra are one-dimensional
        cur, _ = module_radical(cur)
    return total


def direct_sum(mods: Sequence[Representation]) -> tuple[Representation, list[ModuleMorphism], list[ModuleMorphism]]:
    """``S = M_1 + ... + M_r`` with its inclusions and projections."""
    if not mods:
        raise ModuleError("empty direct sum")
    A = mods[0].algebra
    f = A.field
    n = A.quiver.num_vertices
    dims = [sum(M.dims[v] for M in mods) for v in range(n)]
    mats = []
    for k, a in enumerate(A.quiver.arrows):
        m = f.zeros((dims[a.source], dims[a.target]))
        rs = cs = 0
        for M in mods:
            ds, dt = M.dims[a.source], M.dims[a.target]
            m[rs:rs + ds, cs:cs + dt] = M.arrow_mats[k]
            rs += ds
            cs += dt
        mats.append(m)
    S = Representation(A, dims, mats, check=False)
    incs, projs = [], []
    offs = [0] * n
    for M in mods:
        im, pm = [], []
        for v in range(n):
            e = f.zeros((M.dims[v], dims[v]))
            for r in range(M.dims[v]):
                e[r, offs[v] + r] = 1
            im.append(e)
            pm.append(e.T.copy())
            offs[v] += M.dims[v]
        incs.append(ModuleMorphism(M, S, im, check=False))
        projs.append(ModuleMorphism(S, M, pm, check=False))
    return S, incs, projs


def sum_map_from(sources: Sequence[ModuleMorphism], S: Representation) -> ModuleMorphism:
    """The map ``S = M_1 + ... + M_r -> X`` with components ``sources[i]: M_i -> X``."""
    f = S.field
    X = sources[0].target
    mats = []
    for v in range(S.algebra.quiver.num_vertices):
        parts = [g.mats[v] for g in sources]
        mats.append(np.concatenate(parts, axis=0) if parts else f.zeros((0, X.dims[v])))
    return ModuleMorphism(S, X, mats, check=False)


def sum_map_to(targets: Sequence[ModuleMorphism], S: Representation) -> ModuleMorphism:
    """The map ``Y -> S = M_1 + ... + M_r`` with components ``targets[i]: Y -> M_i``."""
    f = S.field
    Y = targets[0].source
    mats = []
    for v in range(S.algebra.quiver.num_vertices):
        parts = [g.mats[v] for g in targets]
        mats.append(np.concatenate(parts, axis=1) if parts else f.zeros((Y.dims[v], 0)))
    return ModuleMorphism(Y, S, mats, check=False)


# ---------------------------------------------------------------------------
# projective covers and injective envelopes


def projective_cover(X: Representation) -> ModuleMorphism:
    """Epimorphism ``P(X) -> X`` from a sum of indecomposable projectives.

    ``P(X)`` carries ``vertices`` (the list of projective summand vertices)
    as an attribute.
    """
    from .pathalg import projective_module

    A = X.algebra
    f = X.field
    R, inc = module_radical(X)
    parts, comps, verts = [], [], []
    for i in range(A.quiver.num_vertices):
        if X.dims[i] == 0:
            continue
        gens = complement_rows(f, inc.mats[i], X.dims[i])
        if gens.shape[0] == 0:
            continue
        P = projective_module(A, i)
        for x in gens:
            mats = []
            for v in range(A.quiver.num_vertices):
                idx = [k for k in range(A.dim) if A.sources[k] == i and A.targets[k] == v]
                rows = [f.matmul(x.reshape(1, -1), X.path_action(A.basis[k]))[0] for k in idx]
                mats.append(np.stack(rows) if rows else f.zeros((0, X.dims[v])))
            parts.append(P)
            comps.append(ModuleMorphism(P, X, mats, check=False))
            verts.append(i)
    if not parts:
        Z = zero_module(A)
        Z.vertices = []
        return ModuleMorphism(Z, X, [f.zeros((0, d)) for d in X.dims], check=False)
    S, _, _ = direct_sum(parts)
    S.vertices = verts
    cover = sum_map_from(comps, S)
    if not cover.is_surjective():
        raise ModuleError("projective cover is not surjective")
    return cover


def injective_envelope(X: Representation) -> ModuleMorphism:
    """Monomorphism ``X -> I(X)`` into a sum of indecomposable injectives."""
    from .pathalg import injective_module

    A = X.algebra
    f = X.field
    soc, sinc = module_socle(X)
    parts, comps, verts = [], [], []
    for i in range(A.quiver.num_vertices):
        u = sinc.mats[i]
        if u.shape[0] == 0:
            continue
        xi_t = solve(f, u.T.copy(), f.eye(u.shape[0]))  # rows: functionals restricting to a dual basis
        I = injective_module(A, i)
        for xi in xi_t:
            mats = []
            for v in range(A.quiver.num_vertices):
                idx = [k for k in range(A.dim) if A.sources[k] == v and A.targets[k] == i]
                cols = [f.matmul(X.path_action(A.basis[k]), xi.reshape(-1, 1))[:, 0] for k in idx]
                mats.append(np.stack(cols, axis=1) if cols else f.zeros((X.dims[v], 0)))
            parts.append(I)
            comps.append(ModuleMorphism(X, I, mats, check=False))
            verts.append(i)
    if not parts:
        Z = zero_module(A)
        Z.vertices = []
        return ModuleMorphism(X, Z, [f.zeros((d, 0)) for d in X.dims], check=False)
    S, _, _ = direct_sum(parts)
    S.vertices = verts
    env = sum_map_to(comps, S)
    if not env.is_injective():
        raise ModuleError("injective envelope is not injective")
    return env


# ---------------------------------------------------------------------------
# endomorphism rings, indecomposability and decomposition


def _block_kernels(field, X: Representation, m: np.ndarray) -> list[np.ndarray]:
    o = X.offsets
    out = []
    for v in range(len(X.dims)):
        blk = m[o[v]:o[v + 1], o[v]:o[v + 1]]
        out.append(kernel_basis(field, blk) if X.dims[v] else field.zeros((0, 0)))
    return out


def _split_by(X: Representation, m: np.ndarray):
    """Primary-decomposition split of ``X`` by the endomorphism ``m`` (full matrix)."""
    f = X.field
    facs = matalg.factor(f, matalg.minimal_polynomial(f, m))
    if len(facs) < 2:
        return None, facs
    first = [f.scalar(1)]
    for _ in range(facs[0][1]):
        first = matalg.poly_mul(f, first, facs[0][0])
    rest = [f.scalar(1)]
    for g, e in facs[1:]:
        for _ in range(e):
            rest = matalg.poly_mul(f, rest, g)
    u = _block_kernels(f, X, matalg.poly_eval(f, first, m))
    w = _block_kernels(f, X, matalg.poly_eval(f, rest, m))
    return (u, w), facs


@dataclass
class EndoData:
    mats: list  # full matrices of a basis of End(X)
    radical: np.ndarray  # coordinates of a basis of rad End(X)

    @property
    def top_dim(self) -> int:
        return len(self.mats) - self.radical.shape[0]


def endomorphism_data(X: Representation) -> EndoData:
    f = X.field
    mats = [g.full_matrix() for g in hom_basis(X, X)]
    return EndoData(mats, matalg.radical(f, mats))


def _find_split(X: Representation, rng: np.random.Generator):
    """``None`` when ``End(X)`` is certified local, else a splitting ``(u, w)``."""
    f = X.field
    basis = hom_basis(X, X)
    if len(basis) <= 1:
        return None
    mats = [g.full_matrix() for g in basis]
    rad = matalg.radical(f, mats)
    q = len(mats) - rad.shape[0]
    if q == 1:
        return None

    def attempt(m):
        split, facs = _split_by(X, m)
        if split is not None:
            return "split", split
        if len(facs[0][0]) - 1 == q:
            return "local", None
        return None, None

    for m in mats:
        kind, split = attempt(m)
        if kind == "split":
            return split
        if kind == "local":
            return None
    for _ in range(N_RANDOM_TRIES):
        coeffs = f.random(rng, len(mats))
        kind, split = attempt(matalg.combine(f, coeffs, mats))
        if kind == "split":
            return split
        if kind == "local":
            return None
    if f.is_prime and f.p ** q <= EXHAUSTIVE_LIMIT:
        comp = complement_rows(f, rad, len(mats)) if rad.shape[0] else f.eye(len(mats))
        import itertools

        for coeffs in itertools.product(range(f.p), repeat=q):
            if not any(coeffs):
                continue
            c = f.matmul(f.array(coeffs).reshape(1, -1), comp)[0]
            kind, split = attempt(matalg.combine(f, c, mats))
            if kind == "split":
                return split
            if kind == "local":
                return None
    raise DecompositionUndecided(f"could not decide indecomposability of module with dims {X.dims}")


def is_indecomposable(X: Representation, seed: int = 0) -> bool:
    if X.dim == 0:
        return False
    return _find_split(X, np.random.default_rng(seed)) is None


@dataclass
class Piece:
    module: Representation
    embedding: ModuleMorphism  # piece -> X
    projection: ModuleMorphism  # X -> piece


@dataclass
class Decomposition:
    """``X`` as a direct sum of indecomposables.

    ``pieces`` realise ``X = sum of pieces`` through embeddings and projections;
    ``summands`` lists one representative per isomorphism class with its
    multiplicity, and ``classes[k]`` is the class index of ``pieces[k]``.
    """

    module: Representation
    pieces: list[Piece]
    summands: list[tuple[Representation, int]]
    classes: list[int] = dc_field(default_factory=list)

    def check(self) -> None:
        X = self.module
        f = X.field
        total = None
        for pc in self.pieces:
            comp = pc.embedding.then(pc.projection)
            if not comp.equals(identity(pc.module)):
                raise ModuleError("projection o embedding is not the identity")
            e = pc.projection.then(pc.embedding)
            total = e if total is None else total + e
        if total is not None and not total.equals(identity(X)):
            raise ModuleError("embeddings do not reassemble the module")
        if sum(M.dim * k for M, k in self.summands) != X.dim:
            raise ModuleError("dimension count of summands is wrong")


def decompose(X: Representation, seed: int = 0) -> Decomposition:
    """Complete decomposition into indecomposable summands.

    Splitting uses the primary decomposition of endomorphisms (basis elements
    first, then seeded random combinations); indecomposability is certified
    by exhibiting a field generator of ``End/rad End``.
    """
    rng = np.random.default_rng(seed)
    f = X.field
    pieces: list[Piece] = []
    stack = [Piece(X, identity(X), identity(X))] if X.dim else []
    while stack:
        pc = stack.pop()
        Y = pc.module
        split = _find_split(Y, rng)
        if split is None:
            pieces.append(pc)
            continue
        u, w = split
        U, uinc = submodule(Y, u)
        W, winc = submodule(Y, w)
        # projections from Y = U + W
        uproj, wproj = [], []
        for v in range(len(Y.dims)):
            if Y.dims[v] == 0:
                uproj.append(f.zeros((0, U.dims[v])))
                wproj.append(f.zeros((0, W.dims[v])))
                continue
            full = np.concatenate([uinc.mats[v], winc.mats[v]])
            inv = inverse(f, full)
            uproj.append(inv[:, : U.dims[v]])
            wproj.append(inv[:, U.dims[v]:])
        up = ModuleMorphism(Y, U, uproj, check=False)
        wp = ModuleMorphism(Y, W, wproj, check=False)
        stack.append(Piece(W, winc.then(pc.embedding), pc.projection.then(wp)))
        stack.append(Piece(U, uinc.then(pc.embedding), pc.projection.then(up)))
    pieces.sort(key=lambda p: (-p.module.dim, p.module.dims))
    reps: list[Representation] = []
    counts: list[int] = []
    classes = []
    for pc in pieces:
        for j, R in enumerate(reps):
            if R.dims == pc.module.dims and find_isomorphism_indecomposable(R, pc.module) is not None:
                counts[j] += 1
                classes.append(j)
                break
        else:
            reps.append(pc.module)
            counts.append(1)
            classes.append(len(reps) - 1)
    return Decomposition(X, pieces, list(zip(reps, counts)), classes)


def find_isomorphism_indecomposable(X: Representation, Y: Representation) -> Optional[ModuleMorphism]:
    """An isomorphism ``X -> Y`` when ``X`` is indecomposable, else ``None``.

    With ``End(X)`` local, ``X`` and ``Y`` are isomorphic exactly when some
    pair of basis morphisms ``f: X -> Y``, ``g: Y -> X`` has ``g o f``
    invertible.
    """
    if X.dims != Y.dims:
        return None
    if X.dim == 0:
        return zero_morphism(X, Y)
    f = X.field
    fwd = hom_basis(X, Y)
    if not fwd:
        return None
    bwd = hom_basis(Y, X)
    for a in fwd:
        if a.is_isomorphism():
            return a
    for a in fwd:
        am = a.full_matrix()
        for b in bwd:
            if matalg.is_invertible(f, f.matmul(am, b.full_matrix())):
                return a
    return None


def isomorphism_classes_match(d1: Decomposition, d2: Decomposition) -> bool:
    if sorted(k for _, k in d1.summands) != sorted(k for _, k in d2.summands):
        return False
    used = set()
    for R, k in d1.summands:
        for j, (S, l) in enumerate(d2.summands):
            if j in used or k != l:
                continue
            if find_isomorphism_indecomposable(R, S) is not None:
                used.add(j)
                break
        else:
            return False
    return True


def is_isomorphic(X: Representation, Y: Representation, seed: int = 0) -> bool:
    if X.dims != Y.dims:
        return False
    if X.dim == 0:
        return True
    return isomorphism_classes_match(decompose(X, seed), decompose(Y, seed))


def find_isomorphism(X: Representation, Y: Representation, seed: int = 0) -> Optional[ModuleMorphism]:
    """An explicit isomorphism assembled summand by summand."""
    if X.dims != Y.dims:
        return None
    if X.dim == 0:
        return zero_morphism(X, Y)
    dx, dy = decompose(X, seed), decompose(Y, seed)
    used = set()
    total = None
    for px in dx.pieces:
        for j, py in enumerate(dy.pieces):
            if j in used or px.module.dims != py.module.dims:
                continue
            iso = find_isomorphism_indecomposable(px.module, py.module)
            if iso is not None:
                used.add(j)
                term = px.projection.then(iso).then(py.embedding)
                total = term if total is None else total + term
                break
        else:
            return None
    return total


# ---------------------------------------------------------------------------
# ideals acting on modules, change of algebra


def annihilated_by(X: Representation, ideal) -> bool:
    rows = ideal.rows if hasattr(ideal, "rows") else ideal
    f = X.field
    for z in rows:
        if not f.is_zero(X.element_action(z)):
            return False
    return True


def reinterpret(X: Representation, target_algebra, identification=None) -> Representation:
    """The same vector spaces viewed as a module over ``target_algebra``.

    Without an identification the two algebras must share the quiver and the
    arrow matrices are reused.  With one, each arrow of the target acts
    through its preimage (an element of ``X.algebra``) supplied by
    ``identification.arrow_preimages(X.algebra)``, after checking that ``X``
    is annihilated by ``identification.socle_of(X.algebra)``.
    """
    if target_algebra.quiver != X.algebra.quiver:
        raise ModuleError("algebras have different quivers")
    if identification is None:
        mats = X.arrow_mats
    else:
        soc = identification.socle_of(X.algebra)
        if not annihilated_by(X, soc):
            raise ModuleError("module has a projective direct summand obstruction")
        pre = identification.arrow_preimages(X.algebra)
        o = X.offsets
        mats = []
        for k, a in enumerate(X.algebra.quiver.arrows):
            full = X.element_action(pre[k])
            mats.append(full[o[a.source]:o[a.source + 1], o[a.target]:o[a.target + 1]])
    try:
        return Representation(target_algebra, X.dims, mats, check=True, name=X.name)
    except ModuleError as exc:
        raise ModuleError(f"reinterpretation failed: {exc}") from None


def restrict_morphism(g: ModuleMorphism, source: Representation, target: Representation) -> ModuleMorphism:
    """Reuse the matrices of ``g`` between reinterpreted modules."""
    return ModuleMorphism(source, target, g.mats, check=True)
