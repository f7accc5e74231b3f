"""Bound quiver algebras ``KQ/I`` as explicit finite-dimensional algebras.

Paths compose left to right: the path ``a*b`` is ``a`` followed by ``b`` and
requires ``target(a) == source(b)``.  A path is stored as
``(source_vertex, (arrow_index, ...))``; the trivial path at ``v`` is
``(v, ())``.  Paths are ordered by length, then lexicographically by arrow
declaration order (trivial paths by vertex order).
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Optional, Sequence

import numpy as np

from .exactlin import Field, kernel_basis, rref, solve

Path = tuple[int, tuple[int, ...]]
Relation = tuple[tuple[object, Path], ...]  # ((coefficient, path), ...)

DEFAULT_HARD_CAP = 30


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    @classmethod
    def from_names(cls, vertices: Sequence[str], arrows: Sequence[tuple[str, str, str]]) -> "Quiver":
        vertices = tuple(str(v) for v in vertices)
        if len(set(vertices)) != len(vertices):
            raise AlgebraError("duplicate vertex names")
        vidx = {v: i for i, v in enumerate(vertices)}
        out = []
        for name, s, t in arrows:
            if str(s) not in vidx or str(t) not in vidx:
                raise AlgebraError(f"arrow {name}: undeclared vertex")
            out.append(Arrow(str(name), vidx[str(s)], vidx[str(t)]))
        names = [a.name for a in out]
        if len(set(names)) != len(names) or set(names) & set(vertices):
            raise AlgebraError("arrow names must be unique and distinct from vertex names")
        return cls(vertices, tuple(out))

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    def vertex_index(self, name) -> int:
        try:
            return self.vertices.index(str(name))
        except ValueError:
            raise AlgebraError(f"unknown vertex {name!r}") from None

    def arrow_index(self, name: str) -> int:
        for k, a in enumerate(self.arrows):
            if a.name == name:
                return k
        raise AlgebraError(f"unknown arrow {name!r}")

    def is_connected(self) -> bool:
        n = self.num_vertices
        if n == 0:
            return True
        adj = defaultdict(set)
        for a in self.arrows:
            adj[a.source].add(a.target)
            adj[a.target].add(a.source)
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == n

    # -- paths ---------------------------------------------------------
    def path_target(self, path: Path) -> int:
        s, arrows = path
        return self.arrows[arrows[-1]].target if arrows else s

    def check_path(self, path: Path) -> None:
        s, arrows = path
        cur = s
        for k in arrows:
            a = self.arrows[k]
            if a.source != cur:
                raise AlgebraError(f"non-composable monomial {self.path_name(path)}")
            cur = a.target

    def path_from_arrows(self, names: Sequence[str]) -> Path:
        idx = tuple(self.arrow_index(n) for n in names)
        if not idx:
            raise AlgebraError("empty monomial")
        path = (self.arrows[idx[0]].source, idx)
        self.check_path(path)
        return path

    def path_name(self, path: Path) -> str:
        s, arrows = path
        if not arrows:
            return f"e{self.vertices[s]}"
        return "*".join(self.arrows[k].name for k in arrows)

    def paths_up_to(self, length: int) -> list[Path]:
        level = [(v, ()) for v in range(self.num_vertices)]
        out = list(level)
        for _ in range(length):
            nxt = []
            for p in level:
                t = self.path_target(p)
                for k, a in enumerate(self.arrows):
                    if a.source == t:
                        nxt.append((p[0], p[1] + (k,)))
            out.extend(nxt)
            level = nxt
        out.sort(key=path_key)
        return out


def path_key(path: Path):
    s, arrows = path
    return (len(arrows), arrows) if arrows else (0, (s,))


def concat(p: Path, q: Path) -> Path:
    return (p[0], p[1] + q[1])


def check_relations(quiver: Quiver, relations: Iterable[Relation]) -> list[Relation]:
    out = []
    for rel in relations:
        if not rel:
            raise AlgebraError("empty relation")
        ends = set()
        for _, path in rel:
            quiver.check_path(path)
            if len(path[1]) < 2:
                raise AlgebraError(
                    f"relation term {quiver.path_name(path)} has length < 2 (ideal not admissible)"
                )
            ends.add((path[0], quiver.path_target(path)))
        if len(ends) != 1:
            raise AlgebraError("monomials of one relation must share source and target")
        out.append(tuple(rel))
    return out


@dataclass
class BoundQuiverAlgebra:
    """Finite-dimensional algebra with a basis of paths and structure constants.

    ``mult[i, j]`` holds the coordinates of ``basis[i] * basis[j]``.
    ``relations`` generate the defining ideal in ``KQ``; a representation is
    a module over this algebra exactly when they all act as zero.
    """

    field: Field
    quiver: Quiver
    basis: list[Path]
    mult: np.ndarray
    degree_cap: int
    relations: list[Relation]
    arrow_elems: np.ndarray
    vertex_elems: np.ndarray
    name: str = ""
    _index: dict = dc_field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._index = {p: i for i, p in enumerate(self.basis)}
        self.sources = np.array([p[0] for p in self.basis], dtype=int)
        self.targets = np.array([self.quiver.path_target(p) for p in self.basis], dtype=int)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __repr__(self) -> str:
        return f"BoundQuiverAlgebra({self.name or '?'}, {self.field}, dim={self.dim})"

    def basis_names(self) -> list[str]:
        return [self.quiver.path_name(p) for p in self.basis]

    def basis_index(self, path: Path) -> Optional[int]:
        return self._index.get(path)

    def zero(self) -> np.ndarray:
        return self.field.zeros(self.dim)

    def one(self) -> np.ndarray:
        return self.field.reduce(self.vertex_elems.sum(axis=0))

    def multiply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        d = self.dim
        xc = self.field.matmul(x.reshape(1, d), self.mult.reshape(d, d * d)).reshape(d, d)
        return self.field.matmul(y.reshape(1, d), xc).reshape(d)

    def right_mult_matrix(self, y: np.ndarray) -> np.ndarray:
        """``R`` with ``x @ R == x * y``."""
        d = self.dim
        m = self.mult.transpose(0, 2, 1).reshape(d * d, d)
        return self.field.matmul(m, y.reshape(d, 1)).reshape(d, d)

    def left_mult_matrix(self, x: np.ndarray) -> np.ndarray:
        """``L`` with ``y @ L == x * y``."""
        d = self.dim
        return self.field.matmul(x.reshape(1, d), self.mult.reshape(d, d * d)).reshape(d, d)

    def path_element(self, path: Path) -> np.ndarray:
        s, arrows = path
        if not arrows:
            return self.vertex_elems[s].copy()
        out = self.arrow_elems[arrows[0]].copy()
        for k in arrows[1:]:
            out = self.multiply(out, self.arrow_elems[k])
        return out

    def relation_element(self, rel: Relation) -> np.ndarray:
        out = self.zero()
        for c, path in rel:
            out = self.field.reduce(out + self.field.scalar(c) * self.path_element(path))
        return out

    def element_paths(self, x: np.ndarray) -> Relation:
        """An element as a linear combination of its basis paths."""
        return tuple((x[k], self.basis[k]) for k in np.flatnonzero(x))

    def radical_index(self) -> np.ndarray:
        return np.array([k for k, p in enumerate(self.basis) if p[1]], dtype=int)

    def arrow_elems_with_ends(self) -> list[tuple[int, int, int]]:
        return [(k, a.source, a.target) for k, a in enumerate(self.quiver.arrows)]

    def check_associative(self, samples: int = 2000, seed: int = 0) -> None:
        """Exhaustive on all basis triples up to dimension 64, sampled above."""
        f = self.field
        d = self.dim
        if d == 0:
            return
        if d <= 64:
            c = self.mult
            left = f.matmul(c.reshape(d * d, d), c.reshape(d, d * d)).reshape(d, d, d, d)
            right = f.matmul(c.reshape(d * d, d), c.transpose(1, 0, 2).reshape(d, d * d))
            right = right.reshape(d, d, d, d).transpose(2, 0, 1, 3)
            if not np.array_equal(left, right):
                raise AlgebraError("multiplication is not associative")
            return
        rng = np.random.default_rng(seed)
        unit = f.eye(d)
        for _ in range(samples):
            i, j, k = (int(v) for v in rng.integers(0, d, 3))
            a, b, e = unit[i], unit[j], unit[k]
            if not np.array_equal(
                self.multiply(self.multiply(a, b), e), self.multiply(a, self.multiply(b, e))
            ):
                raise AlgebraError(f"multiplication not associative on basis triple {(i, j, k)}")


# ---------------------------------------------------------------------------
# construction by truncated two-sided closure


def _closure_at(field: Field, quiver: Quiver, relations: list[Relation], cap: int):
    """Ideal ``I + R^(cap+1)`` modulo ``R^(cap+1)``, block by block.

    Returns ``(paths, blocks)`` where ``blocks[(s, t)] = (cols, reduced, pivots)``
    with ``cols`` the global path indices of the block in path order and
    ``reduced`` an rref basis of the ideal in those columns.
    """
    paths = quiver.paths_up_to(cap)
    index = {p: i for i, p in enumerate(paths)}
    cols_of: dict = defaultdict(list)
    for i, p in enumerate(paths):
        cols_of[(p[0], quiver.path_target(p))].append(i)
    local = {}
    for key, cols in cols_of.items():
        for j, c in enumerate(cols):
            local[c] = j

    # arrow multiplication as column maps between blocks
    lmaps: dict = {}
    rmaps: dict = {}
    for (s, t), cols in cols_of.items():
        for k, a in enumerate(quiver.arrows):
            if a.target == s:
                src, dst = [], []
                for c in cols:
                    p = paths[c]
                    if len(p[1]) < cap:
                        q = (a.source, (k,) + p[1])
                        src.append(local[c])
                        dst.append(local[index[q]])
                lmaps[(s, t, k)] = ((a.source, t), np.array(src, int), np.array(dst, int))
            if a.source == t:
                src, dst = [], []
                for c in cols:
                    p = paths[c]
                    if len(p[1]) < cap:
                        q = (p[0], p[1] + (k,))
                        src.append(local[c])
                        dst.append(local[index[q]])
                rmaps[(s, t, k)] = ((s, a.target), np.array(src, int), np.array(dst, int))

    basis = {key: (field.zeros((0, len(cols))), []) for key, cols in cols_of.items()}
    pending: dict = defaultdict(list)
    for rel in relations:
        key = (rel[0][1][0], quiver.path_target(rel[0][1]))
        v = field.zeros(len(cols_of[key]))
        for c, p in rel:
            if len(p[1]) <= cap:
                j = local[index[p]]
                v[j] = field.reduce(v[j] + field.scalar(c))
        pending[key].append(v)

    while pending:
        frontier = {}
        for key, vecs in pending.items():
            cand = np.stack(vecs)
            red, piv = basis[key]
            if piv:
                cand = field.reduce(cand - field.matmul(cand[:, piv], red))
            r, cr, _ = rref(field, cand)
            if r == 0:
                continue
            new_rows = cr[:r]
            r2, merged, piv2 = rref(field, np.concatenate([red, new_rows]))
            basis[key] = (merged[:r2], piv2)
            frontier[key] = new_rows
        pending = defaultdict(list)
        for (s, t), rows in frontier.items():
            for maps in (lmaps, rmaps):
                for k in range(len(quiver.arrows)):
                    entry = maps.get((s, t, k))
                    if entry is None or entry[1].size == 0:
                        continue
                    dkey, src, dst = entry
                    out = field.zeros((rows.shape[0], len(cols_of[dkey])))
                    out[:, dst] = rows[:, src]
                    for row in out:
                        if np.any(row != 0):
                            pending[dkey].append(row)
    blocks = {key: (cols_of[key], basis[key][0], basis[key][1]) for key in cols_of}
    return paths, blocks


def _quotient_dim(paths, blocks) -> int:
    return sum(len(cols) - len(piv) for cols, _, piv in blocks.values())


def _assemble(field: Field, quiver: Quiver, relations, cap: int, paths, blocks, name: str):
    normal_forms = {}  # global path index -> {basis path: coeff}
    basis: list[Path] = []
    for key, (cols, red, piv) in blocks.items():
        pivset = set(piv)
        for j, c in enumerate(cols):
            if j not in pivset:
                basis.append(paths[c])
    basis.sort(key=path_key)
    bindex = {p: i for i, p in enumerate(basis)}
    d = len(basis)
    path_pos = {p: i for i, p in enumerate(paths)}
    local_pos = {key: {c: j for j, c in enumerate(cols)} for key, (cols, _, _) in blocks.items()}

    def nf(path: Path) -> np.ndarray:
        out = field.zeros(d)
        if len(path[1]) > cap:
            return out
        if path in bindex:
            out[bindex[path]] = 1
            return out
        key = (path[0], quiver.path_target(path))
        cols, red, piv = blocks[key]
        j = local_pos[key][path_pos[path]]
        row = red[piv.index(j)]
        for jj, c in enumerate(cols):
            if jj != j and row[jj] != 0:
                out[bindex[paths[c]]] = field.reduce(-row[jj])
        return out

    mult = field.zeros((d, d, d))
    for i, p in enumerate(basis):
        tp = quiver.path_target(p)
        for j, q in enumerate(basis):
            if q[0] == tp:
                mult[i, j] = nf(concat(p, q))
    arrow_elems = field.zeros((len(quiver.arrows), d))
    for k, a in enumerate(quiver.arrows):
        arrow_elems[k] = nf((a.source, (k,)))
    vertex_elems = field.zeros((quiver.num_vertices, d))
    for v in range(quiver.num_vertices):
        vertex_elems[v] = nf((v, ()))
    return BoundQuiverAlgebra(
        field, quiver, basis, mult, cap, list(relations), arrow_elems, vertex_elems, name
    )


def build_algebra(
    field: Field,
    quiver: Quiver,
    relations: Sequence[Relation],
    degree_hint: Optional[int] = None,
    hard_cap: int = DEFAULT_HARD_CAP,
    name: str = "",
    check: bool = True,
) -> BoundQuiverAlgebra:
    """Build ``KQ/I`` by truncated linear closure with a stabilisation check.

    The truncation degree starts at ``degree_hint`` (else 2) and grows until
    the quotient dimension agrees at two consecutive degrees.
    """
    rels = check_relations(quiver, relations)
    cap = max(2, degree_hint or 2)
    prev = None
    while True:
        if cap + 1 > hard_cap:
            raise AlgebraError("ideal not admissible at cap")
        if prev is None or prev[0] != cap:
            paths, blocks = _closure_at(field, quiver, rels, cap)
            prev = (cap, paths, blocks)
        paths1, blocks1 = _closure_at(field, quiver, rels, cap + 1)
        if _quotient_dim(paths, blocks) == _quotient_dim(paths1, blocks1):
            break
        cap += 1
        paths, blocks = paths1, blocks1
        prev = (cap, paths, blocks)
    alg = _assemble(field, quiver, rels, cap, paths, blocks, name)
    if check:
        alg.check_associative()
    return alg


# ---------------------------------------------------------------------------
# ideals and quotients


@dataclass
class IdealBasis:
    """Rows are coordinates (in the algebra basis) of a basis of a two-sided ideal."""

    algebra: BoundQuiverAlgebra
    rows: np.ndarray

    @property
    def dim(self) -> int:
        return self.rows.shape[0]

    def contains(self, x: np.ndarray) -> bool:
        if self.dim == 0:
            return self.algebra.field.is_zero(x)
        return solve(self.algebra.field, self.rows, x) is not None


def _generators(A: BoundQuiverAlgebra) -> list[np.ndarray]:
    return list(A.arrow_elems) + list(A.vertex_elems)


def is_two_sided(A: BoundQuiverAlgebra, rows: np.ndarray) -> bool:
    f = A.field
    if rows.shape[0] == 0:
        return True
    for g in _generators(A):
        for m in (A.right_mult_matrix(g), A.left_mult_matrix(g)):
            img = f.matmul(rows, m)
            if solve(f, rows, img) is None:
                return False
    return True


def algebra_radical(A: BoundQuiverAlgebra) -> IdealBasis:
    """The arrow ideal, spanned by the basis paths of positive length."""
    idx = A.radical_index()
    rows = A.field.zeros((len(idx), A.dim))
    for r, k in enumerate(idx):
        rows[r, k] = 1
    return IdealBasis(A, rows)


def algebra_socle(A: BoundQuiverAlgebra) -> IdealBasis:
    """Right socle ``{a : a * rad A = 0}``; must coincide with the left socle."""
    f = A.field
    d = A.dim
    if len(A.quiver.arrows) == 0:
        return IdealBasis(A, f.eye(d))
    right = np.concatenate([A.right_mult_matrix(a) for a in A.arrow_elems], axis=1)
    rsoc = kernel_basis(f, right)
    left = np.concatenate([A.left_mult_matrix(a) for a in A.arrow_elems], axis=1)
    lsoc = kernel_basis(f, left)
    r1, red1, _ = rref(f, rsoc) if rsoc.shape[0] else (0, rsoc, [])
    r2, red2, _ = rref(f, lsoc) if lsoc.shape[0] else (0, lsoc, [])
    if r1 != r2 or not np.array_equal(red1[:r1], red2[:r2]) or not is_two_sided(A, rsoc):
        raise AlgebraError("socle not two-sided (algebra not selfinjective-like)")
    return IdealBasis(A, red1[:r1])


def quotient_algebra(A: BoundQuiverAlgebra, ideal: IdealBasis, name: str = ""):
    """``A / ideal`` with the complementary monomial basis.

    Returns ``(quotient, projection)`` where ``projection`` is the
    ``dim A x dim quotient`` matrix sending coordinates to coordinates.
    """
    f = A.field
    d = A.dim
    rows = ideal.rows
    if not is_two_sided(A, rows):
        raise AlgebraError("ideal is not two-sided")
    rad_idx = set(A.radical_index().tolist())
    if rows.shape[0]:
        for k in range(d):
            if k not in rad_idx and np.any(rows[:, k] != 0):
                raise AlgebraError("ideal not contained in the radical")
        r, red, piv = rref(f, rows)
        red = red[:r]
    else:
        red, piv = rows, []
    pivset = set(piv)
    keep = [k for k in range(d) if k not in pivset]
    pos = {k: j for j, k in enumerate(keep)}
    dq = len(keep)
    proj = f.zeros((d, dq))
    for k in keep:
        proj[k, pos[k]] = 1
    for i, c in enumerate(piv):
        for k in keep:
            if red[i, k] != 0:
                proj[c, pos[k]] = f.reduce(-red[i, k])
    lift = f.zeros((dq, d))
    for k in keep:
        lift[pos[k], k] = 1
    # structure constants of the quotient: project products of lifted basis elements
    sub = A.mult[np.ix_(keep, keep)].reshape(dq * dq, d)
    mult = f.matmul(sub, proj).reshape(dq, dq, dq)
    rels = list(A.relations)
    for row in red:
        rels.append(A.element_paths(row))
    Q = BoundQuiverAlgebra(
        f,
        A.quiver,
        [A.basis[k] for k in keep],
        mult,
        A.degree_cap,
        rels,
        f.matmul(A.arrow_elems, proj),
        f.matmul(A.vertex_elems, proj),
        name or (A.name + "/I" if A.name else ""),
    )
    return Q, proj


# ---------------------------------------------------------------------------
# projective and injective indecomposables


def projective_module(A: BoundQuiverAlgebra, i):
    """``P_i = e_i A`` with arrows acting by right multiplication."""
    from .repmod import Representation

    if isinstance(i, str):
        i = A.quiver.vertex_index(i)
    if not 0 <= i < A.quiver.num_vertices:
        raise AlgebraError(f"unknown vertex {i}")
    f = A.field
    idx = {v: [k for k in range(A.dim) if A.sources[k] == i and A.targets[k] == v]
           for v in range(A.quiver.num_vertices)}
    mats = []
    for a in A.arrow_elems_with_ends():
        k, s, t = a
        r = A.right_mult_matrix(A.arrow_elems[k])
        mats.append(r[np.ix_(idx[s], idx[t])])
    dims = tuple(len(idx[v]) for v in range(A.quiver.num_vertices))
    return Representation(A, dims, tuple(mats), check=False)


def injective_module(A: BoundQuiverAlgebra, i):
    """``I_i = D(A e_i)``: the dual of the left ideal with the contragredient action."""
    from .repmod import Representation

    if isinstance(i, str):
        i = A.quiver.vertex_index(i)
    if not 0 <= i < A.quiver.num_vertices:
        raise AlgebraError(f"unknown vertex {i}")
    idx = {v: [k for k in range(A.dim) if A.sources[k] == v and A.targets[k] == i]
           for v in range(A.quiver.num_vertices)}
    mats = []
    for k, s, t in A.arrow_elems_with_ends():
        left = A.left_mult_matrix(A.arrow_elems[k])  # y @ left = a * y
        c = left[np.ix_(idx[t], idx[s])]  # rows: basis of e_t A e_i, cols: e_s A e_i
        mats.append(c.T.copy())
    dims = tuple(len(idx[v]) for v in range(A.quiver.num_vertices))
    return Representation(A, dims, tuple(mats), check=False)


@dataclass
class NakayamaWitness:
    permutation: tuple[int, ...]
    isos: tuple  # ModuleMorphism P_i -> I_{nu(i)}


def is_selfinjective(A: BoundQuiverAlgebra) -> Optional[NakayamaWitness]:
    """Nakayama permutation with explicit isomorphisms ``P_i -> I_nu(i)``, or ``None``."""
    from .repmod import find_isomorphism_indecomposable

    n = A.quiver.num_vertices
    projs = [projective_module(A, i) for i in range(n)]
    injs = [injective_module(A, j) for j in range(n)]
    perm, isos = [], []
    used = set()
    for i in range(n):
        found = None
        for j in range(n):
            if j in used or projs[i].dims != injs[j].dims:
                continue
            iso = find_isomorphism_indecomposable(projs[i], injs[j])
            if iso is not None:
                found = (j, iso)
                break
        if found is None:
            return None
        used.add(found[0])
        perm.append(found[0])
        isos.append(found[1])
    return NakayamaWitness(tuple(perm), tuple(isos))


def identity_on_paths(A: BoundQuiverAlgebra, B: BoundQuiverAlgebra) -> np.ndarray:
    """Linear map ``A -> B`` sending each basis path of ``A`` to its class in ``B``."""
    if A.quiver != B.quiver:
        raise AlgebraError("algebras have different quivers")
    return np.stack([B.path_element(p) for p in A.basis]) if A.dim else B.field.zeros((0, B.dim))


def check_algebra_map(A: BoundQuiverAlgebra, B: BoundQuiverAlgebra, m: np.ndarray) -> Optional[tuple[int, int]]:
    """First basis pair ``(i, j)`` where ``m`` fails to be multiplicative, else ``None``."""
    f = A.field
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = f.matmul(A.mult[i, j].reshape(1, -1), m)[0]
            rhs = B.multiply(m[i], m[j])
            if not np.array_equal(lhs, rhs):
                return (i, j)
    return None
