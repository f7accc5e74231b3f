"""Right add-M approximations, their minimisation and approximation resolutions."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

import numpy as np

from .exactlin import rank, row_space
from .pathalg import injective_module, projective_module
from . import matalg
from .repmod import (
    ModuleError,
    ModuleMorphism,
    Representation,
    decompose,
    direct_sum,
    find_isomorphism_indecomposable,
    hom_basis,
    hom_space,
    identity,
    length,
    morphism_spaces,
    sum_map_from,
)

DEFAULT_CAP = 12


class NotGeneratorCogenerator(ModuleError):
    pass


class AddGenerator:
    """A module ``M`` through one representative of each indecomposable summand.

    ``summands[k]`` are pairwise non-isomorphic indecomposables;
    ``projective_vertex[k]`` is the vertex ``i`` when ``summands[k]`` is the
    literal ``P_i`` built by :func:`projective_module`, else ``None``.
    """

    def __init__(self, summands: Sequence[Representation], projective_vertex: Optional[Sequence] = None):
        if not summands:
            raise ModuleError("add M needs at least one summand")
        self.summands = list(summands)
        self.algebra = self.summands[0].algebra
        self.projective_vertex = list(projective_vertex) if projective_vertex else [None] * len(summands)
        self._homs: dict = {}

    @classmethod
    def from_module(cls, M: Representation, seed: int = 0) -> "AddGenerator":
        return cls([R for R, _ in decompose(M, seed).summands])

    @classmethod
    def from_parts(cls, N: Optional[Representation], algebra, seed: int = 0) -> "AddGenerator":
        """``N + A``: the regular summands are the literal projectives ``P_i``."""
        mods, verts = [], []
        for i in range(algebra.quiver.num_vertices):
            mods.append(projective_module(algebra, i))
            verts.append(i)
        if N is not None and N.dim:
            for R, _ in decompose(N, seed).summands:
                if any(find_isomorphism_indecomposable(R, P) is not None for P in mods[: len(verts)]):
                    continue
                mods.append(R)
                verts.append(None)
        return cls(mods, verts)

    def __len__(self) -> int:
        return len(self.summands)

    def module(self) -> Representation:
        return direct_sum(self.summands)[0]

    def hom(self, k: int, i: int) -> list[ModuleMorphism]:
        """Cached basis of ``Hom(summands[k], summands[i])``."""
        key = (k, i)
        if key not in self._homs:
            self._homs[key] = hom_basis(self.summands[k], self.summands[i])
        return self._homs[key]

    def index_of(self, X: Representation) -> Optional[int]:
        for k, R in enumerate(self.summands):
            if R.dims == X.dims and find_isomorphism_indecomposable(X, R) is not None:
                return k
        return None

    def is_generator_cogenerator(self) -> bool:
        A = self.algebra
        for i in range(A.quiver.num_vertices):
            for X in (projective_module(A, i), injective_module(A, i)):
                if self.index_of(X) is None:
                    return False
        return True

    def check_generator_cogenerator(self) -> None:
        if not self.is_generator_cogenerator():
            raise NotGeneratorCogenerator("M is not a generator-cogenerator")


@dataclass
class Approximation:
    """``map: source -> target`` with ``source`` a sum of generator summands.

    ``components[c]`` is the generator summand index of the ``c``-th direct
    summand of ``source``.  After :func:`minimize`, ``section`` is the
    inclusion of the kept summands into the original source and
    ``retraction`` the matching projection.
    """

    generator: AddGenerator
    target: Representation
    source: Representation
    map: ModuleMorphism
    components: list[int]
    parts: list[ModuleMorphism]  # restriction of ``map`` to each summand copy
    minimal: bool = False
    section: Optional[ModuleMorphism] = None
    retraction: Optional[ModuleMorphism] = None
    original: Optional["Approximation"] = None

    def multiplicities(self) -> list[int]:
        out = [0] * len(self.generator)
        for c in self.components:
            out[c] += 1
        return out

    def is_approximation(self) -> bool:
        return _covers(self.generator, self.target, self.parts, self.components)

    def check_section(self) -> bool:
        if self.section is None or self.original is None:
            return False
        ok = self.section.then(self.original.map).equals(self.map)
        if self.retraction is not None:
            ok = ok and self.section.then(self.retraction).equals(identity(self.source))
        return ok


def _image_rows(gen: AddGenerator, k: int, comp: int, part: ModuleMorphism) -> np.ndarray:
    """Rows spanning ``part o Hom(M_k, M_comp)`` inside ``Hom(M_k, X)``."""
    f = part.field
    rows = [phi.then(part).vector() for phi in gen.hom(k, comp)]
    if not rows:
        return f.zeros((0, sum(a * b for a, b in zip(gen.summands[k].dims, part.target.dims))))
    return np.stack(rows)


def _covers(gen: AddGenerator, X: Representation, parts, comps) -> bool:
    """Is ``Hom(M_k, sum of parts)`` onto ``Hom(M_k, X)`` for every summand ``M_k``?"""
    f = X.field
    for k, Mk in enumerate(gen.summands):
        need = hom_space(Mk, X).shape[0]
        if need == 0:
            continue
        blocks = [_image_rows(gen, k, c, p) for p, c in zip(parts, comps)]
        blocks = [b for b in blocks if b.shape[0]]
        if not blocks or rank(f, np.concatenate(blocks)) < need:
            return False
    return True


def approximate(M, X: Representation, seed: int = 0) -> Approximation:
    """The universal approximation ``sum_k M_k^{h_k} -> X`` with ``h_k = dim Hom(M_k, X)``."""
    gen = M if isinstance(M, AddGenerator) else AddGenerator.from_module(M, seed)
    if gen.algebra is not X.algebra:
        raise ModuleError("M and X live over different algebras")
    parts, comps, mods = [], [], []
    for k, Mk in enumerate(gen.summands):
        for phi in hom_basis(Mk, X):
            parts.append(phi)
            comps.append(k)
            mods.append(Mk)
    return _assemble(gen, X, parts, comps, mods)


def _assemble(gen, X, parts, comps, mods, **kw) -> Approximation:
    f = X.field
    if not parts:
        S = Representation(X.algebra, [0] * len(X.dims), [f.zeros((0, 0))] * len(X.algebra.quiver.arrows), check=False)
        m = ModuleMorphism(S, X, [f.zeros((0, d)) for d in X.dims], check=False)
        return Approximation(gen, X, S, m, [], [], **kw)
    S, incs, projs = direct_sum(mods)
    full = sum_map_from(parts, S)
    app = Approximation(gen, X, S, full, list(comps), list(parts), **kw)
    app._incs, app._projs = incs, projs
    return app


def strip_order(app: Approximation) -> list[int]:
    """Descending summand dimension, ties by position."""
    return sorted(range(len(app.parts)), key=lambda c: (-app.generator.summands[app.components[c]].dim, c))


def minimize(app: Approximation, order: Optional[Sequence[int]] = None) -> Approximation:
    """Drop summand copies one at a time while the restriction stays an approximation.

    Whether a copy can be dropped is decided by re-checking surjectivity of
    ``Hom(M_k, -)`` for every generator summand ``M_k``.  The result carries
    the inclusion ``section`` with ``original.map o section == map``.
    """
    gen, X = app.generator, app.target
    f = X.field
    order = list(strip_order(app) if order is None else order)
    # per summand M_k, the image rows contributed by each copy
    rows = {
        k: [_image_rows(gen, k, app.components[c], app.parts[c]) for c in range(len(app.parts))]
        for k in range(len(gen))
    }
    need = {k: hom_space(gen.summands[k], X).shape[0] for k in range(len(gen))}

    def spans(keep: set) -> bool:
        for k in range(len(gen)):
            if need[k] == 0:
                continue
            blocks = [rows[k][c] for c in sorted(keep) if rows[k][c].shape[0]]
            if not blocks or rank(f, np.concatenate(blocks)) < need[k]:
                return False
        return True

    keep = set(range(len(app.parts)))
    if not spans(keep):
        raise ModuleError("input is not an approximation")
    for c in order:
        trial = keep - {c}
        if spans(trial):
            keep = trial
    kept = sorted(keep)
    parts = [app.parts[c] for c in kept]
    comps = [app.components[c] for c in kept]
    mods = [gen.summands[k] for k in comps]
    out = _assemble(gen, X, parts, comps, mods, minimal=True, original=app)
    if kept:
        out.section = _section(app, out, kept)
        out.retraction = _retraction(app, out, kept)
    else:
        out.section = ModuleMorphism(out.source, app.source, [f.zeros((0, d)) for d in app.source.dims], check=False)
        out.retraction = ModuleMorphism(app.source, out.source, [f.zeros((d, 0)) for d in app.source.dims], check=False)
    return out


def _section(app: Approximation, out: Approximation, kept) -> ModuleMorphism:
    f = app.target.field
    mats = []
    for v in range(len(app.target.dims)):
        blocks = [app._incs[c].mats[v] for c in kept]
        mats.append(np.concatenate(blocks, axis=0) if blocks else f.zeros((0, app.source.dims[v])))
    return ModuleMorphism(out.source, app.source, mats, check=True)


def _retraction(app: Approximation, out: Approximation, kept) -> ModuleMorphism:
    f = app.target.field
    mats = []
    for v in range(len(app.target.dims)):
        blocks = [app._projs[c].mats[v] for c in kept]
        mats.append(np.concatenate(blocks, axis=1) if blocks else f.zeros((app.source.dims[v], 0)))
    return ModuleMorphism(app.source, out.source, mats, check=True)


def minimal_approximation(M, X: Representation, seed: int = 0) -> Approximation:
    return minimize(approximate(M, X, seed))


@dataclass
class Stage:
    """One step ``0 -> kernel -> source -> target`` of a resolution."""

    approximation: Approximation
    kernel: Representation
    kernel_inclusion: ModuleMorphism

    @property
    def source(self) -> Representation:
        return self.approximation.source

    @property
    def target(self) -> Representation:
        return self.approximation.target


@dataclass
class ApproximationResolution:
    """``0 -> M_d -> ... -> M_0 -> X -> 0`` built from minimal approximations of kernels.

    ``stages[i]`` approximates ``K_i`` (with ``K_0 = X``) by ``M_i``;
    ``length`` is ``d`` or ``None`` when the cap was hit.
    """

    generator: AddGenerator
    target: Representation
    stages: list[Stage]
    cap: int
    complete: bool = True

    @property
    def length(self) -> Optional[int]:
        if not self.complete:
            return None
        return max(len(self.stages) - 1, 0)

    def length_text(self) -> str:
        return str(self.length) if self.complete else f">={self.cap}"

    @property
    def terms(self) -> list[Representation]:
        return [s.source for s in self.stages]

    def maps(self) -> list[ModuleMorphism]:
        """``f_0: M_0 -> X`` and ``f_i: M_i -> M_{i-1}``."""
        out = []
        for i, s in enumerate(self.stages):
            m = s.approximation.map
            if i > 0:
                m = m.then(self.stages[i - 1].kernel_inclusion)
            out.append(m)
        return out

    def check(self) -> None:
        """Exactness of the chain and of its image under ``Hom(M, -)``."""
        maps = self.maps()
        for i in range(1, len(maps)):
            if not maps[i].then(maps[i - 1]).is_zero():
                raise ModuleError(f"f_{i - 1} o f_{i} is not zero")
        for i, s in enumerate(self.stages):
            r = sum(maps[i].ranks())
            kdim = s.source.dim - r
            nxt = sum(maps[i + 1].ranks()) if i + 1 < len(maps) else 0
            if kdim != nxt:
                raise ModuleError(f"chain not exact at term {i}")
            if not s.approximation.is_approximation():
                raise ModuleError(f"stage {i} is not an approximation")
        if self.stages and sum(maps[0].ranks()) != self.target.dim:
            raise ModuleError("f_0 is not surjective")


def resolve(M, X: Representation, cap: int = DEFAULT_CAP, seed: int = 0, check_generator: bool = True) -> ApproximationResolution:
    """Right minimal add-M approximation resolution of ``X``."""
    gen = M if isinstance(M, AddGenerator) else AddGenerator.from_module(M, seed)
    if check_generator:
        gen.check_generator_cogenerator()
    stages: list[Stage] = []
    K = X
    complete = True
    while K.dim:
        if len(stages) > cap:
            complete = False
            break
        app = minimize(approximate(gen, K))
        sp = morphism_spaces(app.map)
        if sp.image.dim != K.dim:
            raise ModuleError("minimal approximation is not surjective (M does not generate X)")
        stages.append(Stage(app, sp.kernel, sp.kernel_inclusion))
        K = sp.kernel
    return ApproximationResolution(gen, X, stages, cap, complete)


@dataclass
class BoundReport:
    value: Optional[int]  # gldim End(M); None when undefined or above the cap
    text: str
    resolution_max: Optional[int] = None  # max resolution length + 2 where cross-checked
    per_module: list = dc_field(default_factory=list)


def repdim_bound(A, M, cap: int = DEFAULT_CAP, seed: int = 0, modules: Optional[Sequence[Representation]] = None) -> BoundReport:
    """``gldim End(M)``, an upper bound for the representation dimension of ``A``.

    When ``modules`` lists indecomposables, the maximum of their minimal
    resolution lengths plus two is computed alongside.
    """
    from .endoalg import endomorphism_algebra, global_dimension

    if len(A.quiver.arrows) == 0 or A.dim == A.quiver.num_vertices:
        return BoundReport(None, "undefined")
    gen = M if isinstance(M, AddGenerator) else AddGenerator.from_module(M, seed)
    gen.check_generator_cogenerator()
    E = endomorphism_algebra(generator=gen)
    rep = global_dimension(E, cap)
    out = BoundReport(rep.value, rep.text)
    if modules is not None:
        lens = []
        for X in modules:
            res = resolve(gen, X, cap, seed, check_generator=False)
            lens.append(res.length)
            out.per_module.append(res.length_text())
        if all(v is not None for v in lens):
            out.resolution_max = max(lens) + 2 if lens else 2
    return out


def length_of_source(app: Approximation) -> int:
    return length(app.source)


# ---------------------------------------------------------------------------
# global dimension of End(M) through sink maps in add M

INFINITE = "inf"


def radical_maps(gen: AddGenerator, j: int, k: int) -> list[ModuleMorphism]:
    """A basis of the radical maps ``M_j -> M_k`` (all maps when ``j != k``)."""
    basis = gen.hom(j, k)
    if j != k or not basis:
        return list(basis)
    f = gen.algebra.field
    rad = matalg.radical(f, [g.full_matrix() for g in basis])
    out = []
    for row in rad:
        m = None
        for c, g in zip(row, basis):
            if c:
                m = g.scale(c) if m is None else m + g.scale(c)
        if m is not None:
            out.append(m)
    return out


@dataclass
class SinkMap:
    """Minimal right almost split map ``source -> M_k`` inside add M, with its kernel."""

    index: int
    source: Representation
    map: ModuleMorphism
    components: list
    kernel: Representation
    kernel_inclusion: ModuleMorphism


def sink_map(gen: AddGenerator, k: int) -> SinkMap:
    """Right minimal map onto the radical of ``Hom(M, M_k)``.

    All radical maps ``M_j -> M_k`` form the universal candidate; copies are
    dropped greedily while ``Hom(M_l, -)`` still reaches every radical map
    ``M_l -> M_k``.
    """
    f = gen.algebra.field
    Mk = gen.summands[k]
    parts, comps = [], []
    for j in range(len(gen)):
        for g in radical_maps(gen, j, k):
            parts.append(g)
            comps.append(j)
    need = {}
    for l in range(len(gen)):
        rm = radical_maps(gen, l, k)
        need[l] = rank(f, np.stack([g.vector() for g in rm])) if rm else 0
    rows = {l: [_image_rows(gen, l, comps[c], parts[c]) for c in range(len(parts))] for l in range(len(gen))}

    def spans(keep) -> bool:
        for l in range(len(gen)):
            if need[l] == 0:
                continue
            blocks = [rows[l][c] for c in sorted(keep) if rows[l][c].shape[0]]
            if not blocks or rank(f, np.concatenate(blocks)) < need[l]:
                return False
        return True

    keep = set(range(len(parts)))
    order = sorted(range(len(parts)), key=lambda c: (-gen.summands[comps[c]].dim, c))
    for c in order:
        if spans(keep - {c}):
            keep = keep - {c}
    kept = sorted(keep)
    app = _assemble(gen, Mk, [parts[c] for c in kept], [comps[c] for c in kept],
                    [gen.summands[comps[c]] for c in kept])
    sp = morphism_spaces(app.map)
    return SinkMap(k, app.source, app.map, app.components, sp.kernel, sp.kernel_inclusion)


class _ResolutionLengths:
    """Minimal add-M resolution lengths of indecomposables, memoised up to isomorphism.

    An indecomposable met again while its own resolution is still being
    computed has infinite resolution length: it is a summand of one of its
    own kernels, so a finite length would have to be strictly smaller than
    itself.
    """

    def __init__(self, gen: AddGenerator, cap: int, seed: int = 0):
        self.gen = gen
        self.cap = cap
        self.seed = seed
        self.reps: list = []
        self.values: list = []  # int, INFINITE, None (capped) or "pending"

    def _lookup(self, Z: Representation) -> Optional[int]:
        for i, R in enumerate(self.reps):
            if R.dims == Z.dims and find_isomorphism_indecomposable(Z, R) is not None:
                return i
        return None

    def of_module(self, K: Representation, depth: int = 0):
        """``max`` over the indecomposable summands of ``K``."""
        if K.dim == 0:
            return 0
        best = 0
        for Z, _ in decompose(K, self.seed).summands:
            v = self.of_indecomposable(Z, depth)
            if v == INFINITE:
                return INFINITE
            if v is None:
                best = None
            elif best is not None:
                best = max(best, v)
        return best

    def of_indecomposable(self, Z: Representation, depth: int = 0):
        i = self._lookup(Z)
        if i is not None:
            v = self.values[i]
            return INFINITE if v == "pending" else v
        if self.gen.index_of(Z) is not None:
            self.reps.append(Z)
            self.values.append(0)
            return 0
        if depth >= self.cap:
            return None
        self.reps.append(Z)
        self.values.append("pending")
        i = len(self.reps) - 1
        app = minimize(approximate(self.gen, Z))
        sp = morphism_spaces(app.map)
        if sp.image.dim != Z.dim:
            raise ModuleError("minimal approximation is not surjective (M does not generate X)")
        sub = self.of_module(sp.kernel, depth + 1)
        if sub == INFINITE:
            val = INFINITE
        elif sub is None:
            val = None
        else:
            val = sub + 1
        # a capped value is not final: forget it so a shallower visit can retry
        if val is None:
            self.reps.pop(i)
            self.values.pop(i)
        else:
            self.values[i] = val
        return val


@dataclass
class SinkGldimReport:
    """``gldim End(M)`` from sink maps; ``value`` is None when infinite or capped."""

    value: Optional[int]
    cap: int
    infinite: bool
    per_simple: list  # int, "inf" or None

    @property
    def text(self) -> str:
        if self.value is not None:
            return str(self.value)
        return INFINITE if self.infinite else f">={self.cap + 1}"

    def per_simple_text(self) -> list[str]:
        return [str(v) if v is not None else f">={self.cap + 1}" for v in self.per_simple]


def endomorphism_gldim(gen: AddGenerator, cap: int = DEFAULT_CAP, seed: int = 0, early_exit: bool = False) -> SinkGldimReport:
    """Global dimension of End(M) for a generator-cogenerator ``M``.

    The simple End(M)-module at ``M_k`` has projective dimension 0 when no
    radical maps end in ``M_k``, 1 when the sink map is injective, and
    otherwise 2 plus the add-M resolution length of the sink map's kernel.
    """
    lengths = _ResolutionLengths(gen, max(cap - 2, 0), seed)
    per = []
    for k in range(len(gen)):
        sm = sink_map(gen, k)
        if not sm.components:
            pd = 0
        elif sm.kernel.dim == 0:
            pd = 1
        else:
            r = lengths.of_module(sm.kernel)
            pd = r if r in (None, INFINITE) else 2 + r
            if pd is not None and pd != INFINITE and pd > cap:
                pd = None
        per.append(pd)
        if early_exit and (pd is None or pd == INFINITE):
            break
    infinite = any(p == INFINITE for p in per)
    capped = any(p is None for p in per)
    value = None if infinite or capped else max(per)
    return SinkGldimReport(value, cap, infinite, per)
