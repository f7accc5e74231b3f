"""Transfer between socle-equivalent selfinjective algebras.

Two algebras ``A`` and ``B`` on one quiver are identified through an algebra
isomorphism ``A/soc A -> B/soc B``.  Modules annihilated by the socles are
then modules over both algebras, and for every vertex the projectives
``P_i`` and ``P'_i`` share radical, socle and top quotient.  That data lets
exact sequences, minimal approximations, resolutions and generators move
from ``mod A`` to ``mod B``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

import numpy as np

from .approx import (
    AddGenerator,
    Approximation,
    ApproximationResolution,
    Stage,
    approximate,
    endomorphism_gldim,
    minimize,
)
from .endoalg import DEFAULT_CAP, endomorphism_algebra, global_dimension
from .exactlin import inverse, kernel_basis, rank, solve
from .pathalg import (
    AlgebraError,
    BoundQuiverAlgebra,
    algebra_socle,
    check_algebra_map,
    identity_on_paths,
    is_selfinjective,
    projective_module,
    quotient_algebra,
)
from .repmod import (
    EXHAUSTIVE_LIMIT,
    ModuleError,
    ModuleMorphism,
    Representation,
    annihilated_by,
    direct_sum,
    hom_basis,
    length,
    module_radical,
    module_socle,
    find_isomorphism,
    is_isomorphic,
    morphism_spaces,
    projective_cover,
    quotient,
    reinterpret,
    zero_module,
)


class NotSocleEquivalent(AlgebraError):
    pass


@dataclass
class ProjectivePair:
    """Witness data for ``P_i`` over ``A`` and ``P'_i`` over ``B``.

    ``rad``/``top`` are ``rad P_i`` and ``P_i/soc P_i`` over ``A`` with the
    canonical ``j: rad -> P`` and ``p: P -> top``; primed fields are the same
    over ``B``.  ``rad_b``/``top_b`` reinterpret ``rad``/``top`` over ``B``;
    ``phi: rad_b -> rad'`` and ``psi: top_b -> top'`` are isomorphisms with
    ``p' o j' o phi == psi o p o j`` whenever ``compatible`` is set.  When no
    such pair exists ``phi`` and ``psi`` are unrelated isomorphisms.
    """

    vertex: int
    P: Representation
    rad: Representation
    j: ModuleMorphism
    top: Representation
    p: ModuleMorphism
    P2: Representation
    rad2: Representation
    j2: ModuleMorphism
    top2: Representation
    p2: ModuleMorphism
    rad_b: Representation
    top_b: Representation
    phi: ModuleMorphism
    psi: ModuleMorphism
    psi_inv: ModuleMorphism
    compatible: bool = True

    def compatibility_holds(self) -> bool:
        """``p' o j' o phi == psi o p o j`` at every vertex."""
        f = self.P.field
        lhs = self.phi.then(self.j2).then(self.p2)
        for v, m in enumerate(lhs.mats):
            rhs = f.matmul(f.matmul(self.j.mats[v], self.p.mats[v]), self.psi.mats[v])
            if not np.array_equal(m, rhs):
                return False
        return True


@dataclass
class SocleIdentification:
    algebra_a: BoundQuiverAlgebra
    algebra_b: BoundQuiverAlgebra
    soc_a: object
    soc_b: object
    quot_a: BoundQuiverAlgebra
    quot_b: BoundQuiverAlgebra
    proj_a: np.ndarray
    proj_b: np.ndarray
    iso: np.ndarray  # rows: images of the basis of quot_a in the basis of quot_b
    pairs: list = dc_field(default_factory=list)
    iso_label: str = "identity-on-monomials"

    def socle_of(self, algebra) -> object:
        if algebra is self.algebra_a:
            return self.soc_a
        if algebra is self.algebra_b:
            return self.soc_b
        raise ModuleError("algebra is not part of this identification")

    def arrow_preimages(self, source_algebra) -> list[np.ndarray]:
        """For each arrow of the partner algebra, an element of ``source_algebra`` acting like it."""
        f = source_algebra.field
        if source_algebra is self.algebra_a:
            partner_arrows = f.matmul(self.algebra_b.arrow_elems, self.proj_b)
            in_src = f.matmul(partner_arrows, self._iso_inv)
            return [self._lift(self.algebra_a, self.quot_a, row) for row in in_src]
        if source_algebra is self.algebra_b:
            partner_arrows = f.matmul(self.algebra_a.arrow_elems, self.proj_a)
            in_src = f.matmul(partner_arrows, self.iso)
            return [self._lift(self.algebra_b, self.quot_b, row) for row in in_src]
        raise ModuleError("algebra is not part of this identification")

    @staticmethod
    def _lift(A: BoundQuiverAlgebra, Q: BoundQuiverAlgebra, row: np.ndarray) -> np.ndarray:
        out = A.zero()
        for k, path in enumerate(Q.basis):
            out[A.basis_index(path)] = row[k]
        return out

    def to_b(self, X: Representation) -> Representation:
        """An ``A``-module annihilated by ``soc A`` as a ``B``-module."""
        return reinterpret(X, self.algebra_b, self)

    def to_a(self, X: Representation) -> Representation:
        return reinterpret(X, self.algebra_a, self)

    def pair(self, i: int) -> ProjectivePair:
        return self.pairs[i]

    def swapped(self) -> "SocleIdentification":
        """The same identification read from ``B`` to ``A``."""
        f = self.algebra_a.field
        out = SocleIdentification(
            self.algebra_b, self.algebra_a, self.soc_b, self.soc_a, self.quot_b, self.quot_a,
            self.proj_b, self.proj_a, self._iso_inv, iso_label=self.iso_label,
        )
        out._iso_inv = self.iso
        out.pairs = [_build_pair(out, i) for i in range(self.algebra_a.quiver.num_vertices)]
        return out


def _iso_from_candidate(A, B, QA, QB, candidate) -> np.ndarray:
    f = A.field
    if isinstance(candidate, str):
        if candidate != "identity":
            raise ValueError(f"unknown identification {candidate!r}")
        return identity_on_paths(QA, QB)
    m = f.array(candidate) if not isinstance(candidate, np.ndarray) else candidate
    if m.shape != (QA.dim, QB.dim):
        raise ValueError(f"identification matrix must be {QA.dim} x {QB.dim}")
    return m


def _map_between_cyclic(X: Representation, Y: Representation, vertex: int, gx: np.ndarray, gy: np.ndarray) -> Optional[ModuleMorphism]:
    """The morphism ``X -> Y`` sending the generator ``gx`` of ``X`` (at ``vertex``) to ``gy``."""
    f = X.field
    basis = hom_basis(X, Y)
    if not basis:
        return None
    imgs = np.stack([f.matmul(gx.reshape(1, -1), h.mats[vertex])[0] for h in basis])
    c = solve(f, imgs, gy)
    if c is None:
        return None
    out = basis[0].scale(c[0])
    for k in range(1, len(basis)):
        if c[k]:
            out = out + basis[k].scale(c[k])
    return out


def _build_pair(ident: SocleIdentification, i: int) -> ProjectivePair:
    A, B = ident.algebra_a, ident.algebra_b
    f = A.field
    P, P2 = projective_module(A, i), projective_module(B, i)
    rad, j = module_radical(P)
    rad2, j2 = module_radical(P2)
    _, sinc = module_socle(P)
    _, sinc2 = module_socle(P2)
    top, p = quotient(P, list(sinc.mats))
    top2, p2 = quotient(P2, list(sinc2.mats))
    for name, X in (("rad P", rad), ("P/soc P", top)):
        if not annihilated_by(X, ident.soc_a):
            raise NotSocleEquivalent(f"{name} at vertex {i} is not annihilated by soc A")
    rad_b = reinterpret(rad, B, ident)
    top_b = reinterpret(top, B, ident)
    found = _solve_compatible(rad_b, rad2, top_b, top2, j, p, j2, p2)
    compatible = found is not None
    if found is None:
        # no compatible pair: fall back to independent isomorphisms
        gen = p.mats[i][_idempotent_position(A, i)]
        gen2 = p2.mats[i][_idempotent_position(B, i)]
        psi = _map_between_cyclic(top_b, top2, i, gen, gen2)
        phi = find_isomorphism(rad_b, rad2)
        if psi is None or not psi.is_isomorphism() or phi is None:
            raise NotSocleEquivalent("not socle equivalent as presented")
    else:
        phi, psi = found
    psi_inv = ModuleMorphism(top2, top_b, [inverse(f, m) if m.size else m.T.copy() for m in psi.mats], check=True)
    return ProjectivePair(i, P, rad, j, top, p, P2, rad2, j2, top2, p2, rad_b, top_b, phi, psi, psi_inv, compatible)


def _correct_general(fld, seq, Yb, Nb, Xb, d, w, tries: int = 64):
    """Wider search when ``_correct`` fails: ``g' = h' o j'`` with ``h'`` any map into ``rad P'``.

    For each automorphism ``a`` of ``P/soc P`` (read over ``B``) the equation
    ``f sigma u + h' j' p' psi^-1 a w = 0`` is linear in ``(sigma, h')``;
    candidates with ``sigma`` invertible are assembled and kept when exact.
    Returns the sequence or ``None``.
    """
    bs = hom_basis(Nb, Nb)
    bh = hom_basis(Yb, d["R2"])
    ba = hom_basis(d["Tb"], d["Tb"])
    if not bh or not ba:
        return None
    jp = [fld.matmul(a, b) for a, b in zip(d["j2"].mats, d["p2"].mats)]
    rows_s = [_composite_vector(fld, seq.f.mats, sg.mats, seq.u.mats) for sg in bs]
    ns = len(bs)
    zero_n = ModuleMorphism(Nb, Nb, [fld.zeros((e, e)) for e in Nb.dims], check=False)
    auts = (a for a in (_combine(ba, c) for c in _candidates(fld, fld.eye(len(ba)), tries)) if a.is_isomorphism())
    for alpha in auts:
        tail = [fld.matmul(fld.matmul(a, b), c) for a, b, c in zip(d["psi_inv"].mats, alpha.mats, w.mats)]
        rows = rows_s + [_composite_vector(fld, g.mats, jp, tail) for g in bh]
        ker = kernel_basis(fld, np.stack(rows))
        for c in itertools.islice(_candidates(fld, ker, tries), 4 * tries) if ker.shape[0] else ():
            sigma = _combine(bs, c[:ns]) if ns else zero_n
            if not sigma.is_isomorphism():
                continue
            hp = _combine(bh, c[ns:])
            v2 = [fld.matmul(a, b) for a, b in zip(d["p2"].mats, tail)]
            try:
                out = ShortExactSequence(
                    Yb, Nb, d["P2"], Xb,
                    ModuleMorphism(Yb, Nb, [fld.matmul(a, b) for a, b in zip(seq.f.mats, sigma.mats)], check=True),
                    ModuleMorphism(Yb, d["P2"], [fld.matmul(a, b) for a, b in zip(hp.mats, d["j2"].mats)], check=True),
                    ModuleMorphism(Nb, Xb, seq.u.mats, check=True),
                    ModuleMorphism(d["P2"], Xb, v2, check=True),
                    list(seq.proj_vertices),
                )
            except ModuleError:
                continue
            if out.is_exact():
                return out
    return None


def _idempotent_position(A: BoundQuiverAlgebra, i: int) -> int:
    """Row of ``e_i`` in the vertex-``i`` space of ``P_i``."""
    idx = [k for k in range(A.dim) if A.sources[k] == i and A.targets[k] == i]
    return idx.index(A.basis_index((i, ())))


def _candidates(f, ker: np.ndarray, tries: int = 64):
    """Vectors in the row span of ``ker``: all of them when few, else basis rows and seeded samples."""
    k = ker.shape[0]
    if f.is_prime and f.p ** k <= EXHAUSTIVE_LIMIT:
        for coeffs in itertools.product(range(f.p), repeat=k):
            if any(coeffs):
                yield f.matmul(f.array([coeffs]), ker)[0]
        return
    yield from ker
    rng = np.random.default_rng(0)
    for _ in range(tries):
        yield f.matmul(f.random(rng, (1, k)), ker)[0]


def _combine(basis: list, c: np.ndarray) -> ModuleMorphism:
    out = basis[0].scale(c[0])
    for k in range(1, len(basis)):
        if c[k]:
            out = out + basis[k].scale(c[k])
    return out


def _solve_compatible(rad_b, rad2, top_b, top2, j, p, j2, p2, tries: int = 64):
    """Invertible ``phi: rad_b -> rad2`` and ``psi: top_b -> top2`` with ``p2 j2 phi == psi p j``.

    Both unknowns enter linearly, so the solutions form the kernel of one
    matrix; the kernel basis is tried first, then seeded random combinations.
    """
    f = rad_b.field
    bphi = hom_basis(rad_b, rad2)
    bpsi = hom_basis(top_b, top2)
    if not bpsi or (not bphi and (rad_b.dim or rad2.dim)):
        return None
    rows = []
    for g in bphi:
        rows.append(np.concatenate([f.matmul(f.matmul(g.mats[v], j2.mats[v]), p2.mats[v]).reshape(-1)
                                    for v in range(len(rad_b.dims))]))
    for s in bpsi:
        rows.append(np.concatenate([f.reduce(-f.matmul(f.matmul(j.mats[v], p.mats[v]), s.mats[v])).reshape(-1)
                                    for v in range(len(rad_b.dims))]))
    ker = kernel_basis(f, np.stack(rows))
    if ker.shape[0] == 0:
        return None
    n = len(bphi)
    zero_phi = ModuleMorphism(rad_b, rad2, [f.zeros((d, e)) for d, e in zip(rad_b.dims, rad2.dims)], check=False)
    for c in _candidates(f, ker, tries):
        phi = _combine(bphi, c[:n]) if n else zero_phi
        psi = _combine(bpsi, c[n:])
        if phi.is_isomorphism() and psi.is_isomorphism():
            return phi, psi
    return None


def verify_identification(A: BoundQuiverAlgebra, B: BoundQuiverAlgebra, candidate="identity") -> SocleIdentification:
    """Check ``candidate: A/soc A -> B/soc B`` and build the projective correspondence."""
    if A.quiver != B.quiver:
        raise NotSocleEquivalent("algebras have different quivers")
    if A.field != B.field:
        raise NotSocleEquivalent("algebras have different fields")
    f = A.field
    soc_a, soc_b = algebra_socle(A), algebra_socle(B)
    QA, proj_a = quotient_algebra(A, soc_a)
    QB, proj_b = quotient_algebra(B, soc_b)
    if QA.dim != QB.dim:
        raise NotSocleEquivalent(f"quotients have dimensions {QA.dim} and {QB.dim}")
    iso = _iso_from_candidate(A, B, QA, QB, candidate)
    if rank(f, iso) != QA.dim:
        raise NotSocleEquivalent("identification is not invertible")
    bad = check_algebra_map(QA, QB, iso)
    if bad is not None:
        names = QA.basis_names()
        raise NotSocleEquivalent(f"identification not multiplicative on ({names[bad[0]]}, {names[bad[1]]})")
    if not np.array_equal(f.matmul(QA.one().reshape(1, -1), iso)[0], QB.one()):
        raise NotSocleEquivalent("identification is not unital")
    if not np.array_equal(f.matmul(QA.vertex_elems, iso), QB.vertex_elems):
        raise NotSocleEquivalent("identification does not fix the vertex idempotents")
    ident = SocleIdentification(
        A, B, soc_a, soc_b, QA, QB, proj_a, proj_b, iso,
        iso_label="identity-on-monomials" if isinstance(candidate, str) else "explicit",
    )
    ident._iso_inv = inverse(f, iso)
    ident.pairs = [_build_pair(ident, i) for i in range(A.quiver.num_vertices)]
    return ident


@dataclass
class LemmaChecks:
    """Per-vertex comparison of ``P_i`` over ``A`` with ``P'_i`` over ``B``."""

    vertex: int
    rad_iso: bool
    top_iso: bool
    soc_match: bool
    length_equal: bool
    compatibility: bool

    @property
    def ok(self) -> bool:
        return self.rad_iso and self.top_iso and self.soc_match and self.length_equal and self.compatibility


def _socle_inside_radical(P: Representation, j: ModuleMorphism) -> bool:
    """``soc P`` is contained in ``rad P`` (and so equals ``soc rad P``)."""
    f = P.field
    S, si = module_socle(P)
    for v in range(len(P.dims)):
        if S.dims[v] == 0:
            continue
        if j.mats[v].shape[0] == 0:
            return False
        both = np.concatenate([j.mats[v], si.mats[v]])
        if rank(f, both) != rank(f, j.mats[v]):
            return False
    return True


def lemma_checks(ident: SocleIdentification) -> list[LemmaChecks]:
    f = ident.algebra_a.field
    out = []
    for pr in ident.pairs:
        # phi must carry soc(rad P) onto soc(rad P')
        _, si = module_socle(pr.rad_b)
        _, si2 = module_socle(pr.rad2)
        soc_ok = True
        for v in range(len(pr.P.dims)):
            img = f.matmul(si.mats[v], pr.phi.mats[v]) if si.mats[v].shape[0] else si.mats[v]
            if img.shape[0] != si2.mats[v].shape[0]:
                soc_ok = False
            elif img.shape[0] and rank(f, np.concatenate([img, si2.mats[v]])) != img.shape[0]:
                soc_ok = False
        soc_ok = soc_ok and _socle_inside_radical(pr.P, pr.j) and _socle_inside_radical(pr.P2, pr.j2)
        out.append(LemmaChecks(
            pr.vertex,
            pr.phi.commutes() and pr.phi.is_isomorphism(),
            pr.psi.commutes() and pr.psi.is_isomorphism(),
            soc_ok,
            length(pr.P) == length(pr.P2),
            pr.compatibility_holds(),
        ))
    return out


# ---------------------------------------------------------------------------
# almost split sequences of projectives


@dataclass
class ShortExactSequence:
    """``0 -> Y --(f, g)--> N0 + P --(u, v)--> X -> 0`` with ``P`` a sum of ``P_i``.

    ``proj_vertices`` lists the vertices of the indecomposable projective
    summands of ``P`` in order.
    """

    Y: Representation
    N0: Representation
    P: Representation
    X: Representation
    f: ModuleMorphism
    g: ModuleMorphism
    u: ModuleMorphism
    v: ModuleMorphism
    proj_vertices: list

    def middle(self) -> tuple[Representation, ModuleMorphism, ModuleMorphism]:
        """``N0 + P`` with the maps ``(f, g)`` and ``(u, v)``."""
        fld = self.Y.field
        mid = direct_sum([self.N0, self.P])[0]
        left = [np.concatenate([a, b], axis=1) for a, b in zip(self.f.mats, self.g.mats)]
        right = [np.concatenate([a, b], axis=0) for a, b in zip(self.u.mats, self.v.mats)]
        return mid, ModuleMorphism(self.Y, mid, left, check=False), ModuleMorphism(mid, self.X, right, check=False)

    def is_exact(self) -> bool:
        """Injective, surjective, zero composite and matching dimensions."""
        fld = self.Y.field
        mid, left, right = self.middle()
        if not (left.commutes() and right.commutes()):
            return False
        if not left.then(right).is_zero():
            return False
        return (
            left.is_injective()
            and right.is_surjective()
            and self.Y.dim + self.X.dim == mid.dim
        )


def ar_sequence_of_projective(ident: SocleIdentification, i: int, check_selfinjective: bool = True):
    """``0 -> rad P -> P + rad P/soc P -> P/soc P -> 0`` over ``A`` and over ``B``.

    Both sequences share their end terms (``rad P`` and ``P/soc P`` read over
    ``B``).  Raises if either sequence splits.
    """
    if check_selfinjective:
        for alg in (ident.algebra_a, ident.algebra_b):
            if is_selfinjective(alg) is None:
                raise AlgebraError(f"{alg.name or 'algebra'} is not selfinjective")
    pr = ident.pairs[i]
    f = ident.algebra_a.field
    # A side
    seq_a = _ar_sequence(pr.P, pr.rad, pr.j, pr.top, pr.p, [i])
    # B side built natively, then transported to the shared end terms via phi and psi
    Qr2, q2 = _rad_mod_soc(pr.rad2)
    iota2 = _induced(Qr2, q2, pr.rad2, pr.top2, pr.j2, pr.p2)
    seq_b = ShortExactSequence(
        pr.rad_b, Qr2, pr.P2, pr.top_b,
        pr.phi.then(q2), pr.phi.then(pr.j2), iota2.scale(-1).then(pr.psi_inv), pr.p2.then(pr.psi_inv), [i],
    )
    if not is_isomorphic(ident.to_b(seq_a.N0), Qr2):
        raise ModuleError("middle terms of the two almost split sequences differ")
    for name, s in (("A", seq_a), ("B", seq_b)):
        if not s.is_exact():
            raise ModuleError(f"almost split sequence over {name} is not exact")
        if _splits(s):
            raise ModuleError(f"almost split sequence over {name} splits")
    return seq_a, seq_b


def _rad_mod_soc(R: Representation):
    _, sinc = module_socle(R)
    return quotient(R, list(sinc.mats))


def _induced(Qr, q, R, Q, j, p) -> ModuleMorphism:
    """``rad P/soc P -> P/soc P`` induced by ``p o j`` through ``q``."""
    fld = R.field
    mats = []
    for v in range(len(R.dims)):
        pj = fld.matmul(j.mats[v], p.mats[v])
        if Qr.dims[v] == 0:
            mats.append(fld.zeros((0, Q.dims[v])))
            continue
        # q is surjective: find x with q x = pj
        x = solve(fld, q.mats[v].T.copy(), pj.T.copy())
        mats.append(x.T.copy())
    return ModuleMorphism(Qr, Q, mats, check=True)


def _ar_sequence(P, rad, j, top, p, verts) -> ShortExactSequence:
    Qr, q = _rad_mod_soc(rad)
    iota = _induced(Qr, q, rad, top, j, p)
    return ShortExactSequence(rad, Qr, P, top, q, j, iota.scale(-1), p, verts)


def _splits(seq: ShortExactSequence) -> bool:
    """Does the right-hand map admit a section?"""
    fld = seq.Y.field
    mid, _, right = seq.middle()
    basis = hom_basis(seq.X, mid)
    if not basis:
        return seq.X.dim == 0
    imgs = np.stack([b.then(right).vector() for b in basis])
    target = np.concatenate([fld.eye(d).reshape(-1) for d in seq.X.dims])
    return solve(fld, imgs, target) is not None


# ---------------------------------------------------------------------------
# transfer of sequences, approximations, resolutions and generators


@dataclass
class TransferredSequence:
    """A sequence over ``A`` and its image over ``B``.

    ``h: Y -> rad P`` and ``w: P/soc P -> X`` factor ``g = j o h`` and
    ``v = w o p``.  The transferred maps are ``g' = j' o phi o h`` and
    ``v' = w o psi^-1 o p'``.  When the fixed projective pairs are not
    compatible, ``phi`` is re-solved for this sequence together with an
    automorphism ``sigma`` of ``N0`` replacing ``f`` by ``sigma o f``;
    ``corrected`` records that this happened.  ``method`` is ``"direct"``,
    ``"corrected"`` or ``"general"`` (``g'`` through an arbitrary map into
    ``rad P'`` and ``v'`` twisted by an automorphism of ``P/soc P``).
    """

    original: ShortExactSequence
    transferred: ShortExactSequence
    h: Optional[ModuleMorphism]
    w: Optional[ModuleMorphism]
    phi: Optional[ModuleMorphism] = None
    sigma: Optional[ModuleMorphism] = None
    corrected: bool = False
    method: str = "direct"

    def factorizations_hold(self) -> bool:
        """``g == j o h`` and ``v == w o p`` over ``A``."""
        if self.h is None:
            return True
        seq = self.original
        f = seq.Y.field
        for v in range(len(seq.Y.dims)):
            j = self._j.mats[v]
            p = self._p.mats[v]
            if not np.array_equal(f.matmul(self.h.mats[v], j), seq.g.mats[v]):
                return False
            if not np.array_equal(f.matmul(p, self.w.mats[v]), seq.v.mats[v]):
                return False
        return True


def _sum_pair_data(ident: SocleIdentification, verts: Sequence[int]):
    """Direct sums of the per-vertex witness data for ``P = sum P_i``."""
    from .repmod import ModuleMorphism as MM

    prs = [ident.pairs[i] for i in verts]
    f = ident.algebra_a.field

    def dsum(mods):
        return direct_sum(mods)[0]

    def bdiag(maps, src, tgt):
        mats = []
        for v in range(len(src.dims)):
            m = f.zeros((src.dims[v], tgt.dims[v]))
            r = c = 0
            for g in maps:
                m[r:r + g.mats[v].shape[0], c:c + g.mats[v].shape[1]] = g.mats[v]
                r += g.mats[v].shape[0]
                c += g.mats[v].shape[1]
            mats.append(m)
        return MM(src, tgt, mats, check=False)

    P, R, T = dsum([p.P for p in prs]), dsum([p.rad for p in prs]), dsum([p.top for p in prs])
    P2, R2, T2 = dsum([p.P2 for p in prs]), dsum([p.rad2 for p in prs]), dsum([p.top2 for p in prs])
    Rb, Tb = dsum([p.rad_b for p in prs]), dsum([p.top_b for p in prs])
    return dict(
        P=P, R=R, T=T, P2=P2, R2=R2, T2=T2, Rb=Rb, Tb=Tb,
        j=bdiag([p.j for p in prs], R, P), p=bdiag([p.p for p in prs], P, T),
        j2=bdiag([p.j2 for p in prs], R2, P2), p2=bdiag([p.p2 for p in prs], P2, T2),
        phi=bdiag([p.phi for p in prs], Rb, R2), psi_inv=bdiag([p.psi_inv for p in prs], T2, Tb),
    )


def _factor(fld, seq: ShortExactSequence, d: dict):
    """``h`` with ``g = j o h`` and ``w`` with ``v = w o p``."""
    hm, wm = [], []
    for v in range(len(seq.Y.dims)):
        # row convention: g_v = h_v @ j_v and v_v = p_v @ w_v
        if seq.Y.dims[v] == 0 or d["R"].dims[v] == 0:
            if not fld.is_zero(seq.g.mats[v]):
                raise ModuleError("g does not factor through rad P")
            hm.append(fld.zeros((seq.Y.dims[v], d["R"].dims[v])))
        else:
            h = solve(fld, d["j"].mats[v], seq.g.mats[v])
            if h is None:
                raise ModuleError("g does not factor through rad P")
            hm.append(h)
        if d["T"].dims[v] == 0 or seq.X.dims[v] == 0:
            if not fld.is_zero(seq.v.mats[v]):
                raise ModuleError("v does not factor through P/soc P")
            wm.append(fld.zeros((d["T"].dims[v], seq.X.dims[v])))
        else:
            wt = solve(fld, d["p"].mats[v].T.copy(), seq.v.mats[v].T.copy())
            if wt is None:
                raise ModuleError("v does not factor through P/soc P")
            wm.append(wt.T.copy())
    return ModuleMorphism(seq.Y, d["R"], hm, check=True), ModuleMorphism(d["T"], seq.X, wm, check=True)


def _composite_vector(fld, a_mats, b_mats, c_mats):
    return np.concatenate([fld.matmul(fld.matmul(a, b), c).reshape(-1) for a, b, c in zip(a_mats, b_mats, c_mats)])


def _correct(fld, seq, Nb, d, h, w, tries: int = 64):
    """Invertible ``sigma`` in End(N0) and ``phi: rad P -> rad P'`` with ``f sigma u + h phi k w = 0``.

    Here ``k = j' o p' o psi^-1``; the equation is linear in ``(sigma, phi)``.
    """
    bs = hom_basis(Nb, Nb)
    bp = hom_basis(d["Rb"], d["R2"])
    k = [fld.matmul(fld.matmul(a, b), c) for a, b, c in zip(d["j2"].mats, d["p2"].mats, d["psi_inv"].mats)]
    rows = [_composite_vector(fld, seq.f.mats, s.mats, seq.u.mats) for s in bs]
    rows += [_composite_vector(fld, h.mats, g.mats, [fld.matmul(a, b) for a, b in zip(k, w.mats)]) for g in bp]
    if not rows or not bp:
        return None
    ker = kernel_basis(fld, np.stack(rows))
    if ker.shape[0] == 0:
        return None
    ns = len(bs)
    zero_n = ModuleMorphism(Nb, Nb, [fld.zeros((e, e)) for e in Nb.dims], check=False)
    for c in _candidates(fld, ker, tries):
        sigma = _combine(bs, c[:ns]) if ns else zero_n
        phi = _combine(bp, c[ns:])
        if sigma.is_isomorphism() and phi.is_isomorphism():
            return sigma, phi
    return None


def transfer_sequence(ident: SocleIdentification, seq: ShortExactSequence, check: bool = True) -> TransferredSequence:
    """Move ``0 -> Y -> N0 + P -> X -> 0`` from ``mod A`` to ``mod B``."""
    A, B = ident.algebra_a, ident.algebra_b
    fld = A.field
    for name, X in (("Y", seq.Y), ("N0", seq.N0), ("X", seq.X)):
        if not annihilated_by(X, ident.soc_a):
            raise ModuleError(f"{name} has a projective direct summand")
    if check and not seq.is_exact():
        raise ModuleError("input sequence is not exact")
    Yb, Nb, Xb = ident.to_b(seq.Y), ident.to_b(seq.N0), ident.to_b(seq.X)
    if not seq.proj_vertices:
        P2 = zero_module(B)
        out = ShortExactSequence(
            Yb, Nb, P2, Xb,
            ModuleMorphism(Yb, Nb, seq.f.mats),
            ModuleMorphism(Yb, P2, [fld.zeros((e, 0)) for e in Yb.dims], check=False),
            ModuleMorphism(Nb, Xb, seq.u.mats),
            ModuleMorphism(P2, Xb, [fld.zeros((0, e)) for e in Xb.dims], check=False),
            [],
        )
        return TransferredSequence(seq, out, None, None)
    d = _sum_pair_data(ident, seq.proj_vertices)
    if seq.P.dims != d["P"].dims:
        raise ModuleError("P does not match the listed projective vertices")
    h, w = _factor(fld, seq, d)
    phi, sigma, corrected = d["phi"], None, False
    if not all(ident.pairs[i].compatible for i in seq.proj_vertices):
        found = _correct(fld, seq, Nb, d, h, w)
        if found is None:
            out = _correct_general(fld, seq, Yb, Nb, Xb, d, w)
            if out is None:
                raise ModuleError("no compatible choice of isomorphisms for this sequence")
            res = TransferredSequence(seq, out, h, w, None, None, True, "general")
            res._j, res._p = d["j"], d["p"]
            return res
        sigma, phi = found
        corrected = True
    fm = seq.f.mats if sigma is None else [fld.matmul(a, b) for a, b in zip(seq.f.mats, sigma.mats)]
    g2 = [fld.matmul(fld.matmul(a, b), c) for a, b, c in zip(h.mats, phi.mats, d["j2"].mats)]
    v2 = [fld.matmul(fld.matmul(a, b), c) for a, b, c in zip(d["p2"].mats, d["psi_inv"].mats, w.mats)]
    out = ShortExactSequence(
        Yb, Nb, d["P2"], Xb,
        ModuleMorphism(Yb, Nb, fm, check=True),
        ModuleMorphism(Yb, d["P2"], g2, check=True),
        ModuleMorphism(Nb, Xb, seq.u.mats, check=True),
        ModuleMorphism(d["P2"], Xb, v2, check=True),
        list(seq.proj_vertices),
    )
    if check and not out.is_exact():
        raise ModuleError("transferred sequence is not exact")
    res = TransferredSequence(seq, out, h, w, phi, sigma, corrected, "corrected" if corrected else "direct")
    res._j, res._p = d["j"], d["p"]
    return res


@dataclass
class TermsCertificate:
    """Does any exact ``0 -> Y -> N0 + P' -> X -> 0`` exist over ``B``, whatever the maps?

    ``exists`` is True with a witness, False when every map
    ``N0 + P' -> X`` was enumerated without finding one (or, when ``N0``
    is zero, by comparing ``Y`` with the syzygy of ``X``), and None when only
    ``searched`` random maps were tried.
    """

    exists: Optional[bool]
    hom_dim: int
    exhaustive: bool
    searched: int
    witness: Optional[ModuleMorphism] = None


def sequence_with_terms(ident: SocleIdentification, seq: ShortExactSequence, limit: int = EXHAUSTIVE_LIMIT,
                        samples: int = 2000, seed: int = 0) -> TermsCertificate:
    """Search ``Hom(N0 + P', X)`` over ``B`` for a surjection whose kernel is isomorphic to ``Y``."""
    fld = ident.algebra_a.field
    d = _sum_pair_data(ident, seq.proj_vertices) if seq.proj_vertices else None
    Yb, Nb, Xb = ident.to_b(seq.Y), ident.to_b(seq.N0), ident.to_b(seq.X)
    mid = direct_sum([Nb, d["P2"]])[0] if d else Nb
    basis = hom_basis(mid, Xb)
    n = len(basis)
    if Nb.dim == 0 and d is not None:
        # every surjection P' -> X is a projective cover plus a free summand Q,
        # with kernel Omega(X) + Q; Y has no projective summand, so Q must vanish
        cov = projective_cover(Xb)
        if cov.source.dims != d["P2"].dims:
            return TermsCertificate(False, n, True, 0)
        omega = morphism_spaces(cov).kernel
        ok = omega.dims == Yb.dims and is_isomorphic(omega, Yb)
        return TermsCertificate(ok, n, True, 1, ModuleMorphism(d["P2"], Xb, cov.mats) if ok else None)
    exhaustive = fld.is_prime and fld.p ** n <= limit
    if exhaustive:
        coeffs = itertools.product(range(fld.p), repeat=n)
    else:
        rng = np.random.default_rng(seed)
        coeffs = (fld.random(rng, (n,)) for _ in range(samples))
    tried = 0
    for c in coeffs:
        if not any(c):
            continue
        U = _combine(basis, fld.array(list(c)))
        if not U.is_surjective():
            continue
        tried += 1
        K = morphism_spaces(U).kernel
        if K.dims == Yb.dims and is_isomorphic(K, Yb):
            return TermsCertificate(True, n, exhaustive, tried, U)
    if n == 0:
        exists = Xb.dim == 0 and Yb.dim == mid.dim and is_isomorphic(Yb, mid)
        return TermsCertificate(exists, 0, True, 0)
    return TermsCertificate(False if exhaustive else None, n, exhaustive, tried)


def stage_sequence(stage: Stage) -> ShortExactSequence:
    """Split a resolution stage ``0 -> K' -> N_i + P_i -> K -> 0`` into its N and P parts."""
    app = stage.approximation
    gen = app.generator
    fld = app.target.field
    ncopies = [c for c, k in enumerate(app.components) if gen.projective_vertex[k] is None]
    pcopies = [c for c, k in enumerate(app.components) if gen.projective_vertex[k] is not None]
    A = app.target.algebra
    nverts = len(A.quiver.vertices)

    def part(copies):
        mods = [gen.summands[app.components[c]] for c in copies]
        if not mods:
            return Representation(A, [0] * nverts, [fld.zeros((0, 0))] * len(A.quiver.arrows), check=False)
        return direct_sum(mods)[0]

    N0, P = part(ncopies), part(pcopies)
    # rows of the source at each vertex, per copy
    offs = []
    for v in range(nverts):
        o, acc = [], 0
        for k in app.components:
            o.append(acc)
            acc += gen.summands[k].dims[v]
        offs.append(o)

    def rows(copies, v):
        idx = []
        for c in copies:
            d = gen.summands[app.components[c]].dims[v]
            idx.extend(range(offs[v][c], offs[v][c] + d))
        return idx

    K = stage.kernel
    f_m, g_m, u_m, v_m = [], [], [], []
    for v in range(nverts):
        rn, rp = rows(ncopies, v), rows(pcopies, v)
        inc = stage.kernel_inclusion.mats[v]
        mp = app.map.mats[v]
        f_m.append(inc[:, rn] if inc.shape[0] else fld.zeros((0, len(rn))))
        g_m.append(inc[:, rp] if inc.shape[0] else fld.zeros((0, len(rp))))
        u_m.append(mp[rn, :])
        v_m.append(mp[rp, :])
    return ShortExactSequence(
        K, N0, P, app.target,
        ModuleMorphism(K, N0, f_m, check=True), ModuleMorphism(K, P, g_m, check=True),
        ModuleMorphism(N0, app.target, u_m, check=True), ModuleMorphism(P, app.target, v_m, check=True),
        [gen.projective_vertex[app.components[c]] for c in pcopies],
    )


def partner_generator(ident: SocleIdentification, gen: AddGenerator) -> AddGenerator:
    """``N + B`` for ``gen = N + A``: reinterpret the non-projective summands."""
    B = ident.algebra_b
    mods, verts = [], []
    for i in range(B.quiver.num_vertices):
        mods.append(projective_module(B, i))
        verts.append(i)
    for R, pv in zip(gen.summands, gen.projective_vertex):
        if pv is None:
            mods.append(ident.to_b(R))
            verts.append(None)
    return AddGenerator(mods, verts)


@dataclass
class StageReport:
    index: int
    approximation: bool
    minimal: bool
    length_a: int
    length_b: int
    n_multiplicities: list


def transfer_resolution(ident: SocleIdentification, gen: AddGenerator, res: ApproximationResolution,
                        gen_b: Optional[AddGenerator] = None):
    """Transfer a minimal resolution over ``A`` to one over ``B`` stage by stage.

    Returns ``(resolution_b, reports)``.  Each transferred stage is checked
    to be an approximation for ``N + B`` and compared in length with an
    independently minimised approximation over ``B``.  Consecutive stages
    splice because the kernel of one stage is the target of the next.
    """
    if not res.complete:
        raise ModuleError("resolution hit its cap")
    gen_b = gen_b or partner_generator(ident, gen)
    stages_b, reports = [], []
    for i, st in enumerate(res.stages):
        seq = stage_sequence(st)
        t = transfer_sequence(ident, seq).transferred
        mid, left, right = t.middle()
        comps_b, parts_b = _components_over_b(gen, gen_b, st.approximation, t, right)
        app_b = Approximation(gen_b, t.X, mid, right, comps_b, parts_b)
        is_app = app_b.is_approximation()
        app_b.minimal = is_app and length(minimize(approximate(gen_b, t.X)).source) == length(mid)
        mult = app_b.multiplicities()
        reports.append(StageReport(
            i, is_app, app_b.minimal, length(st.source), length(mid),
            [mult[k] for k, pv in enumerate(gen_b.projective_vertex) if pv is None],
        ))
        stages_b.append(Stage(app_b, t.Y, left))
    target_b = stages_b[0].target if stages_b else ident.to_b(res.target)
    return ApproximationResolution(gen_b, target_b, stages_b, res.cap, True), reports


def _components_over_b(gen_a, gen_b, app_a, seq_b, right):
    """Summand labels and restricted maps of the transferred middle term ``N0 + P'``."""
    fld = right.field
    ncomps_a = [k for k in app_a.components if gen_a.projective_vertex[k] is None]
    nmap = {}
    b_index = 0
    for k, pv in enumerate(gen_a.projective_vertex):
        if pv is None:
            while gen_b.projective_vertex[b_index] is not None:
                b_index += 1
            nmap[k] = b_index
            b_index += 1
    comps = [nmap[k] for k in ncomps_a] + [gen_b.projective_vertex.index(i) for i in seq_b.proj_vertices]
    mods = [gen_b.summands[k] for k in comps]
    parts = []
    offs = [0] * len(right.source.dims)
    for M in mods:
        mats = []
        for v in range(len(M.dims)):
            mats.append(right.mats[v][offs[v]:offs[v] + M.dims[v], :])
            offs[v] += M.dims[v]
        parts.append(ModuleMorphism(M, right.target, mats, check=False))
    return comps, parts


@dataclass
class GeneratorTransferReport:
    gldim_a: object
    gldim_b: object
    equal: bool
    capped: bool

    @property
    def text(self) -> str:
        return f"{self.gldim_a.text} vs {self.gldim_b.text}"


def generator_gldim(gen: AddGenerator, cap: int = DEFAULT_CAP, method: str = "sinks", seed: int = 0):
    """gldim End(M) either through sink maps in ``mod A`` or through End(M) itself."""
    if method == "sinks":
        return endomorphism_gldim(gen, cap, seed)
    if method == "endo":
        return global_dimension(endomorphism_algebra(generator=gen), cap)
    raise ValueError(f"unknown method {method!r}")


def transfer_generator(ident: SocleIdentification, N: Optional[Representation], cap: int = DEFAULT_CAP,
                       seed: int = 0, method: str = "sinks"):
    """``M' = N + B`` from ``M = N + A`` and both global dimensions."""
    gen_a = AddGenerator.from_parts(N, ident.algebra_a, seed)
    gen_b = partner_generator(ident, gen_a)
    ga = generator_gldim(gen_a, cap, method, seed)
    gb = generator_gldim(gen_b, cap, method, seed)
    capped = ga.value is None and gb.value is None and not (getattr(ga, "infinite", False) and getattr(gb, "infinite", False))
    equal = ga.text == gb.text
    Nb = ident.to_b(N) if N is not None and N.dim else None
    return gen_b, Nb, GeneratorTransferReport(ga, gb, equal, capped)
