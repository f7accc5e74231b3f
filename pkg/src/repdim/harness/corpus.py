"""Executable entries for the worked examples and the rep-finite sanity cases.

Each entry runs a fixed pipeline and records one check per stage in a
:class:`RunReport`.  A stage that raises is recorded as a failure and the
run continues.  Expected values carry a provenance label:

``stated``
    the number is given in the source example itself;
``derived``
    the number was produced by an oracle in this package (exhaustive
    search, the E-based global dimension) and is re-checked here;
``trivial``
    follows from definitions.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from importlib import resources
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from ..approx import DEFAULT_CAP, AddGenerator, repdim_bound
from ..exactlin import rank
from ..pathalg import (
    BoundQuiverAlgebra,
    algebra_socle,
    check_algebra_map,
    is_selfinjective,
    projective_module,
    quotient_algebra,
)
from ..repmod import Representation, direct_sum, module_radical, quotient, submodule
from ..socletransfer import (
    SocleIdentification,
    ar_sequence_of_projective,
    lemma_checks,
    transfer_generator,
    transfer_sequence,
    verify_identification,
)
from .formats import parse_algebra_file, parse_module_file, parse_pair_file
from .report import RunReport

STATED, DERIVED, TRIVIAL = "stated", "derived", "trivial"


def data_path(name: str) -> Path:
    """Path of a bundled data file."""
    return Path(str(resources.files("repdim") / "data" / name))


def load_algebra(name: str, degree_hint: Optional[int] = None) -> BoundQuiverAlgebra:
    return parse_algebra_file(data_path(name)).build(degree_hint)


def load_module(name: str, algebra: BoundQuiverAlgebra) -> Representation:
    return parse_module_file(data_path(name)).build(algebra)


@dataclass
class CorpusEntry:
    id: str
    title: str
    run: Callable[[RunReport, int, int], None]
    expected: dict = dc_field(default_factory=dict)  # name -> (value, provenance)


def uniserial_quotients(A: BoundQuiverAlgebra, i: int = 0) -> list[Representation]:
    """``P_i/rad^k P_i`` for ``k = 1 .. LL(P_i)``; for ``K[x]/(x^n)`` these are all indecomposables."""
    P = projective_module(A, i)
    out = []
    f = A.field
    cur = [f.eye(d) for d in P.dims]  # rad^k P in P coordinates
    while any(b.shape[0] for b in cur):
        S, si = submodule(P, cur)
        _, ri = module_radical(S)
        cur = [f.matmul(a, b) if a.shape[0] else f.zeros((0, P.dims[v]))
               for v, (a, b) in enumerate(zip(ri.mats, si.mats))]
        out.append(quotient(P, cur)[0])
    return out


def same_algebra_on_paths(Q: BoundQuiverAlgebra, R: BoundQuiverAlgebra) -> tuple[bool, str]:
    """Is the identity on basis paths an isomorphism ``Q -> R``?"""
    if Q.dim != R.dim:
        return False, f"dim {Q.dim} vs {R.dim}"
    if Q.quiver != R.quiver:
        return False, "different quivers"
    f = Q.field
    try:
        m = np.stack([R.path_element(p) for p in Q.basis])
    except Exception as exc:  # a basis path of Q is not a path of R
        return False, str(exc)
    if rank(f, m) != Q.dim:
        return False, "paths not independent"
    bad = check_algebra_map(Q, R, m)
    if bad is not None:
        names = Q.basis_names()
        return False, f"products differ at ({names[bad[0]]}, {names[bad[1]]})"
    return True, f"dim {Q.dim}, equal on paths"


# ---------------------------------------------------------------------------
# shared stages


def _check(rep: RunReport, name: str, fn, provenance: str = ""):
    """Run ``fn`` and record an error on exception; returns its result or None."""
    try:
        return fn()
    except Exception as exc:
        rep.error(name, exc, provenance)
        return None


def _build(rep: RunReport, label: str, file: str, expected_dim: Optional[int], prov: str):
    with rep.timed() as t:
        A = _check(rep, f"build {label}", lambda: load_algebra(file), prov)
    if A is not None:
        exp = f"dim {expected_dim}" if expected_dim is not None else ""
        ok = expected_dim is None or A.dim == expected_dim
        rep.add(f"build {label}", ok if expected_dim is not None else None, f"dim {A.dim}", exp, prov, elapsed=t[0])
    return A


def _selfinjective(rep: RunReport, label: str, A: BoundQuiverAlgebra, prov: str = STATED):
    with rep.timed() as t:
        try:
            w = is_selfinjective(A)
        except Exception as exc:
            rep.error(f"selfinjective {label}", exc, prov)
            return
    perm = " ".join(str(p + 1) for p in w.permutation) if w else "none"
    rep.add(f"selfinjective {label}", w is not None, f"nakayama {perm}", "selfinjective", prov, elapsed=t[0])


def _identify(rep: RunReport, label: str, A, B, prov: str = STATED) -> Optional[SocleIdentification]:
    with rep.timed() as t:
        ident = _check(rep, f"socle equivalence {label}", lambda: verify_identification(A, B), prov)
    if ident is not None:
        rep.add(f"socle equivalence {label}", True, f"quotient dim {ident.quot_a.dim}, {ident.iso_label}",
                "socle equivalent", prov, elapsed=t[0])
    return ident


def _lemma(rep: RunReport, label: str, ident: SocleIdentification):
    with rep.timed() as t:
        checks = _check(rep, f"lemma {label}", lambda: lemma_checks(ident), STATED)
    if checks is None:
        return
    names = _vertex_names(ident)
    for c in checks:
        v = names[c.vertex]
        rep.add(f"{label} vertex {v}: rad P iso", c.rad_iso, c.rad_iso, True, STATED, elapsed=t[0])
        rep.add(f"{label} vertex {v}: P/soc P iso", c.top_iso, c.top_iso, True, STATED)
        rep.add(f"{label} vertex {v}: soc matches", c.soc_match, c.soc_match, True, STATED)
        rep.add(f"{label} vertex {v}: equal length", c.length_equal, c.length_equal, True, STATED)
        note = "" if c.compatibility else "no isomorphism pair (phi, psi) makes the square commute"
        rep.add(f"{label} vertex {v}: p'j'phi = psi pj", c.compatibility, c.compatibility, True, STATED, note=note)


def _vertex_names(ident: SocleIdentification) -> list[str]:
    return list(ident.algebra_a.quiver.vertices)


def _ar_transfer(rep: RunReport, label: str, ident: SocleIdentification):
    names = _vertex_names(ident)
    for i in range(ident.algebra_a.quiver.num_vertices):
        name = f"{label} almost split sequence at {names[i]} transfers".strip()
        with rep.timed() as t:
            def go():
                seq_a, _ = ar_sequence_of_projective(ident, i)
                return transfer_sequence(ident, seq_a)
            tr = _check(rep, name, go, DERIVED)
        if tr is None:
            continue
        ok = tr.transferred.is_exact()
        note = "isomorphisms re-chosen for this sequence" if tr.corrected else ""
        rep.add(name, ok, "exact" if ok else "not exact", "exact", DERIVED, note=note, elapsed=t[0])


def _generator(rep: RunReport, label: str, ident: SocleIdentification, N: Representation, expected: int,
               prov: str, cap: int, seed: int):
    name = f"{label} gldim End(N+A) = gldim End(N+A')".strip()
    with rep.timed() as t:
        res = _check(rep, name, lambda: transfer_generator(ident, N, cap, seed), prov)
    if res is None:
        return
    r = res[2]
    ok = r.equal and r.gldim_a.value == expected
    rep.add(name, ok, r.text, f"{expected} vs {expected}", prov, elapsed=t[0])


# ---------------------------------------------------------------------------
# entries


def _rep_finite(file: str, n: int):
    def run(rep: RunReport, seed: int, cap: int):
        A = _build(rep, file, file, n, TRIVIAL)
        if A is None:
            return
        _selfinjective(rep, file, A, TRIVIAL)
        mods = uniserial_quotients(A)
        rep.add("indecomposables", len(mods) == n, len(mods), n, TRIVIAL)
        with rep.timed() as t:
            b = _check(rep, "gldim End(all indecomposables)",
                       lambda: repdim_bound(A, AddGenerator.from_module(_sum(mods), seed), cap, seed, mods), DERIVED)
        if b is not None:
            rep.add("gldim End(all indecomposables)", b.value == 2, b.text, 2, STATED, elapsed=t[0])
            rep.add("max resolution length + 2", b.resolution_max == b.value, b.resolution_max, b.text, DERIVED)
    return run


def _sum(mods):
    return direct_sum(mods)[0]


def _pair_entry(pair: str, star: Optional[str], n_dims: tuple, expected_gldim: int, gen_prov: str):
    def run(rep: RunReport, seed: int, cap: int):
        spec = _check(rep, f"parse {pair}", lambda: parse_pair_file(data_path(pair)), TRIVIAL)
        if spec is None:
            return
        A = _build(rep, "A", spec.algebra_a.name, n_dims[0], STATED)
        B = _build(rep, "A'", spec.algebra_b.name, n_dims[1], STATED)
        if A is None or B is None:
            return
        _selfinjective(rep, "A", A)
        _selfinjective(rep, "A'", B)
        if star:
            S = _build(rep, "A*", star, None, STATED)
            if S is not None:
                for label, X in (("A", A), ("A'", B)):
                    Q, _ = quotient_algebra(X, algebra_socle(X))
                    ok, why = same_algebra_on_paths(Q, S)
                    rep.add(f"{label}/soc {label} = A*", ok, why, f"dim {S.dim}, equal on paths", STATED)
        ident = _identify(rep, "A ~ A'", A, B)
        if ident is None:
            return
        _lemma(rep, "lemma", ident)
        _ar_transfer(rep, "", ident)
        if spec.generator is not None:
            N = _check(rep, "generator", lambda: parse_module_file(spec.generator).build(A), gen_prov)
            if N is not None:
                rep.add("generator dims", None, " ".join(map(str, N.dims)))
                _generator(rep, "", ident, N, expected_gldim, gen_prov, cap, seed)
    return run


def _run_53(rep: RunReport, seed: int, cap: int):
    algs = {}
    for l in range(1, 5):
        A = _build(rep, f"A({l})", f"a53_l{l}.alg", 4, STATED)
        if A is not None:
            _selfinjective(rep, f"A({l})", A)
            algs[l] = A
    ids = {}
    for a in sorted(algs):
        for b in sorted(algs):
            if a < b:
                ident = _identify(rep, f"A({a}) ~ A({b})", algs[a], algs[b])
                if ident is not None:
                    ids[a, b] = ident
    for (a, b), ident in sorted(ids.items()):
        if a == 1:
            _lemma(rep, f"A(1) ~ A({b})", ident)
            _ar_transfer(rep, f"A(1) ~ A({b})", ident)
    if 1 not in algs:
        return
    N = _check(rep, "generator", lambda: load_module("n53.mod", algs[1]), DERIVED)
    if N is None:
        return
    rep.add("generator dims", None, " ".join(map(str, N.dims)))
    for b in range(1, 5):
        ident = ids.get((1, b)) if b != 1 else _check(rep, "A(1) ~ A(1)", lambda: verify_identification(algs[1], algs[1]))
        if ident is not None:
            _generator(rep, f"A(1) -> A({b})", ident, N, 3, STATED, cap, seed)


def _run_55(rep: RunReport, seed: int, cap: int):
    A = _build(rep, "b=0", "a55_b0.alg", 36, STATED)
    B = _build(rep, "b=(1,1,1)", "a55_b1.alg", 36, STATED)
    if A is None or B is None:
        return
    _selfinjective(rep, "b=0", A)
    _selfinjective(rep, "b=(1,1,1)", B)
    ident = _identify(rep, "b=0 ~ b=(1,1,1)", A, B)
    if ident is not None:
        _lemma(rep, "lemma", ident)
        _ar_transfer(rep, "", ident)


ENTRIES = {
    "x2": CorpusEntry("x2", "K[x]/(x^2) over GF(5), all indecomposables", _rep_finite("kx2.alg", 2)),
    "x3": CorpusEntry("x3", "K[x]/(x^3) over GF(5), all indecomposables", _rep_finite("kx3.alg", 3)),
    "x3q": CorpusEntry("x3q", "K[x]/(x^3) over QQ, all indecomposables", _rep_finite("kx3_qq.alg", 3)),
    "5.1": CorpusEntry("5.1", "two-vertex pair over GF(5)", _pair_entry("p51.pair", "a51star.alg", (None, None), 3, STATED)),
    "5.2": CorpusEntry("5.2", "three-vertex pair over GF(5)", _pair_entry("p52.pair", "a52star.alg", (None, None), 3, STATED)),
    "5.3": CorpusEntry("5.3", "local algebras A(l), l = 1..4, over GF(5)", _run_53),
    "5.5": CorpusEntry("5.5", "symmetric algebras of dimension 36 over GF(2)", _run_55),
}


def run_corpus(id: str, seed: int = 0, cap: int = DEFAULT_CAP) -> RunReport:
    if id not in ENTRIES:
        raise KeyError(f"unknown corpus entry {id!r}; known: {', '.join(ENTRIES)}")
    e = ENTRIES[id]
    rep = RunReport(f"corpus {id}", seed)
    rep.notes.append(e.title)
    e.run(rep, seed, cap)
    return rep
