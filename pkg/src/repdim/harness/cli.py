"""Command line entry point: ``repdim <verb> [options]``.

Every verb writes a structured text report to stdout (and to ``--report``
when given).  Exit status is 0 when every check passes, 1 when a
mathematical check fails and 2 on bad input.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional

from ..approx import DEFAULT_CAP, AddGenerator, NotGeneratorCogenerator, resolve
from ..pathalg import AlgebraError, algebra_radical, algebra_socle, is_selfinjective
from ..repmod import ModuleError
from ..socletransfer import (
    NotSocleEquivalent,
    generator_gldim,
    lemma_checks,
    transfer_generator,
    verify_identification,
)
from .corpus import ENTRIES, run_corpus
from .formats import (
    ParseError,
    _parse_matrix,
    format_module,
    parse_algebra_file,
    parse_module_file,
    parse_pair_file,
)
from .report import RunReport, merge
from .search import SearchError, candidate_indecomposables, search_generator


class InputError(Exception):
    pass


def _algebra(path: Optional[str], hint: Optional[int], flag: str = "--algebra"):
    if not path:
        raise InputError(f"{flag} is required")
    try:
        return parse_algebra_file(path).build(hint)
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None
    except (ParseError, AlgebraError, ValueError) as exc:
        raise InputError(str(exc)) from None


def _module(path: str, A):
    try:
        return parse_module_file(path).build(A)
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None
    except (ParseError, ModuleError, ValueError) as exc:
        raise InputError(str(exc)) from None


def _iso(text: Optional[str]):
    if not text or text == "identity":
        return "identity"
    if text.startswith("@"):
        try:
            text = Path(text[1:]).read_text().replace("\n", ";")
        except FileNotFoundError:
            raise InputError(f"no such file: {text[1:]}") from None
    try:
        _, rows = _parse_matrix("iso = " + text, 0, 0, "--iso")
    except ParseError as exc:
        raise InputError(str(exc)) from None
    return rows


def _pair(args):
    """``(A, B, iso, N)`` from ``--pair`` or from the individual flags."""
    if args.pair:
        try:
            spec = parse_pair_file(args.pair)
        except FileNotFoundError:
            raise InputError(f"no such file: {args.pair}") from None
        except ParseError as exc:
            raise InputError(str(exc)) from None
        A = _algebra(str(spec.algebra_a), args.degree_hint)
        B = _algebra(str(spec.algebra_b), args.degree_hint)
        gen = args.generator or (str(spec.generator) if spec.generator else None)
        return A, B, spec.iso, _module(gen, A) if gen else None
    A = _algebra(args.algebra, args.degree_hint)
    B = _algebra(args.algebra_b, args.degree_hint, "--algebra-b")
    N = _module(args.generator, A) if args.generator else None
    return A, B, _iso(args.iso), N


def _generator(args, A) -> AddGenerator:
    if args.generator:
        return AddGenerator.from_parts(_module(args.generator, A), A, args.seed)
    if args.module:
        return AddGenerator.from_module(_module(args.module, A), args.seed)
    return AddGenerator.from_parts(None, A, args.seed)


# ---------------------------------------------------------------------------
# verbs


def cmd_build(args, rep: RunReport):
    A = _algebra(args.algebra, args.degree_hint)
    rep.add("dimension", None, A.dim)
    rep.add("vertices", None, A.quiver.num_vertices)
    rep.add("radical dimension", None, algebra_radical(A).dim)
    rep.add("socle dimension", None, algebra_socle(A).dim)


def cmd_selfinjective(args, rep: RunReport):
    A = _algebra(args.algebra, args.degree_hint)
    w = is_selfinjective(A)
    perm = " ".join(A.quiver.vertices[p] for p in w.permutation) if w else "none"
    rep.add("selfinjective", w is not None, f"nakayama {perm}", "selfinjective")


def cmd_socle_equiv(args, rep: RunReport):
    A, B, iso, _ = _pair(args)
    try:
        ident = verify_identification(A, B, iso)
    except NotSocleEquivalent as exc:
        rep.add("socle equivalence", False, str(exc), "socle equivalent")
        return
    except ValueError as exc:
        raise InputError(str(exc)) from None
    rep.add("socle equivalence", True, f"quotient dim {ident.quot_a.dim}", "socle equivalent")
    for c in lemma_checks(ident):
        v = A.quiver.vertices[c.vertex]
        for label, ok in (("rad P iso", c.rad_iso), ("P/soc P iso", c.top_iso), ("soc matches", c.soc_match),
                          ("equal length", c.length_equal), ("p'j'phi = psi pj", c.compatibility)):
            rep.add(f"vertex {v}: {label}", ok, ok, True)


def cmd_resolve(args, rep: RunReport):
    A = _algebra(args.algebra, args.degree_hint)
    if not args.target:
        raise InputError("--target is required")
    gen = _generator(args, A)
    X = _module(args.target, A)
    try:
        res = resolve(gen, X, args.cap, args.seed)
    except NotGeneratorCogenerator as exc:
        raise InputError(str(exc)) from None
    rep.add("resolution length", res.complete, res.length_text(), f"<{args.cap}")
    terms = ["+".join(str(m) for m in st.approximation.multiplicities()) for st in res.stages]
    rep.add("multiplicities per term", None, " | ".join(terms))
    if res.complete:
        res.check()
        rep.add("resolution exact under Hom(M, -)", True, True, True)


def cmd_gldim(args, rep: RunReport):
    A = _algebra(args.algebra, args.degree_hint)
    gen = _generator(args, A)
    if not gen.is_generator_cogenerator():
        raise InputError("M is not a generator-cogenerator")
    r = generator_gldim(gen, args.cap, args.method, args.seed)
    rep.add("summands", None, len(gen))
    rep.add(f"gldim End(M) ({args.method})", r.value is not None or getattr(r, "infinite", False), r.text,
            f"<={args.cap}", warn=getattr(r, "infinite", False))
    rep.add("per simple", None, " ".join(r.per_simple_text()))


def cmd_transfer(args, rep: RunReport):
    A, B, iso, N = _pair(args)
    if N is None:
        raise InputError("--generator (or a pair file with a generator) is required")
    try:
        ident = verify_identification(A, B, iso)
    except NotSocleEquivalent as exc:
        rep.add("socle equivalence", False, str(exc), "socle equivalent")
        return
    rep.add("socle equivalence", True, f"quotient dim {ident.quot_a.dim}", "socle equivalent")
    _, _, r = transfer_generator(ident, N, args.cap, args.seed, args.method)
    rep.add("gldim End(N+A) = gldim End(N+A')", r.equal, r.text, "equal", warn=r.capped)


def cmd_search(args, rep: RunReport):
    A = _algebra(args.algebra, args.degree_hint)
    try:
        cands = candidate_indecomposables(A, args.dim_cap, args.seed)
        res = search_generator(A, args.dim_cap, args.seed, args.cap, cands)
    except SearchError as exc:
        raise InputError(str(exc)) from None
    rep.add("candidate indecomposables", None, len(res.candidates))
    rep.add("sets evaluated", None, res.evaluated)
    rep.add("lower bound", None, res.lower_bound)
    if res.value is None:
        rep.add("generator found", False, "none", f"gldim <= {args.cap}")
        return
    dims = " + ".join("(" + ",".join(map(str, X.dims)) + ")" for X in res.summands) or "0"
    rep.add("best gldim End(N+A)", True, res.value)
    rep.add("N summand dims", None, dims)
    if args.out and res.module is not None:
        res.module.name = Path(args.out).stem
        Path(args.out).write_text(format_module(res.module, args.algebra and str(Path(args.algebra).resolve())))
        rep.add("written", None, args.out)


VERBS = {
    "build": cmd_build,
    "selfinjective": cmd_selfinjective,
    "socle-equiv": cmd_socle_equiv,
    "resolve": cmd_resolve,
    "gldim": cmd_gldim,
    "transfer": cmd_transfer,
    "search": cmd_search,
}


def parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="repdim", description="Socle equivalence and representation dimension checks.")
    p.add_argument("verb", choices=list(VERBS) + ["corpus"])
    p.add_argument("entry", nargs="?", help="corpus entry id or 'all'")
    p.add_argument("--algebra")
    p.add_argument("--algebra-b")
    p.add_argument("--module", help="the whole module M (gldim, resolve)")
    p.add_argument("--generator", help="N, used as N + A")
    p.add_argument("--target", help="module X to resolve")
    p.add_argument("--pair", help="pair file naming both algebras, iso and generator")
    p.add_argument("--iso", default="identity", help="'identity', matrix rows 'a b; c d', or @file")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--degree-hint", type=int)
    p.add_argument("--method", choices=["sinks", "endo"], default="sinks")
    p.add_argument("--dim-cap", type=int, default=4)
    p.add_argument("--out", help="search: write the best N as a module file")
    p.add_argument("--report", help="also write the report to this path")
    p.add_argument("--timings", action="store_true", help="include elapsed seconds (reports stop being reproducible)")
    return p


def main(argv=None) -> int:
    args = parser().parse_args(argv)
    try:
        if args.verb == "corpus":
            ids = list(ENTRIES) if args.entry in (None, "all") else [args.entry]
            for i in ids:
                if i not in ENTRIES:
                    raise InputError(f"unknown corpus entry {i!r}; known: {', '.join(ENTRIES)}")
            reps = [run_corpus(i, args.seed, args.cap) for i in ids]
            rep = reps[0] if len(reps) == 1 else merge("corpus all", args.seed, reps)
        else:
            rep = RunReport(args.verb, args.seed)
            with rep.timed() as t:
                VERBS[args.verb](args, rep)
            if rep.records:
                rep.records[-1].elapsed = t[0]
    except InputError as exc:
        print(f"repdim: error: {exc}", file=sys.stderr)
        return 2
    text = rep.render(args.timings)
    sys.stdout.write(text)
    if args.report:
        Path(args.report).write_text(text)
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
