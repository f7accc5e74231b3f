"""Line-based text formats for algebras, modules and socle-equivalent pairs.

Every document starts with a versioned header line and continues with
``key: value`` lines; ``#`` starts a comment.

Algebra (``repdim-algebra 1``)::

    name: A
    field: GF(5)            # or QQ
    vertices: 1 2
    arrow: alpha 1 1        # name source target
    arrow: gamma 1 2
    relation: alpha*alpha - alpha*gamma*beta
    degree_hint: 6          # optional

Paths compose left to right: ``alpha*gamma`` is alpha followed by gamma.
A relation is a sum of terms ``[coef[*]]monomial``; coefficients are
integers or fractions ``p/q``; a monomial is arrow names joined by ``*``,
and ``name^k`` or ``(a*b)^k`` abbreviate repetition (``^0`` is allowed when
the term still contains an arrow).

Module (``repdim-module 1``)::

    algebra: a51.alg        # optional, relative to this file
    dims: 2 1
    matrix: alpha = 1 0; 0 1   # rows separated by ';'

Arrows without a ``matrix`` line act by zero.

Pair (``repdim-pair 1``)::

    algebra_a: a51.alg
    algebra_b: a51p.alg
    iso: identity            # or: iso: matrix = rows over the quotient bases
    generator: n51.mod       # optional module over algebra_a
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from pathlib import Path
from typing import Optional

import numpy as np

from ..exactlin import GF, QQ, Field
from ..pathalg import BoundQuiverAlgebra, Quiver, build_algebra
from ..repmod import Representation

ALGEBRA_HEADER = "repdim-algebra 1"
MODULE_HEADER = "repdim-module 1"
PAIR_HEADER = "repdim-pair 1"


class ParseError(ValueError):
    def __init__(self, msg: str, line: int = 0, col: int = 0, source: str = "<string>"):
        super().__init__(f"{source}:{line}:{col}: {msg}")
        self.line = line
        self.col = col


def _lines(text: str, header: str, source: str):
    """Yield ``(lineno, key, value, value_col)`` after checking the header."""
    rows = text.splitlines()
    first = None
    for no, raw in enumerate(rows, 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if first is None:
            first = line.strip()
            if first != header:
                raise ParseError(f"expected header {header!r}, got {first!r}", no, 1, source)
            continue
        if ":" not in line:
            raise ParseError("expected 'key: value'", no, 1, source)
        key, value = line.split(":", 1)
        col = len(key) + 2 + (len(value) - len(value.lstrip()))
        yield no, key.strip(), value.strip(), col
    if first is None:
        raise ParseError("empty document", 1, 1, source)


def parse_field(text: str) -> Field:
    t = text.replace(" ", "")
    if t in ("QQ", "Q"):
        return QQ
    m = re.fullmatch(r"GF\((\d+)\)", t)
    if not m:
        raise ValueError(f"unknown field {text!r}")
    return GF(int(m.group(1)))


def _number(tok: str):
    if "/" in tok:
        a, b = tok.split("/")
        return Fraction(int(a), int(b))
    return Fraction(int(tok))


# -- relation strings -------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9']*)|(?P<op>[-+*^()]))")


def _tokenize(text: str, line: int, col0: int, source: str):
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}", line, col0 + pos, source)
        kind = m.lastgroup
        toks.append((kind, m.group(kind), col0 + m.start(kind)))
        pos = m.end()
    toks.append(("end", "", col0 + len(text)))
    return toks


class _RelationParser:
    def __init__(self, quiver: Quiver, text: str, line: int, col: int, source: str):
        self.q = quiver
        self.toks = _tokenize(text, line, col, source)
        self.i = 0
        self.line = line
        self.source = source

    def err(self, msg: str):
        tok = self.toks[self.i]
        raise ParseError(msg, self.line, tok[2], self.source)

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def relation(self):
        terms = []
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        terms.append(self.term(sign))
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            sign = -1 if self.take()[1] == "-" else 1
            terms.append(self.term(sign))
        if self.peek()[0] != "end":
            self.err(f"unexpected {self.peek()[1]!r}")
        return terms

    def term(self, sign):
        coef = Fraction(sign)
        if self.peek()[0] == "num":
            coef *= _number(self.take()[1])
            if self.peek() == ("op", "*", self.peek()[2]):
                self.take()
        word = self.monomial()
        if not word:
            self.err("monomial must contain an arrow")
        return coef, word

    def monomial(self):
        word = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            word += self.factor()
        return word

    def factor(self):
        kind, val, _ = self.peek()
        if kind == "name":
            self.take()
            try:
                self.q.arrow_index(val)
            except Exception:
                self.i -= 1
                self.err(f"unknown arrow {val!r}")
            word = [val]
        elif kind == "op" and val == "(":
            self.take()
            word = self.monomial()
            if self.peek()[1] != ")":
                self.err("expected ')'")
            self.take()
        else:
            self.err("expected an arrow name")
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            if self.peek()[0] != "num" or "/" in self.peek()[1]:
                self.err("expected an exponent")
            word = word * int(self.take()[1])
        return word


def parse_relation(quiver: Quiver, text: str, line: int = 1, col: int = 1, source: str = "<string>"):
    """A relation string as ``((coef, path), ...)``; equal paths are merged."""
    terms = _RelationParser(quiver, text, line, col, source).relation()
    merged: dict = {}
    order = []
    for coef, word in terms:
        try:
            path = quiver.path_from_arrows(word)
        except Exception as exc:
            raise ParseError(str(exc), line, col, source) from None
        if path not in merged:
            merged[path] = Fraction(0)
            order.append(path)
        merged[path] += coef
    rel = tuple((merged[p], p) for p in order if merged[p] != 0)
    if not rel:
        raise ParseError("relation is identically zero", line, col, source)
    return rel


# -- documents --------------------------------------------------------------


@dataclass
class AlgebraSpec:
    name: str
    field: Field
    quiver: Quiver
    relations: list
    degree_hint: Optional[int] = None
    relation_text: list = dc_field(default_factory=list)

    def build(self, degree_hint: Optional[int] = None) -> BoundQuiverAlgebra:
        return build_algebra(
            self.field, self.quiver, self.relations, degree_hint or self.degree_hint, name=self.name
        )


def parse_algebra_text(text: str, source: str = "<string>") -> AlgebraSpec:
    name, fld, verts, hint = "", None, None, None
    arrows, rel_lines = [], []
    for no, key, value, col in _lines(text, ALGEBRA_HEADER, source):
        if key == "name":
            name = value
        elif key == "field":
            try:
                fld = parse_field(value)
            except ValueError as exc:
                raise ParseError(str(exc), no, col, source) from None
        elif key == "vertices":
            verts = value.split()
        elif key == "arrow":
            parts = value.split()
            if len(parts) != 3:
                raise ParseError("arrow needs: name source target", no, col, source)
            arrows.append((parts[0], parts[1], parts[2], no, col))
        elif key == "relation":
            rel_lines.append((value, no, col))
        elif key == "degree_hint":
            if not value.isdigit():
                raise ParseError("degree_hint must be a positive integer", no, col, source)
            hint = int(value)
        else:
            raise ParseError(f"unknown key {key!r}", no, 1, source)
    if fld is None:
        raise ParseError("missing 'field'", 1, 1, source)
    if not verts:
        raise ParseError("missing 'vertices'", 1, 1, source)
    for a, s, t, no, col in arrows:
        if s not in verts or t not in verts:
            raise ParseError(f"arrow {a}: unknown vertex", no, col, source)
    try:
        quiver = Quiver.from_names(verts, [(a, s, t) for a, s, t, _, _ in arrows])
    except ValueError as exc:
        raise ParseError(str(exc), 1, 1, source) from None
    rels = [parse_relation(quiver, v, no, col, source) for v, no, col in rel_lines]
    return AlgebraSpec(name, fld, quiver, rels, hint, [v for v, _, _ in rel_lines])


def parse_algebra_file(path) -> AlgebraSpec:
    path = Path(path)
    spec = parse_algebra_text(path.read_text(), str(path))
    if not spec.name:
        spec.name = path.stem
    return spec


@dataclass
class ModuleSpec:
    dims: list
    matrices: dict  # arrow name -> nested rows
    algebra_path: Optional[Path] = None
    name: str = ""

    def build(self, algebra: BoundQuiverAlgebra) -> Representation:
        q = algebra.quiver
        if len(self.dims) != q.num_vertices:
            raise ValueError(f"dims has {len(self.dims)} entries, quiver has {q.num_vertices} vertices")
        for a in self.matrices:
            q.arrow_index(a)
        mats = []
        for a in q.arrows:
            shape = (self.dims[a.source], self.dims[a.target])
            rows = self.matrices.get(a.name)
            if rows is None:
                mats.append(algebra.field.zeros(shape))
                continue
            m = algebra.field.array(np.array(rows, dtype=object).reshape(len(rows), -1) if rows else [])
            if m.shape != shape and not (m.size == 0 and 0 in shape):
                raise ValueError(f"arrow {a.name}: matrix shape {m.shape}, expected {shape}")
            mats.append(m if m.size else algebra.field.zeros(shape))
        return Representation(algebra, self.dims, mats, check=True, name=self.name)


def _parse_matrix(value: str, no: int, col: int, source: str):
    if "=" not in value:
        raise ParseError("matrix needs: arrow = rows", no, col, source)
    name, body = value.split("=", 1)
    rows = []
    for r in body.split(";"):
        r = r.strip()
        if not r:
            continue
        try:
            rows.append([_number(t) for t in r.split()])
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad matrix entry in {r!r}", no, col, source) from None
    if rows and len({len(r) for r in rows}) != 1:
        raise ParseError("ragged matrix rows", no, col, source)
    return name.strip(), rows


def parse_module_text(text: str, source: str = "<string>", base: Optional[Path] = None) -> ModuleSpec:
    dims, mats, alg, name = None, {}, None, ""
    for no, key, value, col in _lines(text, MODULE_HEADER, source):
        if key == "dims":
            try:
                dims = [int(t) for t in value.split()]
            except ValueError:
                raise ParseError("dims must be integers", no, col, source) from None
        elif key == "matrix":
            a, rows = _parse_matrix(value, no, col, source)
            mats[a] = rows
        elif key == "algebra":
            alg = (base / value) if base else Path(value)
        elif key == "name":
            name = value
        else:
            raise ParseError(f"unknown key {key!r}", no, 1, source)
    if dims is None:
        raise ParseError("missing 'dims'", 1, 1, source)
    return ModuleSpec(dims, mats, alg, name)


def parse_module_file(path) -> ModuleSpec:
    path = Path(path)
    spec = parse_module_text(path.read_text(), str(path), path.parent)
    if not spec.name:
        spec.name = path.stem
    return spec


@dataclass
class PairSpec:
    algebra_a: Path
    algebra_b: Path
    iso: object  # "identity" or nested rows
    generator: Optional[Path] = None


def parse_pair_file(path) -> PairSpec:
    path = Path(path)
    source = str(path)
    a = b = gen = None
    iso = "identity"
    for no, key, value, col in _lines(path.read_text(), PAIR_HEADER, source):
        if key == "algebra_a":
            a = path.parent / value
        elif key == "algebra_b":
            b = path.parent / value
        elif key == "generator":
            gen = path.parent / value
        elif key == "iso":
            if value == "identity":
                iso = "identity"
            else:
                _, iso = _parse_matrix(value, no, col, source)
        else:
            raise ParseError(f"unknown key {key!r}", no, 1, source)
    if a is None or b is None:
        raise ParseError("pair needs algebra_a and algebra_b", 1, 1, source)
    return PairSpec(a, b, iso, gen)


def format_algebra(spec: AlgebraSpec) -> str:
    out = [ALGEBRA_HEADER]
    if spec.name:
        out.append(f"name: {spec.name}")
    out.append(f"field: {spec.field}")
    out.append("vertices: " + " ".join(spec.quiver.vertices))
    for a in spec.quiver.arrows:
        out.append(f"arrow: {a.name} {spec.quiver.vertices[a.source]} {spec.quiver.vertices[a.target]}")
    for t in spec.relation_text:
        out.append(f"relation: {t}")
    if spec.degree_hint:
        out.append(f"degree_hint: {spec.degree_hint}")
    return "\n".join(out) + "\n"


def format_module(M: Representation, algebra_ref: Optional[str] = None) -> str:
    f = M.field
    out = [MODULE_HEADER]
    if M.name:
        out.append(f"name: {M.name}")
    if algebra_ref:
        out.append(f"algebra: {algebra_ref}")
    out.append("dims: " + " ".join(str(d) for d in M.dims))
    for a, m in zip(M.algebra.quiver.arrows, M.arrow_mats):
        if m.size and not f.is_zero(m):
            rows = "; ".join(" ".join(str(v) for v in r) for r in f.to_int_list(m))
            out.append(f"matrix: {a.name} = {rows}")
    return "\n".join(out) + "\n"
