"""Exact dense linear algebra over GF(p) and the rationals.

Matrices are plain numpy arrays.  Over GF(p) they hold canonical residues
``0..p-1`` in ``int64``; over the rationals they are ``object`` arrays of
:class:`fractions.Fraction`.  Vectors are rows and matrices act on the right
(``x -> x @ m``) everywhere in the package.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
import sympy

__all__ = [
    "Field",
    "GF",
    "QQ",
    "rref",
    "rank",
    "kernel_basis",
    "solve",
    "inverse",
    "row_space",
    "in_row_space",
    "intersect_row_spaces",
    "complement_rows",
    "coordinates",
]

_MAX_PRIME = 1 << 20


@dataclass(frozen=True)
class Field:
    """A prime field ``GF(p)`` (``kind == "prime"``) or ``QQ`` (``kind == "rational"``)."""

    kind: str
    p: int = 0

    def __post_init__(self):
        if self.kind == "prime":
            if not sympy.isprime(self.p):
                raise ValueError(f"{self.p} is not prime")
            if self.p >= _MAX_PRIME:
                raise ValueError(f"prime {self.p} too large for int64 kernels")
        elif self.kind == "rational":
            if self.p != 0:
                raise ValueError("rational field takes no modulus")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @property
    def is_prime(self) -> bool:
        return self.kind == "prime"

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def dtype(self):
        return np.int64 if self.is_prime else object

    def __str__(self) -> str:
        return f"GF({self.p})" if self.is_prime else "QQ"

    # -- element level -------------------------------------------------
    def scalar(self, x):
        if self.is_prime:
            if isinstance(x, Fraction):
                return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
            return int(x) % self.p
        return Fraction(x)

    def inv(self, x):
        if self.is_prime:
            x = int(x) % self.p
            if x == 0:
                raise ZeroDivisionError("inverse of zero")
            return pow(x, -1, self.p)
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(x)

    def elements(self):
        """All field elements (prime fields only)."""
        if not self.is_prime:
            raise ValueError("QQ is infinite")
        return range(self.p)

    # -- array level ---------------------------------------------------
    def array(self, data, shape: Optional[Sequence[int]] = None) -> np.ndarray:
        if self.is_prime:
            raw = np.array(data, dtype=object) if not isinstance(data, np.ndarray) else data
            if raw.dtype == object:
                flat = [self.scalar(v) for v in raw.ravel()]
                out = np.array(flat, dtype=np.int64).reshape(raw.shape)
            else:
                out = np.mod(raw.astype(np.int64), self.p)
        else:
            raw = np.array(data, dtype=object)
            out = np.empty(raw.shape, dtype=object)
            out.ravel()[:] = [Fraction(v) for v in raw.ravel()]
        if shape is not None:
            out = out.reshape(shape)
        return out

    def zeros(self, shape) -> np.ndarray:
        if self.is_prime:
            return np.zeros(shape, dtype=np.int64)
        out = np.empty(shape, dtype=object)
        out.fill(Fraction(0))
        return out

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = 1 if self.is_prime else Fraction(1)
        return out

    def reduce(self, a: np.ndarray) -> np.ndarray:
        if self.is_prime:
            return np.mod(a, self.p)
        return a

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[-1] == 0 or (a.ndim and a.shape[0] == 0) or b.shape[-1] == 0:
            return self.zeros(a.shape[:-1] + b.shape[1:])
        if self.is_prime:
            return (a @ b) % self.p
        return a @ b

    def random(self, rng: np.random.Generator, shape, bound: int = 3) -> np.ndarray:
        """Uniform random elements; over QQ, small integers in ``[-bound, bound]``."""
        if self.is_prime:
            return rng.integers(0, self.p, size=shape, dtype=np.int64)
        return self.array(rng.integers(-bound, bound + 1, size=shape))

    def is_zero(self, a: np.ndarray) -> bool:
        return not np.any(a != 0)

    def to_int_list(self, a: np.ndarray) -> list:
        """Nested lists of ints (GF(p)) or strings (QQ) for serialisation."""
        if self.is_prime:
            return a.astype(np.int64).tolist()
        return np.vectorize(str, otypes=[object])(a).tolist()


def GF(p: int) -> Field:
    return Field("prime", p)


QQ = Field("rational")


def rref(field: Field, m: np.ndarray) -> tuple[int, np.ndarray, list[int]]:
    """Reduced row echelon form.

    Returns ``(rank, reduced, pivot_cols)``.
    """
    a = field.array(m) if not isinstance(m, np.ndarray) else m.copy()
    if a.ndim != 2:
        raise ValueError("rref expects a 2d array")
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    prime = field.is_prime
    p = field.p
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        piv = a[r, c]
        if piv != 1:
            inv = field.inv(piv)
            a[r, c:] = (a[r, c:] * inv) % p if prime else a[r, c:] * inv
        col = a[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            upd = np.outer(col[rows], a[r, c:])
            if prime:
                a[rows, c:] = (a[rows, c:] - upd) % p
            else:
                a[rows, c:] = a[rows, c:] - upd
        pivots.append(c)
        r += 1
    return r, a, pivots


def rank(field: Field, m: np.ndarray) -> int:
    if m.size == 0:
        return 0
    # fewer pivot steps on the shorter side
    if m.shape[0] > m.shape[1]:
        m = m.T
    return rref(field, m)[0]


def kernel_basis(field: Field, m: np.ndarray) -> np.ndarray:
    """Rows form a basis of ``{x : x @ m == 0}``."""
    nrows, ncols = m.shape
    if nrows == 0:
        return field.zeros((0, 0))
    if ncols == 0:
        return field.eye(nrows)
    r, red, piv = rref(field, m.T.copy())
    free = [c for c in range(nrows) if c not in set(piv)]
    out = field.zeros((len(free), nrows))
    for k, f in enumerate(free):
        out[k, f] = 1
        for i, pc in enumerate(piv):
            out[k, pc] = (-red[i, f]) % field.p if field.is_prime else -red[i, f]
    return out


def solve(field: Field, m: np.ndarray, b: np.ndarray) -> Optional[np.ndarray]:
    """One solution ``x`` of ``x @ m == b`` or ``None`` if inconsistent.

    ``b`` may hold several right-hand sides as rows; the solution has one row
    per row of ``b``.  Free variables are set to zero.
    """
    b2 = b.reshape(1, -1) if b.ndim == 1 else b
    if b2.shape[1] != m.shape[1]:
        raise ValueError(f"dimension mismatch: b has {b2.shape[1]} columns, m has {m.shape[1]}")
    nrows = m.shape[0]
    nb = b2.shape[0]
    if nrows == 0:
        if field.is_zero(b2):
            out = field.zeros((nb, 0))
            return out[0] if b.ndim == 1 else out
        return None
    aug = np.concatenate([m.T, b2.T], axis=1)
    r, red, piv = rref(field, aug)
    if piv and piv[-1] >= nrows:
        return None
    out = field.zeros((nb, nrows))
    for i, pc in enumerate(piv):
        out[:, pc] = red[i, nrows:]
    return out[0] if b.ndim == 1 else out


def inverse(field: Field, m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("inverse of non-square matrix")
    x = solve(field, m, field.eye(n))
    if x is None:
        raise ValueError("matrix is singular")
    return x


def row_space(field: Field, m: np.ndarray) -> np.ndarray:
    """Canonical basis (the nonzero rows of the rref) of the row space."""
    if m.shape[0] == 0:
        return m.copy()
    r, red, _ = rref(field, m)
    return red[:r]


def in_row_space(field: Field, basis: np.ndarray, v: np.ndarray) -> bool:
    return solve(field, basis, v) is not None


def intersect_row_spaces(field: Field, u: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Basis of ``rowspace(u) & rowspace(w)``."""
    n = u.shape[1] if u.ndim == 2 and u.shape[0] else w.shape[1]
    if u.shape[0] == 0 or w.shape[0] == 0:
        return field.zeros((0, n))
    stacked = np.concatenate([u, w], axis=0)
    k = kernel_basis(field, stacked)
    if k.shape[0] == 0:
        return field.zeros((0, n))
    return row_space(field, field.matmul(k[:, : u.shape[0]], u))


def complement_rows(field: Field, sub: np.ndarray, n: int) -> np.ndarray:
    """Standard basis vectors completing ``rowspace(sub)`` to the whole space."""
    if sub.shape[0] == 0:
        return field.eye(n)
    r, _, piv = rref(field, sub)
    free = [c for c in range(n) if c not in set(piv)]
    out = field.zeros((len(free), n))
    for k, c in enumerate(free):
        out[k, c] = 1
    return out


def coordinates(field: Field, basis: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Coordinates of the rows of ``v`` in the (independent) rows of ``basis``."""
    x = solve(field, basis, v)
    if x is None:
        raise ValueError("vector not in the span of the basis")
    return x
