"""Subalgebras of full matrix algebras: radicals, minimal polynomials, splitting.

An algebra here is a list of ``n x n`` matrices spanning a unital subalgebra of
``M_n(K)`` (typically an endomorphism ring acting on a module's underlying
space).  Elements are expressed in that basis by coordinate rows.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
import sympy

from .exactlin import Field, kernel_basis, rank, rref, solve

_x = sympy.Symbol("x")


def flatten(mats: Sequence[np.ndarray], field: Field) -> np.ndarray:
    if not mats:
        return field.zeros((0, 0))
    return np.stack([m.reshape(-1) for m in mats])


def combine(field: Field, coeffs: np.ndarray, mats: Sequence[np.ndarray]) -> np.ndarray:
    """``sum_k coeffs[k] * mats[k]``."""
    n = mats[0].shape
    flat = field.matmul(coeffs.reshape(1, -1), flatten(mats, field))
    return flat.reshape(n)


def _int_trace_power(field: Field, m: np.ndarray, e: int, modulus: int) -> int:
    """``tr(m~ ** e) mod modulus`` for the integer lift ``m~`` of ``m``."""
    n = m.shape[0]
    use_obj = n * modulus * modulus >= (1 << 62)
    a = m.astype(object) if use_obj else m.astype(np.int64)
    result = None
    base = a % modulus
    while e:
        if e & 1:
            result = base if result is None else (result @ base) % modulus
        e >>= 1
        if e:
            base = (base @ base) % modulus
    return int(np.trace(result)) % modulus


def radical(field: Field, mats: Sequence[np.ndarray]) -> np.ndarray:
    """Coordinates (rows) of a basis of the Jacobson radical.

    ``mats`` must span a unital algebra of ``n x n`` matrices.  In
    characteristic zero, and when ``p > n``, the radical is the kernel of the
    trace form.  Otherwise the chain of generalised Frobenius traces
    ``g_i(a) = (tr(a~ ** p**i) mod p**(i+1)) / p**i`` refines the trace-form
    kernel ``floor(log_p n)`` times.
    """
    d = len(mats)
    if d == 0:
        return field.zeros((0, 0))
    n = mats[0].shape[0]
    gram = field.zeros((d, d))
    for j in range(d):
        for k in range(d):
            gram[j, k] = field.scalar(np.trace(field.matmul(mats[j], mats[k])))
    current = kernel_basis(field, gram)  # I_0
    if not field.is_prime or field.p > n or current.shape[0] == 0:
        return current
    p = field.p
    levels = int(math.floor(math.log(n, p) + 1e-9))
    for i in range(1, levels + 1):
        if current.shape[0] == 0:
            break
        elems = [combine(field, row, mats) for row in current]
        modulus = p ** (i + 1)
        vals = field.zeros((len(elems), d))
        for j, a in enumerate(elems):
            for k in range(d):
                t = _int_trace_power(field, field.matmul(a, mats[k]), p**i, modulus)
                if t % (p**i):
                    raise ArithmeticError("Frobenius trace not divisible; input is not an algebra")
                vals[j, k] = (t // p**i) % p
        ker = kernel_basis(field, vals)
        current = field.matmul(ker, current) if ker.shape[0] else field.zeros((0, d))
    return current


def minimal_polynomial(field: Field, m: np.ndarray) -> list:
    """Coefficients ``[c_0, ..., c_{k-1}, 1]`` of the monic minimal polynomial."""
    n = m.shape[0]
    powers = [field.eye(n)]
    flat = [powers[0].reshape(-1)]
    while True:
        nxt = field.matmul(powers[-1], m)
        sol = solve(field, np.stack(flat), nxt.reshape(-1))
        if sol is not None:
            coeffs = [(-c) % field.p if field.is_prime else -c for c in sol]
            return coeffs + [field.scalar(1)]
        powers.append(nxt)
        flat.append(nxt.reshape(-1))


def _to_poly(field: Field, coeffs: Sequence) -> sympy.Poly:
    rev = list(reversed(coeffs))
    if field.is_prime:
        return sympy.Poly([int(c) for c in rev], _x, modulus=field.p)
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in rev], _x, domain=sympy.QQ)


def _from_poly(field: Field, poly: sympy.Poly) -> list:
    coeffs = list(reversed(poly.all_coeffs()))
    if field.is_prime:
        return [int(c) % field.p for c in coeffs]
    return [Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in coeffs]


def factor(field: Field, coeffs: Sequence) -> list[tuple[list, int]]:
    """Monic irreducible factors with multiplicities."""
    poly = _to_poly(field, coeffs)
    _, facs = poly.factor_list()
    out = []
    for f, e in facs:
        f = f.monic()
        out.append((_from_poly(field, f), e))
    return out


def poly_eval(field: Field, coeffs: Sequence, m: np.ndarray) -> np.ndarray:
    """Horner evaluation of a polynomial at a square matrix."""
    n = m.shape[0]
    out = field.zeros((n, n))
    ident = field.eye(n)
    for c in reversed(coeffs):
        out = field.matmul(out, m)
        out = field.reduce(out + ident * field.scalar(c))
    return out


def poly_mul(field: Field, a: Sequence, b: Sequence) -> list:
    out = [field.scalar(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    if field.is_prime:
        out = [v % field.p for v in out]
    return out


def matrix_power(field: Field, m: np.ndarray, e: int) -> np.ndarray:
    result = field.eye(m.shape[0])
    base = m
    while e:
        if e & 1:
            result = field.matmul(result, base)
        e >>= 1
        if e:
            base = field.matmul(base, base)
    return result


def primary_split(field: Field, m: np.ndarray) -> Optional[tuple[np.ndarray, np.ndarray]]:
    """Split the row space by the primary decomposition of ``m``.

    Returns ``(u, w)`` with ``u`` the generalized kernel of the first
    irreducible factor of the minimal polynomial and ``w`` that of the
    remaining factors, or ``None`` when the minimal polynomial is a power of
    a single irreducible.
    """
    n = m.shape[0]
    facs = factor(field, minimal_polynomial(field, m))
    if len(facs) < 2:
        return None
    first = [field.scalar(1)]
    for _ in range(facs[0][1]):
        first = poly_mul(field, first, facs[0][0])
    rest = [field.scalar(1)]
    for f, e in facs[1:]:
        for _ in range(e):
            rest = poly_mul(field, rest, f)
    u = kernel_basis(field, poly_eval(field, first, m))
    w = kernel_basis(field, poly_eval(field, rest, m))
    assert u.shape[0] + w.shape[0] == n
    return u, w


def is_nilpotent(field: Field, m: np.ndarray) -> bool:
    return field.is_zero(matrix_power(field, m, m.shape[0]))


def is_invertible(field: Field, m: np.ndarray) -> bool:
    return m.shape[0] == 0 or rank(field, m) == m.shape[0]
