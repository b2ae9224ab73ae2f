"""Exact linear algebra over the rationals.

Matrices are sequences of rows; entries are anything ``Fraction`` accepts.
Nothing here ever touches floating point.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Matrix = Sequence[Sequence[Fraction]]


def as_fraction(value) -> Fraction:
    """Parse an int, Fraction or rational string such as ``"-3/2"``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact values; pass a string or Fraction")
    return Fraction(value)


def to_fractions(rows: Matrix) -> list[list[Fraction]]:
    return [[as_fraction(v) for v in row] for row in rows]


def _integer_rows(rows: Matrix) -> list[list[int]]:
    out = []
    for row in rows:
        row = [as_fraction(v) for v in row]
        den = lcm(*(v.denominator for v in row)) if row else 1
        out.append([int(v * den) for v in row])
    return out


def rank(rows: Matrix) -> int:
    """Rank via fraction-free (Bareiss) elimination on integer-scaled rows."""
    m = _integer_rows(rows)
    if not m or not m[0]:
        return 0
    n_rows, n_cols = len(m), len(m[0])
    r = 0
    prev = 1
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, n_rows):
            for j in range(c + 1, n_cols):
                # exact division is guaranteed by Sylvester's identity
                m[i][j] = (p * m[i][j] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = p
        r += 1
        if r == n_rows:
            break
    return r


def rref(rows: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    m = to_fractions(rows)
    if not m:
        return m, []
    n_rows, n_cols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [v / p for v in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return m, pivots


def nullspace(rows: Matrix, n_cols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right nullspace, one vector per free column."""
    if n_cols is None:
        n_cols = len(rows[0]) if rows else 0
    if not rows:
        return [[Fraction(int(i == j)) for i in range(n_cols)] for j in range(n_cols)]
    r, pivots = rref(rows)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n_cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -r[i][f]
        basis.append(v)
    return basis


def primitive_integer(v: Sequence[Fraction]) -> list[int]:
    """Scale ``v`` to a primitive integer vector whose first nonzero entry is positive."""
    v = [as_fraction(a) for a in v]
    den = lcm(*(a.denominator for a in v)) if v else 1
    ints = [int(a * den) for a in v]
    g = 0
    for a in ints:
        g = gcd(g, a)
    if g == 0:
        return ints
    ints = [a // g for a in ints]
    first = next(a for a in ints if a != 0)
    if first < 0:
        ints = [-a for a in ints]
    return ints


def matmul(a: Matrix, b: Matrix) -> list[list[Fraction]]:
    if a and b and len(a[0]) != len(b):
        raise ValueError(f"shape mismatch: {len(a)}x{len(a[0])} @ {len(b)}x{len(b[0])}")
    n_inner = len(b)
    n_cols = len(b[0]) if b else 0
    return [
        [sum((row[k] * b[k][j] for k in range(n_inner)), Fraction(0)) for j in range(n_cols)]
        for row in a
    ]


def identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def inverse(rows: Matrix) -> list[list[Fraction]] | None:
    """Exact inverse, or None when the matrix is singular."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("inverse of a non-square matrix")
    aug = [list(r) + e for r, e in zip(to_fractions(rows), identity(n))]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in red]
