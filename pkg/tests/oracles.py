"""Reference implementations used only by the tests.

Each one takes a deliberately different route from the library code:
sympy for exact linear algebra, plain permutation enumeration for symmetry
groups, polynomial expansion for bracket identities, numpy eigenvalues for
characteristic polynomials and scipy for ODE solutions.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from fractions import Fraction

import numpy as np
import sympy


def sympy_matrix(rows):
    return sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in r] for r in rows])


def rank(rows) -> int:
    if not rows:
        return 0
    return sympy_matrix(rows).rank()


def nullspace_span(rows, n_cols):
    """Reduced row echelon form of the nullspace basis, as a canonical span fingerprint."""
    if not rows:
        basis = [sympy.eye(n_cols)[:, i] for i in range(n_cols)]
    else:
        basis = sympy_matrix(rows).nullspace()
    if not basis:
        return ()
    m = sympy.Matrix.hstack(*basis).T
    return tuple(tuple(r) for r in m.rref()[0].tolist() if any(r))


def span_fingerprint(vectors, n_cols):
    if not vectors:
        return ()
    m = sympy.Matrix([[sympy.Rational(int(v)) if isinstance(v, int) else sympy.Rational(v.numerator, v.denominator) for v in vec] for vec in vectors])
    return tuple(tuple(r) for r in m.rref()[0].tolist() if any(r))


def aut_order(matrix, labels=None) -> int:
    """Count permutations p with a[p(i)][p(j)] = a[i][j] (and equal labels) by enumeration."""
    n = len(matrix)
    labels = labels or [0] * n
    count = 0
    for p in itertools.permutations(range(n)):
        if any(labels[p[i]] != labels[i] for i in range(n)):
            continue
        if all(matrix[p[i]][p[j]] == matrix[i][j] for i in range(n) for j in range(n)):
            count += 1
    return count


def isomorphic(a, b) -> bool:
    n = len(a)
    if n != len(b):
        return False
    return any(
        all(b[p[i]][p[j]] == a[i][j] for i in range(n) for j in range(n))
        for p in itertools.permutations(range(n))
    )


def poisson_defect(a, ap, b) -> dict:
    """Nonzero coefficients of {phi* y_u, phi* y_v} - phi*{y_u, y_v}, by expanding both sides.

    Keys are (u, v, s, t) with s <= t naming the monomial x_s x_t.
    """
    m, n = len(b), len(a)
    out = {}
    for u in range(m):
        for v in range(m):
            poly = defaultdict(Fraction)
            for s in range(n):
                for t in range(n):
                    key = (min(s, t), max(s, t))
                    poly[key] += b[u][s] * b[v][t] * a[s][t]
                    poly[key] -= ap[u][v] * b[u][s] * b[v][t]
            for key, c in poly.items():
                if c != 0:
                    out[(u, v) + key] = c
    return out


def char_poly(a: np.ndarray) -> np.ndarray:
    """Coefficients c_0..c_{n-1} of det(mu I - a) via eigenvalues."""
    return np.real(np.poly(np.linalg.eigvals(a)))[::-1][:-1]


def lv_solution(a: np.ndarray, x0, t_end: float, n_eval: int = 11):
    from scipy.integrate import solve_ivp

    sol = solve_ivp(lambda t, x: x * (a @ x), (0, t_end), np.asarray(x0, float), method="DOP853",
                    rtol=1e-12, atol=1e-14, t_eval=np.linspace(0, t_end, n_eval))
    return sol.t, sol.y.T
