"""Lax pairs with spectral parameter for Bogoyavlenskij systems and their clones.

Conventions: ``Delta`` is the cyclic shift with ``Delta[i, i+1] = 1`` (indices
mod n), so ``Delta^-1 = Delta.T`` and ``Delta^n = I``.  All x-dependent
entries of the Lax operators are linear in x, which is what
:func:`lax_residual` relies on to form dL/dt.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import BadParameter, DimensionMismatch
from .families import bogo
from .graphs import clone_graph


class PolyMatrix:
    """Square matrix polynomial ``sum_p coeffs[p] * lam**p``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[np.ndarray]):
        coeffs = [np.array(c, dtype=float) for c in coeffs]
        if not coeffs:
            raise ValueError("at least one coefficient matrix is required")
        size = coeffs[0].shape[0]
        for c in coeffs:
            if c.shape != (size, size):
                raise DimensionMismatch("coefficient matrices must share one square shape")
        while len(coeffs) > 1 and not coeffs[-1].any():
            coeffs.pop()
        self.coeffs = coeffs

    @property
    def size(self) -> int:
        return self.coeffs[0].shape[0]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, p: int) -> np.ndarray:
        if p < len(self.coeffs):
            return self.coeffs[p]
        return np.zeros((self.size, self.size))

    def __call__(self, lam: float) -> np.ndarray:
        out = np.zeros((self.size, self.size))
        for c in reversed(self.coeffs):
            out = out * lam + c
        return out

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        deg = max(self.degree, other.degree)
        return PolyMatrix([self.coeff(p) + other.coeff(p) for p in range(deg + 1)])

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        deg = max(self.degree, other.degree)
        return PolyMatrix([self.coeff(p) - other.coeff(p) for p in range(deg + 1)])

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        out = [np.zeros((self.size, self.size)) for _ in range(self.degree + other.degree + 1)]
        for p, a in enumerate(self.coeffs):
            for q, b in enumerate(other.coeffs):
                out[p + q] = out[p + q] + a @ b
        return PolyMatrix(out)

    def equals(self, other: "PolyMatrix") -> bool:
        """Exact entrywise equality of all coefficients."""
        return self.degree == other.degree and all(
            np.array_equal(a, b) for a, b in zip(self.coeffs, other.coeffs)
        )

    def __repr__(self) -> str:
        return f"PolyMatrix(size={self.size}, degree={self.degree})"


def commutator(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    return a @ b - b @ a


def shift_matrix(n: int) -> np.ndarray:
    """Cyclic shift ``Delta`` with ``Delta[i, j] = 1`` iff ``j = i + 1 (mod n)``."""
    if n < 1:
        raise BadParameter("shift matrix needs n >= 1")
    return np.roll(np.eye(n), 1, axis=1)


def _shift_power(n: int, p: int) -> np.ndarray:
    return np.roll(np.eye(n), p % n, axis=1)


def _check_nk(n: int, k: int) -> None:
    if n < 3 or k < 1 or 2 * k >= n:
        raise BadParameter(f"need 1 <= k < n/2, got n={n}, k={k}")


def _m0_diag(x: np.ndarray, k: int) -> np.ndarray:
    # diagonal of sum_{t=k+1}^{n-1} Delta^t diag(x) Delta^-t; entry i is sum_t x[i + t]
    n = len(x)
    out = np.zeros(n)
    for t in range(k + 1, n):
        out = out + np.roll(x, -t)
    return out


def bogo_lax(n: int, k: int, x) -> tuple[PolyMatrix, PolyMatrix]:
    """``L = X Delta^-k + lam Delta`` and ``M = sum_{t=k+1}^{n-1} Delta^t X Delta^-t - lam Delta^{k+1}``."""
    _check_nk(n, k)
    x = np.asarray(x, dtype=float)
    if x.shape != (n,):
        raise DimensionMismatch(f"expected a point of length {n}, got shape {x.shape}")
    delta = shift_matrix(n)
    l0 = np.diag(x) @ _shift_power(n, -k)
    m0 = np.diag(_m0_diag(x, k))
    return PolyMatrix([l0, delta]), PolyMatrix([m0, -_shift_power(n, k + 1)])


@dataclass(frozen=True)
class CloneLayout:
    """Weighted B(n, k): clone coordinates are ordered 1#1, 1#2, ..., n#w_n.

    Internally clone coordinates are padded to an ``(n, N)`` array with zeros
    in the slots ``w_s < i <= N``.
    """

    base_n: int
    k: int
    weights: tuple[int, ...]

    def __post_init__(self):
        _check_nk(self.base_n, self.k)
        weights = tuple(int(w) for w in self.weights)
        if len(weights) != self.base_n or min(weights) < 1:
            raise BadParameter(f"need {self.base_n} positive weights, got {self.weights}")
        object.__setattr__(self, "weights", weights)

    @property
    def N(self) -> int:
        return max(self.weights)

    @property
    def total(self) -> int:
        return sum(self.weights)

    def graph(self):
        base = bogo(self.base_n, self.k)
        return clone_graph(base, dict(zip(base.vertices, self.weights)))

    def pad(self, xc) -> np.ndarray:
        xc = np.asarray(xc, dtype=float)
        if xc.shape != (self.total,):
            raise DimensionMismatch(f"expected {self.total} clone coordinates, got shape {xc.shape}")
        out = np.zeros((self.base_n, self.N))
        pos = 0
        for s, w in enumerate(self.weights):
            out[s, :w] = xc[pos:pos + w]
            pos += w
        return out

    def collapse(self, xc) -> np.ndarray:
        """The decloning map: ``y_s = sum_i x_{s_i}``."""
        return self.pad(xc).sum(axis=1)


def pullback_lax(layout: CloneLayout, xc) -> tuple[PolyMatrix, PolyMatrix]:
    return bogo_lax(layout.base_n, layout.k, layout.collapse(xc))


def block_lax(layout: CloneLayout, xc) -> tuple[PolyMatrix, PolyMatrix]:
    """The ``nN x nN`` pair in which every clone coordinate appears in the Lax operator.

    Block (i, j) of L is ``X^(j) Delta^-k + lam Delta``; block (i, j) of M is
    ``delta_ij sum_r (M0^(r) + Delta^k X^(r) Delta^-k) - Delta^k X^(j) Delta^-k - lam Delta^{k+1}``.
    """
    n, k, N = layout.base_n, layout.k, layout.N
    xp = layout.pad(xc)
    delta = shift_matrix(n)
    shift_k1 = _shift_power(n, k + 1)
    back = _shift_power(n, -k)
    conj = [np.roll(xp[:, r], -k) for r in range(N)]
    m0_sum = sum(_m0_diag(xp[:, r], k) for r in range(N))
    conj_sum = sum(conj)

    l0 = np.zeros((n * N, n * N))
    l1 = np.zeros((n * N, n * N))
    m0 = np.zeros((n * N, n * N))
    m1 = np.zeros((n * N, n * N))
    for i in range(N):
        for j in range(N):
            rows, cols = slice(i * n, (i + 1) * n), slice(j * n, (j + 1) * n)
            l0[rows, cols] = np.diag(xp[:, j]) @ back
            l1[rows, cols] = delta
            if i == j:
                # grouped so that N = 1 reproduces the base M0 bit for bit
                m0[rows, cols] = np.diag(m0_sum + (conj_sum - conj[j]))
            else:
                m0[rows, cols] = -np.diag(conj[j])
            m1[rows, cols] = -shift_k1
    return PolyMatrix([l0, l1]), PolyMatrix([m0, m1])


LAMBDA_SAMPLES = (-2.0, -1.0, 1.0, 2.0, 3.0)


def lax_residual(
    build_L: Callable[[np.ndarray], PolyMatrix],
    build_M: Callable[[np.ndarray], PolyMatrix],
    flow: Callable[[np.ndarray], np.ndarray],
    x,
    lambdas: Sequence[float] = LAMBDA_SAMPLES,
) -> float:
    """Max-abs entry of ``dL/dt - [L, M]`` over the sampled spectral parameters.

    dL/dt is formed by feeding the velocity to ``build_L``; this is exact
    because L is affine in x with only its lam^0 part depending on x.
    """
    x = np.asarray(x, dtype=float)
    xdot = np.asarray(flow(x), dtype=float)
    if xdot.shape != x.shape:
        raise DimensionMismatch("flow output does not match the point's shape")
    L, M = build_L(x), build_M(x)
    Ldot = build_L(xdot).coeff(0) - build_L(np.zeros_like(x)).coeff(0)
    if L.size != M.size or Ldot.shape != (L.size, L.size):
        raise DimensionMismatch("L and M sizes differ")
    worst = 0.0
    for lam in lambdas:
        l, m = L(lam), M(lam)
        worst = max(worst, float(np.max(np.abs(Ldot - (l @ m - m @ l)))))
    return worst


def faddeev_leverrier(a: np.ndarray) -> np.ndarray:
    """Coefficients ``c_0 .. c_{n-1}`` of ``det(mu I - a) = mu^n + sum_j c_j mu^j``."""
    n = a.shape[0]
    coeffs = np.zeros(n)
    m = np.zeros_like(a)
    c = 1.0
    eye = np.eye(n)
    for step in range(1, n + 1):
        m = a @ m + c * eye
        c = -np.trace(a @ m) / step
        coeffs[n - step] = c
    return coeffs


def char_poly_invariants(L: PolyMatrix, lambdas: Sequence[float] = LAMBDA_SAMPLES) -> np.ndarray:
    """One row of char-poly coefficients ``c_0 .. c_{n-1}`` per spectral parameter."""
    return np.array([faddeev_leverrier(L(lam)) for lam in lambdas]).reshape(len(lambdas), L.size)


def faddeev_leverrier_batch(a: np.ndarray) -> np.ndarray:
    """Row-wise :func:`faddeev_leverrier` for a stack of matrices of shape (T, n, n)."""
    t, n, _ = a.shape
    coeffs = np.zeros((t, n))
    m = np.zeros_like(a)
    c = np.ones(t)
    eye = np.eye(n)
    for step in range(1, n + 1):
        m = a @ m + c[:, None, None] * eye
        c = -np.trace(a @ m, axis1=1, axis2=2) / step
        coeffs[:, n - step] = c
    return coeffs


class CharPolyCoefficient:
    """One char-poly coefficient ``c_j(lam)`` of the B(n, k) Lax operator, as a function of x.

    ``evaluate_many`` handles a whole trajectory in a few batched matrix
    products instead of one Python call per state.
    """

    def __init__(self, n: int, k: int, lam: float, j: int):
        _check_nk(n, k)
        self.n, self.k, self.lam, self.j = n, k, float(lam), j
        self._a1 = self.lam * shift_matrix(n)
        self._back = _shift_power(n, -k)

    def evaluate_many(self, states) -> np.ndarray:
        states = np.atleast_2d(np.asarray(states, dtype=float))
        if states.shape[1] != self.n:
            raise DimensionMismatch(f"expected points of length {self.n}, got shape {states.shape}")
        mats = states[:, :, None] * self._back[None] + self._a1[None]
        return faddeev_leverrier_batch(mats)[:, self.j]

    def __call__(self, x) -> float:
        return float(self.evaluate_many(np.asarray(x, dtype=float)[None])[0])

    def __repr__(self) -> str:
        return f"CharPolyCoefficient(n={self.n}, k={self.k}, lam={self.lam:g}, j={self.j})"


def char_poly_observables(n: int, k: int, lambdas: Sequence[float] = LAMBDA_SAMPLES, seed: int = 0) -> dict:
    """Char-poly coefficients of the B(n, k) Lax operator as functions of x.

    Coefficients that vanish identically (for instance the trace, since L has
    a zero diagonal) are dropped; they are detected by evaluating at a few
    random positive points.
    """
    _check_nk(n, k)
    rng = np.random.default_rng(seed)
    probes = rng.uniform(0.5, 1.5, (3, n))
    out = {}
    candidates = [CharPolyCoefficient(n, k, lam, j) for lam in lambdas for j in range(n)]
    values = {id(c): c.evaluate_many(probes) for c in candidates}
    scale = max(float(np.max(np.abs(v))) for v in values.values())
    for c in candidates:
        if np.max(np.abs(values[id(c)])) <= 1e-12 * scale:
            continue
        out[f"c{c.j}(lam={c.lam:g})"] = c
    return out
