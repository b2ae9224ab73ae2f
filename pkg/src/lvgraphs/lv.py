"""Lotka-Volterra systems attached to skew-symmetric graphs, and their linear morphisms.

A linear map between LV phase spaces is stored as an exact matrix ``B`` whose
rows are indexed by codomain vertices ``u`` and columns by domain vertices
``s``: the pulled-back coordinate is ``phi^* y_u = sum_s B[u][s] x_s``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from . import exact
from .errors import (
    DimensionMismatch,
    NotLVMorphism,
    NotMorphism,
    NotSurjective,
    PreconditionFailed,
)
from .graphs import (
    BRUTE_FORCE_LIMIT,
    GraphMap,
    SkewGraph,
    automorphisms_brute,
    declone,
    is_graph_morphism,
    is_irreducible,
)


@dataclass(frozen=True)
class LVSystem:
    """The Hamiltonian system with bracket ``{x_s, x_t} = a_st x_s x_t`` and ``H = sum x_s``."""

    graph: SkewGraph

    @property
    def dimension(self) -> int:
        return self.graph.order

    @property
    def labels(self) -> tuple[str, ...]:
        return self.graph.vertices

    def bracket_coefficient(self, s: str, t: str) -> Fraction:
        return self.graph.a(s, t)

    def hamiltonian(self, x) -> float:
        return float(np.sum(x))

    def vector_field(self, x) -> np.ndarray:
        return vector_field(self, x)

    def __repr__(self) -> str:
        return f"LVSystem(dimension={self.dimension}, vertices={list(self.labels)})"


def lv_of_graph(g: SkewGraph) -> LVSystem:
    return LVSystem(g)


class _FloatMatrixCache:
    # float copies of adjacency matrices, keyed by graph identity
    def __init__(self):
        self._cache: dict[int, tuple[SkewGraph, np.ndarray]] = {}

    def get(self, g: SkewGraph) -> np.ndarray:
        hit = self._cache.get(id(g))
        if hit is not None and hit[0] is g:
            return hit[1]
        arr = g.to_numpy()
        arr.setflags(write=False)
        if len(self._cache) > 256:
            self._cache.clear()
        self._cache[id(g)] = (g, arr)
        return arr


_float_matrices = _FloatMatrixCache()


def float_matrix(sys: LVSystem) -> np.ndarray:
    return _float_matrices.get(sys.graph)


def vector_field(sys: LVSystem, x) -> np.ndarray:
    """``xdot_s = x_s * sum_t a_st x_t`` in double precision."""
    x = np.asarray(x, dtype=float)
    if x.shape != (sys.dimension,):
        raise DimensionMismatch(f"expected a point of length {sys.dimension}, got shape {x.shape}")
    return x * (float_matrix(sys) @ x)


def rank(sys: LVSystem) -> int:
    return exact.rank(sys.graph.matrix)


@dataclass(frozen=True)
class CasimirMonomial:
    """The Casimir ``prod_s x_s ** exponents[s]`` of an LV bracket."""

    system: LVSystem
    exponents: tuple[int, ...]

    def __post_init__(self):
        if len(self.exponents) != self.system.dimension:
            raise DimensionMismatch("one exponent per vertex is required")
        for row in self.system.graph.matrix:
            if sum(a * e for a, e in zip(row, self.exponents)) != 0:
                raise ValueError(f"{self.exponents} is not a null vector of the adjacency matrix")

    def __call__(self, x) -> float:
        x = np.asarray(x, dtype=float)
        return float(np.prod(x ** np.asarray(self.exponents, dtype=float)))

    def evaluate_many(self, states) -> np.ndarray:
        states = np.atleast_2d(np.asarray(states, dtype=float))
        return np.prod(states ** np.asarray(self.exponents, dtype=float), axis=1)

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self.system.labels, self.exponents))


def casimir_basis(sys: LVSystem) -> list[CasimirMonomial]:
    """Primitive integer basis of the rational nullspace of the adjacency matrix."""
    basis = exact.nullspace(sys.graph.matrix, sys.dimension)
    return [CasimirMonomial(sys, tuple(exact.primitive_integer(v))) for v in basis]


# -- linear maps -------------------------------------------------------------

@dataclass(frozen=True)
class LinearMap:
    domain: LVSystem
    codomain: LVSystem
    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(exact.as_fraction(v) for v in r) for r in self.matrix)
        if len(rows) != self.codomain.dimension or any(len(r) != self.domain.dimension for r in rows):
            raise DimensionMismatch(
                f"matrix must be {self.codomain.dimension}x{self.domain.dimension} (codomain x domain)"
            )
        object.__setattr__(self, "matrix", rows)

    @classmethod
    def identity(cls, sys: LVSystem) -> "LinearMap":
        return cls(sys, sys, exact.identity(sys.dimension))

    def entry(self, u: str, s: str) -> Fraction:
        return self.matrix[self.codomain.graph.index(u)][self.domain.graph.index(s)]

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        """``self @ other`` is self after other."""
        if other.codomain.graph != self.domain.graph:
            raise DimensionMismatch("composition needs other.codomain == self.domain")
        return LinearMap(other.domain, self.codomain, exact.matmul(self.matrix, other.matrix))

    def inverse(self) -> "LinearMap":
        inv = exact.inverse(self.matrix) if self.domain.dimension == self.codomain.dimension else None
        if inv is None:
            raise ValueError("map is not invertible")
        return LinearMap(self.codomain, self.domain, inv)

    def rank(self) -> int:
        return exact.rank(self.matrix)

    def is_surjective(self) -> bool:
        return self.rank() == self.codomain.dimension

    def to_numpy(self) -> np.ndarray:
        return np.array([[float(v) for v in r] for r in self.matrix], dtype=float).reshape(
            self.codomain.dimension, self.domain.dimension
        )

    def apply(self, x) -> np.ndarray:
        return self.to_numpy() @ np.asarray(x, dtype=float)

    def to_json(self) -> dict:
        return {"rows": [[str(v) for v in r] for r in self.matrix]}


def poisson_condition_holds(phi: LinearMap) -> bool:
    """Coefficient test for ``{phi^* y_u, phi^* y_v} = phi^* {y_u, y_v}``.

    For all s, t, u, v:
    (a'_uv - a_st) B_us B_vt + (a'_uv + a_st) B_ut B_vs = 0.
    """
    a = phi.domain.graph.matrix
    ap = phi.codomain.graph.matrix
    b = phi.matrix
    n, m = phi.domain.dimension, phi.codomain.dimension
    support = [[s for s in range(n) if b[u][s]] for u in range(m)]
    for u in range(m):
        bu = b[u]
        for v in range(m):
            apuv = ap[u][v]
            bv = b[v]
            # only pairs (s, t) with some nonzero product can violate the condition
            for s in support[u]:
                for t in support[v]:
                    if (apuv - a[s][t]) * bu[s] * bv[t] + (apuv + a[s][t]) * bu[t] * bv[s] != 0:
                        return False
    return True


def preserves_hamiltonian(phi: LinearMap) -> bool:
    """``phi^* H' = H`` holds exactly when every column of the matrix sums to 1."""
    b = phi.matrix
    return all(sum((row[s] for row in b), Fraction(0)) == 1 for s in range(phi.domain.dimension))


def is_lv_morphism(phi: LinearMap) -> bool:
    return preserves_hamiltonian(phi) and poisson_condition_holds(phi)


def lv_of_morphism(m: GraphMap) -> LinearMap:
    """Linear extension of a graph morphism: ``phi^* y_u = sum_{m(s) = u} x_s``."""
    if not is_graph_morphism(m):
        raise NotMorphism("map is not a graph morphism")
    dom, cod = m.domain, m.codomain
    rows = [[Fraction(0)] * dom.order for _ in range(cod.order)]
    for j, s in enumerate(dom.vertices):
        rows[cod.index(m(s))][j] = Fraction(1)
    return LinearMap(LVSystem(dom), LVSystem(cod), rows)


def decloning_lvmap(g: SkewGraph) -> LinearMap:
    """Coordinate-summing surjection onto the decloned system."""
    return lv_of_morphism(declone(g).projection)


@dataclass(frozen=True)
class NormalFormPartition:
    parts: dict[str, tuple[str, ...]]

    def part_of(self, s: str) -> str:
        for u, part in self.parts.items():
            if s in part:
                return u
        raise KeyError(s)


def normal_form(phi: LinearMap) -> NormalFormPartition:
    """Partition ``S_u = {s : B_us != 0}`` of a surjective LV morphism onto an irreducible system.

    Every consequence of the normal-form theorem is checked; a violation
    means the input did not satisfy the preconditions.
    """
    if not is_lv_morphism(phi):
        raise PreconditionFailed("map is not an LV morphism")
    if not phi.is_surjective():
        raise PreconditionFailed("map is not surjective")
    if not is_irreducible(phi.codomain.graph):
        raise PreconditionFailed("codomain system is reducible")
    dom, cod = phi.domain.graph, phi.codomain.graph
    b = phi.matrix
    parts = {}
    for i, u in enumerate(cod.vertices):
        part = []
        for j, s in enumerate(dom.vertices):
            if b[i][j] != 0:
                if b[i][j] != 1:
                    raise PreconditionFailed(f"coefficient {b[i][j]} at ({u}, {s}) is not 1")
                part.append(s)
        if not part:
            raise PreconditionFailed(f"empty part for {u!r}")
        parts[u] = tuple(part)
    for j, s in enumerate(dom.vertices):
        if sum(1 for i in range(cod.order) if b[i][j] != 0) != 1:
            raise PreconditionFailed(f"column {s!r} does not contain exactly one 1")
    for u, su in parts.items():
        for v, sv in parts.items():
            if u == v:
                continue
            target = cod.a(u, v)
            if any(dom.a(s, t) != target for s in su for t in sv):
                raise PreconditionFailed(f"arc values between parts {u!r}, {v!r} are not constant")
    return NormalFormPartition(parts)


def declone_lv_morphism(phi: LinearMap) -> LinearMap:
    """Induced LV morphism between the decloned systems of a surjective LV morphism."""
    if not is_lv_morphism(phi):
        raise NotLVMorphism("map is not an LV morphism")
    if not phi.is_surjective():
        raise NotSurjective("only surjective LV morphisms can be decloned")
    d_dom = declone(phi.domain.graph)
    p = decloning_lvmap(phi.domain.graph)
    p2 = decloning_lvmap(phi.codomain.graph)
    composite = p2 @ phi
    parts = normal_form(composite)
    qd, qc = d_dom.quotient, p2.codomain.graph
    rows = [[Fraction(0)] * qd.order for _ in range(qc.order)]
    for cls in d_dom.classes:
        owner = {parts.part_of(s) for s in cls}
        if len(owner) != 1:
            raise PreconditionFailed(f"clone class {cls} is split by the normal form")
        rows[qc.index(owner.pop())][qd.index(cls[0])] = Fraction(1)
    result = LinearMap(p.codomain, p2.codomain, rows)
    if (result @ p).matrix != composite.matrix:
        raise AssertionError("decloning square does not commute")
    return result


# -- automorphisms -------------------------------------------------------------

def glplus_block(size: int, rng: np.random.Generator, low: int = -3, high: int = 3) -> list[list[Fraction]]:
    """Random invertible integer matrix whose columns each sum to 1."""
    if size == 1:
        return [[Fraction(1)]]
    while True:
        top = rng.integers(low, high + 1, size=(size - 1, size))
        last = 1 - top.sum(axis=0)
        block = [[Fraction(int(v)) for v in r] for r in top] + [[Fraction(int(v)) for v in last]]
        if exact.rank(block) == size:
            return block


def glplus_sample(g: SkewGraph, seed=None) -> LinearMap:
    """Random LV automorphism acting by a GL+ block on every clone class."""
    rng = np.random.default_rng(seed)
    d = declone(g)
    n = g.order
    rows = [[Fraction(0)] * n for _ in range(n)]
    for cls in d.classes:
        idx = [g.index(s) for s in cls]
        block = glplus_block(len(idx), rng)
        for bi, i in enumerate(idx):
            for bj, j in enumerate(idx):
                rows[i][j] = block[bi][bj]
    sys = LVSystem(g)
    return LinearMap(sys, sys, rows)


def block_map(g: SkewGraph, blocks: Mapping[str, Sequence[Sequence]]) -> LinearMap:
    """Block-diagonal map on clone classes; classes are keyed by their representative.

    Classes without an entry get the identity block.
    """
    d = declone(g)
    n = g.order
    rows = exact.identity(n)
    for rep, block in blocks.items():
        idx = [g.index(s) for s in d.class_of(rep)]
        if len(block) != len(idx) or any(len(r) != len(idx) for r in block):
            raise DimensionMismatch(f"block for {rep!r} must be {len(idx)}x{len(idx)}")
        for bi, i in enumerate(idx):
            for bj, j in enumerate(idx):
                rows[i][j] = exact.as_fraction(block[bi][bj])
    sys = LVSystem(g)
    return LinearMap(sys, sys, rows)


@dataclass(frozen=True)
class AutDescription:
    """Shape of Aut(LV(g)): one GL+ factor per quotient vertex, then the finite factor."""

    quotient_aut_order: int
    glplus_block_sizes: tuple[int, ...]

    @property
    def graph_aut_order(self) -> int:
        """|Aut(g)|, obtained by replacing each GL+ block by its permutation subgroup."""
        return math.prod(math.factorial(b) for b in self.glplus_block_sizes) * self.quotient_aut_order

    @property
    def is_finite(self) -> bool:
        return all(b == 1 for b in self.glplus_block_sizes)


def aut_description(g: SkewGraph, limit: int = BRUTE_FORCE_LIMIT) -> AutDescription:
    d = declone(g)
    order = automorphisms_brute(d.quotient, d.weights, limit=limit).order
    return AutDescription(order, tuple(d.weights[s] for s in d.quotient.vertices))
