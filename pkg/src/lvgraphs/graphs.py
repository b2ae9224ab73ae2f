"""Skew-symmetric graphs, weighted graphs and their morphisms.

A skew-symmetric graph is a finite ordered vertex list together with an exact
rational adjacency ``a[s, t] = -a[t, s]``.  Weights are plain ``dict``
objects mapping vertex labels to positive integers.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import (
    DuplicateVertex,
    NotMorphism,
    NotSurjective,
    SelfLoop,
    SkewConflict,
    TooLarge,
    UnknownLabel,
    WeightDomainMismatch,
)
from .exact import as_fraction

BRUTE_FORCE_LIMIT = 9

ZERO = Fraction(0)


class SkewGraph:
    """Immutable skew-symmetric graph with exact rational arc values."""

    __slots__ = ("_vertices", "_index", "_rows")

    def __init__(self, vertices: Iterable[str], arcs: Iterable[tuple] = ()):
        vertices = tuple(str(v) for v in vertices)
        index = {}
        for i, v in enumerate(vertices):
            if v in index:
                raise DuplicateVertex(f"vertex {v!r} listed twice")
            index[v] = i
        n = len(vertices)
        rows = [[ZERO] * n for _ in range(n)]
        given = {}
        for arc in arcs:
            s, t, value = arc
            s, t = str(s), str(t)
            for label in (s, t):
                if label not in index:
                    raise UnknownLabel(f"arc endpoint {label!r} is not a vertex")
            value = as_fraction(value)
            if s == t:
                if value != 0:
                    raise SelfLoop(f"nonzero diagonal value {value} at {s!r}")
                continue
            if (s, t) in given and given[s, t] != value:
                raise SkewConflict(f"arc {s!r}->{t!r} given twice with different values")
            if (t, s) in given and given[t, s] != -value:
                raise SkewConflict(
                    f"a[{s},{t}] = {value} but a[{t},{s}] = {given[t, s]}; must be opposite"
                )
            given[s, t] = value
            i, j = index[s], index[t]
            rows[i][j] = value
            rows[j][i] = -value
        self._vertices = vertices
        self._index = index
        self._rows = tuple(tuple(r) for r in rows)

    @classmethod
    def from_matrix(cls, vertices: Iterable[str], matrix: Sequence[Sequence]) -> "SkewGraph":
        vertices = tuple(str(v) for v in vertices)
        n = len(vertices)
        if len(matrix) != n or any(len(r) != n for r in matrix):
            raise ValueError(f"matrix must be {n}x{n}")
        m = [[as_fraction(v) for v in row] for row in matrix]
        for i in range(n):
            if m[i][i] != 0:
                raise SelfLoop(f"nonzero diagonal value at {vertices[i]!r}")
            for j in range(i):
                if m[i][j] != -m[j][i]:
                    raise SkewConflict(f"matrix not skew at ({vertices[i]}, {vertices[j]})")
        arcs = [(vertices[i], vertices[j], m[i][j]) for i in range(n) for j in range(i + 1, n) if m[i][j]]
        return cls(vertices, arcs)

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def order(self) -> int:
        return len(self._vertices)

    def __len__(self) -> int:
        return len(self._vertices)

    def __contains__(self, label) -> bool:
        return label in self._index

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabel(f"{label!r} is not a vertex") from None

    def a(self, s: str, t: str) -> Fraction:
        return self._rows[self.index(s)][self.index(t)]

    def row(self, s: str) -> tuple[Fraction, ...]:
        return self._rows[self.index(s)]

    @property
    def matrix(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def to_numpy(self) -> np.ndarray:
        n = self.order
        return np.array([[float(v) for v in r] for r in self._rows], dtype=float).reshape(n, n)

    def arcs(self) -> Iterator[tuple[str, str, Fraction]]:
        """Nonzero arcs, each listed once with the earlier vertex first."""
        v = self._vertices
        for i, row in enumerate(self._rows):
            for j in range(i + 1, len(v)):
                if row[j]:
                    yield v[i], v[j], row[j]

    def relabel(self, mapping: Mapping[str, str]) -> "SkewGraph":
        """Rename vertices (vertex order is kept)."""
        new = [mapping.get(v, v) for v in self._vertices]
        return SkewGraph.from_matrix(new, self._rows)

    def reorder(self, order: Sequence[str]) -> "SkewGraph":
        """Same graph with the vertex list permuted into ``order``."""
        if sorted(order) != sorted(self._vertices):
            raise ValueError("reorder needs a permutation of the vertex list")
        idx = [self.index(s) for s in order]
        return SkewGraph.from_matrix(order, [[self._rows[i][j] for j in idx] for i in idx])

    def induced(self, keep: Iterable[str]) -> "SkewGraph":
        keep = set(keep)
        for s in keep:
            self.index(s)
        verts = [v for v in self._vertices if v in keep]
        idx = [self._index[v] for v in verts]
        return SkewGraph.from_matrix(verts, [[self._rows[i][j] for j in idx] for i in idx])

    def __eq__(self, other) -> bool:
        if not isinstance(other, SkewGraph):
            return NotImplemented
        return self._vertices == other._vertices and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self._vertices, self._rows))

    def __repr__(self) -> str:
        arcs = ", ".join(f"{s}->{t}:{v}" for s, t, v in self.arcs())
        return f"SkewGraph({list(self._vertices)}, [{arcs}])"


def new_graph(vertices: Iterable[str], arcs: Iterable[tuple] = ()) -> SkewGraph:
    return SkewGraph(vertices, arcs)


def disjoint_union(g: SkewGraph, h: SkewGraph) -> SkewGraph:
    """Disjoint union; the vertex labels of ``g`` and ``h`` must not overlap."""
    clash = set(g.vertices) & set(h.vertices)
    if clash:
        raise DuplicateVertex(f"labels shared by both graphs: {sorted(clash)}")
    return SkewGraph(g.vertices + h.vertices, list(g.arcs()) + list(h.arcs()))


# -- weights ---------------------------------------------------------------

def unit_weights(g: SkewGraph) -> dict[str, int]:
    return {s: 1 for s in g.vertices}


def check_weights(g: SkewGraph, weights: Mapping[str, int] | None) -> dict[str, int]:
    """Validate a weight vector for ``g``; ``None`` means all ones."""
    if weights is None:
        return unit_weights(g)
    if set(weights) != set(g.vertices):
        missing = set(g.vertices) - set(weights)
        extra = set(weights) - set(g.vertices)
        raise WeightDomainMismatch(f"weights do not match vertices (missing {sorted(missing)}, extra {sorted(extra)})")
    out = {}
    for s in g.vertices:
        w = weights[s]
        if int(w) != w or w < 1:
            raise WeightDomainMismatch(f"weight of {s!r} must be a positive integer, got {w!r}")
        out[s] = int(w)
    return out


def total_weight(weights: Mapping[str, int]) -> int:
    return sum(weights.values())


# -- maps ------------------------------------------------------------------

@dataclass(frozen=True)
class GraphMap:
    """A vertex map between two graphs; a candidate graph morphism."""

    domain: SkewGraph
    codomain: SkewGraph
    mapping: Mapping[str, str]

    def __post_init__(self):
        mapping = dict(self.mapping)
        if set(mapping) != set(self.domain.vertices):
            raise UnknownLabel("map must be defined on exactly the domain vertices")
        for s, u in mapping.items():
            if u not in self.codomain:
                raise UnknownLabel(f"image {u!r} of {s!r} is not a codomain vertex")
        object.__setattr__(self, "mapping", mapping)

    def __call__(self, s: str) -> str:
        return self.mapping[s]

    @classmethod
    def identity(cls, g: SkewGraph) -> "GraphMap":
        return cls(g, g, {s: s for s in g.vertices})

    def is_surjective(self) -> bool:
        return set(self.mapping.values()) == set(self.codomain.vertices)

    def is_bijective(self) -> bool:
        return self.is_surjective() and len(self.domain) == len(self.codomain)

    def inverse(self) -> "GraphMap":
        if not self.is_bijective():
            raise ValueError("only bijective maps can be inverted")
        return GraphMap(self.codomain, self.domain, {u: s for s, u in self.mapping.items()})

    def __matmul__(self, other: "GraphMap") -> "GraphMap":
        """``self @ other`` is the composition self after other."""
        if other.codomain != self.domain:
            raise ValueError("composition needs other.codomain == self.domain")
        return GraphMap(other.domain, self.codomain, {s: self.mapping[u] for s, u in other.mapping.items()})


def is_graph_morphism(m: GraphMap) -> bool:
    g, h = m.domain, m.codomain
    img = [h.index(m.mapping[s]) for s in g.vertices]
    hm = h.matrix
    for i, row in enumerate(g.matrix):
        hrow = hm[img[i]]
        for j, v in enumerate(row):
            if hrow[img[j]] != v:
                return False
    return True


def is_weighted_morphism(m: GraphMap, weights: Mapping[str, int], cod_weights: Mapping[str, int]) -> bool:
    weights = check_weights(m.domain, weights)
    cod_weights = check_weights(m.codomain, cod_weights)
    if not is_graph_morphism(m):
        return False
    return all(cod_weights[m.mapping[s]] <= weights[s] for s in m.domain.vertices)


# -- cloning and decloning -------------------------------------------------

def clone_label(s: str, i: int) -> str:
    return f"{s}#{i}"


def clone_graph(g: SkewGraph, weights: Mapping[str, int]) -> SkewGraph:
    """Replace every vertex ``s`` by ``weights[s]`` clones ``s#1 .. s#w``."""
    weights = check_weights(g, weights)
    owner = []
    for s in g.vertices:
        owner.extend((s, clone_label(s, i)) for i in range(1, weights[s] + 1))
    labels = [c for _, c in owner]
    arcs = []
    for p, (s, cs) in enumerate(owner):
        for t, ct in owner[p + 1:]:
            v = g.a(s, t)
            if v:
                arcs.append((cs, ct, v))
    return SkewGraph(labels, arcs)


def is_irreducible(g: SkewGraph) -> bool:
    rows = g.matrix
    return len(set(rows)) == len(rows)


@dataclass(frozen=True)
class DecloneResult:
    quotient: SkewGraph
    weights: dict[str, int]
    projection: GraphMap
    classes: tuple[tuple[str, ...], ...]

    def class_of(self, rep: str) -> tuple[str, ...]:
        return self.classes[self.quotient.index(rep)]


def declone(g: SkewGraph) -> DecloneResult:
    """Identify vertices with identical adjacency rows.

    Each class is represented by its first member in vertex order; that label
    names the quotient vertex.
    """
    groups: dict[tuple, list[str]] = {}
    for s, row in zip(g.vertices, g.matrix):
        groups.setdefault(row, []).append(s)
    classes = tuple(tuple(c) for c in groups.values())
    reps = [c[0] for c in classes]
    quotient = g.induced(reps)
    rep_of = {s: c[0] for c in classes for s in c}
    return DecloneResult(
        quotient=quotient,
        weights={c[0]: len(c) for c in classes},
        projection=GraphMap(g, quotient, rep_of),
        classes=classes,
    )


def declone_morphism(m: GraphMap) -> GraphMap:
    """The morphism induced between the decloned graphs by a surjective morphism."""
    if not is_graph_morphism(m):
        raise NotMorphism("map is not a graph morphism")
    if not m.is_surjective():
        raise NotSurjective("only surjective graph morphisms can be decloned")
    p = declone(m.domain).projection
    q = declone(m.codomain).projection
    induced = {}
    for s in m.domain.vertices:
        rep, img = p(s), q(m(s))
        if induced.setdefault(rep, img) != img:
            # cannot happen for a surjective morphism
            raise NotMorphism(f"class of {s!r} has several images")
    return GraphMap(p.codomain, q.codomain, induced)


# -- automorphisms and isomorphisms ------------------------------------------

@dataclass(frozen=True)
class PermutationGroup:
    """All elements of a permutation group acting on the vertices of ``graph``.

    An element is a tuple ``img`` with ``img[i]`` the index of the image of
    vertex ``i``.
    """

    graph: SkewGraph
    elements: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def maps(self) -> list[GraphMap]:
        v = self.graph.vertices
        return [GraphMap(self.graph, self.graph, {v[i]: v[j] for i, j in enumerate(e)}) for e in self.elements]

    def verify(self, full_closure_limit: int = 2000) -> None:
        """Check identity, inverses and (for small groups) closure."""
        elems = set(self.elements)
        n = self.graph.order
        ident = tuple(range(n))
        if ident not in elems:
            raise AssertionError("identity missing")
        for e in self.elements:
            inv = [0] * n
            for i, j in enumerate(e):
                inv[j] = i
            if tuple(inv) not in elems:
                raise AssertionError(f"inverse of {e} missing")
        if len(elems) <= full_closure_limit:
            for a in self.elements:
                for b in self.elements:
                    if tuple(a[b[i]] for i in range(n)) not in elems:
                        raise AssertionError("not closed under composition")

    def generators(self) -> list[tuple[int, ...]]:
        """A small generating set, picked greedily in element order."""
        n = self.graph.order
        ident = tuple(range(n))
        span = {ident}
        gens = []
        for e in self.elements:
            if e in span:
                continue
            gens.append(e)
            frontier = list(span)
            while frontier:
                nxt = []
                for a in frontier:
                    for g in gens:
                        c = tuple(g[a[i]] for i in range(n))
                        if c not in span:
                            span.add(c)
                            nxt.append(c)
                frontier = nxt
            if len(span) == len(self.elements):
                break
        return gens


def _colors(g: SkewGraph, labels: Sequence) -> list:
    # invariant per vertex: own label plus the multiset of (value, label) pairs in its row
    out = []
    for i, row in enumerate(g.matrix):
        out.append((labels[i], tuple(sorted(Counter(zip(row, labels)).items()))))
    return out


def _matches(g: SkewGraph, h: SkewGraph, g_labels: Sequence, h_labels: Sequence) -> Iterator[tuple[int, ...]]:
    """Backtracking search for all bijections preserving adjacency and labels."""
    n = g.order
    if h.order != n:
        return
    cg, ch = _colors(g, g_labels), _colors(h, h_labels)
    if Counter(cg) != Counter(ch):
        return
    candidates = [[j for j in range(n) if ch[j] == cg[i]] for i in range(n)]
    # assign most constrained vertices first
    order = sorted(range(n), key=lambda i: len(candidates[i]))
    ga, ha = g.matrix, h.matrix
    img = [-1] * n
    used = [False] * n

    def extend(depth):
        if depth == n:
            yield tuple(img)
            return
        i = order[depth]
        gi = ga[i]
        for j in candidates[i]:
            if used[j]:
                continue
            hj = ha[j]
            ok = True
            for d in range(depth):
                k = order[d]
                if gi[k] != hj[img[k]]:
                    ok = False
                    break
            if not ok:
                continue
            img[i] = j
            used[j] = True
            yield from extend(depth + 1)
            used[j] = False
            img[i] = -1

    yield from extend(0)


def automorphisms_brute(g: SkewGraph, weights: Mapping[str, int] | None = None, limit: int = BRUTE_FORCE_LIMIT) -> PermutationGroup:
    """Every vertex permutation preserving arc values (and weights, if given)."""
    if g.order > limit:
        raise TooLarge(f"graph of order {g.order} exceeds the brute-force limit {limit}")
    w = check_weights(g, weights) if weights is not None else None
    labels = [w[s] for s in g.vertices] if w else [0] * g.order
    elements = tuple(sorted(_matches(g, g, labels, labels)))
    group = PermutationGroup(g, elements)
    group.verify()
    return group


def aut_order_decomposed(g: SkewGraph, limit: int = BRUTE_FORCE_LIMIT) -> int:
    """|Aut(g)| as the product of clone-class factorials and the weighted quotient's |Aut|."""
    d = declone(g)
    if d.quotient.order > limit:
        raise TooLarge(f"decloned graph of order {d.quotient.order} exceeds the limit {limit}")
    quotient_order = automorphisms_brute(d.quotient, d.weights, limit=limit).order
    return math.prod(math.factorial(w) for w in d.weights.values()) * quotient_order


def are_isomorphic(
    g: SkewGraph,
    h: SkewGraph,
    weighted: tuple[Mapping[str, int], Mapping[str, int]] | None = None,
    limit: int = BRUTE_FORCE_LIMIT,
) -> GraphMap | None:
    """Return an isomorphism ``g -> h`` or None.

    The search runs on the decloned graphs and is lifted back by pairing up
    clones class by class.  With ``weighted=(w, w2)`` the result also maps
    each vertex to one of equal weight.
    """
    if g.order != h.order:
        return None
    if weighted is not None:
        wg, wh = check_weights(g, weighted[0]), check_weights(h, weighted[1])
    else:
        wg, wh = unit_weights(g), unit_weights(h)
    dg, dh = declone(g), declone(h)
    if dg.quotient.order != dh.quotient.order:
        return None
    if dg.quotient.order > limit:
        raise TooLarge(f"decloned graph of order {dg.quotient.order} exceeds the limit {limit}")

    def class_labels(d, w):
        return [(len(c), tuple(sorted(w[s] for s in c))) for c in d.classes]

    lg, lh = class_labels(dg, wg), class_labels(dh, wh)
    match = next(_matches(dg.quotient, dh.quotient, lg, lh), None)
    if match is None:
        return None
    mapping = {}
    for ci, cj in enumerate(match):
        src = sorted(dg.classes[ci], key=lambda s: wg[s])
        dst = sorted(dh.classes[cj], key=lambda s: wh[s])
        mapping.update(zip(src, dst))
    return GraphMap(g, h, mapping)
