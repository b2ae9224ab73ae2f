"""Constructors for the classical integrable LV graphs (vertex labels "1".."n")."""
from __future__ import annotations

from typing import Iterable

from .errors import BadParameter
from .graphs import SkewGraph


def _labels(n: int) -> list[str]:
    return [str(i) for i in range(1, n + 1)]


def km(n: int) -> SkewGraph:
    """Periodic Kac-van Moerbeke system: the directed n-circuit."""
    if n < 3:
        raise BadParameter(f"KM(n) needs n >= 3, got {n}")
    return bogo(n, 1)


def bogo(n: int, k: int) -> SkewGraph:
    """Bogoyavlenskij system B(n, k): an arrow from each vertex to the next k (cyclically)."""
    if n < 3 or not 1 <= k or not 2 * k < n:
        raise BadParameter(f"B(n, k) needs 1 <= k < n/2, got n={n}, k={k}")
    v = _labels(n)
    arcs = [(v[i], v[(i + j) % n], 1) for i in range(n) for j in range(1, k + 1)]
    return SkewGraph(v, arcs)


def lv_n0(n: int) -> SkewGraph:
    """LV(n, 0): the transitive tournament, a_ij = 1 for i < j."""
    if n < 1:
        raise BadParameter(f"LV(n, 0) needs n >= 1, got {n}")
    v = _labels(n)
    return SkewGraph(v, [(v[i], v[j], 1) for i in range(n) for j in range(i + 1, n)])


def open_km(n: int) -> SkewGraph:
    """Open (non-periodic) KM chain 1 -> 2 -> ... -> n."""
    if n < 2:
        raise BadParameter(f"open KM(n) needs n >= 2, got {n}")
    v = _labels(n)
    return SkewGraph(v, [(v[i], v[i + 1], 1) for i in range(n - 1)])


def delete_vertices(g: SkewGraph, drop: Iterable[str]) -> SkewGraph:
    """Induced subgraph on the remaining vertices (the reduction x_s = 0 for dropped s)."""
    drop = {str(s) for s in drop}
    for s in drop:
        g.index(s)
    return g.induced(v for v in g.vertices if v not in drop)


FAMILIES = {"km": km, "bogo": bogo, "lv_n0": lv_n0, "open_km": open_km}
