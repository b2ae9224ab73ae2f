"""JSON graph files and linear-map serialization.

Graph file layout::

    {"vertices": ["s", "t"], "arcs": [["s", "t", "-3/2"]], "weights": {"s": 2}}

Arc values are integer or ``p/q`` strings, each arc listed once; ``weights``
is optional and missing vertices default to weight 1.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Mapping

from .errors import LVGraphError
from .graphs import SkewGraph, check_weights
from .lv import LinearMap, LVSystem


class GraphFileError(LVGraphError):
    """Malformed graph or map JSON; the message names the offending field."""


def _parse_value(raw, where: str) -> Fraction:
    if isinstance(raw, bool) or not isinstance(raw, (str, int)):
        raise GraphFileError(f"{where}: expected an integer or a 'p/q' string, got {raw!r}")
    try:
        return Fraction(raw)
    except (ValueError, ZeroDivisionError) as exc:
        raise GraphFileError(f"{where}: cannot parse {raw!r} as a rational ({exc})") from None


def graph_from_dict(data) -> tuple[SkewGraph, dict[str, int]]:
    if not isinstance(data, dict):
        raise GraphFileError("top level: expected an object")
    verts = data.get("vertices")
    if not isinstance(verts, list) or not all(isinstance(v, str) for v in verts):
        raise GraphFileError("'vertices': expected a list of strings")
    arcs_raw = data.get("arcs", [])
    if not isinstance(arcs_raw, list):
        raise GraphFileError("'arcs': expected a list")
    arcs = []
    for i, arc in enumerate(arcs_raw):
        where = f"'arcs'[{i}]"
        if not isinstance(arc, list) or len(arc) != 3:
            raise GraphFileError(f"{where}: expected [source, target, value]")
        s, t, raw = arc
        if not isinstance(s, str) or not isinstance(t, str):
            raise GraphFileError(f"{where}: endpoints must be vertex label strings")
        arcs.append((s, t, _parse_value(raw, where)))
    try:
        g = SkewGraph(verts, arcs)
    except LVGraphError as exc:
        raise GraphFileError(f"graph: {exc}") from None
    weights_raw = data.get("weights")
    if weights_raw is None:
        return g, {s: 1 for s in g.vertices}
    if not isinstance(weights_raw, dict):
        raise GraphFileError("'weights': expected an object mapping labels to positive integers")
    weights = {s: 1 for s in g.vertices}
    for s, w in weights_raw.items():
        if isinstance(w, bool) or not isinstance(w, int):
            raise GraphFileError(f"'weights'[{s!r}]: expected a positive integer, got {w!r}")
        weights[s] = w
    try:
        weights = check_weights(g, weights)
    except LVGraphError as exc:
        raise GraphFileError(f"'weights': {exc}") from None
    return g, weights


def graph_to_dict(g: SkewGraph, weights: Mapping[str, int] | None = None) -> dict:
    out = {
        "vertices": list(g.vertices),
        "arcs": [[s, t, str(v)] for s, t, v in g.arcs()],
    }
    if weights is not None and any(w != 1 for w in weights.values()):
        out["weights"] = {s: int(weights[s]) for s in g.vertices}
    return out


def loads_graph(text: str) -> tuple[SkewGraph, dict[str, int]]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFileError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return graph_from_dict(data)


def load_graph(path) -> tuple[SkewGraph, dict[str, int]]:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise GraphFileError(f"{path}: {exc.strerror}") from None
    try:
        return loads_graph(text)
    except GraphFileError as exc:
        raise GraphFileError(f"{path}: {exc}") from None


def dumps_graph(g: SkewGraph, weights: Mapping[str, int] | None = None) -> str:
    return json.dumps(graph_to_dict(g, weights), indent=2)


def linear_map_from_dict(data, domain: LVSystem, codomain: LVSystem) -> LinearMap:
    if not isinstance(data, dict) or not isinstance(data.get("rows"), list):
        raise GraphFileError("linear map: expected {\"rows\": [[...], ...]}")
    rows = []
    for i, row in enumerate(data["rows"]):
        if not isinstance(row, list):
            raise GraphFileError(f"'rows'[{i}]: expected a list")
        rows.append([_parse_value(v, f"'rows'[{i}][{j}]") for j, v in enumerate(row)])
    try:
        return LinearMap(domain, codomain, rows)
    except LVGraphError as exc:
        raise GraphFileError(f"linear map: {exc}") from None
