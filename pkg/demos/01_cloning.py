"""Cloning a weighted 4-circuit and recovering it by decloning.

Run with ``python3 demos/01_cloning.py``.
"""
from lvgraphs import SkewGraph, are_isomorphic, clone_graph, declone, is_irreducible

circuit = SkewGraph("stuv", [("s", "t", 1), ("t", "u", 1), ("u", "v", 1), ("v", "s", 1)])
weights = {"s": 2, "t": 1, "u": 2, "v": 1}

cloned = clone_graph(circuit, weights)
print("cloned vertices:", cloned.vertices)
print("arcs:", [(a, b, str(v)) for a, b, v in cloned.arcs()])
print("irreducible?", is_irreducible(cloned))

# s#1 and s#2 have the same row, so decloning merges them again
d = declone(cloned)
print("classes:", d.classes)
print("quotient weights:", d.weights)

iso = are_isomorphic(circuit, d.quotient, (weights, d.weights))
print("weighted quotient matches the original:", iso is not None, dict(iso.mapping) if iso else None)
