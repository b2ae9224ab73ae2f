"""Counting independent integrals in involution for KM(5) and a clone of it."""
import numpy as np

from lvgraphs import LVSystem, casimir_basis, clone_graph, km, rank
from lvgraphs.dynamics import integrability_certificate, pullback, ratio_observables
from lvgraphs.lax import char_poly_observables

rng = np.random.default_rng(2)
g = km(5)
s = LVSystem(g)
integrals = {"H": lambda x: float(np.sum(x)), "C": casimir_basis(s)[0]} | char_poly_observables(5, 1)
rep = integrability_certificate(g, integrals, [rng.uniform(0.5, 1.5, 5) for _ in range(5)])
print(f"KM(5): {len(integrals)} functions, rank {rep.independent_count}, needed {5 - rank(s) // 2},"
      f" max bracket {rep.max_bracket:.1e}")

w = dict(zip(g.vertices, (2, 1, 1, 1, 1)))
cg = clone_graph(g, w)
lifted = {k: pullback(f, g, w) for k, f in integrals.items()} | ratio_observables(g, w)
rep = integrability_certificate(cg, lifted, [rng.uniform(0.5, 1.5, 6) for _ in range(5)])
print(f"clone: rank {rep.independent_count}, needed {cg.order - rank(LVSystem(cg)) // 2},"
      f" max bracket {rep.max_bracket:.1e}")
