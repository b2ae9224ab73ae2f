"""Lax pairs for B(n, k) and for its cloned versions, checked at random points."""
import numpy as np

from lvgraphs import LVSystem, bogo
from lvgraphs.lax import CloneLayout, block_lax, bogo_lax, char_poly_invariants, lax_residual, pullback_lax

rng = np.random.default_rng(0)
n, k = 7, 3
sys_ = LVSystem(bogo(n, k))
x = rng.uniform(0.1, 1.0, n)
r = lax_residual(lambda y: bogo_lax(n, k, y)[0], lambda y: bogo_lax(n, k, y)[1], sys_.vector_field, x)
print(f"B({n},{k}) residual of dL/dt - [L, M]: {r:.2e}")

layout = CloneLayout(5, 2, (2, 1, 2, 1, 1))
cloned = LVSystem(layout.graph())
xc = rng.uniform(0.1, 1.0, layout.total)
for name, pair in [("pullback", pullback_lax), ("block", block_lax)]:
    r = lax_residual(lambda y: pair(layout, y)[0], lambda y: pair(layout, y)[1], cloned.vector_field, xc)
    L, _ = pair(layout, xc)
    print(f"{name:8s} pair: size {L.size:2d}, residual {r:.2e}")

# the block operator sees every clone coordinate, the pullback only their sums
L, _ = bogo_lax(5, 2, layout.collapse(xc))
print("pullback char-poly rows at lam=-2:", np.round(char_poly_invariants(L)[0], 6))
