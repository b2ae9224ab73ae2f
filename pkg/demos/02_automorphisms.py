"""Automorphism groups: brute force against the clone-class decomposition."""
import math

from lvgraphs import aut_description, aut_order_decomposed, automorphisms_brute, bogo, clone_graph, km, lv_n0

for name, g in [("KM(6)", km(6)), ("B(6,2)", bogo(6, 2)), ("LV(5,0)", lv_n0(5))]:
    print(f"|Aut({name})| = {automorphisms_brute(g).order}")

g = clone_graph(km(4), {"1": 2, "2": 1, "3": 2, "4": 1})
desc = aut_description(g)
print("cloned KM(4): blocks", desc.glplus_block_sizes, "quotient order", desc.quotient_aut_order)
print("  brute force:", automorphisms_brute(g).order)
print("  product of block factorials times quotient order:",
      math.prod(math.factorial(b) for b in desc.glplus_block_sizes) * desc.quotient_aut_order)

# too big for enumeration, fine through the quotient
big = clone_graph(km(5), {str(i): 3 for i in range(1, 6)})
print("KM(5) with every vertex tripled:", big.order, "vertices, |Aut| =", aut_order_decomposed(big))
