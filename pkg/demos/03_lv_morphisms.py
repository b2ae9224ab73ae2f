"""Linear maps between LV systems: the Poisson test, normal forms and GL+ automorphisms."""
from lvgraphs import (
    LinearMap, LVSystem, SkewGraph, block_map, casimir_basis, clone_graph, declone_lv_morphism,
    glplus_sample, is_lv_morphism, km, lv_n0, normal_form, rank,
)

for name, g in [("KM(5)", km(5)), ("KM(6)", km(6)), ("LV(5,0)", lv_n0(5))]:
    s = LVSystem(g)
    print(f"{name}: rank {rank(s)}, Casimir exponents {[c.exponents for c in casimir_basis(s)]}")

triangle = SkewGraph("stu", [("s", "t", 1), ("t", "u", 1), ("s", "u", 1)])
arrow = SkewGraph("vw", [("v", "w", 1)])
phi = LinearMap(LVSystem(triangle), LVSystem(arrow), [[1, 1, 0], [0, 0, 1]])
print("y_v = x_s + x_t, y_w = x_u is an LV morphism:", is_lv_morphism(phi))
print("its partition:", normal_form(phi).parts)
print("induced map on the decloned systems:", declone_lv_morphism(phi).to_json())

g = clone_graph(km(4), {"1": 2, "2": 1, "3": 2, "4": 1})
psi = block_map(g, {"1#1": [[2, 1], [-1, 0]]})
print("block [[2,1],[-1,0]] on the clones of 1:", is_lv_morphism(psi))
sample = glplus_sample(g, seed=0)
print("random GL+ sample:", sample.to_json()["rows"])
print("  LV automorphism:", is_lv_morphism(sample), " inverse too:", is_lv_morphism(sample.inverse()))
