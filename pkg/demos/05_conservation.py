"""RK4 trajectories: drift of H, Casimirs, Lax invariants and clone ratios."""
import numpy as np

from lvgraphs import LVSystem, casimir_basis, km
from lvgraphs.dynamics import clone_decoupling_check, drift, flow_commutation_check, integrate
from lvgraphs.lax import char_poly_observables

s = LVSystem(km(5))
traj = integrate(s, [1, 2, 3, 4, 5], dt=1e-3, steps=10_000)
obs = {"H": lambda x: float(np.sum(x))} | {"x1..x5": casimir_basis(s)[0]} | char_poly_observables(5, 1)
rep = drift(traj, obs)
for name, d in list(rep.entries.items())[:5]:
    print(f"{name:10s} initial {d.initial:12.6f}  max relative drift {d.max_rel:.1e}")

w = {"1": 2, "2": 1, "3": 1, "4": 1}
x0 = np.random.default_rng(1).uniform(0.5, 1.5, 5)
print("ratio x_1#2 / x_1#1 drift:", clone_decoupling_check(km(4), w, x0, 1e-3, 10_000).max_rel)
print("|chi(x(t)) - y(t)| max:", flow_commutation_check(km(4), w, x0, 1e-3, 10_000))
