"""Fixed-step integration of LV flows and numerical certificates built on it.

Everything here is double precision.  The integrator is classical RK4 with a
fixed step so drift numbers are reproducible run to run.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .errors import BlowUp, DimensionMismatch
from .graphs import SkewGraph, check_weights, clone_graph, clone_label
from .lv import LVSystem, float_matrix

BLOWUP_THRESHOLD = 1e12
Observable = Callable[[np.ndarray], float]


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: np.ndarray = field(repr=False)
    labels: tuple[str, ...]
    blown_up: bool = False

    @property
    def dimension(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.times)

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]

    def write_csv(self, fh) -> None:
        """Header ``t,<labels>``; every value with 17 significant digits."""
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t", *self.labels])
        for t, x in zip(self.times, self.states):
            w.writerow(["%.17g" % t, *("%.17g" % v for v in x)])


def _rk4_step(f, x: np.ndarray, dt: float) -> np.ndarray:
    k1 = f(x)
    k2 = f(x + 0.5 * dt * k1)
    k3 = f(x + 0.5 * dt * k2)
    k4 = f(x + dt * k3)
    return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def integrate(sys: LVSystem, x0, dt: float, steps: int) -> Trajectory:
    """RK4 trajectory of ``sys`` from ``x0``, including the initial state.

    Raises BlowUp, carrying the partial trajectory, once any coordinate
    exceeds 1e12 in absolute value or stops being finite.
    """
    x = np.array(x0, dtype=float)
    if x.shape != (sys.dimension,):
        raise DimensionMismatch(f"expected a point of length {sys.dimension}, got shape {x.shape}")
    if not dt > 0:
        raise ValueError(f"step size must be positive, got {dt}")
    steps = int(steps)
    if steps < 0:
        raise ValueError(f"step count must be nonnegative, got {steps}")
    a = float_matrix(sys)

    def f(y):
        return y * (a @ y)

    states = np.empty((steps + 1, sys.dimension))
    states[0] = x
    for i in range(1, steps + 1):
        x = _rk4_step(f, x, dt)
        if not np.all(np.isfinite(x)) or np.max(np.abs(x), initial=0.0) > BLOWUP_THRESHOLD:
            partial = Trajectory(np.arange(i) * dt, states[:i].copy(), sys.labels, blown_up=True)
            raise BlowUp(f"solution left the box |x| <= {BLOWUP_THRESHOLD:g} at step {i}", trajectory=partial)
        states[i] = x
    return Trajectory(np.arange(steps + 1) * dt, states, sys.labels)


# -- drift -------------------------------------------------------------------

@dataclass(frozen=True)
class Drift:
    initial: float
    max_abs: float
    max_rel: float


@dataclass(frozen=True)
class DriftReport:
    entries: dict[str, Drift]

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, name: str) -> Drift:
        return self.entries[name]

    @property
    def max_rel(self) -> float:
        return max((d.max_rel for d in self.entries.values()), default=0.0)

    @property
    def max_abs(self) -> float:
        return max((d.max_abs for d in self.entries.values()), default=0.0)

    def failures(self, tol: float) -> list[str]:
        return [name for name, d in self.entries.items() if not d.max_rel < tol]

    def to_json(self) -> dict:
        return {
            name: {"initial": d.initial, "max_abs": d.max_abs, "max_rel": d.max_rel}
            for name, d in self.entries.items()
        }


def drift(traj: Trajectory, observables: Mapping[str, Observable]) -> DriftReport:
    """Deviation of each observable from its value at the first state.

    Relative deviations divide by ``max(|initial|, 1e-12)``.  Observables
    with an ``evaluate_many(states)`` method are evaluated in one batch.
    """
    entries = {}
    for name, obs in observables.items():
        if hasattr(obs, "evaluate_many"):
            values = np.asarray(obs.evaluate_many(traj.states), dtype=float)
        else:
            values = np.array([obs(x) for x in traj.states], dtype=float)
        init = float(values[0])
        dev = float(np.max(np.abs(values - init))) if len(values) else 0.0
        entries[name] = Drift(init, dev, dev / max(abs(init), 1e-12))
    return DriftReport(entries)


# -- cloned systems ------------------------------------------------------------

def _clone_groups(g: SkewGraph, weights: Mapping[str, int]) -> tuple[SkewGraph, list[list[int]]]:
    # cloned graph plus, for each base vertex, the indices of its clones
    cg = clone_graph(g, weights)
    groups = [[cg.index(clone_label(s, i)) for i in range(1, weights[s] + 1)] for s in g.vertices]
    return cg, groups


def collapse(x: np.ndarray, groups: Sequence[Sequence[int]]) -> np.ndarray:
    """``y_s = sum of the clone coordinates of s``; singleton groups are copied exactly."""
    x = np.asarray(x, dtype=float)
    return np.array([x[idx[0]] if len(idx) == 1 else float(np.sum(x[idx])) for idx in groups])


def ratio_observables(g: SkewGraph, weights: Mapping[str, int]) -> dict[str, Observable]:
    """The clone-ratio Casimirs ``x_{s#j} / x_{s#1}`` (j >= 2) on the cloned system."""
    w = check_weights(g, weights)
    cg, groups = _clone_groups(g, w)
    obs = {}
    for s, idx in zip(g.vertices, groups):
        first = idx[0]
        for j, i in enumerate(idx[1:], start=2):
            obs[f"{clone_label(s, j)}/{clone_label(s, 1)}"] = (
                lambda x, i=i, first=first: float(x[i] / x[first])
            )
    return obs


def clone_decoupling_check(g: SkewGraph, weights: Mapping[str, int], x0, dt: float, steps: int) -> DriftReport:
    """Integrate the cloned system from ``x0`` (clone coordinates) and report the ratio drifts."""
    w = check_weights(g, weights)
    cg, groups = _clone_groups(g, w)
    x0 = np.asarray(x0, dtype=float)
    if x0.shape != (cg.order,):
        raise DimensionMismatch(f"expected {cg.order} clone coordinates, got shape {x0.shape}")
    for idx in groups:
        if len(idx) > 1 and x0[idx[0]] == 0:
            raise ZeroDivisionError(f"first clone coordinate {cg.vertices[idx[0]]!r} is zero")
    obs = ratio_observables(g, w)
    if not obs:
        return DriftReport({})
    traj = integrate(LVSystem(cg), x0, dt, steps)
    return drift(traj, obs)


def flow_commutation_check(g: SkewGraph, weights: Mapping[str, int], x0, dt: float, steps: int) -> float:
    """Max over time of ``|chi(x(t)) - y(t)|_inf`` where y solves the base system from chi(x0)."""
    w = check_weights(g, weights)
    cg, groups = _clone_groups(g, w)
    x0 = np.asarray(x0, dtype=float)
    if x0.shape != (cg.order,):
        raise DimensionMismatch(f"expected {cg.order} clone coordinates, got shape {x0.shape}")
    cloned = integrate(LVSystem(cg), x0, dt, steps)
    base = integrate(LVSystem(g), collapse(x0, groups), dt, steps)
    # summing a one-element column is exact, so unit weights give exactly 0
    chi = np.stack([cloned.states[:, idx].sum(axis=1) for idx in groups], axis=1)
    return float(np.max(np.abs(chi - base.states), initial=0.0))


class Pullback:
    """``chi^* f``: a base observable evaluated at the collapsed point."""

    def __init__(self, f: Observable, groups: Sequence[Sequence[int]]):
        self.f = f
        self.groups = [list(idx) for idx in groups]

    def __call__(self, x) -> float:
        return self.f(collapse(x, self.groups))

    def evaluate_many(self, states) -> np.ndarray:
        states = np.asarray(states, dtype=float)
        ys = np.stack([states[:, idx].sum(axis=1) for idx in self.groups], axis=1)
        if hasattr(self.f, "evaluate_many"):
            return np.asarray(self.f.evaluate_many(ys), dtype=float)
        return np.array([self.f(y) for y in ys], dtype=float)


def pullback(f: Observable, g: SkewGraph, weights: Mapping[str, int]) -> Pullback:
    w = check_weights(g, weights)
    _, groups = _clone_groups(g, w)
    return Pullback(f, groups)


# -- integrability ---------------------------------------------------------------

def gradient(f: Observable, x: np.ndarray) -> np.ndarray:
    """Central differences with step ``1e-6 * max(1, |x_s|)``."""
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    for s in range(len(x)):
        h = 1e-6 * max(1.0, abs(x[s]))
        xp, xm = x.copy(), x.copy()
        xp[s] += h
        xm[s] -= h
        out[s] = (f(xp) - f(xm)) / (2 * h)
    return out


def numerical_rank(rows: np.ndarray, rel_threshold: float = 1e-8) -> int:
    """SVD rank after scaling each nonzero row to unit length."""
    rows = np.atleast_2d(np.asarray(rows, dtype=float))
    if rows.size == 0:
        return 0
    norms = np.linalg.norm(rows, axis=1)
    top = norms.max()
    if top == 0:
        return 0
    keep = norms > 1e-9 * top
    scaled = rows[keep] / norms[keep, None]
    sv = np.linalg.svd(scaled, compute_uv=False)
    return int(np.sum(sv > rel_threshold * sv[0]))


def jacobian_rank(integrals: Mapping[str, Observable], x) -> int:
    return numerical_rank(np.array([gradient(f, x) for f in integrals.values()]))


def bracket(sys: LVSystem, f: Observable, g: Observable, x) -> float:
    """``{f, g} = sum_{s,t} a_st x_s x_t df/dx_s dg/dx_t`` with finite-difference gradients."""
    x = np.asarray(x, dtype=float)
    df, dg = gradient(f, x), gradient(g, x)
    return float((x * df) @ float_matrix(sys) @ (x * dg))


@dataclass(frozen=True)
class IntegrabilityReport:
    drifts: tuple[DriftReport, ...]
    ranks: tuple[int, ...]
    max_bracket: float

    @property
    def independent_count(self) -> int:
        """Rank guaranteed at every sampled point."""
        return min(self.ranks, default=0)

    @property
    def max_drift(self) -> float:
        return max((d.max_rel for d in self.drifts), default=0.0)


def integrability_certificate(
    g: SkewGraph,
    integrals: Mapping[str, Observable],
    x0s: Iterable,
    dt: float = 1e-3,
    steps: int = 0,
) -> IntegrabilityReport:
    """Drift along trajectories from each x0, Jacobian rank and pairwise brackets at each x0."""
    sys = LVSystem(g)
    funcs = list(integrals.values())
    drifts, ranks = [], []
    worst = 0.0
    for x0 in x0s:
        x0 = np.asarray(x0, dtype=float)
        if x0.shape != (sys.dimension,):
            raise DimensionMismatch(f"expected a point of length {sys.dimension}, got shape {x0.shape}")
        if steps > 0:
            drifts.append(drift(integrate(sys, x0, dt, steps), integrals))
        grads = np.array([gradient(f, x0) for f in funcs]).reshape(len(funcs), sys.dimension)
        ranks.append(numerical_rank(grads) if funcs else 0)
        a = float_matrix(sys)
        for i in range(len(funcs)):
            for j in range(i + 1, len(funcs)):
                worst = max(worst, abs(float((x0 * grads[i]) @ a @ (x0 * grads[j]))))
    return IntegrabilityReport(tuple(drifts), tuple(ranks), worst)


def hamiltonian_observable(sys: LVSystem) -> Observable:
    return lambda x: float(np.sum(x))


def random_point(rng: np.random.Generator, n: int, low: float = 0.5, high: float = 1.5) -> np.ndarray:
    return rng.uniform(low, high, size=n)

