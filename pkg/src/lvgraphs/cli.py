"""Command-line front end: ``lvgraphs <command> ...``.

Reports go to stdout as JSON (or to ``-o FILE``).  Exit codes: 0 success,
1 a requested certificate failed, 2 bad usage or bad input.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from collections import Counter
from typing import Sequence

import numpy as np

from . import dynamics, lax
from .errors import BlowUp, LVGraphError
from .families import FAMILIES, bogo
from .graphs import (
    GraphMap,
    SkewGraph,
    are_isomorphic,
    automorphisms_brute,
    clone_graph,
    declone,
)
from .io import GraphFileError, dumps_graph, graph_from_dict, graph_to_dict, load_graph
from .lv import LVSystem, casimir_basis, rank


class UsageError(Exception):
    pass


def _emit(obj, out: str | None) -> None:
    text = json.dumps(obj, indent=2)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _floats(text: str, what: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"{what}: expected comma-separated numbers, got {text!r}") from None


def _ints(text: str, what: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"{what}: expected comma-separated integers, got {text!r}") from None


def _load_any(path: str) -> tuple[SkewGraph, dict[str, int]]:
    """A graph file, or the output of ``declone`` (its quotient and weights)."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise GraphFileError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise GraphFileError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if isinstance(data, dict) and "quotient" in data:
        q = dict(data["quotient"])
        q["weights"] = data.get("weights")
        data = q
    try:
        return graph_from_dict(data)
    except GraphFileError as exc:
        raise GraphFileError(f"{path}: {exc}") from None


# -- commands ------------------------------------------------------------------

def cmd_families(args) -> int:
    try:
        g = FAMILIES[args.name](*args.params)
    except TypeError:
        raise UsageError(f"wrong number of parameters for {args.name}: {args.params}") from None
    text = dumps_graph(g)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def cmd_declone(args) -> int:
    g, _ = load_graph(args.input)
    d = declone(g)
    _emit(
        {
            "quotient": graph_to_dict(d.quotient),
            "weights": d.weights,
            "classes": {c[0]: list(c) for c in d.classes},
            "projection": dict(d.projection.mapping),
        },
        args.output,
    )
    return 0


def cmd_clone(args) -> int:
    g, w = _load_any(args.input)
    if args.weights:
        vals = _ints(args.weights, "--weights")
        if len(vals) != g.order:
            raise UsageError(f"--weights: expected {g.order} values, got {len(vals)}")
        w = dict(zip(g.vertices, vals))
    _emit(graph_to_dict(clone_graph(g, w)), args.output)
    return 0


def _aut_generators(g: SkewGraph, weights: dict[str, int] | None) -> tuple[int, list[dict], list[int], int]:
    """Order, generators and decomposition of Aut(g) (weight-preserving if weights given).

    Generators are swaps of neighbouring clones plus lifts of the quotient's
    generators, so the search only ever runs on the decloned graph.
    """
    d = declone(g)
    w = weights or {s: 1 for s in g.vertices}
    # inside a class only clones of equal weight may be exchanged
    classes = [sorted(c, key=lambda s: (w[s], g.index(s))) for c in d.classes]
    blocks = []
    gens = []
    for c in classes:
        if weights:
            blocks.extend(Counter(w[s] for s in c).values())
        else:
            blocks.append(len(c))
        for a, b in zip(c, c[1:]):
            if w[a] == w[b]:
                m = {s: s for s in g.vertices}
                m[a], m[b] = b, a
                gens.append(m)
    ordered = {orig[0]: c for orig, c in zip(d.classes, classes)}
    labels = {rep: (len(c), tuple(w[s] for s in c)) for rep, c in ordered.items()}
    # encode the class labels as small integer weights for the weighted search
    codes = {lab: i + 1 for i, lab in enumerate(sorted(set(labels.values())))}
    qgroup = automorphisms_brute(d.quotient, {s: codes[labels[s]] for s in d.quotient.vertices})
    qv = d.quotient.vertices
    for e in qgroup.generators():
        m = {}
        for i, j in enumerate(e):
            m.update(zip(ordered[qv[i]], ordered[qv[j]]))
        gens.append(m)
    if weights:
        factor = math.prod(math.factorial(k) for c in classes for k in Counter(w[s] for s in c).values())
    else:
        factor = math.prod(math.factorial(len(c)) for c in classes)
    for m in gens:
        gm = GraphMap(g, g, m)
        if not all(g.a(s, t) == g.a(gm(s), gm(t)) for s in g.vertices for t in g.vertices):
            raise AssertionError("lifted generator is not an automorphism")
    return factor * qgroup.order, gens, blocks, qgroup.order


def cmd_aut(args) -> int:
    g, w = load_graph(args.input)
    order, gens, blocks, qorder = _aut_generators(g, w if args.weighted else None)
    _emit(
        {
            "order": order,
            "generators": gens,
            "decomposition": {"blocks": blocks, "quotient_order": qorder},
        },
        args.output,
    )
    return 0


def cmd_iso(args) -> int:
    g, wg = load_graph(args.a)
    h, wh = load_graph(args.b)
    m = are_isomorphic(g, h, (wg, wh) if args.weighted else None)
    out = {"isomorphic": m is not None}
    if m is not None:
        out["map"] = dict(m.mapping)
    _emit(out, args.output)
    return 0


def cmd_casimirs(args) -> int:
    g, _ = load_graph(args.input)
    sys_ = LVSystem(g)
    basis = casimir_basis(sys_)
    _emit(
        {"rank": rank(sys_), "labels": list(g.vertices), "basis": [list(c.exponents) for c in basis]},
        args.output,
    )
    return 0


def _lax_observables(g: SkewGraph, seed: int) -> dict:
    """Char-poly integrals pulled back to ``g`` when its decloning is some B(n, k)."""
    d = declone(g)
    n = d.quotient.order
    for k in range(1, (n - 1) // 2 + 1):
        base = bogo(n, k)
        iso = are_isomorphic(base, d.quotient)
        if iso is None:
            continue
        # coordinate i of the base point collects the clones of iso(base vertex i)
        groups = [[g.index(s) for s in d.class_of(iso(v))] for v in base.vertices]
        return {
            name: dynamics.Pullback(f, groups)
            for name, f in lax.char_poly_observables(n, k, seed=seed).items()
        }
    raise UsageError("--check lax needs a graph whose decloning is a Bogoyavlenskij graph B(n, k)")


def cmd_simulate(args) -> int:
    g, w = load_graph(args.input)
    if any(v != 1 for v in w.values()):
        g = clone_graph(g, w)
    sys_ = LVSystem(g)
    rng = np.random.default_rng(args.seed)
    if args.x0:
        x0 = np.array(_floats(args.x0, "--x0"))
        if x0.shape != (g.order,):
            raise UsageError(f"--x0: expected {g.order} values, got {len(x0)}")
    else:
        x0 = dynamics.random_point(rng, g.order)
    checks = [c for c in (args.check or "").split(",") if c]
    unknown = set(checks) - {"h", "casimirs", "ratios", "lax"}
    if unknown:
        raise UsageError(f"--check: unknown checks {sorted(unknown)}")
    groups: dict[str, tuple[dict, float]] = {}
    if "h" in checks:
        groups["h"] = ({"H": dynamics.hamiltonian_observable(sys_)}, args.tol)
    if "casimirs" in checks:
        obs = {}
        for c in casimir_basis(sys_):
            name = "*".join(f"{s}^{e}" for s, e in c.as_dict().items() if e)
            obs[name] = c
        groups["casimirs"] = (obs, args.tol)
    if "ratios" in checks:
        obs = {}
        for cls in declone(g).classes:
            first = g.index(cls[0])
            for s in cls[1:]:
                obs[f"{s}/{cls[0]}"] = lambda x, i=g.index(s), f=first: float(x[i] / x[f])
        groups["ratios"] = (obs, args.ratio_tol)
    if "lax" in checks:
        groups["lax"] = (_lax_observables(g, args.seed), args.lax_tol)

    report: dict = {"dimension": g.order, "dt": args.dt, "steps": args.steps, "x0": x0.tolist()}
    try:
        traj = dynamics.integrate(sys_, x0, args.dt, args.steps)
    except BlowUp as exc:
        traj = exc.trajectory
        report["blow_up"] = str(exc)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            traj.write_csv(fh)
    ok = not traj.blown_up
    report["checks"] = {}
    for name, (obs, tol) in groups.items():
        dr = dynamics.drift(traj, obs)
        passed = not dr.failures(tol)
        ok = ok and passed
        report["checks"][name] = {"tolerance": tol, "pass": passed, "max_rel": dr.max_rel, "observables": dr.to_json()}
    report["final"] = traj.final.tolist()
    report["pass"] = ok
    _emit(report, args.output)
    return 0 if ok else 1


def cmd_lax_verify(args) -> int:
    name, n, k = args.family
    if name != "bogo":
        raise UsageError(f"--family: only 'bogo' has a Lax pair here, got {name!r}")
    n, k = int(n), int(k)
    rng = np.random.default_rng(args.seed)
    if args.mode == "base":
        if args.weights:
            raise UsageError("--weights only applies to the pullback and block modes")
        sys_ = LVSystem(bogo(n, k))

        def build(x):
            return lax.bogo_lax(n, k, x)
        dim = n
    else:
        weights = _ints(args.weights, "--weights") if args.weights else [1] * n
        layout = lax.CloneLayout(n, k, tuple(weights))
        sys_ = LVSystem(layout.graph())
        pair = lax.pullback_lax if args.mode == "pullback" else lax.block_lax

        def build(x):
            return pair(layout, x)
        dim = layout.total
    worst = 0.0
    for _ in range(args.points):
        x = rng.uniform(0.1, 1.0, size=dim)
        worst = max(worst, lax.lax_residual(lambda y: build(y)[0], lambda y: build(y)[1], sys_.vector_field, x))
    ok = worst < args.tol
    _emit(
        {"mode": args.mode, "n": n, "k": k, "points": args.points,
         "max_residual": worst, "tolerance": args.tol, "pass": ok},
        args.output,
    )
    return 0 if ok else 1


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lvgraphs", description="Skew-symmetric graphs and their Lotka-Volterra systems.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("-o", "--output", help="write the result here instead of stdout")
        sp.add_argument("--seed", type=int, default=0, help="seed for all randomness (default 0)")
        sp.set_defaults(func=func)
        return sp

    sp = add("families", cmd_families, "write a standard graph")
    sp.add_argument("name", choices=sorted(FAMILIES))
    sp.add_argument("params", type=int, nargs="+")

    sp = add("declone", cmd_declone, "quotient by identical adjacency rows")
    sp.add_argument("input")

    sp = add("clone", cmd_clone, "clone a weighted graph (or a declone result)")
    sp.add_argument("input")
    sp.add_argument("--weights", help="comma-separated weights in vertex order, overriding the file")

    sp = add("aut", cmd_aut, "automorphism group order, generators and decomposition")
    sp.add_argument("input")
    sp.add_argument("--weighted", action="store_true", help="only weight-preserving automorphisms")

    sp = add("iso", cmd_iso, "test two graphs for isomorphism")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--weighted", action="store_true", help="the isomorphism must preserve weights")

    sp = add("casimirs", cmd_casimirs, "rank and Casimir exponent basis")
    sp.add_argument("input")

    sp = add("simulate", cmd_simulate, "integrate with RK4 and report drifts")
    sp.add_argument("input")
    sp.add_argument("--x0", help="comma-separated initial point (default: random in [0.5, 1.5])")
    sp.add_argument("--dt", type=float, default=1e-3)
    sp.add_argument("--steps", type=int, default=10_000)
    sp.add_argument("--csv", help="write the trajectory as CSV")
    sp.add_argument("--check", default="", help="comma-separated subset of h,casimirs,ratios,lax")
    sp.add_argument("--tol", type=float, default=1e-6, help="relative drift tolerance for h and casimirs")
    sp.add_argument("--ratio-tol", type=float, default=1e-8)
    sp.add_argument("--lax-tol", type=float, default=1e-5)

    sp = add("lax-verify", cmd_lax_verify, "check the Lax equation at random points")
    sp.add_argument("--family", nargs=3, metavar=("NAME", "N", "K"), required=True)
    sp.add_argument("--weights", help="clone weights for pullback/block modes")
    sp.add_argument("--points", type=int, default=100)
    sp.add_argument("--mode", choices=("base", "pullback", "block"), default="base")
    sp.add_argument("--tol", type=float, default=1e-10)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, LVGraphError, ValueError) as exc:
        print(f"lvgraphs {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
