import json
import random
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from graphs_fixtures import CLONED_CIRCUIT4, random_reducible_graph
from lv_fixtures import TRIANGLE_TO_ARROW
from lvgraphs import automorphisms_brute, km
from lvgraphs.cli import main
from lvgraphs.io import (
    GraphFileError, dumps_graph, graph_from_dict, graph_to_dict, linear_map_from_dict, load_graph, loads_graph,
)


# -- file format -------------------------------------------------------------------

@given(st.integers(0, 2**32 - 1))
def test_graph_json_round_trip(seed):
    rng = random.Random(seed)
    g = random_reducible_graph(rng)
    w = {s: rng.randint(1, 3) for s in g.vertices}
    g2, w2 = loads_graph(dumps_graph(g, w))
    assert g2 == g and w2 == w


def test_weights_default_to_one():
    g, w = graph_from_dict({"vertices": ["a", "b"], "arcs": [["a", "b", "-3/2"]]})
    assert w == {"a": 1, "b": 1}
    assert graph_to_dict(g) == {"vertices": ["a", "b"], "arcs": [["a", "b", "-3/2"]]}
    g, w = graph_from_dict({"vertices": ["a", "b"], "arcs": [], "weights": {"b": 3}})
    assert w == {"a": 1, "b": 3}


@pytest.mark.parametrize(
    "text, fragment",
    [
        ('{"vertices": ["a"], "arcs": [["a", "b", "1"]]}', "graph"),
        ('{"vertices": ["a", "b"], "arcs": [["a", "b", "x"]]}', "'arcs'[0]"),
        ('{"vertices": ["a", "b"], "arcs": [["a", "b", 0.5]]}', "'arcs'[0]"),
        ('{"vertices": ["a", "b"], "arcs": [["a", "b"]]}', "'arcs'[0]"),
        ('{"vertices": "ab"}', "'vertices'"),
        ('{"vertices": ["a"], "weights": {"a": 0}}', "'weights'"),
        ('{"vertices": ["a"], "weights": {"z": 2}}', "'weights'"),
        ('{"vertices": ["a"],\n "arcs": [}', "line 2"),
        ('[1, 2]', "top level"),
    ],
)
def test_parse_errors_name_the_field(text, fragment):
    with pytest.raises(GraphFileError) as info:
        loads_graph(text)
    assert fragment in str(info.value)


def test_load_missing_file(tmp_path):
    with pytest.raises(GraphFileError):
        load_graph(tmp_path / "nope.json")


def test_linear_map_json_round_trip():
    data = TRIANGLE_TO_ARROW.to_json()
    back = linear_map_from_dict(data, TRIANGLE_TO_ARROW.domain, TRIANGLE_TO_ARROW.codomain)
    assert back.matrix == TRIANGLE_TO_ARROW.matrix
    with pytest.raises(GraphFileError):
        linear_map_from_dict({"rows": [["1"]]}, TRIANGLE_TO_ARROW.domain, TRIANGLE_TO_ARROW.codomain)


# -- command line ------------------------------------------------------------------

def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    try:
        return code, json.loads(out) if out.strip() else None
    except json.JSONDecodeError:
        return code, out


@pytest.fixture
def files(tmp_path, capsys):
    paths = {}
    for name, args in {"km6": ("km", 6), "km5": ("km", 5), "b62": ("bogo", 6, 2), "lv5": ("lv_n0", 5), "lv6": ("lv_n0", 6)}.items():
        p = tmp_path / f"{name}.json"
        assert main(["families", *map(str, args), "-o", str(p)]) == 0
        paths[name] = p
    p = tmp_path / "cloned_circuit.json"
    p.write_text(dumps_graph(CLONED_CIRCUIT4))
    paths["cloned"] = p
    p = tmp_path / "empty.json"
    p.write_text('{"vertices": [], "arcs": []}')
    paths["empty"] = p
    capsys.readouterr()
    return paths


def test_families(files, capsys):
    g, _ = load_graph(files["km6"])
    assert g == km(6)
    code, out = run(capsys, "families", "bogo", 6, 2)
    assert code == 0 and len(out["arcs"]) == 12
    assert run(capsys, "families", "bogo", 6, 3)[0] == 2
    assert run(capsys, "families", "km", 6, 2)[0] == 2
    assert run(capsys, "families", "nosuch", 3)[0] == 2


def test_declone_and_round_trip(files, capsys, tmp_path):
    code, out = run(capsys, "declone", files["cloned"])
    assert code == 0
    assert out["weights"] == {"s1": 2, "t": 1, "u1": 2, "v": 1}
    assert len(out["quotient"]["vertices"]) == 4
    code, out = run(capsys, "declone", files["km6"])
    assert set(out["weights"].values()) == {1} and len(out["weights"]) == 6
    code, out = run(capsys, "declone", files["empty"])
    assert code == 0 and out["quotient"]["vertices"] == []

    dec = tmp_path / "dec.json"
    assert main(["declone", str(files["cloned"]), "-o", str(dec)]) == 0
    again = tmp_path / "again.json"
    assert main(["clone", str(dec), "-o", str(again)]) == 0
    code, out = run(capsys, "iso", again, files["cloned"])
    assert code == 0 and out["isomorphic"]


def test_aut(files, capsys):
    code, out = run(capsys, "aut", files["km6"])
    assert code == 0 and out["order"] == 6
    assert run(capsys, "aut", files["lv5"])[1]["order"] == 1
    code, out = run(capsys, "aut", files["cloned"])
    assert out["order"] == 8 == automorphisms_brute(CLONED_CIRCUIT4).order
    assert out["decomposition"] == {"blocks": [2, 1, 2, 1], "quotient_order": 2}
    assert _closure_size(out["generators"], CLONED_CIRCUIT4.vertices) == 8


def test_aut_weighted(tmp_path, capsys):
    p = tmp_path / "w.json"
    p.write_text(dumps_graph(CLONED_CIRCUIT4, {"s1": 2, "s2": 1, "t": 1, "u1": 2, "u2": 1, "v": 1}))
    code, out = run(capsys, "aut", p, "--weighted")
    w = {"s1": 2, "s2": 1, "t": 1, "u1": 2, "u2": 1, "v": 1}
    assert out["order"] == automorphisms_brute(CLONED_CIRCUIT4, w).order == 2
    assert _closure_size(out["generators"], CLONED_CIRCUIT4.vertices) == 2


def _closure_size(gens, vertices):
    ident = tuple(vertices)
    span = {ident}
    frontier = [ident]
    perms = [dict(g) for g in gens]
    while frontier:
        new = []
        for a in frontier:
            for g in perms:
                c = tuple(g[s] for s in a)
                if c not in span:
                    span.add(c)
                    new.append(c)
        frontier = new
    return len(span)


def test_iso(files, capsys, tmp_path):
    g = km(6)
    perm = g.relabel({str(i): f"p{(i * 5) % 7}" for i in range(1, 7)})
    p = tmp_path / "perm.json"
    p.write_text(dumps_graph(perm))
    code, out = run(capsys, "iso", files["km6"], p)
    assert out["isomorphic"]
    assert all(perm.a(out["map"][s], out["map"][t]) == g.a(s, t) for s in g.vertices for t in g.vertices)
    assert run(capsys, "iso", files["km6"], files["b62"])[1] == {"isomorphic": False}
    code, out = run(capsys, "iso", files["km6"], files["km6"])
    assert out["map"] == {s: s for s in g.vertices}


def test_casimirs(files, capsys):
    out = run(capsys, "casimirs", files["km5"])[1]
    assert out["rank"] == 4 and out["basis"] == [[1, 1, 1, 1, 1]]
    out = run(capsys, "casimirs", files["km6"])[1]
    assert out["rank"] == 4 and len(out["basis"]) == 2
    out = run(capsys, "casimirs", files["lv6"])[1]
    assert out["rank"] == 6 and out["basis"] == []


def test_simulate(files, capsys, tmp_path):
    csv_path = tmp_path / "traj.csv"
    code, out = run(capsys, "simulate", files["km5"], "--x0", "1,2,3,4,5", "--dt", "1e-3", "--steps", 10000,
                    "--check", "h,casimirs", "--csv", csv_path)
    assert code == 0 and out["pass"]
    assert out["checks"]["h"]["max_rel"] < 1e-6 and out["checks"]["casimirs"]["max_rel"] < 1e-6
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "t,1,2,3,4,5" and len(lines) == 10002

    cloned = tmp_path / "ckm4.json"
    assert main(["families", "km", "4", "-o", str(cloned)]) == 0
    capsys.readouterr()
    both = tmp_path / "ckm4c.json"
    assert main(["clone", str(cloned), "--weights", "2,1,1,1", "-o", str(both)]) == 0
    capsys.readouterr()
    code, out = run(capsys, "simulate", both, "--check", "ratios", "--steps", 10000)
    assert code == 0 and out["checks"]["ratios"]["max_rel"] < 1e-8

    assert run(capsys, "simulate", files["km5"], "--x0", "1,2")[0] == 2
    assert run(capsys, "simulate", files["km5"], "--check", "nope")[0] == 2
    # an absurd tolerance turns the same run into a certification failure
    assert run(capsys, "simulate", files["km5"], "--steps", 1000, "--check", "h", "--tol", "0")[0] == 1


def test_simulate_is_deterministic(files, capsys):
    a = run(capsys, "simulate", files["b62"], "--steps", 500, "--seed", 3, "--check", "lax")
    b = run(capsys, "simulate", files["b62"], "--steps", 500, "--seed", 3, "--check", "lax")
    assert a == b and a[0] == 0


def test_lax_verify(capsys):
    code, out = run(capsys, "lax-verify", "--family", "bogo", 5, 2, "--points", 100, "--mode", "base")
    assert code == 0 and out["pass"] and out["max_residual"] < 1e-10 and out["tolerance"] == 1e-10
    code, out = run(capsys, "lax-verify", "--family", "bogo", 5, 2, "--weights", "2,1,2,1,1", "--mode", "block")
    assert code == 0 and out["pass"]
    base = run(capsys, "lax-verify", "--family", "bogo", 5, 2, "--points", 20, "--mode", "base")[1]
    block = run(capsys, "lax-verify", "--family", "bogo", 5, 2, "--points", 20, "--mode", "block", "--weights", "1,1,1,1,1")[1]
    assert block["max_residual"] == base["max_residual"]
    assert run(capsys, "lax-verify", "--family", "bogo", 6, 3)[0] == 2
    assert run(capsys, "lax-verify", "--family", "km", 6, 1)[0] == 2


def test_usage_errors(capsys):
    assert main([]) == 2
    assert main(["aut"]) == 2
    assert main(["aut", "/nonexistent/file.json"]) == 2


def test_console_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "lvgraphs.cli", "families", "km", "3"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["vertices"] == ["1", "2", "3"]
