import json

import numpy as np
import pytest
from hypothesis import given, settings

from betabpo import io
from betabpo.cli import main
from betabpo.core import Instance
from betabpo.instances import RandomModel, generate, random_beta_acyclic
from betabpo.oracle import brute_force_max
from betabpo.solver import lift, lift_with_sets, reduce

from conftest import instances

EXAMPLE = {
    "num_nodes": 5,
    "node_profits": [1, 3, 2, -1, 1],
    "edges": [
        {"nodes": [0, 1, 2], "profit": 2},
        {"nodes": [1, 2], "profit": -1},
        {"nodes": [1, 2, 3], "profit": -6},
        {"nodes": [0, 1, 2, 3, 4], "profit": 3},
    ],
}
TRIANGLE = {
    "num_nodes": 3,
    "node_profits": [1, 1, 1],
    "edges": [{"nodes": [0, 1], "profit": 1}, {"nodes": [1, 2], "profit": 1},
              {"nodes": [0, 2], "profit": 1}],
}


def put(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@settings(max_examples=100, deadline=None)
@given(instances(max_nodes=8, max_edges=8))
def test_instance_round_trip(inst):
    doc = io.instance_to_doc(inst)
    assert io.instance_from_doc(io.loads(io.dumps(doc))) == inst


def test_generated_round_trip():
    for seed in range(5):
        inst = generate(RandomModel(30, 20, seed))
        assert io.instance_from_doc(io.loads(io.dumps(io.instance_to_doc(inst)))) == inst


def test_big_profits_round_trip():
    inst = Instance.build(2, [1 << 90, -1], [((0, 1), -(1 << 90))])
    assert io.instance_from_doc(io.loads(io.dumps(io.instance_to_doc(inst)))) == inst


@pytest.mark.parametrize("bad", [
    {"num_nodes": 2, "node_profits": [1], "edges": []},
    {"num_nodes": 2, "node_profits": [1, 1], "edges": [{"nodes": [], "profit": 1}]},
    {"num_nodes": 2, "node_profits": [1, 1], "edges": [{"nodes": [0, 0], "profit": 1}]},
    {"num_nodes": 2, "node_profits": [1, 1], "edges": [{"nodes": [2], "profit": 1}]},
    {"num_nodes": 2, "node_profits": [1, 1], "edges": [{"nodes": [-1], "profit": 1}]},
    {"num_nodes": 2, "node_profits": [1, 1.5], "edges": []},
    {"num_nodes": 2, "node_profits": [1, True], "edges": []},
    {"num_nodes": 2, "node_profits": [1, 1]},
    [1, 2],
])
def test_rejects_invalid_instances(bad):
    with pytest.raises(io.FormatError):
        io.instance_from_doc(bad)


def test_core_document_is_relabelled():
    reduced = reduce(generate(RandomModel(12, 14, 4)))
    doc = io.instance_to_doc(reduced.core)
    assert doc["original_ids"] == reduced.core_nodes.tolist()
    assert io.instance_from_doc(doc).hypergraph.num_nodes == len(doc["original_ids"])


@settings(max_examples=100, deadline=None)
@given(instances(max_nodes=8, max_edges=9))
def test_trace_round_trip_lifts_the_same(inst):
    reduced = reduce(inst)
    doc = io.loads(io.dumps(io.trace_to_doc(reduced)))
    trace, n = io.trace_from_doc(doc)
    assert n == inst.hypergraph.capacity
    assert trace.accumulated_offset == reduced.trace.accumulated_offset
    assert io.trace_to_doc(type(reduced)(reduced.core, trace, n)) == io.trace_to_doc(reduced)
    nodes = reduced.core_nodes.tolist()
    y = [i % 2 for i in range(len(nodes))]
    assert lift_with_sets(trace, y, n).tolist() == lift(reduced, y).tolist()


def test_trace_without_extras_still_lifts():
    inst = random_beta_acyclic(9, np.random.default_rng(5))
    reduced = reduce(inst)
    doc = io.trace_to_doc(reduced)
    for rec in doc["records"]:
        rec.pop("edges", None)
        rec.pop("lambda", None)
    trace, n = io.trace_from_doc(doc)
    assert lift_with_sets(trace, [], n).tolist() == lift(reduced, []).tolist()


def test_trace_rejects_bad_class():
    doc = io.trace_to_doc(reduce(Instance.build(2, [1, 1], [((0, 1), 1)])))
    doc["records"][0]["class"] = ["PN", "Q"]
    with pytest.raises(io.FormatError):
        io.trace_from_doc(doc)


def test_solve_example(tmp_path, capsys):
    code, out, err = run(capsys, "solve", put(tmp_path, "ex.json", EXAMPLE))
    assert code == 0
    assert json.loads(out) == {"assignment": [1, 1, 1, 0, 1], "objective": 8}


def test_solve_triangle_exit_3(tmp_path, capsys):
    code, out, err = run(capsys, "solve", put(tmp_path, "t.json", TRIANGLE))
    assert code == 3
    doc = json.loads(out)
    assert doc["core_nodes"] == 3 and doc["core_edges"] == 3 and doc["hint"] == "reduce"
    assert "reduce" in err


def test_solve_single_node(tmp_path, capsys):
    doc = {"num_nodes": 1, "node_profits": [-1], "edges": []}
    code, out, _ = run(capsys, "solve", put(tmp_path, "one.json", doc))
    assert code == 0 and json.loads(out) == {"assignment": [0], "objective": 0}


def test_parse_errors_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run(capsys, "solve", bad)[0] == 2
    assert run(capsys, "solve", tmp_path / "missing.json")[0] == 2
    assert run(capsys, "solve", put(tmp_path, "e.json", {"num_nodes": 1}))[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    code, out, _ = run(capsys, "gen", "-n", 3, "-m", 100)
    assert code == 2 and out == ""


def test_oracle_too_large(tmp_path, capsys):
    doc = {"num_nodes": 22, "node_profits": [0] * 22, "edges": []}
    assert run(capsys, "oracle", put(tmp_path, "big.json", doc))[0] == 5
    assert run(capsys, "oracle", "--node-limit", 25, put(tmp_path, "big.json", doc))[0] == 0


def test_classify(tmp_path, capsys):
    code, out, _ = run(capsys, "classify", put(tmp_path, "t.json", TRIANGLE))
    assert code == 0
    assert json.loads(out) == {"beta_acyclic": False, "alpha_acyclic": False, "elimination_order": []}


def test_pipeline_identity(tmp_path, capsys):
    for seed in range(8):
        g, core, trace = tmp_path / "g.json", tmp_path / "core.json", tmp_path / "trace.json"
        assert run(capsys, "gen", "-n", 10, "-m", 8, "--seed", seed, "-o", g)[0] == 0
        assert run(capsys, "reduce", g, "-o", core, "-t", trace)[0] == 0
        code, out, _ = run(capsys, "oracle", core)
        assert code == 0
        core_sol = tmp_path / "cs.json"
        core_sol.write_text(out)
        code, out, _ = run(capsys, "lift", "-t", trace, "-s", core_sol, "-i", g)
        lifted = json.loads(out)
        code, out, _ = run(capsys, "lift", "-t", trace, "-s", core_sol)
        assert json.loads(out) == lifted
        best = brute_force_max(io.instance_from_doc(json.loads(g.read_text())))
        assert lifted["objective"] == best.objective


def test_maxcut_and_bench(tmp_path, capsys):
    graph = {"num_nodes": 3, "edges": [{"u": 0, "v": 1, "w": 2}, {"u": 1, "v": 2, "w": 1}]}
    code, out, _ = run(capsys, "maxcut", put(tmp_path, "g.json", graph))
    inst = io.instance_from_doc(json.loads(out))
    assert code == 0 and inst.node_profit.tolist() == [2, 3, 1]
    bad = {"num_nodes": 3, "edges": [{"u": 0, "v": 0, "w": 2}]}
    assert run(capsys, "maxcut", put(tmp_path, "b.json", bad))[0] == 2

    code, out, _ = run(capsys, "bench", "--grid", "20:5,20:10", "--reps", 3, "--seed", 1)
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "n,m,mean_removed_pct" and len(lines) == 3
    assert run(capsys, "bench", "--grid", "20-5")[0] == 2
