"""JSON documents for instances, elimination traces, graphs and solutions.

Instance documents list nodes ``0..num_nodes-1`` and edges in id order.  A
core written after presolve is relabelled to consecutive ids and carries
``original_ids`` so its solutions can be lifted back.
"""
from __future__ import annotations

import json
from collections.abc import Mapping

import numpy as np

from .core import Instance
from .elimination import ChainRecord, LoopRecord, class_codes, class_names
from .instances import WeightedGraph
from .solver import EliminationTrace, ReducedProblem, Solution


class FormatError(ValueError):
    """A document that does not describe a valid object."""


def _int(value, what: str) -> int:
    # bool is an int subclass but never a valid id or profit here
    if isinstance(value, bool) or not isinstance(value, int):
        raise FormatError(f"{what} must be an integer, got {value!r}")
    return value


def _int_list(value, what: str) -> list[int]:
    if not isinstance(value, list):
        raise FormatError(f"{what} must be an array")
    return [_int(v, what) for v in value]


def _field(doc, key: str):
    if not isinstance(doc, Mapping):
        raise FormatError("expected a JSON object")
    if key not in doc:
        raise FormatError(f"missing field {key!r}")
    return doc[key]


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from None


def dumps(doc) -> str:
    return json.dumps(doc, indent=None, separators=(",", ":"))


# -- instances ----------------------------------------------------------------

def instance_to_doc(instance: Instance) -> dict:
    """Current nodes and live edges, relabelled consecutively when needed."""
    hg = instance.hypergraph
    nodes = hg.nodes.tolist()
    relabel = {v: i for i, v in enumerate(nodes)}
    doc = {
        "num_nodes": len(nodes),
        "node_profits": [int(instance.node_profit[v]) for v in nodes],
        "edges": [{"nodes": [relabel[v] for v in hg.members(e).tolist()],
                   "profit": int(instance.edge_profit[e])}
                  for e in hg.edge_ids.tolist()],
    }
    if nodes != list(range(hg.capacity)):
        doc["original_ids"] = nodes
    return doc


def instance_from_doc(doc) -> Instance:
    n = _int(_field(doc, "num_nodes"), "num_nodes")
    if n < 0:
        raise FormatError("num_nodes must be non-negative")
    profits = _int_list(_field(doc, "node_profits"), "node_profits")
    if len(profits) != n:
        raise FormatError(f"expected {n} node profits, got {len(profits)}")
    raw = _field(doc, "edges")
    if not isinstance(raw, list):
        raise FormatError("edges must be an array")
    edges = []
    for i, rec in enumerate(raw):
        nodes = _int_list(_field(rec, "nodes"), f"edges[{i}].nodes")
        if not nodes:
            raise FormatError(f"edge {i} is empty")
        if len(set(nodes)) != len(nodes):
            raise FormatError(f"edge {i} repeats a node")
        if min(nodes) < 0 or max(nodes) >= n:
            raise FormatError(f"edge {i} references a node outside 0..{n - 1}")
        edges.append((nodes, _int(_field(rec, "profit"), f"edges[{i}].profit")))
    if "original_ids" in doc:
        ids = _int_list(doc["original_ids"], "original_ids")
        if len(ids) != n:
            raise FormatError("original_ids must list one id per node")
    return Instance.build(n, profits, edges)


def original_ids(doc) -> list[int]:
    n = _int(_field(doc, "num_nodes"), "num_nodes")
    return list(doc.get("original_ids", range(n)))


# -- traces -------------------------------------------------------------------

def _record_to_doc(rec) -> dict:
    if isinstance(rec, LoopRecord):
        return {"node": rec.node, "kind": "loop_only", "decided_bit": rec.bit,
                "gain": int(rec.gain), "edges": rec.edges.tolist()}
    if rec.stripped_sets is None:
        raise ValueError("chain record without stripped sets; reduce with record_sets=True")
    return {"node": rec.node, "kind": "chain",
            "stripped_sets": [sorted(s) for s in rec.stripped_sets],
            "class": class_names(rec.classes), "offset": int(rec.offset),
            "edges": rec.edges.tolist(), "lambda": rec.lam}


def trace_to_doc(reduced: ReducedProblem) -> dict:
    return {
        "original_node_count": reduced.original_node_count,
        "accumulated_offset": int(reduced.trace.accumulated_offset),
        "records": [_record_to_doc(r) for r in reduced.trace.records],
    }


def _record_from_doc(doc, i: int):
    node = _int(_field(doc, "node"), f"records[{i}].node")
    kind = _field(doc, "kind")
    edges = np.asarray(_int_list(doc.get("edges", []), f"records[{i}].edges"), dtype=np.int64)
    if kind == "loop_only":
        bit = _int(_field(doc, "decided_bit"), f"records[{i}].decided_bit")
        if bit not in (0, 1):
            raise FormatError(f"records[{i}].decided_bit must be 0 or 1")
        return LoopRecord(node, bit, _int(_field(doc, "gain"), f"records[{i}].gain"), edges)
    if kind != "chain":
        raise FormatError(f"records[{i}].kind must be 'chain' or 'loop_only'")
    raw_sets = _field(doc, "stripped_sets")
    if not isinstance(raw_sets, list):
        raise FormatError(f"records[{i}].stripped_sets must be an array")
    sets = tuple(frozenset(_int_list(s, f"records[{i}].stripped_sets")) for s in raw_sets)
    names = _field(doc, "class")
    if isinstance(names, str):
        names = names.split()
    try:
        classes = class_codes(names)
    except (KeyError, TypeError):
        raise FormatError(f"records[{i}].class must use P, N, NP, PN") from None
    if len(classes) != len(sets) or (len(edges) and len(edges) != len(sets) - 1):
        raise FormatError(f"records[{i}] has inconsistent chain lengths")
    if "lambda" in doc:
        lam = _int(doc["lambda"], f"records[{i}].lambda")
    else:
        # first position whose stripped set is not empty
        lam = next((j for j in range(1, len(sets)) if sets[j]), None)
        if lam is None:
            raise FormatError(f"records[{i}] is a chain of loops only")
    return ChainRecord(node, edges, classes, lam,
                       _int(_field(doc, "offset"), f"records[{i}].offset"), sets)


def trace_from_doc(doc) -> tuple[EliminationTrace, int]:
    """Parsed trace and the original node count."""
    n = _int(_field(doc, "original_node_count"), "original_node_count")
    raw = _field(doc, "records")
    if not isinstance(raw, list):
        raise FormatError("records must be an array")
    records = [_record_from_doc(r, i) for i, r in enumerate(raw)]
    nodes = [r.node for r in records]
    if len(set(nodes)) != len(nodes) or any(not 0 <= v < n for v in nodes):
        raise FormatError("record nodes must be distinct ids below original_node_count")
    offset = _int(_field(doc, "accumulated_offset"), "accumulated_offset")
    return EliminationTrace(records, offset), n


# -- graphs and solutions -----------------------------------------------------

def graph_from_doc(doc) -> WeightedGraph:
    n = _int(_field(doc, "num_nodes"), "num_nodes")
    raw = _field(doc, "edges")
    if not isinstance(raw, list):
        raise FormatError("edges must be an array")
    edges = tuple((_int(_field(r, "u"), "u"), _int(_field(r, "v"), "v"), _int(_field(r, "w"), "w"))
                  for r in raw)
    try:
        return WeightedGraph(n, edges)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def graph_to_doc(graph: WeightedGraph) -> dict:
    return {"num_nodes": graph.num_nodes,
            "edges": [{"u": u, "v": v, "w": w} for u, v, w in graph.edges]}


def solution_to_doc(solution: Solution, nodes=None) -> dict:
    """``nodes`` picks and orders the entries of the assignment (default: all)."""
    x = solution.assignment if nodes is None else solution.assignment[np.asarray(nodes, dtype=np.int64)]
    return {"assignment": [int(b) for b in x], "objective": int(solution.objective)}


def assignment_from_doc(doc) -> list[int]:
    bits = _int_list(_field(doc, "assignment"), "assignment")
    if any(b not in (0, 1) for b in bits):
        raise FormatError("assignment entries must be 0 or 1")
    return bits
