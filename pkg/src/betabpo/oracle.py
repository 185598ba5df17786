"""Exhaustive reference maximiser."""
from __future__ import annotations

import numpy as np

from .core import Instance
from .solver import Solution

_CHUNK = 1 << 16


class TooLarge(ValueError):
    pass


def brute_force_max(instance: Instance, node_limit: int = 20) -> Solution:
    """Enumerate every 0/1 point; ties go to the lexicographically smallest one.

    Points are enumerated as integers whose most significant bit is the
    lowest node id, so the first maximiser found in numeric order is the
    lexicographically smallest assignment.
    """
    hg = instance.hypergraph
    nodes = hg.nodes.tolist()
    n = len(nodes)
    if n > node_limit:
        raise TooLarge(f"{n} nodes exceed the enumeration limit of {node_limit}")
    pos = {v: i for i, v in enumerate(nodes)}
    weight = [1 << (n - 1 - pos[v]) for v in nodes]
    node_p = [int(instance.node_profit[v]) for v in nodes]
    edges = [(sum(weight[pos[v]] for v in hg.edge(e)), int(instance.edge_profit[e]))
             for e in hg.edge_ids.tolist()]
    bound = sum(abs(p) for p in node_p) + sum(abs(p) for _, p in edges)
    dtype = np.int64 if bound < 1 << 62 else object

    best_val, best_idx = None, 0
    total = 1 << n
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        val = np.zeros(len(idx), dtype=dtype)
        for w, p in zip(weight, node_p):
            if p:
                val[(idx & w) != 0] += p
        for mask, p in edges:
            if p:
                val[(idx & mask) == mask] += p
        j = int(np.argmax(val))
        if best_val is None or val[j] > best_val:
            best_val, best_idx = int(val[j]), int(idx[j])
    x = np.zeros(hg.capacity, dtype=np.int8)
    for v in nodes:
        x[v] = (best_idx >> (n - 1 - pos[v])) & 1
    return Solution(x, best_val)


def brute_force_assignment(instance: Instance, node_limit: int = 20) -> dict[int, int]:
    """Oracle maximiser as a ``{node: bit}`` map over the current nodes."""
    sol = brute_force_max(instance, node_limit)
    return {int(v): int(sol.assignment[v]) for v in instance.hypergraph.nodes}
