"""Beta- and alpha-acyclicity recognition by elimination, with certificates."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import Hypergraph, Instance, NestPointFinder


@dataclass(frozen=True)
class BetaCertificate:
    acyclic: bool
    elimination_order: tuple[int, ...]
    stuck_nodes: frozenset[int] = frozenset()


@dataclass(frozen=True)
class AlphaCertificate:
    acyclic: bool
    reduction_log: tuple[tuple[str, int], ...]
    residual: dict = field(default_factory=dict)


def _graph(obj) -> Hypergraph:
    return (obj.hypergraph if isinstance(obj, Instance) else obj).copy()


def is_beta_acyclic(hypergraph, rng: np.random.Generator | None = None) -> BetaCertificate:
    """Peel nest points until the hypergraph is empty or none is left.

    By default the lowest-id nest point goes first; with ``rng`` one is drawn
    uniformly among all current nest points.
    """
    hg = _graph(hypergraph)
    finder = NestPointFinder(hg)
    order = []
    while hg.num_nodes:
        if rng is None:
            found = finder.lowest()
            if found is None:
                break
            u, chain = found
        else:
            options = finder.all_nest_points()
            if not options:
                break
            u = int(rng.choice(options))
            chain = finder.chain(u)
        hg.strip_node(u, chain)
        finder.removed(u, chain)
        order.append(u)
    stuck = frozenset(hg.nodes.tolist())
    return BetaCertificate(not stuck, tuple(order), stuck)


def _removable_edge(hg: Hypergraph, e: int) -> bool:
    """``e`` lies inside another live edge (for equal twins, only the higher id goes)."""
    others = hg.edge_ids
    others = others[others != e]
    if not len(others):
        return False
    inside = ~(hg._bits[e] & ~hg._bits[others]).any(axis=1)
    if not inside.any():
        return False
    hosts = others[inside]
    strict = hg._size[hosts] > hg._size[e]
    return bool(strict.any() or (hosts < e).any())


def is_alpha_acyclic(hypergraph, rng: np.random.Generator | None = None) -> AlphaCertificate:
    """GYO reduction: drop nodes in at most one edge and edges inside other edges.

    Deterministic policy: lowest applicable node first, else lowest applicable
    edge.  With ``rng`` a step is drawn uniformly among all applicable ones.
    """
    hg = _graph(hypergraph)
    log: list[tuple[str, int]] = []
    while not hg.is_empty():
        nodes = hg.nodes
        loose = nodes[hg._degree[nodes] <= 1]
        if rng is None:
            if len(loose):
                step = ("remove-node", int(loose[0]))
            else:
                edge = next((int(e) for e in hg.edge_ids if _removable_edge(hg, int(e))), None)
                if edge is None:
                    break
                step = ("remove-edge", edge)
        else:
            options = [("remove-node", int(u)) for u in loose]
            options += [("remove-edge", int(e)) for e in hg.edge_ids if _removable_edge(hg, int(e))]
            if not options:
                break
            step = options[int(rng.integers(len(options)))]
        kind, ident = step
        if kind == "remove-node":
            hg.strip_node(ident)
        else:
            hg.drop_edge(ident)
        log.append(step)
    acyclic = hg.is_empty()
    residual = {} if acyclic else {
        "nodes": hg.nodes.tolist(),
        "edges": {e: sorted(s) for e, s in hg.edges.items()},
    }
    return AlphaCertificate(acyclic, tuple(log), residual)
