"""Instance constructors: random hypergraphs, Max-Cut encodings, test families.

Randomness comes from numpy's PCG64 generator (``np.random.default_rng``).
For a :class:`RandomModel` the draws happen in a fixed order: for each edge
its cardinality then its nodes (rejected duplicates are redrawn in place),
then all node profits, then all edge profits.
"""
from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from .core import Hypergraph, Instance, _exact_array
from .solver import reduce


@dataclass(frozen=True)
class RandomModel:
    num_nodes: int
    num_edges: int
    seed: int
    profit_range: tuple[int, int] = (-10, 10)

    def __post_init__(self):
        if self.num_nodes < 2:
            raise ValueError("num_nodes must be at least 2")
        if self.num_edges < 0:
            raise ValueError("num_edges must be non-negative")
        lo, hi = self.profit_range
        if lo > hi:
            raise ValueError("empty profit range")


def cardinality_weights(num_nodes: int) -> np.ndarray:
    """Probabilities of edge sizes ``2..num_nodes``, proportional to ``2**(1-c)``."""
    c = np.arange(2, num_nodes + 1)
    w = np.exp2(1.0 - c)
    return w / w.sum()


def max_distinct_edges(num_nodes: int) -> int:
    return 2 ** num_nodes - num_nodes - 1


def generate(model: RandomModel) -> Instance:
    n, m = model.num_nodes, model.num_edges
    if m > max_distinct_edges(n):
        raise ValueError(f"{m} distinct edges of size >= 2 do not exist on {n} nodes")
    rng = np.random.default_rng(model.seed)
    probs = cardinality_weights(n)
    sizes = np.arange(2, n + 1)
    seen: set[frozenset[int]] = set()
    edges: list[list[int]] = []
    while len(edges) < m:
        c = int(rng.choice(sizes, p=probs))
        nodes = rng.choice(n, size=c, replace=False)
        key = frozenset(nodes.tolist())
        if key in seen:
            continue
        seen.add(key)
        edges.append(sorted(key))
    lo, hi = model.profit_range
    node_p = rng.integers(lo, hi + 1, size=n).tolist()
    edge_p = rng.integers(lo, hi + 1, size=m).tolist()
    return Instance.build(n, node_p, list(zip(edges, edge_p)))


def cell_seed(master: int, n: int, m: int, rep: int) -> int:
    """Seed for one repetition of an experiment cell; independent of run order."""
    ss = np.random.SeedSequence([master, n, m, rep])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def removal_experiment(grid: Iterable[tuple[int, int]], reps: int, seed: int,
                       profit_range: tuple[int, int] = (-10, 10)) -> list[dict]:
    """Mean percentage of nodes removed by nest-point presolve, per ``(n, m)`` cell.

    ``mean_removed_pct`` is taken over the nodes that lie in at least one
    edge: a node no edge touches is not part of the sampled hypergraph.
    ``mean_removed_pct_all`` divides by ``n`` instead, counting such nodes as
    removed.
    """
    rows = []
    for n, m in grid:
        covered, everything = [], []
        for r in range(reps):
            inst = generate(RandomModel(n, m, cell_seed(seed, n, m, r), profit_range))
            isolated = int((inst.hypergraph._degree == 0).sum())
            removed = len(reduce(inst, record_sets=False).trace)
            everything.append(100.0 * removed / n)
            covered.append(100.0 * (removed - isolated) / (n - isolated) if n > isolated else 100.0)
        rows.append({"n": n, "m": m,
                     "mean_removed_pct": float(np.mean(covered)) if reps else float("nan"),
                     "mean_removed_pct_all": float(np.mean(everything)) if reps else float("nan"),
                     "reps": reps})
    return rows


@dataclass(frozen=True)
class WeightedGraph:
    num_nodes: int
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        seen = set()
        for u, v, w in self.edges:
            if u == v:
                raise ValueError("graph has a loop")
            if not (0 <= u < self.num_nodes and 0 <= v < self.num_nodes):
                raise ValueError("edge references an unknown node")
            if w < 1:
                raise ValueError("weights must be positive integers")
            key = frozenset((u, v))
            if key in seen:
                raise ValueError("graph has parallel edges")
            seen.add(key)

    def cut_value(self, x) -> int:
        return sum(w * (x[u] + x[v] - 2 * x[u] * x[v]) for u, v, w in self.edges)


def random_graph(num_nodes: int, density: float, rng: np.random.Generator,
                 max_weight: int = 5) -> WeightedGraph:
    edges = []
    for u in range(num_nodes):
        for v in range(u + 1, num_nodes):
            if rng.random() < density:
                edges.append((u, v, int(rng.integers(1, max_weight + 1))))
    return WeightedGraph(num_nodes, tuple(edges))


def from_maxcut(graph: WeightedGraph) -> Instance:
    """Binary polynomial instance with the same objective as the cut function.

    Pair edges cost ``-2w``, each node earns its weighted degree, and one
    extra zero-profit edge spans every node.
    """
    n = graph.num_nodes
    node_p = [0] * n
    edges = []
    for u, v, w in graph.edges:
        node_p[u] += w
        node_p[v] += w
        edges.append(((u, v), -2 * w))
    if n:
        edges.append((tuple(range(n)), 0))
    return Instance.build(n, node_p, edges)


# -- small families used by tests and demos ---------------------------------

def worked_example() -> Instance:
    """Five nodes, four nested-ish edges; beta-acyclic but not kite-free.

    Optimum is ``(1, 1, 1, 0, 1)`` with value 8.
    """
    return Instance.build(
        5, [1, 3, 2, -1, 1],
        [((0, 1, 2), 2), ((1, 2), -1), ((1, 2, 3), -6), ((0, 1, 2, 3, 4), 3)],
    )


def triangle(profits=(1, 1, 1), edge_profits=(1, 1, 1)) -> Instance:
    return Instance.build(3, list(profits), list(zip([(0, 1), (1, 2), (0, 2)], edge_profits)))


def path(n: int, node_profit: int = 1, edge_profit: int = 1) -> Instance:
    return Instance.build(n, [node_profit] * n, [((i, i + 1), edge_profit) for i in range(n - 1)])


def laminar_chain(n: int, node_profits=None, edge_profits=None) -> Instance:
    """Edges ``{0}, {0,1}, ..., {0..n-1}``; all profits 1 unless given."""
    node_p = [1] * n if node_profits is None else list(node_profits)
    edge_p = [1] * n if edge_profits is None else list(edge_profits)
    hg = Hypergraph.from_incidence(np.tri(n, n, dtype=bool))
    return Instance(hg, _exact_array(node_p), _exact_array(edge_p))


def random_beta_acyclic(n: int, rng: np.random.Generator, profit_range=(-5, 5),
                        loop_prob: float = 0.3, join_prob: float = 0.5) -> Instance:
    """Random beta-acyclic instance grown by inserting nest points.

    Each new node joins a random inclusion chain of existing edges and may
    bring loops of its own; the insertion order reversed is a valid
    nest-point elimination, so the result is beta-acyclic.  Node labels are
    shuffled at the end.
    """
    edges: list[set[int]] = []
    for u in range(n):
        order = sorted(range(len(edges)), key=lambda i: (len(edges[i]), rng.random()))
        prev = None
        for i in order:
            if rng.random() < join_prob and (prev is None or prev <= edges[i]):
                prev = set(edges[i])
                edges[i].add(u)
        while rng.random() < loop_prob:
            edges.append({u})
    perm = rng.permutation(n)
    lo, hi = profit_range
    relabeled = [sorted(int(perm[v]) for v in e) for e in edges]
    node_p = rng.integers(lo, hi + 1, size=n).tolist()
    edge_p = rng.integers(lo, hi + 1, size=len(edges)).tolist()
    return Instance.build(n, node_p, list(zip(relabeled, edge_p)))


def random_general(n: int, m: int, rng: np.random.Generator, profit_range=(-5, 5),
                   max_size: int | None = None) -> Instance:
    """Random hypergraph with loops and parallel edges permitted."""
    max_size = n if max_size is None else min(n, max_size)
    lo, hi = profit_range
    edges = []
    for _ in range(m):
        c = int(rng.integers(1, max_size + 1))
        edges.append(sorted(rng.choice(n, size=c, replace=False).tolist()))
    node_p = rng.integers(lo, hi + 1, size=n).tolist()
    edge_p = rng.integers(lo, hi + 1, size=m).tolist()
    return Instance.build(n, node_p, list(zip(edges, edge_p)))

