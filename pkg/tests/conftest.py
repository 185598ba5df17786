import itertools

import numpy as np
import pytest
from hypothesis import strategies as st

from betabpo.core import Instance
from betabpo.instances import worked_example


def naive_objective(n, node_p, edges, x):
    """Plain-Python objective, independent of the package's evaluator."""
    total = sum(p for p, b in zip(node_p, x) if b)
    for nodes, p in edges:
        if all(x[v] for v in nodes):
            total += p
    return total


def naive_max(n, node_p, edges):
    return max(naive_objective(n, node_p, edges, x) for x in itertools.product((0, 1), repeat=n))


def raw(instance: Instance):
    """(n, node profits, [(nodes, profit)]) for a freshly built instance."""
    hg = instance.hypergraph
    return (hg.capacity, [int(p) for p in instance.node_profit],
            [(sorted(hg.edge(e)), int(instance.edge_profit[e])) for e in hg.edge_ids.tolist()])


@st.composite
def instances(draw, max_nodes=6, max_edges=7, profit=8, max_size=None):
    n = draw(st.integers(1, max_nodes))
    m = draw(st.integers(0, max_edges))
    cap = n if max_size is None else min(n, max_size)
    edges = []
    for _ in range(m):
        nodes = draw(st.sets(st.integers(0, n - 1), min_size=1, max_size=cap))
        edges.append((sorted(nodes), draw(st.integers(-profit, profit))))
    node_p = draw(st.lists(st.integers(-profit, profit), min_size=n, max_size=n))
    return Instance.build(n, node_p, edges)


@pytest.fixture
def example():
    return worked_example()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
