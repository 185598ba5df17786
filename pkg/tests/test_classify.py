import itertools

import numpy as np
from hypothesis import given, settings

from betabpo.classify import is_alpha_acyclic, is_beta_acyclic
from betabpo.core import Hypergraph
from betabpo.instances import from_maxcut, laminar_chain, random_beta_acyclic, random_graph, triangle

from conftest import instances


def gyo(n, edges):
    """Textbook GYO on python sets; nodes in a single edge and contained edges go."""
    edges = [set(e) for e in edges]
    changed = True
    while changed and edges:
        changed = False
        for v in range(n):
            holders = [e for e in edges if v in e]
            if len(holders) == 1:
                holders[0].discard(v)
                changed = True
        edges = [e for e in edges if e]
        for i, e in enumerate(edges):
            if any(j != i and e <= f for j, f in enumerate(edges)):
                del edges[i]
                changed = True
                break
    return not edges


def beta_by_subsets(n, edges):
    """Beta-acyclic iff every subfamily of edges is alpha-acyclic."""
    return all(gyo(n, sub) for r in range(1, len(edges) + 1)
               for sub in itertools.combinations(edges, r))


def test_examples(example):
    assert is_beta_acyclic(example).acyclic
    assert is_beta_acyclic(example).elimination_order == (0, 1, 2, 3, 4)
    cert = is_beta_acyclic(triangle())
    assert not cert.acyclic and cert.stuck_nodes == {0, 1, 2}
    assert not is_alpha_acyclic(triangle()).acyclic


def test_triangle_with_cover_is_alpha_only():
    hg = Hypergraph(3, [[0, 1], [1, 2], [0, 2], [0, 1, 2]])
    assert is_alpha_acyclic(hg).acyclic
    assert not is_beta_acyclic(hg).acyclic


def test_alpha_log_and_residual():
    cert = is_alpha_acyclic(Hypergraph(3, [[0, 1], [1, 2], [0, 2]]))
    assert cert.reduction_log == ()
    assert cert.residual["nodes"] == [0, 1, 2]
    cert = is_alpha_acyclic(Hypergraph(2, [[0, 1], [0, 1]]))
    # both nodes sit in two edges, so the twin edge goes first
    assert cert.acyclic
    assert cert.reduction_log == (("remove-edge", 1), ("remove-node", 0), ("remove-node", 1))


def test_maxcut_is_alpha(rng):
    for _ in range(10):
        assert is_alpha_acyclic(from_maxcut(random_graph(6, 0.6, rng))).acyclic


def test_generated_beta_acyclic(rng):
    for n in range(1, 12):
        assert is_beta_acyclic(random_beta_acyclic(n, rng)).acyclic
    assert is_beta_acyclic(laminar_chain(40)).acyclic


@settings(max_examples=300, deadline=None)
@given(instances(max_nodes=6, max_edges=6))
def test_against_set_based_definitions(inst):
    hg = inst.hypergraph
    edges = [hg.edge(e) for e in hg.edge_ids.tolist()]
    beta = is_beta_acyclic(hg).acyclic
    alpha = is_alpha_acyclic(hg).acyclic
    assert alpha == gyo(hg.capacity, edges)
    assert beta == beta_by_subsets(hg.capacity, edges)
    assert alpha or not beta


@settings(max_examples=100, deadline=None)
@given(instances(max_nodes=8, max_edges=8))
def test_random_orders_agree(inst):
    rng = np.random.default_rng(inst.hypergraph.num_edges)
    beta = is_beta_acyclic(inst).acyclic
    alpha = is_alpha_acyclic(inst).acyclic
    for _ in range(3):
        assert is_beta_acyclic(inst, rng).acyclic == beta
        assert is_alpha_acyclic(inst, rng).acyclic == alpha


def test_certificate_order_replays(rng):
    inst = random_beta_acyclic(10, rng)
    order = is_beta_acyclic(inst, rng).elimination_order
    hg = inst.hypergraph.copy()
    for u in order:
        inc = [hg.edge(int(e)) for e in hg.incident(u)]
        assert all(a <= b or b <= a for a in inc for b in inc)
        hg.strip_node(u)
    assert hg.is_empty()
