import itertools

import pytest
from hypothesis import given, settings

from betabpo.core import Instance
from betabpo.oracle import TooLarge, brute_force_assignment, brute_force_max

from conftest import instances, naive_objective, raw


def test_example(example):
    sol = brute_force_max(example)
    assert sol.assignment.tolist() == [1, 1, 1, 0, 1]
    assert sol.objective == 8


def test_ties_go_to_smallest_point():
    inst = Instance.build(3, [0, 0, 0], [])
    assert brute_force_max(inst).assignment.tolist() == [0, 0, 0]
    inst = Instance.build(2, [1, 1], [((0, 1), -1)])
    # (0,1) and (1,0) both score 1
    assert brute_force_max(inst).assignment.tolist() == [0, 1]


def test_limit():
    with pytest.raises(TooLarge):
        brute_force_max(Instance.build(21, [0] * 21, []))
    assert brute_force_max(Instance.build(3, [1, 1, 1], []), node_limit=3).objective == 3


def test_empty_instance():
    sol = brute_force_max(Instance.build(0, [], []))
    assert sol.objective == 0 and sol.assignment.tolist() == []


def test_chunked_enumeration():
    # 2^17 points spans several chunks
    n = 17
    inst = Instance.build(n, [-1] * n, [(tuple(range(n)), n + 10), ((0, 1), -5)])
    sol = brute_force_max(inst)
    assert sol.objective == 5 and sol.assignment.all()


def test_huge_profits():
    big = 1 << 63
    inst = Instance.build(2, [big, -1], [((0, 1), -big)])
    assert brute_force_max(inst).objective == big


@settings(max_examples=150, deadline=None)
@given(instances(max_nodes=7, max_edges=8))
def test_first_maximiser_in_lex_order(inst):
    n, node_p, edges = raw(inst)
    points = list(itertools.product((0, 1), repeat=n))
    values = [naive_objective(n, node_p, edges, x) for x in points]
    best = max(values)
    sol = brute_force_max(inst)
    assert sol.objective == best
    assert tuple(sol.assignment.tolist()) == points[values.index(best)]
    assert brute_force_assignment(inst) == dict(enumerate(points[values.index(best)]))
