"""Nest-point elimination solver, presolve reduction and solution lifting."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import Instance, NestPointFinder, active_edges, evaluate
from .elimination import (
    ChainRecord,
    FlipClass,
    EliminationRecord,
    LoopRecord,
    chain_offset,
    chain_profits,
    classify_flips,
    loop_only_decision,
    phi,
    rewritten_profits,
)

_INT64_SAFE = 1 << 62
_P, _PN = int(FlipClass.P), int(FlipClass.PN)


@dataclass
class OpCounter:
    """Instrumentation for the elimination loop.

    ``arithmetic`` counts additions, sign tests and profit writes on the
    profit sequence plus binary-search probes; ``scan`` counts words and
    ids read while looking for nest points.
    """

    arithmetic: int = 0
    scan: int = 0
    steps: int = 0


@dataclass
class EliminationTrace:
    records: list[EliminationRecord] = field(default_factory=list)
    accumulated_offset: int = 0

    def __len__(self) -> int:
        return len(self.records)

    @property
    def order(self) -> list[int]:
        return [r.node for r in self.records]


@dataclass
class ReducedProblem:
    core: Instance
    trace: EliminationTrace
    original_node_count: int

    @property
    def removed_fraction(self) -> float:
        if self.original_node_count == 0:
            return 1.0
        return len(self.trace) / self.original_node_count

    @property
    def core_nodes(self) -> np.ndarray:
        return self.core.hypergraph.nodes


@dataclass
class Solution:
    assignment: np.ndarray
    objective: int


class NotBetaAcyclic(Exception):
    """Raised by :func:`solve` when nest-point removal gets stuck.

    The partial reduction is kept on ``reduced`` so it can be reused.
    """

    def __init__(self, reduced: ReducedProblem):
        self.reduced = reduced
        core = reduced.core.hypergraph
        super().__init__(f"no nest point left: core has {core.num_nodes} nodes "
                         f"and {core.num_edges} edges")


class AuditError(AssertionError):
    pass


def _fits_int64(profits: np.ndarray) -> bool:
    if profits.dtype == object:
        return False
    if not len(profits):
        return True
    return int(np.abs(profits).max()) * len(profits) < _INT64_SAFE


def reduce(instance: Instance, *, record_sets: bool = True, max_steps: int | None = None,
           counter: OpCounter | None = None) -> ReducedProblem:
    """Strip lowest-id nest points until none is left (or ``max_steps`` is hit).

    The input is not modified.  With ``record_sets`` each chain record gets
    its stripped node sets, which makes the trace self-contained.
    """
    inst = instance.copy()
    hg = inst.hypergraph
    finder = NestPointFinder(hg, counter)
    trace = EliminationTrace()
    budget = hg.capacity if max_steps is None else max_steps
    while len(trace) < budget:
        found = finder.lowest()
        if found is None:
            break
        u, chain = found
        k = len(chain)
        profits = chain_profits(inst, chain, u)
        if not _fits_int64(profits) and profits.dtype != object:
            inst.promote()
            profits = profits.astype(object)
        sizes = hg._size[chain]
        if k == 0 or sizes[-1] == 1:
            bit, gain = loop_only_decision(profits)
            record = LoopRecord(u, bit, gain, chain)
            trace.accumulated_offset += gain
            if counter is not None:
                counter.arithmetic += k + 1
        else:
            fc = classify_flips(profits)
            lam = int(np.searchsorted(sizes, 2, side="left")) + 1
            inst.edge_profit[chain[lam - 1:]] = rewritten_profits(fc, profits, lam)
            offset = chain_offset(fc, lam)
            record = ChainRecord(u, chain, fc.classes, lam, offset)
            trace.accumulated_offset += offset
            if counter is not None:
                counter.arithmetic += 3 * (k + 1) + (k - lam + 1) + max(1, k).bit_length()
        hg.strip_node(u, chain)
        finder.removed(u, chain)
        trace.records.append(record)
        if counter is not None:
            counter.steps += 1
    reduced = ReducedProblem(inst, trace, instance.hypergraph.num_nodes)
    if record_sets:
        attach_stripped_sets(reduced)
    return reduced


def attach_stripped_sets(reduced: ReducedProblem) -> None:
    """Materialise every chain record's stripped sets from the trace and the core.

    Walking the trace backwards, the content of an edge right after a step is
    its core content plus every node eliminated later whose chain holds it.
    """
    core = reduced.core.hypergraph
    content: dict[int, set[int]] = {int(e): set(core.members(int(e)).tolist())
                                    for e in core.edge_ids}
    records = reduced.trace.records
    for t in range(len(records) - 1, -1, -1):
        rec = records[t]
        if isinstance(rec, ChainRecord) and rec.stripped_sets is None:
            sets = [frozenset()] + [frozenset(content.get(e, ())) for e in rec.edges.tolist()]
            records[t] = rec.with_sets(sets)
        for e in rec.edges.tolist():
            content.setdefault(e, set()).add(rec.node)


def lift(reduced: ReducedProblem, core_solution) -> np.ndarray:
    """Extend an assignment of the core nodes to all original nodes.

    ``core_solution`` is a mapping node id -> bit or a sequence aligned with
    ``reduced.core_nodes``.  Edge activity is carried backwards through the
    trace by edge id, so each record costs O(k).
    """
    core = reduced.core.hypergraph
    x = _core_vector(reduced, core_solution)
    active = np.ones(core.edge_capacity, dtype=bool)
    live = core.edge_ids
    active[live] = False
    active[active_edges(core, x)] = True
    for rec in reversed(reduced.trace.records):
        edges = rec.edges
        if isinstance(rec, LoopRecord):
            bit = rec.bit
        else:
            # active is a True-prefix along the chain; the first False ends it
            m = int(np.searchsorted(~active[edges], True))
            if m < rec.lam - 1:
                raise AuditError("mu fell below the loop prefix")
            bit = int(rec.classes[m] == _P or rec.classes[m] == _PN)
        x[rec.node] = bit
        if not bit and len(edges):
            active[edges] = False
    return x


def lift_with_sets(reduced_or_trace, core_solution, original_node_count: int | None = None) -> np.ndarray:
    """Lift using only the stripped node sets stored in the records."""
    if isinstance(reduced_or_trace, ReducedProblem):
        trace = reduced_or_trace.trace
        x = _core_vector(reduced_or_trace, core_solution).astype(np.int64)
        eliminated = [r.node for r in trace.records]
        x[eliminated] = -1
    else:
        trace = reduced_or_trace
        n = original_node_count
        x = np.full(n, -1, dtype=np.int64)
        core_nodes = _complement(trace, n)
        vals = _aligned(core_nodes, core_solution)
        x[core_nodes] = vals
    for rec in reversed(trace.records):
        x[rec.node] = phi(rec, x)
    return x.astype(np.int8)


def _complement(trace: EliminationTrace, n: int) -> np.ndarray:
    mask = np.ones(n, dtype=bool)
    mask[[r.node for r in trace.records]] = False
    return np.flatnonzero(mask)


def _aligned(core_nodes: np.ndarray, core_solution) -> list[int]:
    if isinstance(core_solution, dict):
        if sorted(int(k) for k in core_solution) != core_nodes.tolist():
            raise ValueError("core solution does not cover exactly the core nodes")
        vals = [int(core_solution[int(v)]) for v in core_nodes]
    else:
        vals = [int(b) for b in core_solution]
        if len(vals) != len(core_nodes):
            raise ValueError("core solution does not cover exactly the core nodes")
    if any(b not in (0, 1) for b in vals):
        raise ValueError("assignment values must be 0 or 1")
    return vals


def _core_vector(reduced: ReducedProblem, core_solution) -> np.ndarray:
    x = np.zeros(reduced.core.hypergraph.capacity, dtype=np.int8)
    nodes = reduced.core_nodes
    if len(nodes):
        x[nodes] = _aligned(nodes, core_solution)
    elif core_solution is not None and len(core_solution):
        raise ValueError("core is empty but a core solution was given")
    return x


def optimal_objective_offset_check(instance: Instance, reduced: ReducedProblem, core_solution) -> bool:
    """Original objective of the lifted point equals core objective plus trace offset."""
    x = lift(reduced, core_solution)
    core = reduced.core
    core_x = {int(v): int(x[v]) for v in core.hypergraph.nodes}
    return evaluate(instance, x) == evaluate(core, core_x) + reduced.trace.accumulated_offset


def solve(instance: Instance, *, counter: OpCounter | None = None) -> Solution:
    """Optimal solution of a beta-acyclic instance.

    Raises :class:`NotBetaAcyclic` when the instance cannot be emptied.
    """
    reduced = reduce(instance, record_sets=False, counter=counter)
    if not reduced.core.hypergraph.is_empty():
        raise NotBetaAcyclic(reduced)
    x = lift(reduced, {})
    objective = evaluate(instance, x)
    if objective != reduced.trace.accumulated_offset:
        raise AuditError(f"objective {objective} disagrees with trace offset "
                         f"{reduced.trace.accumulated_offset}")
    return Solution(x, objective)


def solve_with_core(instance: Instance, core_solver) -> Solution:
    """Presolve, hand the core to ``core_solver`` (Instance -> {node: bit}), lift back."""
    reduced = reduce(instance, record_sets=False)
    core_x = core_solver(reduced.core) if reduced.core_nodes.size else {}
    x = lift(reduced, core_x)
    return Solution(x, evaluate(instance, x))
