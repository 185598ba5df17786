"""Single nest-point elimination: sign analysis, profit rewriting and lifting.

For a nest point ``u`` with chain ``e_1 <= ... <= e_k`` the profits
``p_u, p_{e_1}, ..., p_{e_k}`` are treated as one sequence (position 0 is
``u`` itself).  Its prefix sums decide which positions are sign flips and
how the surviving edges are re-priced once ``u`` is gone.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum

import numpy as np

from .core import EdgeChain, Hypergraph, Instance


class FlipClass(IntEnum):
    """Position classes; the values follow the order in which runs cycle."""

    NP = 0
    P = 1
    PN = 2
    N = 3


ONE_SIDE = (FlipClass.P, FlipClass.PN)
_NP, _P, _PN, _N = (int(c) for c in FlipClass)


def class_names(classes) -> list[str]:
    return [FlipClass(int(c)).name for c in classes]


def class_codes(names) -> np.ndarray:
    return np.array([FlipClass[s] for s in names], dtype=np.int8)


@dataclass(frozen=True)
class FlipClassification:
    prefix_sums: np.ndarray
    classes: np.ndarray
    lam: int | None = None

    @property
    def k(self) -> int:
        return len(self.classes) - 1

    def members(self, cls: FlipClass) -> set[int]:
        return {int(i) for i in np.flatnonzero(self.classes == cls)}


def _as_profits(profits) -> np.ndarray:
    if isinstance(profits, np.ndarray):
        return profits
    vals = [int(p) for p in profits]
    if vals and max(abs(v) for v in vals) * len(vals) >= 1 << 62:
        arr = np.empty(len(vals), dtype=object)
        arr[:] = vals
        return arr
    return np.asarray(vals, dtype=np.int64)


def classify_flips(profits) -> FlipClassification:
    """Partition positions ``0..k`` of a chain's profit sequence into NP/P/PN/N.

    A prefix sum that turns positive (negative) while the last non-zero
    prefix sum before it was negative (positive) is a flip.  When every
    earlier prefix sum is zero there is no earlier sign to contradict, and
    the transition counts as a flip as well.
    """
    p = _as_profits(profits)
    k = len(p) - 1
    if k < 0:
        raise ValueError("need at least the node profit")
    s = np.cumsum(p)
    sign = (s > 0).astype(np.int8) - (s < 0).astype(np.int8)
    idx = np.arange(k + 1)
    last_nz = np.maximum.accumulate(np.where(sign != 0, idx, -1))
    # sign of the last non-zero prefix sum strictly before each position, 0 if none
    before = np.zeros(k + 1, dtype=np.int8)
    prior = last_nz[:-1]
    before[1:] = np.where(prior >= 0, sign[np.maximum(prior, 0)], 0)
    pos_flip = (sign > 0) & (before <= 0)
    neg_flip = (sign < 0) & (before >= 0)
    pos_flip[0] = neg_flip[0] = False

    any_flip = pos_flip | neg_flip
    flips = np.flatnonzero(any_flip)
    if len(flips) == 0:
        classes = np.full(k + 1, _PN if s[0] > 0 else _NP, dtype=np.int8)
    else:
        # every non-flip position copies the run opened by the latest flip
        latest = np.maximum.accumulate(np.where(any_flip, idx, -1))
        after_pos = np.where(pos_flip, _PN, _NP).astype(np.int8)
        classes = after_pos[np.maximum(latest, 0)]
        classes[:flips[0]] = _PN if neg_flip[flips[0]] else _NP
        classes[pos_flip] = _P
        classes[neg_flip] = _N
    return FlipClassification(s, classes)


def compute_lambda(chain: EdgeChain | np.ndarray, hypergraph: Hypergraph) -> int | None:
    """First chain position whose edge is not the loop ``{u}``; ``None`` if there is none."""
    edges = np.asarray(chain.edges if isinstance(chain, EdgeChain) else chain, dtype=np.int64)
    if len(edges) == 0:
        return None
    sizes = hypergraph._size[edges]
    # sizes ascend along a chain, so the loops form a prefix
    pos = int(np.searchsorted(sizes, 2, side="left"))
    return pos + 1 if pos < len(edges) else None


def rewritten_profits(fc: FlipClassification, profits, lam: int) -> np.ndarray:
    """New profits for chain positions ``lam..k`` (aligned with that slice)."""
    p = _as_profits(profits)
    s, cls = fc.prefix_sums, fc.classes
    out = np.zeros(len(p) - lam, dtype=p.dtype)
    c = cls[lam:]
    pos = c == _P
    out[pos] = s[lam:][pos]
    keep = c == _PN
    out[keep] = p[lam:][keep]
    neg = c == _N
    out[neg] = -s[lam - 1:-1][neg]
    return out


def rewrite_profits(instance: Instance, chain: EdgeChain,
                    classification: FlipClassification) -> dict[int, int]:
    """New profits, keyed by edge id, for the chain edges from position lambda on."""
    lam = classification.lam
    if lam is None:
        lam = compute_lambda(chain, instance.hypergraph)
    if lam is None:
        raise ValueError("chain consists of loops only")
    profits = chain_profits(instance, chain)
    new = rewritten_profits(classification, profits, lam)
    return {int(e): int(p) for e, p in zip(chain.edges[lam - 1:], new)}


def chain_profits(instance: Instance, chain: EdgeChain | np.ndarray, owner: int | None = None) -> np.ndarray:
    if isinstance(chain, EdgeChain):
        owner, edges = chain.owner, np.asarray(chain.edges, dtype=np.int64)
    else:
        edges = chain
    head = instance.node_profit[[owner]]
    return np.concatenate([head, instance.edge_profit[edges]])


def loop_only_decision(profits) -> tuple[int, int]:
    """Bit for a node whose edges are all loops, and the value it contributes."""
    total = sum(int(p) for p in profits)
    return (1, total) if total >= 0 else (0, 0)


def chain_offset(fc: FlipClassification, lam: int) -> int:
    if fc.classes[lam] in (FlipClass.PN, FlipClass.N):
        return int(fc.prefix_sums[lam - 1])
    return 0


@dataclass(frozen=True)
class LoopRecord:
    node: int
    bit: int
    gain: int
    edges: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))


@dataclass(frozen=True)
class ChainRecord:
    """What is needed to put ``node`` back once its neighbours are decided.

    ``edges`` are the chain edge ids (positions ``1..k``); ``stripped_sets``
    holds, when materialised, the node sets ``e_i - {node}`` at elimination
    time for positions ``0..k``.
    """

    node: int
    edges: np.ndarray
    classes: np.ndarray
    lam: int
    offset: int
    stripped_sets: tuple[frozenset[int], ...] | None = None

    @property
    def k(self) -> int:
        return len(self.classes) - 1

    def with_sets(self, sets) -> "ChainRecord":
        return ChainRecord(self.node, self.edges, self.classes, self.lam, self.offset,
                           tuple(frozenset(s) for s in sets))


EliminationRecord = LoopRecord | ChainRecord


def mu(record: ChainRecord, x) -> int:
    """Largest position whose stripped set is entirely set to 1 under ``x``.

    ``x`` maps node id to bit (dict or indexable).  The predicate is monotone
    along the chain, so a binary search suffices.
    """
    sets = record.stripped_sets
    if sets is None:
        raise ValueError("record has no materialised stripped sets")

    def full(i: int) -> bool:
        for v in sets[i]:
            try:
                bit = x[v]
            except (KeyError, IndexError):
                raise KeyError(f"node {v} is unassigned") from None
            if bit is None or bit < 0:
                raise KeyError(f"node {v} is unassigned")
            if bit != 1:
                return False
        return True

    lo, hi = 0, record.k  # full(lo) always holds: the set at position 0 is empty
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if full(mid):
            lo = mid
        else:
            hi = mid - 1
    if lo < record.lam - 1:
        raise AssertionError("mu fell below the loop prefix")
    return lo


def phi(record: ChainRecord | LoopRecord, x) -> int:
    if isinstance(record, LoopRecord):
        return record.bit
    return int(record.classes[mu(record, x)] in ONE_SIDE)
