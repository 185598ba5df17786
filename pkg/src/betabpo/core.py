"""Hypergraph and instance model, node removal and nest-point search.

Edges are stored as rows of a packed bitset (one ``uint64`` word per 64
nodes), so inclusion tests and node stripping are vectorised over edges.
Node and edge identities are plain integers that never change: removing a
node keeps the ids of the edges it is stripped from, and an edge that
becomes empty is retired rather than renumbered.
"""
from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

import numpy as np

_ONE = np.uint64(1)
_INT64_SAFE = 1 << 62


def _bit(v: int) -> tuple[int, np.uint64]:
    return v >> 6, _ONE << np.uint64(v & 63)


def _exact_array(values) -> np.ndarray:
    """int64 array when every value is comfortably in range, else object ints."""
    values = [int(v) for v in values]
    if values and max(abs(v) for v in values) >= _INT64_SAFE:
        out = np.empty(len(values), dtype=object)
        out[:] = values
        return out
    return np.asarray(values, dtype=np.int64).reshape(len(values))


class Hypergraph:
    """Mutable hypergraph on node ids ``0..capacity-1``; loops and parallel edges allowed."""

    def __init__(self, num_nodes: int, edges: Iterable[Iterable[int]] = ()):
        if num_nodes < 0:
            raise ValueError("num_nodes must be non-negative")
        edges = [list(e) for e in edges]
        self._init_storage(num_nodes, len(edges))
        for eid, nodes in enumerate(edges):
            if not nodes:
                raise ValueError(f"edge {eid} is empty")
            if len(set(nodes)) != len(nodes):
                raise ValueError(f"edge {eid} repeats a node")
            arr = np.asarray(nodes, dtype=np.int64)
            if arr.min() < 0 or arr.max() >= num_nodes:
                raise ValueError(f"edge {eid} references an unknown node")
            np.bitwise_or.at(self._bits[eid], arr >> 6,
                             np.left_shift(_ONE, (arr & 63).astype(np.uint64)))
            self._size[eid] = len(arr)
            self._degree[arr] += 1

    def _init_storage(self, n: int, m: int) -> None:
        self.capacity = n
        self._words = max(1, (n + 63) // 64)
        self._bits = np.zeros((m, self._words), dtype=np.uint64)
        self._size = np.zeros(m, dtype=np.int64)
        self._edge_alive = np.ones(m, dtype=bool)
        self._node_alive = np.ones(n, dtype=bool)
        self._degree = np.zeros(n, dtype=np.int64)

    @classmethod
    def from_incidence(cls, matrix) -> "Hypergraph":
        """Build from an (edges x nodes) 0/1 matrix; every row must be non-empty."""
        mat = np.asarray(matrix, dtype=bool)
        m, n = mat.shape
        if m and not mat.any(axis=1).all():
            raise ValueError("every edge must contain at least one node")
        hg = cls.__new__(cls)
        hg._init_storage(n, m)
        packed = np.packbits(mat, axis=1, bitorder="little")
        buf = np.zeros((m, hg._words * 8), dtype=np.uint8)
        buf[:, :packed.shape[1]] = packed
        hg._bits = buf.view("<u8").astype(np.uint64).reshape(m, hg._words)
        hg._size = mat.sum(axis=1, dtype=np.int64)
        hg._degree = mat.sum(axis=0, dtype=np.int64)
        return hg

    def copy(self) -> "Hypergraph":
        hg = Hypergraph.__new__(Hypergraph)
        hg.capacity = self.capacity
        hg._words = self._words
        for name in ("_bits", "_size", "_edge_alive", "_node_alive", "_degree"):
            setattr(hg, name, getattr(self, name).copy())
        return hg

    # -- queries -------------------------------------------------------

    @property
    def nodes(self) -> np.ndarray:
        return np.flatnonzero(self._node_alive)

    @property
    def edge_ids(self) -> np.ndarray:
        return np.flatnonzero(self._edge_alive)

    @property
    def num_nodes(self) -> int:
        return int(self._node_alive.sum())

    @property
    def num_edges(self) -> int:
        return int(self._edge_alive.sum())

    @property
    def edge_capacity(self) -> int:
        return len(self._size)

    def has_node(self, u: int) -> bool:
        return 0 <= u < self.capacity and bool(self._node_alive[u])

    def has_edge(self, e: int) -> bool:
        return 0 <= e < len(self._size) and bool(self._edge_alive[e])

    def _check_node(self, u: int) -> None:
        if not self.has_node(u):
            raise KeyError(f"unknown node {u}")

    def members(self, e: int) -> np.ndarray:
        """Sorted node ids of edge ``e``."""
        if not self.has_edge(e):
            raise KeyError(f"unknown edge {e}")
        bits = np.unpackbits(self._bits[e].view(np.uint8), bitorder="little")
        return np.flatnonzero(bits[:self.capacity])

    def edge(self, e: int) -> frozenset[int]:
        return frozenset(self.members(e).tolist())

    @property
    def edges(self) -> dict[int, frozenset[int]]:
        return {int(e): self.edge(int(e)) for e in self.edge_ids}

    def edge_size(self, e: int) -> int:
        return int(self._size[e])

    def incident(self, u: int) -> np.ndarray:
        """Ids of the live edges containing ``u``, ascending."""
        self._check_node(u)
        w, mask = _bit(u)
        return np.flatnonzero(((self._bits[:, w] & mask) != 0) & self._edge_alive)

    def degree(self, u: int) -> int:
        self._check_node(u)
        return int(self._degree[u])

    def incidence(self) -> dict[int, frozenset[int]]:
        return {int(u): frozenset(self.incident(int(u)).tolist()) for u in self.nodes}

    def is_empty(self) -> bool:
        return self.num_nodes == 0 and self.num_edges == 0

    def subset(self, e: int, f: int) -> bool:
        return not (self._bits[e] & ~self._bits[f]).any()

    def node_mask(self, nodes) -> np.ndarray:
        """Packed bitset holding ``nodes``."""
        mask = np.zeros(self._words, dtype=np.uint64)
        arr = np.asarray(nodes, dtype=np.int64).reshape(-1)
        if arr.size:
            np.bitwise_or.at(mask, arr >> 6,
                             np.left_shift(_ONE, (arr & 63).astype(np.uint64)))
        return mask

    # -- mutation ------------------------------------------------------

    def strip_node(self, u: int, incident: np.ndarray | None = None) -> np.ndarray:
        """Remove ``u`` in place; returns the ids of the edges deleted as loops."""
        self._check_node(u)
        if incident is None:
            incident = self.incident(u)
        w, mask = _bit(u)
        self._bits[incident, w] &= ~mask
        self._size[incident] -= 1
        dead = incident[self._size[incident] == 0]
        self._edge_alive[dead] = False
        self._node_alive[u] = False
        self._degree[u] = 0
        return dead

    def drop_edge(self, e: int) -> None:
        """Delete edge ``e`` in place (nodes are kept)."""
        if not self.has_edge(e):
            raise KeyError(f"unknown edge {e}")
        self._degree[self.members(e)] -= 1
        self._edge_alive[e] = False

    def __repr__(self) -> str:
        return f"Hypergraph(nodes={self.num_nodes}, edges={self.num_edges})"


@dataclass
class Instance:
    """A hypergraph with an exact integer profit per node and per edge.

    Profit arrays are indexed by id; entries of removed nodes and retired
    edges are stale and never read.
    """

    hypergraph: Hypergraph
    node_profit: np.ndarray
    edge_profit: np.ndarray

    @classmethod
    def build(cls, num_nodes: int, node_profits: Sequence[int],
              edges: Sequence[tuple[Iterable[int], int]]) -> "Instance":
        """``edges`` is a list of ``(nodes, profit)`` pairs; edge ids follow list order."""
        edges = list(edges)
        if len(node_profits) != num_nodes:
            raise ValueError("need one profit per node")
        hg = Hypergraph(num_nodes, [nodes for nodes, _ in edges])
        return cls(hg, _exact_array(node_profits), _exact_array([p for _, p in edges]))

    def __post_init__(self):
        if len(self.node_profit) != self.hypergraph.capacity:
            raise ValueError("node profit vector has the wrong length")
        if len(self.edge_profit) != self.hypergraph.edge_capacity:
            raise ValueError("edge profit vector has the wrong length")

    def copy(self) -> "Instance":
        return Instance(self.hypergraph.copy(), self.node_profit.copy(), self.edge_profit.copy())

    @property
    def nodes(self) -> np.ndarray:
        return self.hypergraph.nodes

    def node_profits(self) -> dict[int, int]:
        return {int(u): int(self.node_profit[u]) for u in self.hypergraph.nodes}

    def edge_profits(self) -> dict[int, int]:
        return {int(e): int(self.edge_profit[e]) for e in self.hypergraph.edge_ids}

    def promote(self) -> None:
        """Switch profits to arbitrary-precision integers."""
        if self.node_profit.dtype != object:
            self.node_profit = self.node_profit.astype(object)
            self.edge_profit = self.edge_profit.astype(object)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Instance):
            return NotImplemented
        a, b = self.hypergraph, other.hypergraph
        return (a.capacity == b.capacity
                and np.array_equal(a.nodes, b.nodes)
                and a.edges == b.edges
                and self.node_profits() == other.node_profits()
                and self.edge_profits() == other.edge_profits())


@dataclass(frozen=True)
class EdgeChain:
    """Edges incident to ``owner`` in inclusion order (position 0 is the implicit ``{owner}``)."""

    owner: int
    edges: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.edges)


class NestPointFinder:
    """Incremental lowest-id nest-point search over a hypergraph being peeled.

    Two facts keep this cheap.  Inclusion between two edges survives any
    node removal, so a verified pair ``e <= f`` is cached in ``_succ``.  And a
    nest point stays a nest point, so a node needs re-testing only after an
    edge it lies in has changed.
    """

    UNKNOWN, NEST, BLOCKED = 0, 1, 2

    def __init__(self, hg: Hypergraph, counter=None):
        self.hg = hg
        self.counter = counter
        self._status = np.zeros(hg.capacity, dtype=np.int8)
        self._succ = np.full(hg.edge_capacity, -1, dtype=np.int64)

    def chain(self, u: int) -> np.ndarray | None:
        """Sorted incident edges of ``u`` if it is a nest point, else ``None``."""
        hg = self.hg
        inc = hg.incident(u)
        if self.counter is not None:
            self.counter.scan += hg.edge_capacity
        if len(inc) > 1:
            inc = inc[np.argsort(hg._size[inc], kind="stable")]
            a, b = inc[:-1], inc[1:]
            todo = self._succ[a] != b
            if todo.any():
                a, b = a[todo], b[todo]
                if self.counter is not None:
                    self.counter.scan += len(a) * hg._words
                if (hg._bits[a] & ~hg._bits[b]).any():
                    self._status[u] = self.BLOCKED
                    return None
                self._succ[a] = b
        self._status[u] = self.NEST
        return inc

    def lowest(self) -> tuple[int, np.ndarray] | None:
        cand = np.flatnonzero(self.hg._node_alive & (self._status != self.BLOCKED))
        for u in cand:
            u = int(u)
            inc = self.chain(u)
            if inc is not None:
                return u, inc
        return None

    def all_nest_points(self) -> list[int]:
        return [int(u) for u in self.hg.nodes if self.chain(int(u)) is not None]

    def removed(self, u: int, chain: np.ndarray) -> None:
        """Call after stripping ``u``; ``chain`` is the edge list it had."""
        live = chain[self.hg._edge_alive[chain]]
        if len(live):
            # chain[-1] is the largest edge and contains every neighbour of u
            touched = self.hg.members(int(chain[-1]))
            st = self._status[touched]
            st[st == self.BLOCKED] = self.UNKNOWN
            self._status[touched] = st


def is_nest_point(instance: Instance | Hypergraph, u: int) -> bool:
    hg = _hg(instance)
    hg._check_node(u)
    return NestPointFinder(hg).chain(u) is not None


def find_nest_point(instance: Instance | Hypergraph) -> tuple[int, EdgeChain] | None:
    """Smallest-id nest point and its inclusion-ordered edge chain, or ``None``."""
    found = NestPointFinder(_hg(instance)).lowest()
    if found is None:
        return None
    u, inc = found
    return u, EdgeChain(u, tuple(int(e) for e in inc))


def remove_node(instance: Instance, u: int) -> Instance:
    """Copy of ``instance`` with ``u`` removed; loops ``{u}`` disappear, other edges keep their ids and profits."""
    out = instance.copy()
    out.hypergraph.strip_node(u)
    return out


def _hg(obj) -> Hypergraph:
    return obj.hypergraph if isinstance(obj, Instance) else obj


def as_assignment(hg: Hypergraph, x) -> np.ndarray:
    """Dense 0/1 vector over node ids from a mapping or a full-length sequence.

    Raises ``ValueError`` unless ``x`` covers exactly the current nodes.
    """
    nodes = hg.nodes
    out = np.zeros(hg.capacity, dtype=np.int8)
    if isinstance(x, Mapping):
        keys = sorted(int(k) for k in x)
        if keys != nodes.tolist():
            raise ValueError("assignment domain does not match the current nodes")
        vals = [x[k] for k in x]
        idx = [int(k) for k in x]
    else:
        # a full-length vector is accepted; entries of removed nodes are ignored
        vals = list(x) if not isinstance(x, np.ndarray) else x.tolist()
        if len(vals) != hg.capacity:
            raise ValueError("assignment domain does not match the current nodes")
        vals = [vals[v] for v in nodes]
        idx = nodes
    for v in vals:
        if v not in (0, 1):
            raise ValueError("assignment values must be 0 or 1")
    out[idx] = vals
    return out


def active_edges(hg: Hypergraph, x: np.ndarray) -> np.ndarray:
    """Live edges all of whose nodes are set to 1 in the dense vector ``x``."""
    ones = hg.node_mask(np.flatnonzero(x))
    live = hg.edge_ids
    return live[~(hg._bits[live] & ~ones).any(axis=1)]


def evaluate(instance: Instance, x) -> int:
    """Exact objective value of assignment ``x`` over the current nodes."""
    hg = instance.hypergraph
    dense = as_assignment(hg, x)
    on = np.flatnonzero(dense)
    total = sum(int(p) for p in instance.node_profit[on])
    total += sum(int(p) for p in instance.edge_profit[active_edges(hg, dense)])
    return total
