"""Risk network representation, the capture-probability cost transform and path scoring."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, InvalidNetworkError, InvalidPathError

#: Cost assigned to a node that cannot be survived (capture probability 1).
INFINITE_COST = math.inf


def risk_cost(p: float) -> float:
    """Additive surrogate ``-ln(1 - p)`` for a node with capture probability ``p``.

    ``p == 1`` maps to :data:`INFINITE_COST`; anything outside ``[0, 1]`` (or NaN)
    raises :class:`DomainError`.
    """
    try:
        p = float(p)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"capture probability must be a real number, got {p!r}") from exc
    if not math.isfinite(p) or p < 0.0 or p > 1.0:
        raise DomainError(f"capture probability must lie in [0, 1], got {p!r}")
    if p == 1.0:
        return INFINITE_COST
    # log1p keeps the round trip 1 - exp(-w) == p accurate for small p
    return -math.log1p(-p)


def _as_index(value, node_count: int, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise InvalidNetworkError(f"{what} must be an integer node id, got {value!r}")
    value = int(value)
    if value < 0 or value >= node_count:
        raise InvalidNetworkError(f"{what} {value} is outside [0, {node_count})")
    return value


@dataclass(frozen=True, eq=False)
class RiskNetwork:
    """Directed graph with per-node capture probability and per-edge travel time.

    Adjacency is stored in CSR form: the out-edges of ``v`` are
    ``targets[indptr[v]:indptr[v + 1]]`` with matching ``travel_times``.
    Instances are immutable; build them with :func:`build_network`.
    """

    node_count: int
    indptr: np.ndarray
    targets: np.ndarray
    travel_times: np.ndarray
    capture_prob: np.ndarray
    risk_costs: np.ndarray = field(repr=False)
    _edge_index: dict = field(repr=False)

    @property
    def edge_count(self) -> int:
        return int(self.targets.shape[0])

    def successors(self, v: int) -> np.ndarray:
        return self.targets[self.indptr[v]:self.indptr[v + 1]]

    def out_edges(self, v: int) -> list[tuple[int, float]]:
        lo, hi = self.indptr[v], self.indptr[v + 1]
        return [(int(t), float(c)) for t, c in zip(self.targets[lo:hi], self.travel_times[lo:hi])]

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._edge_index

    def edge_time(self, u: int, v: int) -> float:
        try:
            return float(self.travel_times[self._edge_index[(u, v)]])
        except KeyError:
            raise InvalidPathError(f"no edge {u} -> {v}") from None

    def edges(self) -> list[tuple[int, int, float]]:
        """All arcs as ``(source, target, travel_time)`` in storage order."""
        out = []
        for v in range(self.node_count):
            out.extend((v, t, c) for t, c in self.out_edges(v))
        return out

    def reversed_csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Predecessor lists as ``(indptr, sources, travel_times)``."""
        sources = np.repeat(np.arange(self.node_count, dtype=np.int64), np.diff(self.indptr))
        order = np.argsort(self.targets, kind="stable")
        counts = np.bincount(self.targets, minlength=self.node_count)
        indptr = np.zeros(self.node_count + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        return indptr, sources[order], self.travel_times[order]

    def with_capture_probs(self, capture_probs: Sequence[float]) -> "RiskNetwork":
        return build_network(self.node_count, self.edges(), capture_probs)

    def __eq__(self, other):
        if not isinstance(other, RiskNetwork):
            return NotImplemented
        return (
            self.node_count == other.node_count
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.targets, other.targets)
            and np.array_equal(self.travel_times, other.travel_times)
            and np.array_equal(self.capture_prob, other.capture_prob)
        )

    __hash__ = None


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def build_network(
    node_count: int,
    edges: Iterable[Sequence],
    capture_probs: Sequence[float],
) -> RiskNetwork:
    """Validate and assemble a :class:`RiskNetwork`.

    ``edges`` holds ``(source, target, travel_time)`` triples; a bare
    ``(source, target)`` pair gets travel time 1.0. Out-edges keep their input
    order, which is what solvers iterate over.
    """
    if isinstance(node_count, bool) or not isinstance(node_count, (int, np.integer)) or node_count < 1:
        raise InvalidNetworkError(f"node_count must be a positive integer, got {node_count!r}")
    node_count = int(node_count)

    probs = list(capture_probs)
    if len(probs) != node_count:
        raise InvalidNetworkError(f"expected {node_count} capture probabilities, got {len(probs)}")
    try:
        costs = [risk_cost(p) for p in probs]
    except DomainError as exc:
        raise InvalidNetworkError(str(exc)) from exc

    sources, targets, times = [], [], []
    seen: dict[tuple[int, int], int] = {}
    for edge in edges:
        if len(edge) == 2:
            s, t = edge
            c = 1.0
        elif len(edge) == 3:
            s, t, c = edge
        else:
            raise InvalidNetworkError(f"edge must be (source, target[, travel_time]), got {edge!r}")
        s = _as_index(s, node_count, "edge source")
        t = _as_index(t, node_count, "edge target")
        if s == t:
            raise InvalidNetworkError(f"self-loop on node {s}")
        if (s, t) in seen:
            raise InvalidNetworkError(f"duplicate edge {s} -> {t}")
        try:
            c = float(c)
        except (TypeError, ValueError) as exc:
            raise InvalidNetworkError(f"travel time must be a real number, got {c!r}") from exc
        if not math.isfinite(c) or c < 0.0:
            raise InvalidNetworkError(f"travel time must be finite and non-negative, got {c!r}")
        seen[(s, t)] = len(sources)
        sources.append(s)
        targets.append(t)
        times.append(c)

    src = np.asarray(sources, dtype=np.int64)
    order = np.argsort(src, kind="stable")
    counts = np.bincount(src, minlength=node_count)
    indptr = np.zeros(node_count + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    tgt = np.asarray(targets, dtype=np.int64)[order]
    tt = np.asarray(times, dtype=np.float64)[order]
    position = np.empty(len(order), dtype=np.int64)
    position[order] = np.arange(len(order))
    edge_index = {key: int(position[i]) for key, i in seen.items()}

    return RiskNetwork(
        node_count=node_count,
        indptr=_frozen(indptr),
        targets=_frozen(tgt),
        travel_times=_frozen(tt),
        capture_prob=_frozen(np.asarray(probs, dtype=np.float64)),
        risk_costs=_frozen(np.asarray(costs, dtype=np.float64)),
        _edge_index=edge_index,
    )


@dataclass(frozen=True)
class EscapePath:
    nodes: tuple[int, ...]
    risk_cost: float
    survival_prob: float
    travel_time: float

    @property
    def exit(self) -> int:
        return self.nodes[-1]

    def to_dict(self) -> dict:
        return {
            "nodes": list(self.nodes),
            "risk_cost": self.risk_cost,
            "survival_prob": self.survival_prob,
            "travel_time": self.travel_time,
        }


def score_path(network: RiskNetwork, nodes: Sequence[int]) -> EscapePath:
    """Score a node sequence both multiplicatively (survival) and additively (risk cost).

    Every node, the first and last included, contributes its capture risk.
    """
    nodes = tuple(int(v) for v in nodes)
    if not nodes:
        raise InvalidPathError("path is empty")
    for v in nodes:
        if v < 0 or v >= network.node_count:
            raise InvalidPathError(f"node {v} is not in the network")
    travel = 0.0
    for u, v in zip(nodes, nodes[1:]):
        if not network.has_edge(u, v):
            raise InvalidPathError(f"consecutive nodes {u} -> {v} are not adjacent")
        travel += network.edge_time(u, v)

    w = network.risk_costs
    # accumulate from the exit backwards, the same order cost-to-go values are built in
    cost = 0.0
    for v in reversed(nodes):
        cost = w[v] + cost
    survival = math.prod(1.0 - network.capture_prob[v] for v in nodes)
    return EscapePath(nodes=nodes, risk_cost=float(cost), survival_prob=float(survival), travel_time=travel)
