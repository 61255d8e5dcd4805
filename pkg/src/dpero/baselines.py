"""Risk-blind shortest-travel-time baseline and a label-setting oracle for the risk objective."""
from __future__ import annotations

import heapq
import math
from typing import Iterable

from .errors import ConfigurationError, NoEscapeRouteError
from .graph import EscapePath, RiskNetwork, score_path


def _check_exits(network: RiskNetwork, exits: Iterable[int]) -> frozenset:
    exit_set = frozenset(int(d) for d in exits)
    if not exit_set:
        raise ConfigurationError("exit set must be non-empty")
    for d in exit_set:
        if not 0 <= d < network.node_count:
            raise ConfigurationError(f"exit {d} is not in the network")
    return exit_set


def shortest_time_path(network: RiskNetwork, start: int, exits: Iterable[int]) -> EscapePath:
    """Minimum travel-time route to the nearest exit, ignoring capture risk entirely.

    Among exits at equal travel time the smaller node id wins. The result is
    scored with :func:`score_path` so it can be compared with risk-aware routes.
    """
    exit_set = _check_exits(network, exits)
    start = int(start)
    n = network.node_count
    dist = [math.inf] * n
    pred = [-1] * n
    done = [False] * n
    dist[start] = 0.0
    heap = [(0.0, start)]
    while heap:
        d, v = heapq.heappop(heap)
        if done[v]:
            continue
        done[v] = True
        for u, t in network.out_edges(v):
            nd = d + t
            if nd < dist[u]:
                dist[u] = nd
                pred[u] = v
                heapq.heappush(heap, (nd, u))

    reachable = [(dist[x], x) for x in exit_set if dist[x] < math.inf]
    if not reachable:
        raise NoEscapeRouteError(f"no exit is reachable from node {start}")
    _, target = min(reachable)
    nodes = [target]
    while nodes[-1] != start:
        nodes.append(pred[nodes[-1]])
    nodes.reverse()
    return score_path(network, nodes)


def dijkstra_risk_oracle(
    network: RiskNetwork, start: int, exits: Iterable[int]
) -> tuple[float, list[int]]:
    """Minimal summed node risk from ``start`` to any exit, by label setting.

    Searches the reversed graph outward from every exit (seeded at its own risk
    cost), charging ``w(v)`` when the search steps back onto ``v``. Returns
    ``(inf, [])`` when no survivable route exists.
    """
    exit_set = _check_exits(network, exits)
    start = int(start)
    w = network.risk_costs.tolist()
    rev_indptr, rev_sources, _ = network.reversed_csr()
    rev_indptr = rev_indptr.tolist()
    rev_sources = rev_sources.tolist()

    n = network.node_count
    cost = [math.inf] * n
    nxt = [-1] * n
    done = [False] * n
    heap = []
    for d in sorted(exit_set):
        if w[d] < math.inf:
            cost[d] = w[d]
            heapq.heappush(heap, (cost[d], d))
    while heap:
        c, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        if u == start:
            break
        for k in range(rev_indptr[u], rev_indptr[u + 1]):
            v = rev_sources[k]
            if done[v] or v in exit_set:
                continue
            nc = w[v] + c
            if nc < cost[v]:
                cost[v] = nc
                nxt[v] = u
                heapq.heappush(heap, (nc, v))

    if not math.isfinite(cost[start]):
        return math.inf, []
    path = [start]
    while path[-1] not in exit_set:
        path.append(nxt[path[-1]])
    return cost[start], path
