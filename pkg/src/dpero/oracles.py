"""Independent checks: exhaustive simple-path enumeration and Monte Carlo capture simulation."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, Sequence

import numpy as np

from .errors import ConfigurationError, NoEscapeRouteError, OracleLimitError
from .graph import EscapePath, RiskNetwork, score_path

DEFAULT_NODE_LIMIT = 14

#: Trials per Monte Carlo batch. Fixed so that the batch layout, and therefore
#: the estimate, does not depend on how batches are spread over workers.
MC_BATCH = 1 << 15


def enumerate_best_path(
    network: RiskNetwork,
    start: int,
    exits: Iterable[int],
    node_limit: int = DEFAULT_NODE_LIMIT,
) -> EscapePath:
    """Best simple start-to-exit path by depth-first enumeration.

    Maximises the survival product directly, breaking ties by fewer nodes and
    then by the lexicographically smaller node sequence. A path ends at the
    first exit it reaches. Branches whose running survival already falls
    strictly below the best complete path are cut, which cannot lose an optimum
    because survival never increases along a path.
    """
    if network.node_count > node_limit:
        raise OracleLimitError(
            f"network has {network.node_count} nodes; enumeration is limited to {node_limit}"
        )
    exit_set = frozenset(int(d) for d in exits)
    if not exit_set:
        raise ConfigurationError("exit set must be non-empty")
    start = int(start)
    keep = 1.0 - network.capture_prob
    succ = [sorted(int(u) for u in network.successors(v)) for v in range(network.node_count)]

    best_key = None
    best_path = None
    path = [start]
    on_path = [False] * network.node_count
    on_path[start] = True

    def visit(v: int, survival: float) -> None:
        nonlocal best_key, best_path
        if best_key is not None and survival < -best_key[0]:
            return
        if v in exit_set:
            key = (-survival, len(path), tuple(path))
            if best_key is None or key < best_key:
                best_key, best_path = key, tuple(path)
            return
        for u in succ[v]:
            if on_path[u]:
                continue
            on_path[u] = True
            path.append(u)
            visit(u, survival * keep[u])
            path.pop()
            on_path[u] = False

    visit(start, float(keep[start]))
    if best_path is None:
        raise NoEscapeRouteError(f"no simple path from {start} reaches an exit")
    return score_path(network, best_path)


def _batch_survivors(capture: np.ndarray, seed: int, index: int, size: int) -> int:
    rng = np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=(int(index),)))
    draws = rng.random((size, capture.shape[0]))
    captured = (draws < capture).any(axis=1)
    return int(size - np.count_nonzero(captured))


def monte_carlo_survival(
    network: RiskNetwork,
    path: Sequence[int],
    trials: int,
    seed: int = 0,
    workers: int = 1,
) -> tuple[float, float]:
    """Simulate ``trials`` traversals of ``path``; return ``(estimate, std_error)``.

    At every node on the path, start and exit included, an independent uniform
    draw below the node's capture probability ends the traversal.
    """
    if trials < 1:
        raise ConfigurationError(f"trials must be at least 1, got {trials}")
    nodes = score_path(network, path).nodes
    capture = network.capture_prob[list(nodes)]
    sizes = [min(MC_BATCH, trials - start) for start in range(0, trials, MC_BATCH)]

    def run(i):
        return _batch_survivors(capture, seed, i, sizes[i])

    if workers > 1 and len(sizes) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            survivors = sum(pool.map(run, range(len(sizes))))
    else:
        survivors = sum(run(i) for i in range(len(sizes)))
    estimate = survivors / trials
    return estimate, math.sqrt(estimate * (1.0 - estimate) / trials)
