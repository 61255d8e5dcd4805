"""Grid-with-random-edges networks, defender placement, and scenario layout.

Nodes are numbered row-major: cell ``(r, c)`` of a ``rows x cols`` grid is
node ``r * cols + c``. All randomness comes from named substreams of one
64-bit seed, so e.g. changing the defender count never moves extra edges.
"""
from __future__ import annotations

from typing import Iterable

import numpy as np

from .errors import ConfigurationError
from .graph import RiskNetwork, build_network
from .scenario import GenerationParams, ScenarioSpec

_STREAMS = {"extra_edges": 0, "defender_positions": 1, "defender_probs": 2}

_LATTICE_STEPS = ((0, 1), (1, 0), (0, -1), (-1, 0))


def stream_rng(seed: int, name: str) -> np.random.Generator:
    """Independent generator for the named stream of ``seed``."""
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=(_STREAMS[name],)))


def node_id(row: int, col: int, cols: int) -> int:
    return row * cols + col


def lattice_arc_count(rows: int, cols: int) -> int:
    return 2 * (rows * (cols - 1) + cols * (rows - 1))


def generate_gre(rows: int, cols: int, extra_edges: int = 0, seed: int = 0) -> RiskNetwork:
    """Bidirectional 4-connected lattice plus ``extra_edges`` random directed shortcuts.

    Lattice arcs have travel time 1.0. Each extra arc joins a uniformly drawn
    ordered pair of distinct nodes that are not lattice neighbours; pairs that
    repeat an existing arc are redrawn. Extra arcs also get travel time 1.0.
    Every capture probability starts at 0.
    """
    if rows < 2 or cols < 2:
        raise ConfigurationError(f"grid must be at least 2x2, got {rows}x{cols}")
    if extra_edges < 0:
        raise ConfigurationError(f"extra_edges must be non-negative, got {extra_edges}")
    n = rows * cols
    edges = []
    present = set()
    for r in range(rows):
        for c in range(cols):
            v = node_id(r, c, cols)
            for dr, dc in _LATTICE_STEPS:
                rr, cc = r + dr, c + dc
                if 0 <= rr < rows and 0 <= cc < cols:
                    u = node_id(rr, cc, cols)
                    edges.append((v, u, 1.0))
                    present.add((v, u))

    available = n * (n - 1) - len(present)
    if extra_edges > available:
        raise ConfigurationError(f"only {available} non-lattice arcs exist, asked for {extra_edges}")
    rng = stream_rng(seed, "extra_edges")
    added = 0
    while added < extra_edges:
        s, t = (int(x) for x in rng.integers(0, n, size=2))
        # lattice neighbours are already in `present`
        if s == t or (s, t) in present:
            continue
        edges.append((s, t, 1.0))
        present.add((s, t))
        added += 1
    return build_network(n, edges, [0.0] * n)


def place_defenders(
    network: RiskNetwork,
    count: int,
    prob_low: float = 0.2,
    prob_high: float = 0.5,
    forbidden: Iterable[int] = (),
    seed: int = 0,
) -> RiskNetwork:
    """Copy of ``network`` with ``count`` distinct non-forbidden nodes given a defender.

    Each defender's capture probability is uniform on ``[prob_low, prob_high]``.
    Nodes that receive no defender keep their existing probability.
    """
    if not (0.0 <= prob_low <= prob_high < 1.0):
        raise ConfigurationError(f"need 0 <= prob_low <= prob_high < 1, got [{prob_low}, {prob_high}]")
    if count < 0:
        raise ConfigurationError(f"defender count must be non-negative, got {count}")
    banned = {int(v) for v in forbidden}
    eligible = np.array([v for v in range(network.node_count) if v not in banned], dtype=np.int64)
    if count > len(eligible):
        raise ConfigurationError(f"cannot place {count} defenders on {len(eligible)} eligible nodes")
    if count == 0:
        return network
    # a full permutation keeps smaller counts a prefix of larger ones for the same seed
    chosen = stream_rng(seed, "defender_positions").permutation(eligible)[:count]
    drawn = stream_rng(seed, "defender_probs").uniform(prob_low, prob_high, size=count)
    probs = network.capture_prob.copy()
    probs[chosen] = drawn
    return network.with_capture_probs(probs.tolist())


def exit_columns(cols: int, exit_count: int) -> list[int]:
    if exit_count < 1:
        raise ConfigurationError(f"need at least one exit, got {exit_count}")
    if exit_count == 1:
        return [cols - 1]
    columns = [k * (cols - 1) // (exit_count - 1) for k in range(exit_count)]
    if len(set(columns)) != exit_count:
        raise ConfigurationError(f"{cols} columns cannot hold {exit_count} distinct exits")
    return columns


def make_scenario(
    rows: int = 15,
    cols: int = 15,
    extra_edges: int = 0,
    defender_count: int = 5,
    prob_low: float = 0.2,
    prob_high: float = 0.5,
    seed: int = 0,
    exit_count: int = 5,
) -> tuple[RiskNetwork, ScenarioSpec]:
    """Start at the ``(0, 0)`` corner, exits evenly spaced along the last row."""
    params = GenerationParams(rows, cols, extra_edges, defender_count, prob_low, prob_high, exit_count)
    network = generate_gre(rows, cols, extra_edges, seed)
    start = node_id(0, 0, cols)
    exits = tuple(node_id(rows - 1, c, cols) for c in exit_columns(cols, exit_count))
    network = place_defenders(network, defender_count, prob_low, prob_high, (start, *exits), seed)
    spec = ScenarioSpec(start=start, exits=exits, seed=int(seed), params=params)
    return network, spec
