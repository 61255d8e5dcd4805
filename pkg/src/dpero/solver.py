"""Value iteration over the risk-cost Bellman equation, and policy/path extraction."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import kernels
from .errors import ConfigurationError, NoEscapeRouteError, PolicyCycleError
from .graph import EscapePath, RiskNetwork, score_path

DEFAULT_EPSILON = 1e-9


@dataclass(frozen=True, eq=False)
class ValueTable:
    """Converged cost-to-go and policy.

    ``policy[v] == -1`` means no successor (exits and nodes with no survivable
    route). ``hops[v]`` is the number of arcs on the policy route from ``v``.
    """

    cost_to_go: np.ndarray
    policy: np.ndarray
    hops: np.ndarray
    exits: frozenset
    sweeps: int
    converged: bool
    epsilon: float

    def successor(self, v: int) -> int | None:
        nxt = int(self.policy[v])
        return None if nxt < 0 else nxt

    def to_records(self) -> list[dict]:
        """Debug dump as ``{node, cost, policy}`` records; infinite costs become ``None``."""
        out = []
        for v, (cost, nxt) in enumerate(zip(self.cost_to_go.tolist(), self.policy.tolist())):
            out.append({
                "node": v,
                "cost": cost if math.isfinite(cost) else None,
                "policy": nxt if nxt >= 0 else None,
            })
        return out


def _exit_mask(network: RiskNetwork, exits: Iterable[int]) -> tuple[np.ndarray, frozenset]:
    exit_set = frozenset(int(d) for d in exits)
    if not exit_set:
        raise ConfigurationError("exit set must be non-empty")
    for d in exit_set:
        if not 0 <= d < network.node_count:
            raise ConfigurationError(f"exit {d} is not in the network")
    mask = np.zeros(network.node_count, dtype=np.uint8)
    mask[list(exit_set)] = 1
    return mask, exit_set


def value_iteration(
    network: RiskNetwork,
    exits: Iterable[int],
    epsilon: float = DEFAULT_EPSILON,
    max_sweeps: int | None = None,
    backend: str | None = None,
) -> ValueTable:
    """Solve ``J(v) = w(v) + min_u J(u)`` with ``J(d) = w(d)`` on exits.

    Sweeps are synchronous: each one reads only the previous sweep's values.
    Non-exit nodes start at +inf and exits are never updated. Iteration stops
    once the largest per-node change in a sweep is below ``epsilon``. Since all
    risk costs are non-negative this takes at most ``|V| + 1`` sweeps.
    """
    if not epsilon > 0:
        raise ConfigurationError(f"epsilon must be positive, got {epsilon}")
    mask, exit_set = _exit_mask(network, exits)
    kernel = kernels.get_kernel(backend)
    J, policy, hops, sweeps, converged = kernel(
        network.indptr, network.targets, network.risk_costs, mask, float(epsilon), int(max_sweeps or 0)
    )
    for arr in (J, policy, hops):
        arr.setflags(write=False)
    return ValueTable(
        cost_to_go=J,
        policy=policy,
        hops=hops,
        exits=exit_set,
        sweeps=int(sweeps),
        converged=bool(converged),
        epsilon=float(epsilon),
    )


def extract_path(table: ValueTable, network: RiskNetwork, start: int) -> EscapePath:
    """Follow the policy from ``start`` to an exit and score the route."""
    if not table.converged:
        raise ConfigurationError("value table has not converged")
    start = int(start)
    if not math.isfinite(table.cost_to_go[start]):
        raise NoEscapeRouteError(f"no survivable route from node {start} to any exit")
    nodes = [start]
    seen = {start}
    v = start
    while v not in table.exits:
        nxt = table.successor(v)
        if nxt is None:
            raise PolicyCycleError(f"policy dead-ends at node {v} despite finite cost-to-go")
        if nxt in seen:
            raise PolicyCycleError(f"policy revisits node {nxt} while following from {start}")
        nodes.append(nxt)
        seen.add(nxt)
        v = nxt
    return score_path(network, nodes)
