"""Pure-Python synchronous value-iteration sweep, used when the compiled kernel is unavailable."""
import math

import numpy as np

INF = math.inf


def sweep_until_converged(indptr, targets, w, is_exit, epsilon, max_sweeps):
    """Run Bellman sweeps until the largest per-node change drops below ``epsilon``.

    Returns ``(J, policy, hops, sweeps, converged)``. ``policy[v] == -1`` marks no
    successor; ``hops[v]`` counts arcs on the chosen route to an exit (-1 if none).
    Ties on J are broken by fewer hops, then by smaller node id.
    """
    n = len(w)
    indptr = indptr.tolist()
    targets = targets.tolist()
    w = w.tolist()
    exit_mask = is_exit.tolist()

    J = [INF] * n
    pol = [-1] * n
    hops = [-1] * n
    for v in range(n):
        if exit_mask[v]:
            J[v] = w[v]
            if w[v] < INF:
                hops[v] = 0
    inner = [v for v in range(n) if not exit_mask[v]]
    succ = [targets[indptr[v]:indptr[v + 1]] for v in range(n)]

    sweeps = 0
    converged = not inner
    while inner:
        sweeps += 1
        Jp = J[:]
        Hp = hops[:]
        max_change = 0.0
        for v in inner:
            best, bh, bn = INF, -1, -1
            for u in succ[v]:
                ju = Jp[u]
                if ju == INF:
                    continue
                hu = Hp[u]
                if ju < best or (ju == best and (hu < bh or (hu == bh and u < bn))):
                    best, bh, bn = ju, hu, u
            new = w[v] + best
            if new == INF:
                bn, bh = -1, -2
            old = Jp[v]
            if new != old:
                change = abs(new - old)
                if change > max_change:
                    max_change = change
            J[v] = new
            pol[v] = bn
            hops[v] = bh + 1
        if max_change < epsilon:
            converged = True
            break
        if max_sweeps > 0 and sweeps >= max_sweeps:
            break
    return (
        np.asarray(J, dtype=np.float64),
        np.asarray(pol, dtype=np.int64),
        np.asarray(hops, dtype=np.int64),
        sweeps,
        converged,
    )
