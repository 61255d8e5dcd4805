# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled synchronous value-iteration sweep. Mirrors dpero._vi_fallback.sweep_until_converged."""
import numpy as np
cimport numpy as cnp
from libc.math cimport INFINITY, fabs

cnp.import_array()


def sweep_until_converged(
    const cnp.int64_t[::1] indptr,
    const cnp.int64_t[::1] targets,
    const double[::1] w,
    const cnp.uint8_t[::1] is_exit,
    double epsilon,
    Py_ssize_t max_sweeps,
):
    cdef Py_ssize_t n = w.shape[0]
    cdef Py_ssize_t v, k, u, i, bn, sweeps = 0
    cdef cnp.int64_t bh, hu
    cdef double best, ju, new, old, change, max_change = 0.0
    cdef bint converged = False

    J_arr = np.full(n, np.inf, dtype=np.float64)
    pol_arr = np.full(n, -1, dtype=np.int64)
    hops_arr = np.full(n, -1, dtype=np.int64)
    cdef double[::1] J = J_arr
    cdef cnp.int64_t[::1] pol = pol_arr
    cdef cnp.int64_t[::1] hops = hops_arr

    inner_list = [v for v in range(n) if not is_exit[v]]
    cdef cnp.int64_t[::1] inner = np.asarray(inner_list, dtype=np.int64)
    cdef Py_ssize_t n_inner = inner.shape[0]

    for v in range(n):
        if is_exit[v]:
            J[v] = w[v]
            if w[v] < INFINITY:
                hops[v] = 0

    if n_inner == 0:
        return J_arr, pol_arr, hops_arr, 0, True

    Jp_arr = J_arr.copy()
    Hp_arr = hops_arr.copy()
    cdef double[::1] Jp = Jp_arr
    cdef cnp.int64_t[::1] Hp = Hp_arr

    while True:
        sweeps += 1
        Jp[:] = J
        Hp[:] = hops
        max_change = 0.0
        for i in range(n_inner):
            v = inner[i]
            best = INFINITY
            bh = -1
            bn = -1
            for k in range(indptr[v], indptr[v + 1]):
                u = targets[k]
                ju = Jp[u]
                if ju == INFINITY:
                    continue
                hu = Hp[u]
                if ju < best or (ju == best and (hu < bh or (hu == bh and u < bn))):
                    best = ju
                    bh = hu
                    bn = u
            new = w[v] + best
            if new == INFINITY:
                bn = -1
                bh = -2
            old = Jp[v]
            if new != old:
                change = fabs(new - old)
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
    return J_arr, pol_arr, hops_arr, sweeps, converged
