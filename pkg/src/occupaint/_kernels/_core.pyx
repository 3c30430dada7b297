# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the pure-Python kernels in ``_purepy``.

Bit-identical semantics are a hard requirement: the fold applies the same
float32/float64 arithmetic in the same order, and Dijkstra pops by the
same (distance, flat-id) key with the same predecessor tie rule.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, sqrt

cnp.import_array()


def fuse_observations(cnp.float32_t[::1] observed,
                      cnp.float32_t[::1] predicted,
                      cnp.int64_t[::1] world_idx,
                      cnp.float32_t[::1] local_obs,
                      cnp.float32_t[::1] local_pred,
                      double l_free_max,
                      double l_occ_min):
    """In-place fold of one sensed local map into the flat global layers.

    See ``_purepy.fuse_observations`` for the contract.
    """
    cdef Py_ssize_t k, n = world_idx.shape[0]
    cdef cnp.int64_t t
    cdef float old, v, mag
    cdef double s
    for k in range(n):
        t = world_idx[k]
        if t < 0:
            continue
        old = observed[t]
        v = local_obs[k]
        mag = fabs(old)
        if fabs(v) > mag:
            mag = fabs(v)
        s = (<double> old) + (<double> v)
        if s > 0:
            observed[t] = mag
        elif s < 0:
            observed[t] = -mag
        else:
            observed[t] = 0.0
    cdef float final
    for k in range(n):
        t = world_idx[k]
        if t < 0:
            continue
        final = observed[t]
        if final < l_free_max or final >= l_occ_min:
            predicted[t] = 0.5
        else:
            predicted[t] = local_pred[k]


cdef inline void _heap_push(double[::1] heap_d, cnp.int64_t[::1] heap_id,
                            Py_ssize_t* size, double d, cnp.int64_t node):
    cdef Py_ssize_t i = size[0], parent
    heap_d[i] = d
    heap_id[i] = node
    size[0] += 1
    while i > 0:
        parent = (i - 1) >> 1
        if heap_d[parent] > heap_d[i] or (
                heap_d[parent] == heap_d[i] and heap_id[parent] > heap_id[i]):
            heap_d[parent], heap_d[i] = heap_d[i], heap_d[parent]
            heap_id[parent], heap_id[i] = heap_id[i], heap_id[parent]
            i = parent
        else:
            break


cdef inline void _heap_pop(double[::1] heap_d, cnp.int64_t[::1] heap_id,
                           Py_ssize_t* size, double* out_d, cnp.int64_t* out_id):
    out_d[0] = heap_d[0]
    out_id[0] = heap_id[0]
    size[0] -= 1
    cdef Py_ssize_t n = size[0], i = 0, child
    if n == 0:
        return
    heap_d[0] = heap_d[n]
    heap_id[0] = heap_id[n]
    while True:
        child = 2 * i + 1
        if child >= n:
            break
        if child + 1 < n and (heap_d[child + 1] < heap_d[child] or (
                heap_d[child + 1] == heap_d[child] and heap_id[child + 1] < heap_id[child])):
            child += 1
        if heap_d[child] < heap_d[i] or (
                heap_d[child] == heap_d[i] and heap_id[child] < heap_id[i]):
            heap_d[child], heap_d[i] = heap_d[i], heap_d[child]
            heap_id[child], heap_id[i] = heap_id[i], heap_id[child]
            i = child
        else:
            break


def dijkstra_grid(cost, src, dst):
    """Shortest 8-connected path; see ``_purepy.dijkstra_grid``."""
    cost_arr = np.ascontiguousarray(cost, dtype=np.float64)
    cdef double[:, ::1] w = cost_arr
    cdef Py_ssize_t ny = w.shape[0], nx = w.shape[1]
    cdef Py_ssize_t sr = src[0], sc = src[1], dr = dst[0], dc = dst[1]
    if not (0 <= sr < ny and 0 <= sc < nx and 0 <= dr < ny and 0 <= dc < nx):
        raise ValueError("src/dst out of bounds")

    cdef double SQRT2 = sqrt(2.0)
    cdef cnp.int64_t[8] off_r = [-1, -1, -1, 0, 0, 1, 1, 1]
    cdef cnp.int64_t[8] off_c = [-1, 0, 1, -1, 1, -1, 0, 1]
    cdef double[8] factor = [SQRT2, 1.0, SQRT2, 1.0, 1.0, SQRT2, 1.0, SQRT2]

    dist_arr = np.full(ny * nx, np.inf)
    pred_arr = np.full(ny * nx, -2, dtype=np.int64)
    visited_arr = np.zeros(ny * nx, dtype=np.uint8)
    cdef double[::1] dist = dist_arr
    cdef cnp.int64_t[::1] pred = pred_arr
    cdef cnp.uint8_t[::1] visited = visited_arr

    # Every relaxation pushes at most once; 8 per pop bounds the heap size.
    cap = 8 * ny * nx + 1
    heap_d_arr = np.empty(cap)
    heap_id_arr = np.empty(cap, dtype=np.int64)
    cdef double[::1] heap_d = heap_d_arr
    cdef cnp.int64_t[::1] heap_id = heap_id_arr
    cdef Py_ssize_t size = 0

    cdef cnp.int64_t start = sr * nx + sc, goal = dr * nx + dc
    cdef cnp.int64_t node, nb, cand
    cdef Py_ssize_t r, c, rr, cc, i
    cdef double d, nd

    dist[start] = 0.0
    pred[start] = -1
    _heap_push(heap_d, heap_id, &size, 0.0, start)
    while size > 0:
        _heap_pop(heap_d, heap_id, &size, &d, &node)
        if visited[node]:
            continue
        visited[node] = 1
        if node == goal:
            break
        r = node // nx
        c = node % nx
        for i in range(8):
            rr = r + off_r[i]
            cc = c + off_c[i]
            if rr < 0 or rr >= ny or cc < 0 or cc >= nx:
                continue
            nb = rr * nx + cc
            if visited[nb]:
                continue
            nd = d + w[rr, cc] * factor[i]
            if nd < dist[nb]:
                dist[nb] = nd
                pred[nb] = node
                _heap_push(heap_d, heap_id, &size, nd, nb)
            elif nd == dist[nb] and node < pred[nb]:
                pred[nb] = node

    if not visited[goal]:
        return None
    path = []
    cand = goal
    while cand != -1:
        path.append((cand // nx, cand % nx))
        cand = pred[cand]
    path.reverse()
    return path, float(dist[goal])
