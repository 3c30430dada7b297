"""Pure numpy/heapq implementations of the hot kernels.

Semantics must stay bit-identical to ``_core.pyx``; the test suite
compares the two backends directly when the extension is available.
"""

from __future__ import annotations

import heapq
import math

import numpy as np

_SQRT2 = math.sqrt(2.0)

# 8-connected neighborhood, fixed relaxation order.
_NEIGHBORS = (
    (-1, -1, _SQRT2),
    (-1, 0, 1.0),
    (-1, 1, _SQRT2),
    (0, -1, 1.0),
    (0, 1, 1.0),
    (1, -1, _SQRT2),
    (1, 0, 1.0),
    (1, 1, _SQRT2),
)


def fuse_observations(observed, predicted, world_idx, local_obs, local_pred,
                      l_free_max, l_occ_min):
    """Fold one sensed local map into the flat global layers, in place.

    Pass 1 applies the pairwise fusion ``new = max(|old|, |v|) * sign(old + v)``
    per local cell in scan order (``sign`` of the float64 sum; sign(0) = 0).
    Pass 2 rewrites the predicted layer on every touched cell: the local
    inpainted value where the observed layer ends up unclassifiable,
    0.5 (unknown) where it is now known. A cell is "known" iff its
    log-odds L satisfies ``L < l_free_max`` or ``L >= l_occ_min``.

    Duplicate targets are folded in increasing scan order; within one
    pass-2 target the last local cell wins.
    """
    valid = world_idx >= 0
    idx = world_idx[valid]
    obs = local_obs[valid]
    pred = local_pred[valid]

    # Pass 1: peel off the i-th occurrence of every target per round so the
    # fold stays sequential per target while each round is vectorized.
    remaining = np.arange(idx.shape[0])
    while remaining.size:
        targets = idx[remaining]
        _, first = np.unique(targets, return_index=True)
        take = remaining[first]
        t = idx[take]
        v = obs[take]
        old = observed[t]
        mag = np.maximum(np.abs(old), np.abs(v))
        total = old.astype(np.float64) + v.astype(np.float64)
        observed[t] = mag * np.sign(total).astype(np.float32)
        mask = np.ones(remaining.shape[0], dtype=bool)
        mask[first] = False
        remaining = remaining[mask]

    # Pass 2: last occurrence per target.
    rev_unique, rev_first = np.unique(idx[::-1], return_index=True)
    last = idx.shape[0] - 1 - rev_first
    t = idx[last]
    final = observed[t]
    known = (final < l_free_max) | (final >= l_occ_min)
    predicted[t] = np.where(known, np.float32(0.5), pred[last])


def dijkstra_grid(cost, src, dst):
    """Shortest 8-connected path on a positive-weight grid.

    Edge cost is the destination cell's weight, scaled by sqrt(2) for
    diagonal moves. Deterministic: the heap pops by (distance, row, col)
    and equal-distance relaxations keep the lexicographically smallest
    predecessor. Returns ``(path, total_cost)`` with the path as a list of
    (row, col) from src to dst inclusive, or ``None`` when dst is
    unreachable.
    """
    cost = np.asarray(cost, dtype=np.float64)
    ny, nx = cost.shape
    sr, sc = src
    dr, dc = dst
    if not (0 <= sr < ny and 0 <= sc < nx and 0 <= dr < ny and 0 <= dc < nx):
        raise ValueError("src/dst out of bounds")

    dist = np.full((ny, nx), np.inf)
    pred = np.full((ny, nx), -2, dtype=np.int64)  # -2 none, -1 start
    visited = np.zeros((ny, nx), dtype=bool)
    dist[sr, sc] = 0.0
    pred[sr, sc] = -1
    heap = [(0.0, sr, sc)]
    while heap:
        d, r, c = heapq.heappop(heap)
        if visited[r, c]:
            continue
        visited[r, c] = True
        if (r, c) == (dr, dc):
            break
        for orr, occ, factor in _NEIGHBORS:
            rr, cc = r + orr, c + occ
            if not (0 <= rr < ny and 0 <= cc < nx) or visited[rr, cc]:
                continue
            nd = d + cost[rr, cc] * factor
            if nd < dist[rr, cc]:
                dist[rr, cc] = nd
                pred[rr, cc] = r * nx + c
                heapq.heappush(heap, (nd, rr, cc))
            elif nd == dist[rr, cc] and r * nx + c < pred[rr, cc]:
                pred[rr, cc] = r * nx + c

    if not visited[dr, dc]:
        return None
    path = []
    node = dr * nx + dc
    while node != -1:
        path.append((node // nx, node % nx))
        node = pred[path[-1][0], path[-1][1]]
    path.reverse()
    return path, float(dist[dr, dc])
