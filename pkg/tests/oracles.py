"""Independent test oracles shared between unit and acceptance tests.

These deliberately avoid the library's analytic code paths: the ray oracle
marches point samples, the path oracle is Bellman-Ford, and the fusion
oracle evaluates the per-cell formula in plain Python.
"""

import math

import numpy as np

from occupaint.geometry import points_in_any, rect_array


def march_distance(plan, origin, angle, max_range, step=0.005):
    """First covered sample along a ray, or None. Pure point marching."""
    t = np.arange(step, max_range + step / 2, step)
    pts = np.array(origin) + t[:, None] * np.array([math.cos(angle), math.sin(angle)])
    hits = points_in_any(pts, rect_array(list(plan.solids())))
    idx = int(np.argmax(hits))
    if not hits[idx]:
        return None
    return float(t[idx])


def assert_ray_consistent(plan, origin, angle, intr, analytic, step=0.005):
    """Check one analytic ray distance against the marching oracle.

    Within one march step the two must agree. A march that hits later (or
    not at all) is accepted only if a 100x finer march confirms a genuine
    sub-step graze right at the analytic distance.
    """
    oracle = march_distance(plan, origin, angle, intr.max_range, step)
    if analytic is None:
        assert oracle is None or oracle > intr.max_range - step, (
            f"march hit at {oracle} but analytic reported none"
        )
        return
    assert oracle is None or oracle >= analytic - step - 1e-12, (
        f"march hit at {oracle}, before analytic {analytic}"
    )
    if oracle is not None and abs(oracle - analytic) <= step + 1e-12:
        return
    # Coarse march skipped the first intersection: it must be a graze
    # thinner than one step. Confirm with a fine march around it.
    fine = step / 100.0
    t = np.arange(max(fine, analytic - step), analytic + step, fine)
    pts = np.array(origin) + t[:, None] * np.array(
        [math.cos(angle), math.sin(angle)]
    )
    hits = points_in_any(pts, rect_array(list(plan.solids())))
    idx = int(np.argmax(hits))
    assert hits[idx], f"no solid near analytic hit {analytic}"
    assert abs(float(t[idx]) - analytic) <= fine + 1e-12, (
        f"fine march hit {t[idx]} disagrees with analytic {analytic}"
    )


def fuse_cell_reference(a, b, c):
    """Plain-Python per-cell evaluation of the fusion rule."""
    mag = max(abs(a), abs(b), abs(c))
    total = (float(a) + float(b)) + float(c)
    if total > 0:
        sign = 1.0
    elif total < 0:
        sign = -1.0
    else:
        sign = 0.0
    return np.float32(np.float32(mag) * np.float32(sign))


def bellman_ford_cost(cost, src, dst):
    """Shortest-path cost by repeated relaxation; independent of Dijkstra.

    Same edge model: 8-connected, destination-cell weight, sqrt(2) factor
    on diagonals.
    """
    ny, nx = cost.shape
    sqrt2 = math.sqrt(2.0)
    dist = np.full((ny, nx), np.inf)
    dist[src] = 0.0
    moves = [
        (-1, -1, sqrt2), (-1, 0, 1.0), (-1, 1, sqrt2),
        (0, -1, 1.0), (0, 1, 1.0),
        (1, -1, sqrt2), (1, 0, 1.0), (1, 1, sqrt2),
    ]
    for _ in range(ny * nx):
        changed = False
        for r in range(ny):
            for c in range(nx):
                d = dist[r, c]
                if not np.isfinite(d):
                    continue
                for dr, dc, f in moves:
                    rr, cc = r + dr, c + dc
                    if 0 <= rr < ny and 0 <= cc < nx:
                        nd = d + cost[rr, cc] * f
                        if nd < dist[rr, cc]:
                            dist[rr, cc] = nd
                            changed = True
        if not changed:
            break
    return float(dist[dst])
