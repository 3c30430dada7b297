"""Axis-aligned rectangle primitives shared by world generation and sensing.

All geometry is 2D, in world meters. Rectangles are closed sets: a point
on an edge counts as covered. Containment/intersection helpers operate on
an (n, 4) float array of ``[x0, y0, x1, y1]`` rows so callers can test
many rays or points against many rectangles at once.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Rect:
    """Closed axis-aligned rectangle with x0 <= x1 and y0 <= y1."""

    x0: float
    y0: float
    x1: float
    y1: float

    def __post_init__(self):
        if not (self.x0 <= self.x1 and self.y0 <= self.y1):
            raise ValueError(f"degenerate rectangle {self}")

    @property
    def width(self) -> float:
        return self.x1 - self.x0

    @property
    def height(self) -> float:
        return self.y1 - self.y0

    def contains(self, x: float, y: float) -> bool:
        return self.x0 <= x <= self.x1 and self.y0 <= y <= self.y1

    def gap_to(self, other: "Rect") -> float:
        """Axis-aligned gap between two rectangles (0 when they touch/overlap)."""
        dx = max(other.x0 - self.x1, self.x0 - other.x1, 0.0)
        dy = max(other.y0 - self.y1, self.y0 - other.y1, 0.0)
        return float(np.hypot(dx, dy))


def rect_array(rects) -> np.ndarray:
    """Stack rectangles into an (n, 4) float64 array of [x0, y0, x1, y1]."""
    if not rects:
        return np.zeros((0, 4))
    return np.array([[r.x0, r.y0, r.x1, r.y1] for r in rects], dtype=np.float64)


def points_in_any(points: np.ndarray, rects: np.ndarray) -> np.ndarray:
    """Boolean mask over points covered by at least one rectangle (closed)."""
    points = np.asarray(points, dtype=np.float64)
    if rects.shape[0] == 0:
        return np.zeros(points.shape[0], dtype=bool)
    x = points[:, 0:1]
    y = points[:, 1:2]
    inside = (
        (x >= rects[None, :, 0].reshape(1, -1))
        & (x <= rects[None, :, 2].reshape(1, -1))
        & (y >= rects[None, :, 1].reshape(1, -1))
        & (y <= rects[None, :, 3].reshape(1, -1))
    )
    return inside.any(axis=1)


def ray_entry_distances(
    origin: tuple[float, float], directions: np.ndarray, rects: np.ndarray
) -> np.ndarray:
    """Slab-method entry distance of each ray into each rectangle.

    Parameters
    ----------
    origin : (x, y) ray origin, assumed outside every rectangle.
    directions : (R, 2) unit direction vectors.
    rects : (K, 4) rectangle array.

    Returns
    -------
    (R, K) array of entry distances, ``inf`` where a ray misses.
    """
    directions = np.asarray(directions, dtype=np.float64)
    R = directions.shape[0]
    K = rects.shape[0]
    if K == 0:
        return np.full((R, 0), np.inf)
    ox, oy = origin
    with np.errstate(divide="ignore", invalid="ignore"):
        inv = 1.0 / directions  # inf rows where a component is 0
    tx0 = (rects[None, :, 0] - ox) * inv[:, 0:1]
    tx1 = (rects[None, :, 2] - ox) * inv[:, 0:1]
    ty0 = (rects[None, :, 1] - oy) * inv[:, 1:2]
    ty1 = (rects[None, :, 3] - oy) * inv[:, 1:2]

    # Zero direction components: the slab constrains nothing if the origin
    # coordinate lies inside it, and forbids a hit otherwise.
    zero_x = directions[:, 0:1] == 0.0
    in_x = (ox >= rects[None, :, 0]) & (ox <= rects[None, :, 2])
    zero_y = directions[:, 1:2] == 0.0
    in_y = (oy >= rects[None, :, 1]) & (oy <= rects[None, :, 3])

    near_x = np.minimum(tx0, tx1)
    far_x = np.maximum(tx0, tx1)
    near_y = np.minimum(ty0, ty1)
    far_y = np.maximum(ty0, ty1)

    near_x = np.where(zero_x, np.where(in_x, -np.inf, np.inf), near_x)
    far_x = np.where(zero_x, np.where(in_x, np.inf, -np.inf), far_x)
    near_y = np.where(zero_y, np.where(in_y, -np.inf, np.inf), near_y)
    far_y = np.where(zero_y, np.where(in_y, np.inf, -np.inf), far_y)

    tmin = np.maximum(near_x, near_y)
    tmax = np.minimum(far_x, far_y)
    hit = (tmax >= np.maximum(tmin, 0.0)) & (tmin > 0.0)
    return np.where(hit, tmin, np.inf)
