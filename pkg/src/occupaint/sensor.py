"""Planar depth sensing: analytic ray casting against floor-plan solids.

A camera at a :class:`Pose2D` shoots ``ray_count`` rays spread uniformly
across its horizontal field of view. Each ray reports the exact first
intersection with any solid rectangle (slab method), or nothing beyond
``max_range``. :func:`sample_points` densifies the hits into labeled
point samples: free-space samples every ``sample_step`` meters along the
ray plus one obstacle sample at the hit, which is what the map binning
consumes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import rect_array, ray_entry_distances
from .worldgen import FloorPlan

# Point labels.
FLOOR = 0
OBSTACLE = 1

# Ray hit labels.
HIT_NONE = "none"
HIT_WALL = "wall"
HIT_OBSTACLE = "obstacle"


def normalize_angle(yaw: float) -> float:
    """Wrap an angle to (-pi, pi]; values already in range pass through
    unchanged so normalization is bitwise idempotent."""
    if -math.pi < yaw <= math.pi:
        return yaw
    wrapped = math.fmod(yaw + math.pi, 2.0 * math.pi)
    if wrapped <= 0.0:
        wrapped += 2.0 * math.pi
    return wrapped - math.pi


@dataclass(frozen=True)
class Pose2D:
    """World-frame pose; yaw counterclockwise in radians, 0 along +x."""

    x: float
    y: float
    yaw: float

    def __post_init__(self):
        object.__setattr__(self, "yaw", normalize_angle(self.yaw))


@dataclass(frozen=True)
class CameraIntrinsics:
    hfov_deg: float = 90.0
    ray_count: int = 256
    max_range: float = 6.0
    sample_step: float = 0.05

    def __post_init__(self):
        if not 0 < self.hfov_deg < 180:
            raise ValueError("hfov must be in (0, 180) degrees")
        if self.ray_count < 2:
            raise ValueError("ray_count must be at least 2")
        if self.sample_step <= 0 or self.max_range <= 0:
            raise ValueError("sample_step and max_range must be positive")


@dataclass(frozen=True)
class RayHit:
    """One ray's result; ``distance is None`` iff nothing within range."""

    angle: float  # relative to the camera axis, radians
    distance: float | None
    label: str

    def __post_init__(self):
        if (self.distance is None) != (self.label == HIT_NONE):
            raise ValueError("label must be 'none' exactly when distance is absent")


@dataclass(frozen=True)
class LabeledPoint:
    position: tuple[float, float]
    label: int


class LabeledPoints:
    """Column store of labeled point samples (positions (N, 2), labels (N,))."""

    __slots__ = ("positions", "labels")

    def __init__(self, positions: np.ndarray, labels: np.ndarray):
        positions = np.asarray(positions, dtype=np.float64).reshape(-1, 2)
        labels = np.asarray(labels, dtype=np.uint8).reshape(-1)
        if positions.shape[0] != labels.shape[0]:
            raise ValueError("positions and labels disagree on length")
        self.positions = positions
        self.labels = labels

    def __len__(self) -> int:
        return self.positions.shape[0]

    def __getitem__(self, i: int) -> LabeledPoint:
        return LabeledPoint(tuple(self.positions[i]), int(self.labels[i]))

    @classmethod
    def empty(cls) -> "LabeledPoints":
        return cls(np.zeros((0, 2)), np.zeros(0, dtype=np.uint8))


def ray_angles(intr: CameraIntrinsics) -> np.ndarray:
    """Relative ray angles in radians, uniform across the field of view."""
    half = math.radians(intr.hfov_deg) / 2.0
    return np.linspace(-half, half, intr.ray_count)


def cast_rays(plan: FloorPlan, pose: Pose2D, intr: CameraIntrinsics) -> list[RayHit]:
    """Analytic first-hit distances for every ray of the camera.

    Raises ``ValueError`` when the pose sits inside a wall or obstacle.
    """
    if not plan.point_is_free(pose.x, pose.y):
        raise ValueError(f"camera pose ({pose.x}, {pose.y}) is inside a solid")

    angles = ray_angles(intr)
    world_angles = pose.yaw + angles
    dirs = np.column_stack([np.cos(world_angles), np.sin(world_angles)])

    n_walls = len(plan.walls)
    solids = rect_array(list(plan.solids()))
    t = ray_entry_distances((pose.x, pose.y), dirs, solids)  # (R, K)
    # First hit per ray; ties resolved toward the lowest rectangle index
    # (walls come first), which argmin already guarantees.
    k_best = np.argmin(t, axis=1)
    t_best = t[np.arange(t.shape[0]), k_best]

    hits: list[RayHit] = []
    for i in range(intr.ray_count):
        d = float(t_best[i])
        if not math.isfinite(d) or d > intr.max_range:
            hits.append(RayHit(float(angles[i]), None, HIT_NONE))
        else:
            label = HIT_WALL if k_best[i] < n_walls else HIT_OBSTACLE
            hits.append(RayHit(float(angles[i]), d, label))
    return hits


def _floor_sample_count(distance: float | None, intr: CameraIntrinsics) -> int:
    """Number of free-space samples on a ray, per the spacing rule.

    Samples sit at k*step for k >= 1, up to ``distance - step/2`` when the
    ray hit something, else up to ``max_range``.
    """
    step = intr.sample_step
    limit = intr.max_range if distance is None else distance - step / 2.0
    return max(0, int(math.floor(limit / step + 1e-9)))


def sample_points(
    hits: list[RayHit], pose: Pose2D, intr: CameraIntrinsics
) -> LabeledPoints:
    """Densify ray hits into labeled world-frame point samples.

    Output order: all floor samples (ray-major, increasing distance along
    each ray), then one obstacle sample per hitting ray, ray-major. Wall
    and obstacle hits both produce OBSTACLE-labeled points.
    """
    counts = np.array([_floor_sample_count(h.distance, intr) for h in hits], dtype=np.int64)
    angles = np.array([h.angle for h in hits]) + pose.yaw
    dirs = np.column_stack([np.cos(angles), np.sin(angles)])

    total = int(counts.sum())
    ray_ids = np.repeat(np.arange(len(hits)), counts)
    offsets = np.concatenate([[0], np.cumsum(counts)[:-1]])
    k = np.arange(total) - np.repeat(offsets, counts) + 1
    floor_d = k * intr.sample_step
    floor_pos = np.array([pose.x, pose.y]) + floor_d[:, None] * dirs[ray_ids]

    hit_ids = np.array([i for i, h in enumerate(hits) if h.distance is not None], dtype=np.int64)
    hit_d = np.array([h.distance for h in hits if h.distance is not None])
    hit_pos = np.array([pose.x, pose.y]) + hit_d[:, None] * dirs[hit_ids] if len(hit_ids) else np.zeros((0, 2))

    positions = np.vstack([floor_pos, hit_pos])
    labels = np.concatenate(
        [np.full(total, FLOOR, dtype=np.uint8), np.full(len(hit_ids), OBSTACLE, dtype=np.uint8)]
    )
    return LabeledPoints(positions, labels)
