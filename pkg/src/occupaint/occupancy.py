"""Log-odds occupancy grids: binning, three-view fusion, probability maps.

Grid geometry (robot frame): the robot sits at the midpoint of the grid's
rear edge and looks along +forward. Column ``j`` covers forward distance
``[j*cell, (j+1)*cell)``; row ``i`` covers lateral offset
``[-L/2 + i*cell, -L/2 + (i+1)*cell)`` where ``L`` is the lateral extent
and +lateral is the robot's left. Rendering a grid as an image therefore
puts the robot on the left edge.

Evidence model: each obstacle point adds +1 and each floor point adds -1
to its cell's signed count; the count is clipped to ``+-clip_counts`` and
scaled by ``m`` into log-odds, so values live in ``[-m*clip, +m*clip]``
(``[-0.1, 0.1]`` with defaults) and probabilities in roughly
``[0.475, 0.525]``. Cells with |log-odds| below ``ln(0.505/0.495)`` stay
"unknown" under classification, so a net count of at least 3 is needed to
call a cell free or occupied.

Fusion of three views keeps, per cell, the strongest magnitude with the
sign of the summed evidence (sign(0) = 0, so exactly conflicting evidence
stays unknown). The sign is evaluated on the float64 sum, left to right.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .sensor import FLOOR, OBSTACLE, LabeledPoints, Pose2D

# Ternary cell classes.
UNKNOWN = 0
FREE = 1
OCCUPIED = 2


@dataclass(frozen=True)
class GridSpec:
    """Square local map: extent in meters, resolution in cells per side."""

    forward_extent: float = 5.0
    lateral_extent: float = 5.0
    resolution: int = 256

    def __post_init__(self):
        if self.forward_extent <= 0 or self.lateral_extent <= 0:
            raise ValueError("extents must be positive")
        if self.resolution < 8:
            raise ValueError("resolution must be at least 8")
        if not math.isclose(
            self.forward_extent / self.resolution, self.lateral_extent / self.resolution
        ):
            raise ValueError("cell size must be identical on both axes")

    @property
    def cell_size(self) -> float:
        return self.forward_extent / self.resolution


@dataclass(frozen=True)
class OccupancyConfig:
    m: float = 0.01
    clip_counts: int = 10
    free_threshold: float = 0.495
    occupied_threshold: float = 0.505

    def __post_init__(self):
        if self.m <= 0 or self.clip_counts <= 0:
            raise ValueError("m and clip_counts must be positive")
        if not self.free_threshold < 0.5 < self.occupied_threshold:
            raise ValueError("thresholds must straddle 0.5")

    @property
    def logodds_bound(self) -> float:
        return self.m * self.clip_counts


@dataclass(frozen=True)
class CameraRig:
    """Three-camera rig: center on the robot, two offset and toed-in."""

    lateral_offset: float = 0.3
    inward_rotation_deg: float = 30.0
    height: float = 0.5  # metadata only in the planar analog

    def __post_init__(self):
        if self.lateral_offset < 0:
            raise ValueError("lateral_offset must be non-negative")
        if not 0 <= self.inward_rotation_deg < 90:
            raise ValueError("inward_rotation must be in [0, 90) degrees")


@dataclass(frozen=True)
class LogOddsGrid:
    spec: GridSpec
    values: np.ndarray  # (resolution, resolution) float32, 0 = unknown

    def __post_init__(self):
        if self.values.shape != (self.spec.resolution, self.spec.resolution):
            raise ValueError("values shape does not match spec resolution")


@dataclass(frozen=True)
class ProbGrid:
    spec: GridSpec
    values: np.ndarray  # (resolution, resolution) float32 in [0, 1], 0.5 = unknown

    def __post_init__(self):
        if self.values.shape != (self.spec.resolution, self.spec.resolution):
            raise ValueError("values shape does not match spec resolution")


def empty_logodds(spec: GridSpec) -> LogOddsGrid:
    return LogOddsGrid(spec, np.zeros((spec.resolution, spec.resolution), dtype=np.float32))


def rig_poses(robot: Pose2D, rig: CameraRig) -> tuple[Pose2D, Pose2D, Pose2D]:
    """Center/left/right camera poses; side cameras toe in toward the
    region directly ahead of the robot."""
    rot = math.radians(rig.inward_rotation_deg)
    # Robot's left axis in world coordinates.
    lx, ly = -math.sin(robot.yaw), math.cos(robot.yaw)
    d = rig.lateral_offset
    left = Pose2D(robot.x + d * lx, robot.y + d * ly, robot.yaw - rot)
    right = Pose2D(robot.x - d * lx, robot.y - d * ly, robot.yaw + rot)
    return robot, left, right


def to_robot_frame(points: LabeledPoints, robot: Pose2D) -> LabeledPoints:
    """Rigid transform of world-frame points into the robot frame."""
    c, s = math.cos(robot.yaw), math.sin(robot.yaw)
    shifted = points.positions - np.array([robot.x, robot.y])
    rot = np.array([[c, s], [-s, c]])  # rotation by -yaw
    return LabeledPoints(shifted @ rot.T, points.labels.copy())


def bin_points(points: LabeledPoints, spec: GridSpec, cfg: OccupancyConfig) -> LogOddsGrid:
    """Bin robot-frame points into a clipped log-odds grid.

    Points outside the forward crop window are ignored. Obstacle points
    count +1, floor points -1; the per-cell signed count is clipped to
    ``+-cfg.clip_counts`` before scaling by ``cfg.m``.
    """
    res = spec.resolution
    cell = spec.cell_size
    half_l = spec.lateral_extent / 2.0
    x = points.positions[:, 0]
    y = points.positions[:, 1]
    keep = (x >= 0.0) & (x < spec.forward_extent) & (y >= -half_l) & (y < half_l)
    if not keep.any():
        return empty_logodds(spec)
    jx = (x[keep] / cell).astype(np.int64)
    iy = ((y[keep] + half_l) / cell).astype(np.int64)
    np.clip(jx, 0, res - 1, out=jx)
    np.clip(iy, 0, res - 1, out=iy)
    signed = np.where(points.labels[keep] == OBSTACLE, 1.0, -1.0)
    counts = np.bincount(iy * res + jx, weights=signed, minlength=res * res)
    counts = counts.reshape(res, res)
    np.clip(counts, -cfg.clip_counts, cfg.clip_counts, out=counts)
    return LogOddsGrid(spec, (counts * cfg.m).astype(np.float32))


def fuse3(a: LogOddsGrid, b: LogOddsGrid, c: LogOddsGrid) -> LogOddsGrid:
    """Per cell, strongest magnitude signed by the summed evidence.

    sign(0) = 0: exactly conflicting evidence fuses to unknown. The sum is
    taken in float64, left to right, so the sign is exact for float32
    inputs.
    """
    if not (a.spec == b.spec == c.spec):
        raise ValueError("fuse3 requires identical grid specs")
    av, bv, cv = a.values, b.values, c.values
    mag = np.maximum(np.maximum(np.abs(av), np.abs(bv)), np.abs(cv))
    total = (av.astype(np.float64) + bv.astype(np.float64)) + cv.astype(np.float64)
    sign = np.sign(total).astype(np.float32)
    return LogOddsGrid(a.spec, mag * sign)


def logodds_to_prob(g: LogOddsGrid) -> ProbGrid:
    p = 1.0 / (1.0 + np.exp(-g.values.astype(np.float64)))
    return ProbGrid(g.spec, p.astype(np.float32))


def prob_to_logodds(p: ProbGrid, l_max: float = 10.0) -> LogOddsGrid:
    """Inverse logistic transform, clamped to ``+-l_max`` at p in {0, 1}."""
    v = p.values.astype(np.float64)
    with np.errstate(divide="ignore"):
        logodds = np.log(v) - np.log1p(-v)
    np.clip(logodds, -l_max, l_max, out=logodds)
    return LogOddsGrid(p.spec, logodds.astype(np.float32))


def classify_values(values: np.ndarray, cfg: OccupancyConfig) -> np.ndarray:
    out = np.full(values.shape, UNKNOWN, dtype=np.uint8)
    out[values < cfg.free_threshold] = FREE
    out[values >= cfg.occupied_threshold] = OCCUPIED
    return out


def classify(p: ProbGrid, cfg: OccupancyConfig) -> np.ndarray:
    """Ternary grid: FREE below the free threshold, OCCUPIED at or above
    the occupied threshold, UNKNOWN between."""
    return classify_values(p.values, cfg)


def prob_to_grayscale(values: np.ndarray) -> np.ndarray:
    """Map probabilities linearly onto 8-bit gray: 0 free, 128 unknown,
    255 occupied."""
    return np.rint(np.asarray(values, dtype=np.float64) * 255.0).astype(np.uint8)
