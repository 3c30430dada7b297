"""Pose sweeps into (input, target) map pairs, plus the OCCD container.

A sample pair couples the center camera's probability map (the network
input) with the fused three-camera map (the target). Pairs whose target
has more than ``occupied_filter`` occupied cells are discarded as
wall-dominated, low-information frames.

OCCD binary layout (little endian)::

    bytes 0..3   magic "OCCD"
    u32          version (1)
    u32          pair count
    u32          H, u32 W
    count x      input plane f32[H*W], target plane f32[H*W]
    u32          metadata length
    bytes        UTF-8 JSON: grid spec + per-pair meta (world, pose, rig)

The JSON metadata uses ``repr``-exact floats, so a save/load round trip
reproduces every pair bit for bit.
"""

from __future__ import annotations

import json
import math
import struct
from dataclasses import dataclass

import numpy as np

from .errors import BadMagicError, BadVersionError, DataFormatError, TruncatedDataError
from .occupancy import (
    CameraRig,
    GridSpec,
    OccupancyConfig,
    LogOddsGrid,
    OCCUPIED,
    ProbGrid,
    bin_points,
    classify,
    fuse3,
    logodds_to_prob,
    rig_poses,
    to_robot_frame,
)
from .sensor import CameraIntrinsics, Pose2D, cast_rays, sample_points
from .worldgen import FloorPlan

MAGIC = b"OCCD"
VERSION = 1


@dataclass(frozen=True)
class DatasetConfig:
    pose_grid: float = 0.5
    yaw_step_deg: float = 45.0
    occupied_filter: float = 0.20
    train_worlds: tuple[int, ...] = ()
    test_worlds: tuple[int, ...] = ()
    max_pairs_per_world: int | None = None

    def __post_init__(self):
        if self.pose_grid <= 0:
            raise ValueError("pose_grid must be positive")
        n = 360.0 / self.yaw_step_deg
        if not math.isclose(n, round(n)) or n <= 0:
            raise ValueError("360 must be divisible by yaw_step_deg")
        if not 0 < self.occupied_filter <= 1:
            raise ValueError("occupied_filter must be in (0, 1]")
        if set(self.train_worlds) & set(self.test_worlds):
            raise ValueError("train and test worlds must not overlap")
        if self.max_pairs_per_world is not None and self.max_pairs_per_world < 1:
            raise ValueError("max_pairs_per_world must be positive")

    @property
    def headings(self) -> int:
        return int(round(360.0 / self.yaw_step_deg))


@dataclass(frozen=True)
class PairMeta:
    world_id: int
    pose: Pose2D
    rig: CameraRig


@dataclass(frozen=True)
class SamplePair:
    input: ProbGrid
    target: ProbGrid
    meta: PairMeta

    def __post_init__(self):
        if self.input.spec != self.target.spec:
            raise ValueError("input and target must share one grid spec")


def _truth_free_at(plan: FloorPlan, x: float, y: float) -> bool:
    cell = plan.truth_cell
    ny, nx = plan.truth_grid.shape
    j, i = int(x // cell), int(y // cell)
    if not (0 <= i < ny and 0 <= j < nx):
        return False
    return not bool(plan.truth_grid[i, j])


def sweep_poses(plan: FloorPlan, cfg: DatasetConfig, rig: CameraRig) -> list[Pose2D]:
    """All valid capture poses: positions on the pose lattice, each with
    ``headings`` yaws, keeping a pose only when the robot cell and all
    three rig camera cells are free.

    Order is deterministic: y ascending, then x ascending, then yaw
    ascending from 0.
    """
    g = cfg.pose_grid
    yaws = [math.radians(k * cfg.yaw_step_deg) for k in range(cfg.headings)]
    poses: list[Pose2D] = []
    ny = int(math.floor(plan.boundary.height / g - 1e-9))
    nx = int(math.floor(plan.boundary.width / g - 1e-9))
    for iy in range(1, ny + 1):
        y = iy * g
        if y >= plan.boundary.height:
            continue
        for ix in range(1, nx + 1):
            x = ix * g
            if x >= plan.boundary.width:
                continue
            if not _truth_free_at(plan, x, y):
                continue
            for yaw in yaws:
                robot = Pose2D(x, y, yaw)
                _, left, right = rig_poses(robot, rig)
                if _truth_free_at(plan, left.x, left.y) and _truth_free_at(
                    plan, right.x, right.y
                ):
                    poses.append(robot)
    return poses


def _view_map(
    plan: FloorPlan,
    camera: Pose2D,
    robot: Pose2D,
    intr: CameraIntrinsics,
    spec: GridSpec,
    occ_cfg: OccupancyConfig,
) -> LogOddsGrid:
    hits = cast_rays(plan, camera, intr)
    pts = sample_points(hits, camera, intr)
    return bin_points(to_robot_frame(pts, robot), spec, occ_cfg)


def fused_view_maps(
    plan: FloorPlan,
    robot: Pose2D,
    rig: CameraRig,
    intr: CameraIntrinsics,
    spec: GridSpec,
    occ_cfg: OccupancyConfig,
) -> tuple[LogOddsGrid, LogOddsGrid]:
    """(center map, fused three-view map), both in the robot frame."""
    center, left, right = rig_poses(robot, rig)
    m_c = _view_map(plan, center, robot, intr, spec, occ_cfg)
    m_l = _view_map(plan, left, robot, intr, spec, occ_cfg)
    m_r = _view_map(plan, right, robot, intr, spec, occ_cfg)
    return m_c, fuse3(m_c, m_l, m_r)


def build_pair(
    plan: FloorPlan,
    pose: Pose2D,
    rig: CameraRig,
    intr: CameraIntrinsics,
    spec: GridSpec,
    occ_cfg: OccupancyConfig,
    world_id: int = 0,
) -> SamplePair:
    """One training pair: center-view input, fused three-view target."""
    center_map, fused = fused_view_maps(plan, pose, rig, intr, spec, occ_cfg)
    return SamplePair(
        input=logodds_to_prob(center_map),
        target=logodds_to_prob(fused),
        meta=PairMeta(world_id=world_id, pose=pose, rig=rig),
    )


def filter_pair(pair: SamplePair, cfg: DatasetConfig, occ_cfg: OccupancyConfig) -> bool:
    """Keep a pair unless its target is more than ``occupied_filter``
    occupied ("more than" is strict: the boundary fraction is kept)."""
    labels = classify(pair.target, occ_cfg)
    frac = float(np.count_nonzero(labels == OCCUPIED)) / labels.size
    return frac <= cfg.occupied_filter


def generate_pairs(
    plan: FloorPlan,
    world_id: int,
    cfg: DatasetConfig,
    rig: CameraRig,
    intr: CameraIntrinsics,
    spec: GridSpec,
    occ_cfg: OccupancyConfig,
) -> list[SamplePair]:
    """Sweep, build and filter all pairs for one world, in sweep order.

    When ``cfg.max_pairs_per_world`` is set, the kept pairs are thinned to
    that budget by a deterministic even-stride subsample (seeded by the
    world id), preserving sweep order.
    """
    pairs = []
    for pose in sweep_poses(plan, cfg, rig):
        pair = build_pair(plan, pose, rig, intr, spec, occ_cfg, world_id=world_id)
        if filter_pair(pair, cfg, occ_cfg):
            pairs.append(pair)
    cap = cfg.max_pairs_per_world
    if cap is not None and len(pairs) > cap:
        idx = np.sort(np.random.default_rng(world_id).choice(len(pairs), cap, replace=False))
        pairs = [pairs[i] for i in idx]
    return pairs


def save_dataset(pairs: list[SamplePair], path) -> None:
    if pairs:
        spec = pairs[0].input.spec
        if any(p.input.spec != spec for p in pairs):
            raise ValueError("all pairs in a dataset must share one grid spec")
        h = w = spec.resolution
        spec_meta = {
            "forward_extent": repr(spec.forward_extent),
            "lateral_extent": repr(spec.lateral_extent),
            "resolution": spec.resolution,
        }
    else:
        h = w = 0
        spec_meta = None
    meta = {
        "grid_spec": spec_meta,
        "pairs": [
            {
                "world": p.meta.world_id,
                "x": repr(p.meta.pose.x),
                "y": repr(p.meta.pose.y),
                "yaw": repr(p.meta.pose.yaw),
                "rig_offset": repr(p.meta.rig.lateral_offset),
                "rig_rotation_deg": repr(p.meta.rig.inward_rotation_deg),
                "rig_height": repr(p.meta.rig.height),
            }
            for p in pairs
        ],
    }
    blob = json.dumps(meta, sort_keys=True).encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<IIII", VERSION, len(pairs), h, w))
        for p in pairs:
            fh.write(np.ascontiguousarray(p.input.values, dtype="<f4").tobytes())
            fh.write(np.ascontiguousarray(p.target.values, dtype="<f4").tobytes())
        fh.write(struct.pack("<I", len(blob)))
        fh.write(blob)


def _read_exact(fh, n: int, what: str) -> bytes:
    buf = fh.read(n)
    if len(buf) != n:
        raise TruncatedDataError(f"dataset truncated while reading {what}")
    return buf


def load_dataset(path) -> list[SamplePair]:
    with open(path, "rb") as fh:
        magic = fh.read(4)
        if magic != MAGIC:
            raise BadMagicError(f"{path}: bad magic {magic!r}")
        version, count, h, w = struct.unpack("<IIII", _read_exact(fh, 16, "header"))
        if version != VERSION:
            raise BadVersionError(f"{path}: unsupported version {version}")
        planes = []
        for i in range(count):
            raw = _read_exact(fh, 2 * h * w * 4, f"pair {i}")
            arr = np.frombuffer(raw, dtype="<f4").reshape(2, h, w)
            planes.append((arr[0].copy(), arr[1].copy()))
        (meta_len,) = struct.unpack("<I", _read_exact(fh, 4, "metadata length"))
        blob = _read_exact(fh, meta_len, "metadata")
        if fh.read(1):
            raise DataFormatError(f"{path}: trailing bytes after metadata")
    try:
        meta = json.loads(blob.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise DataFormatError(f"{path}: bad metadata block: {exc}") from exc
    pair_meta = meta.get("pairs", [])
    if len(pair_meta) != count:
        raise DataFormatError(f"{path}: metadata lists {len(pair_meta)} pairs, header {count}")
    if count == 0:
        return []
    gs = meta.get("grid_spec")
    if gs is None or gs.get("resolution") != h:
        raise DataFormatError(f"{path}: grid spec metadata missing or inconsistent")
    spec = GridSpec(
        forward_extent=float(gs["forward_extent"]),
        lateral_extent=float(gs["lateral_extent"]),
        resolution=int(gs["resolution"]),
    )
    pairs = []
    for (inp, tgt), m in zip(planes, pair_meta):
        meta_obj = PairMeta(
            world_id=int(m["world"]),
            pose=Pose2D(float(m["x"]), float(m["y"]), float(m["yaw"])),
            rig=CameraRig(
                lateral_offset=float(m["rig_offset"]),
                inward_rotation_deg=float(m["rig_rotation_deg"]),
                height=float(m["rig_height"]),
            ),
        )
        pairs.append(SamplePair(ProbGrid(spec, inp), ProbGrid(spec, tgt), meta_obj))
    return pairs
