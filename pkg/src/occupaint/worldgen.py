"""Procedural indoor floor plans with a fine boolean truth raster.

A world is a rectangular room whose outer boundary is walled (thickness
``wall_thickness``) and which contains a small number of axis-aligned
rectangular obstacles. Generation is a pure function of :class:`WorldSpec`
(numpy PCG64 stream seeded with ``spec.seed``), so identical specs yield
bit-identical plans.

The truth raster covers the full boundary at ``truth_cell`` resolution;
a cell is occupied iff its center is covered by any solid rectangle
(walls or obstacles).

Plans serialize to a line-oriented key-value text file::

    floorplan v1
    seed 42
    width 8.0
    height 6.0
    wall_thickness 0.1
    truth_cell 0.05
    obstacle 0 1.25 2.0 2.05 2.6
    ...

Floats are written with ``repr`` so the round trip is exact.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .errors import DataFormatError, WorldGenError
from .geometry import Rect, points_in_any, rect_array

PLACEMENT_ATTEMPTS = 1000


@dataclass(frozen=True)
class WorldSpec:
    """Parameters of one procedurally generated room."""

    seed: int
    width: float = 8.0
    height: float = 6.0
    obstacle_count: tuple[int, int] = (4, 10)
    obstacle_size: tuple[float, float] = (0.3, 1.5)
    min_clearance: float = 0.4
    wall_thickness: float = 0.1
    truth_cell: float = 0.05

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")
        if self.width <= 2 * self.min_clearance or self.height <= 2 * self.min_clearance:
            raise ValueError("room too small for the requested clearance")
        lo, hi = self.obstacle_count
        if lo < 0 or hi < lo:
            raise ValueError(f"empty obstacle count range {self.obstacle_count}")
        slo, shi = self.obstacle_size
        if slo <= 0 or shi < slo:
            raise ValueError(f"bad obstacle size range {self.obstacle_size}")
        if self.min_clearance < 0 or self.wall_thickness <= 0 or self.truth_cell <= 0:
            raise ValueError("clearance/wall/cell parameters must be positive")


@dataclass(frozen=True)
class FloorPlan:
    """Generated world: boundary, labeled obstacles, truth raster."""

    seed: int
    boundary: Rect
    obstacles: tuple[tuple[int, Rect], ...]
    wall_thickness: float
    truth_cell: float
    truth_grid: np.ndarray = field(repr=False)  # (ny, nx) bool, row 0 at y=0

    @property
    def walls(self) -> tuple[Rect, ...]:
        b, t = self.boundary, self.wall_thickness
        return (
            Rect(b.x0, b.y0, b.x0 + t, b.y1),
            Rect(b.x1 - t, b.y0, b.x1, b.y1),
            Rect(b.x0, b.y0, b.x1, b.y0 + t),
            Rect(b.x0, b.y1 - t, b.x1, b.y1),
        )

    def solids(self) -> tuple[Rect, ...]:
        return self.walls + tuple(r for _, r in self.obstacles)

    def obstacle_rects(self) -> tuple[Rect, ...]:
        return tuple(r for _, r in self.obstacles)

    @property
    def free_interior(self) -> Rect:
        b, t = self.boundary, self.wall_thickness
        return Rect(b.x0 + t, b.y0 + t, b.x1 - t, b.y1 - t)

    def point_is_free(self, x: float, y: float) -> bool:
        """True when (x, y) lies strictly inside the room and on no solid."""
        fi = self.free_interior
        if not (fi.x0 < x < fi.x1 and fi.y0 < y < fi.y1):
            return False
        return not any(r.contains(x, y) for _, r in self.obstacles)


def _rasterize(boundary: Rect, solids, cell: float) -> np.ndarray:
    nx = int(round(boundary.width / cell))
    ny = int(round(boundary.height / cell))
    cx = boundary.x0 + (np.arange(nx) + 0.5) * cell
    cy = boundary.y0 + (np.arange(ny) + 0.5) * cell
    gx, gy = np.meshgrid(cx, cy)  # (ny, nx)
    pts = np.column_stack([gx.ravel(), gy.ravel()])
    occ = points_in_any(pts, rect_array(list(solids)))
    return occ.reshape(ny, nx)


def generate_world(spec: WorldSpec) -> FloorPlan:
    """Generate a floor plan; pure function of ``spec`` including its seed.

    Raises
    ------
    WorldGenError
        If fewer than ``spec.obstacle_count[0]`` obstacles can be placed
        within the bounded retry budget.
    """
    rng = np.random.default_rng(spec.seed)
    lo, hi = spec.obstacle_count
    target = int(rng.integers(lo, hi + 1))

    boundary = Rect(0.0, 0.0, spec.width, spec.height)
    t = spec.wall_thickness
    clear = spec.min_clearance
    slo, shi = spec.obstacle_size

    placed: list[Rect] = []
    attempts = 0
    while len(placed) < target and attempts < PLACEMENT_ATTEMPTS:
        attempts += 1
        w = float(rng.uniform(slo, shi))
        h = float(rng.uniform(slo, shi))
        x_max = spec.width - t - clear - w
        y_max = spec.height - t - clear - h
        if x_max <= t + clear or y_max <= t + clear:
            continue  # obstacle cannot fit at all for this sample
        x0 = float(rng.uniform(t + clear, x_max))
        y0 = float(rng.uniform(t + clear, y_max))
        cand = Rect(x0, y0, x0 + w, y0 + h)
        if all(cand.gap_to(r) >= clear for r in placed):
            placed.append(cand)

    if len(placed) < lo:
        raise WorldGenError(
            f"world generation failed: placed {len(placed)} < {lo} obstacles "
            f"after {attempts} attempts (seed {spec.seed})"
        )

    obstacles = tuple((i, r) for i, r in enumerate(placed))
    walls = (
        Rect(0.0, 0.0, t, spec.height),
        Rect(spec.width - t, 0.0, spec.width, spec.height),
        Rect(0.0, 0.0, spec.width, t),
        Rect(0.0, spec.height - t, spec.width, spec.height),
    )
    truth = _rasterize(boundary, walls + tuple(placed), spec.truth_cell)
    return FloorPlan(
        seed=spec.seed,
        boundary=boundary,
        obstacles=obstacles,
        wall_thickness=spec.wall_thickness,
        truth_cell=spec.truth_cell,
        truth_grid=truth,
    )


def coarse_occupancy(plan: FloorPlan, cell_size: float) -> np.ndarray:
    """Conservative occupancy at a coarser cell size.

    A coarse cell is occupied iff any truth-raster cell whose center falls
    inside it is occupied. This is the single source of "truth at
    navigation resolution" for reachability, collisions and reference maps.
    """
    if cell_size <= 0:
        raise ValueError("cell_size must be positive")
    ny_t, nx_t = plan.truth_grid.shape
    tc = plan.truth_cell
    nx = int(np.ceil(plan.boundary.width / cell_size - 1e-9))
    ny = int(np.ceil(plan.boundary.height / cell_size - 1e-9))
    cx = (np.arange(nx_t) + 0.5) * tc
    cy = (np.arange(ny_t) + 0.5) * tc
    ix = np.minimum((cx / cell_size).astype(np.int64), nx - 1)
    iy = np.minimum((cy / cell_size).astype(np.int64), ny - 1)
    occ = np.zeros((ny, nx), dtype=bool)
    flat = iy[:, None] * nx + ix[None, :]
    np.logical_or.at(occ.ravel(), flat.ravel(), plan.truth_grid.ravel())
    return occ


def reachable_cells(
    plan: FloorPlan, cell_size: float, start: tuple[float, float]
) -> set[tuple[int, int]]:
    """4-connected flood-fill component of free coarse cells containing start.

    Raises ``ValueError`` when the start point falls in an occupied cell.
    """
    occ = coarse_occupancy(plan, cell_size)
    ny, nx = occ.shape
    sc = (int(start[1] // cell_size), int(start[0] // cell_size))
    if not (0 <= sc[0] < ny and 0 <= sc[1] < nx):
        raise ValueError(f"start {start} outside the room")
    if occ[sc]:
        raise ValueError(f"start {start} lies in an occupied cell")
    seen = np.zeros_like(occ)
    seen[sc] = True
    queue = deque([sc])
    while queue:
        r, c = queue.popleft()
        for dr, dc in ((-1, 0), (1, 0), (0, -1), (0, 1)):
            rr, cc = r + dr, c + dc
            if 0 <= rr < ny and 0 <= cc < nx and not seen[rr, cc] and not occ[rr, cc]:
                seen[rr, cc] = True
                queue.append((rr, cc))
    rows, cols = np.nonzero(seen)
    return set(zip(rows.tolist(), cols.tolist()))


def save_floorplan(plan: FloorPlan, path) -> None:
    lines = [
        "floorplan v1",
        f"seed {plan.seed}",
        f"width {plan.boundary.width!r}",
        f"height {plan.boundary.height!r}",
        f"wall_thickness {plan.wall_thickness!r}",
        f"truth_cell {plan.truth_cell!r}",
    ]
    for oid, r in plan.obstacles:
        lines.append(f"obstacle {oid} {r.x0!r} {r.y0!r} {r.x1!r} {r.y1!r}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def load_floorplan(path) -> FloorPlan:
    """Parse the key-value description and re-rasterize the truth grid."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines or lines[0] != "floorplan v1":
        raise DataFormatError(f"{path}: not a floorplan v1 file")
    fields: dict[str, float] = {}
    obstacles: list[tuple[int, Rect]] = []
    for ln in lines[1:]:
        parts = ln.split()
        if parts[0] == "obstacle":
            if len(parts) != 6:
                raise DataFormatError(f"{path}: malformed obstacle line {ln!r}")
            oid = int(parts[1])
            x0, y0, x1, y1 = (float(v) for v in parts[2:])
            obstacles.append((oid, Rect(x0, y0, x1, y1)))
        elif len(parts) == 2:
            fields[parts[0]] = float(parts[1])
        else:
            raise DataFormatError(f"{path}: malformed line {ln!r}")
    try:
        seed = int(fields["seed"])
        width = fields["width"]
        height = fields["height"]
        wall_t = fields["wall_thickness"]
        cell = fields["truth_cell"]
    except KeyError as exc:
        raise DataFormatError(f"{path}: missing field {exc}") from exc
    if sorted(oid for oid, _ in obstacles) != list(range(len(obstacles))):
        raise DataFormatError(f"{path}: obstacle ids not 0..n-1")
    boundary = Rect(0.0, 0.0, width, height)
    walls = (
        Rect(0.0, 0.0, wall_t, height),
        Rect(width - wall_t, 0.0, width, height),
        Rect(0.0, 0.0, width, wall_t),
        Rect(0.0, height - wall_t, width, height),
    )
    truth = _rasterize(boundary, walls + tuple(r for _, r in obstacles), cell)
    return FloorPlan(
        seed=seed,
        boundary=boundary,
        obstacles=tuple(obstacles),
        wall_thickness=wall_t,
        truth_cell=cell,
        truth_grid=truth,
    )
