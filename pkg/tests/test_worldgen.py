import numpy as np
import pytest

from occupaint.errors import WorldGenError
from occupaint.geometry import Rect
from occupaint.worldgen import (
    FloorPlan,
    WorldSpec,
    coarse_occupancy,
    generate_world,
    load_floorplan,
    reachable_cells,
    save_floorplan,
)


def bfs_oracle(occ, start):
    """Independent breadth-first flood fill over a boolean raster."""
    ny, nx = occ.shape
    seen = set()
    frontier = [start]
    seen.add(start)
    while frontier:
        r, c = frontier.pop()
        for rr, cc in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)):
            if 0 <= rr < ny and 0 <= cc < nx and (rr, cc) not in seen and not occ[rr, cc]:
                seen.add((rr, cc))
                frontier.append((rr, cc))
    return seen


def test_zero_obstacles_walls_only():
    spec = WorldSpec(seed=3, obstacle_count=(0, 0))
    plan = generate_world(spec)
    assert plan.obstacles == ()
    # Occupied cells are exactly the wall ring.
    t = plan.wall_thickness
    ny, nx = plan.truth_grid.shape
    cx = (np.arange(nx) + 0.5) * spec.truth_cell
    cy = (np.arange(ny) + 0.5) * spec.truth_cell
    on_wall = (
        (cx[None, :] <= t)
        | (cx[None, :] >= spec.width - t)
        | (cy[:, None] <= t)
        | (cy[:, None] >= spec.height - t)
    )
    assert np.array_equal(plan.truth_grid, on_wall)


def test_determinism_bit_identical():
    spec = WorldSpec(seed=12345)
    a = generate_world(spec)
    b = generate_world(spec)
    assert np.array_equal(a.truth_grid, b.truth_grid)
    assert a.obstacles == b.obstacles


def test_count_range_and_pairwise_clearance():
    spec = WorldSpec(seed=1, obstacle_count=(4, 10))
    plan = generate_world(spec)
    n = len(plan.obstacles)
    assert 4 <= n <= 10
    rects = [r for _, r in plan.obstacles]
    # Exhaustive pairwise gap check.
    for i in range(n):
        for j in range(i + 1, n):
            assert rects[i].gap_to(rects[j]) >= spec.min_clearance - 1e-12
    # Wall clearance too.
    for r in rects:
        assert r.x0 >= spec.wall_thickness + spec.min_clearance - 1e-12
        assert r.x1 <= spec.width - spec.wall_thickness - spec.min_clearance + 1e-12


def test_truth_consistency_center_rule():
    plan = generate_world(WorldSpec(seed=7))
    rng = np.random.default_rng(0)
    ny, nx = plan.truth_grid.shape
    for _ in range(500):
        i = int(rng.integers(0, ny))
        j = int(rng.integers(0, nx))
        cx = (j + 0.5) * plan.truth_cell
        cy = (i + 0.5) * plan.truth_cell
        covered = any(r.contains(cx, cy) for r in plan.solids())
        assert covered == bool(plan.truth_grid[i, j])


def test_generation_failure_is_explicit():
    # Obstacles near room size can never satisfy clearance: bounded failure.
    spec = WorldSpec(
        seed=0, width=2.0, height=2.0, obstacle_count=(3, 3), obstacle_size=(1.8, 1.9),
        min_clearance=0.4,
    )
    with pytest.raises(WorldGenError):
        generate_world(spec)


def test_reachable_empty_room_all_interior():
    plan = generate_world(WorldSpec(seed=5, width=2.0, height=2.0, obstacle_count=(0, 0)))
    cells = reachable_cells(plan, 0.2, (1.0, 1.0))
    occ = coarse_occupancy(plan, 0.2)
    free = {(r, c) for r, c in zip(*np.nonzero(~occ))}
    assert cells == free
    # Wall ring cells are excluded.
    assert (0, 0) not in cells


def test_reachable_split_room_one_component():
    base = generate_world(WorldSpec(seed=5, width=4.0, height=2.0, obstacle_count=(0, 0)))
    # Insert a full-height dividing wall by hand.
    divider = Rect(1.9, 0.0, 2.1, 2.0)
    solids = base.walls + (divider,)
    from occupaint.worldgen import _rasterize

    truth = _rasterize(base.boundary, solids, base.truth_cell)
    plan = FloorPlan(
        seed=base.seed,
        boundary=base.boundary,
        obstacles=((0, divider),),
        wall_thickness=base.wall_thickness,
        truth_cell=base.truth_cell,
        truth_grid=truth,
    )
    left = reachable_cells(plan, 0.2, (1.0, 1.0))
    assert all(c * 0.2 < 1.9 for _, c in left)
    right = reachable_cells(plan, 0.2, (3.0, 1.0))
    assert all((c + 1) * 0.2 > 2.1 for _, c in right)
    assert not (left & right)


def test_reachable_matches_bfs_oracle():
    plan = generate_world(WorldSpec(seed=11))
    occ = coarse_occupancy(plan, 0.2)
    start_world = (1.0, 1.0)
    start_cell = (int(1.0 // 0.2), int(1.0 // 0.2))
    assert not occ[start_cell]
    assert reachable_cells(plan, 0.2, start_world) == bfs_oracle(occ, start_cell)


def test_start_inside_obstacle_rejected():
    plan = generate_world(WorldSpec(seed=11))
    _, rect = plan.obstacles[0]
    mid = ((rect.x0 + rect.x1) / 2, (rect.y0 + rect.y1) / 2)
    with pytest.raises(ValueError):
        reachable_cells(plan, 0.2, mid)


def test_floorplan_roundtrip(tmp_path):
    plan = generate_world(WorldSpec(seed=99))
    path = tmp_path / "world.floorplan"
    save_floorplan(plan, path)
    loaded = load_floorplan(path)
    assert loaded.seed == plan.seed
    assert loaded.boundary == plan.boundary
    assert loaded.obstacles == plan.obstacles
    assert np.array_equal(loaded.truth_grid, plan.truth_grid)
