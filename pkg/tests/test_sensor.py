import math

import numpy as np
import pytest

from occupaint.geometry import rect_array, points_in_any
from occupaint.sensor import (
    FLOOR,
    HIT_NONE,
    HIT_WALL,
    OBSTACLE,
    CameraIntrinsics,
    Pose2D,
    cast_rays,
    sample_points,
)
from occupaint.worldgen import WorldSpec, generate_world


from oracles import assert_ray_consistent


def empty_room(width=6.0, height=6.0, seed=0):
    return generate_world(WorldSpec(seed=seed, width=width, height=height, obstacle_count=(0, 0)))


def test_center_ray_hits_facing_wall():
    plan = empty_room(width=6.0, height=6.0)
    # Facing +x from the center: wall inner face at x = 5.9, 2.9 m away.
    pose = Pose2D(3.0, 3.0, 0.0)
    intr = CameraIntrinsics(ray_count=3, hfov_deg=90.0)
    hits = cast_rays(plan, pose, intr)
    center = hits[1]
    assert center.label == HIT_WALL
    assert center.distance == pytest.approx(2.9, abs=1e-12)


def test_no_hit_beyond_max_range():
    plan = empty_room(width=20.0, height=20.0)
    pose = Pose2D(10.0, 10.0, 0.0)
    intr = CameraIntrinsics(ray_count=3, max_range=6.0)
    hits = cast_rays(plan, pose, intr)
    assert hits[1].label == HIT_NONE and hits[1].distance is None


def test_pose_inside_solid_rejected():
    plan = generate_world(WorldSpec(seed=2))
    _, rect = plan.obstacles[0]
    inside = Pose2D((rect.x0 + rect.x1) / 2, (rect.y0 + rect.y1) / 2, 0.0)
    with pytest.raises(ValueError):
        cast_rays(plan, inside, CameraIntrinsics())
    with pytest.raises(ValueError):
        cast_rays(plan, Pose2D(0.05, 0.05, 0.0), CameraIntrinsics())


def test_cast_rays_pure():
    plan = generate_world(WorldSpec(seed=4))
    pose = Pose2D(2.0, 2.0, 1.0)
    intr = CameraIntrinsics(ray_count=64)
    assert cast_rays(plan, pose, intr) == cast_rays(plan, pose, intr)


def test_analytic_matches_ray_march_oracle():
    rng = np.random.default_rng(42)
    intr = CameraIntrinsics(ray_count=9)
    for seed in (1, 2, 3):
        plan = generate_world(WorldSpec(seed=seed))
        checked = 0
        while checked < 40:
            x = rng.uniform(0.2, plan.boundary.width - 0.2)
            y = rng.uniform(0.2, plan.boundary.height - 0.2)
            if not plan.point_is_free(x, y):
                continue
            pose = Pose2D(x, y, rng.uniform(-math.pi, math.pi))
            for h in cast_rays(plan, pose, intr):
                assert_ray_consistent(plan, (x, y), pose.yaw + h.angle, intr, h.distance)
            checked += 1


def test_floor_point_spacing_rule():
    intr = CameraIntrinsics(sample_step=0.05, max_range=6.0)
    pose = Pose2D(0.0, 0.0, 0.0)
    from occupaint.sensor import RayHit

    hit = RayHit(0.0, 0.20, "obstacle")
    pts = sample_points([hit], pose, intr)
    floor = pts.positions[pts.labels == FLOOR]
    assert np.allclose(sorted(floor[:, 0]), [0.05, 0.10, 0.15])
    obst = pts.positions[pts.labels == OBSTACLE]
    assert obst.shape == (1, 2)
    assert obst[0, 0] == pytest.approx(0.20)


def test_no_hit_gives_120_floor_points():
    intr = CameraIntrinsics(sample_step=0.05, max_range=6.0)
    from occupaint.sensor import RayHit

    pts = sample_points([RayHit(0.0, None, "none")], Pose2D(0, 0, 0), intr)
    assert len(pts) == 120
    assert (pts.labels == FLOOR).all()


def free_pose(plan, rng, yaw=0.3):
    while True:
        x = rng.uniform(0.3, plan.boundary.width - 0.3)
        y = rng.uniform(0.3, plan.boundary.height - 0.3)
        if plan.point_is_free(x, y):
            return Pose2D(x, y, yaw)


def test_frame_counts_match_per_ray_recount():
    plan = generate_world(WorldSpec(seed=9))
    pose = free_pose(plan, np.random.default_rng(1))
    intr = CameraIntrinsics(ray_count=128)
    hits = cast_rays(plan, pose, intr)
    pts = sample_points(hits, pose, intr)

    def expected_floor(h):
        limit = intr.max_range if h.distance is None else h.distance - intr.sample_step / 2
        return max(0, math.floor(limit / intr.sample_step + 1e-9))

    n_floor = sum(expected_floor(h) for h in hits)
    n_hits = sum(1 for h in hits if h.distance is not None)
    assert int((pts.labels == FLOOR).sum()) == n_floor
    assert int((pts.labels == OBSTACLE).sum()) == n_hits


def test_points_inside_boundary_and_out_of_solids():
    plan = generate_world(WorldSpec(seed=13))
    intr = CameraIntrinsics(ray_count=64)
    rng = np.random.default_rng(5)
    for _ in range(20):
        x = rng.uniform(0.3, plan.boundary.width - 0.3)
        y = rng.uniform(0.3, plan.boundary.height - 0.3)
        if not plan.point_is_free(x, y):
            continue
        pose = Pose2D(x, y, rng.uniform(-math.pi, math.pi))
        pts = sample_points(cast_rays(plan, pose, intr), pose, intr)
        inside = (
            (pts.positions[:, 0] >= 0)
            & (pts.positions[:, 0] <= plan.boundary.width)
            & (pts.positions[:, 1] >= 0)
            & (pts.positions[:, 1] <= plan.boundary.height)
        )
        assert inside.all()
        floor_pts = pts.positions[pts.labels == FLOOR]
        in_solid = points_in_any(floor_pts, rect_array(list(plan.solids())))
        assert not in_solid.any()
