"""Bend trajectories so the participants meet at each collision point."""

from __future__ import annotations

from typing import Mapping

from ..errors import PlanningError
from ..fd import Collision, Point2
from .config import PlannerConfig
from .geometry import EPS, straight
from .model import Trajectory, TrajectoryPoint


def _retained(traj: Trajectory, c: Point2, radius: float) -> int:
    """Number of leading points kept by the circle rule."""
    pts = traj.positions
    for i, p in enumerate(pts):
        if p.distance(c) < radius:
            if i == 0:
                raise PlanningError(
                    f"trajectory of {traj.vehicle_id} starts inside the collision circle around ({c.x}, {c.y})",
                    "collision_circle")
            return i
    # never enters the circle: keep everything up to the closest approach
    closest = min(range(len(pts)), key=lambda i: (pts[i].distance(c), i))
    return closest + 1


def pin(traj: Trajectory, c: Point2, ordinal: int, cfg: PlannerConfig) -> Trajectory:
    """Cut ``traj`` per the circle rule (unless already pinned) and append an approach to ``c``."""
    pinned = traj.last_pin
    if pinned is not None:
        prev_ordinal, index = pinned
        if ordinal <= prev_ordinal:
            raise PlanningError(f"collision {ordinal} planned after collision {prev_ordinal} for {traj.vehicle_id}",
                                "collision_order")
        keep = index + 1
        if traj.points[index].position.distance(c) <= EPS:
            raise PlanningError(f"{traj.vehicle_id} is pinned twice at ({c.x}, {c.y})", "coincident_collisions")
    else:
        keep = _retained(traj, c, cfg.collision_radius)
    points = list(traj.points[:keep])
    points.extend(TrajectoryPoint(p) for p in straight(points[-1].position, c, cfg.sample_step))
    stops = {i: n for i, n in traj.stops.items() if i < keep}
    indices = dict(traj.collision_indices)
    indices[ordinal] = len(points) - 1
    return Trajectory(traj.vehicle_id, points, indices, stops, traj.heading)


def plan_accident(trajectories: Mapping[str, Trajectory], collision: Collision, collision_ordinal: int,
                  cfg: PlannerConfig) -> dict[str, Trajectory]:
    """Pin the actor and, when it is a vehicle, the victim at the collision point."""
    if collision.coord is None:
        raise PlanningError(f"collision {collision_ordinal} has no coordinates", "unplanned_collision")
    out = dict(trajectories)
    for ident in (collision.actor.ident, collision.victim.ident):
        if ident in out:
            out[ident] = pin(out[ident], collision.coord, collision_ordinal, cfg)
        elif ident == collision.actor.ident:
            raise PlanningError(f"actor {ident} has no trajectory", "missing_trajectory")
    return out
