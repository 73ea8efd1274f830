"""Time values along every trajectory."""

from __future__ import annotations

from typing import Iterable, Sequence

from ..errors import PlanningError
from ..fd import Collision
from .config import PlannerConfig
from .model import AnimationPlan, NormalizedScene, Trajectory, TrajectoryPoint

STOP_DWELL = 0.1  # share of a segment's time span consumed by one stop
MAX_DWELL = 0.5  # cap on the total share of all stops in one segment


def collision_instants(n: int) -> list[float]:
    return [i / (n + 1) for i in range(1, n + 1)]


def _time_segment(points: Sequence[TrajectoryPoint], stops, lo: int, hi: int, t0: float, t1: float,
                  out: list[TrajectoryPoint]) -> None:
    """Times for points lo..hi (inclusive) at constant speed over [t0, t1]."""
    span = t1 - t0
    counts = {i: n for i, n in stops.items() if lo <= i < hi}
    dwell_share = min(MAX_DWELL, STOP_DWELL * sum(counts.values()))
    per_stop = span * dwell_share / sum(counts.values()) if counts else 0.0
    moving = span - (per_stop * sum(counts.values()))
    lengths = [points[i].position.distance(points[i + 1].position) for i in range(lo, hi)]
    total = sum(lengths)
    t = t0
    for k, i in enumerate(range(lo, hi + 1)):
        if i == hi:
            t = t1
        dwell = per_stop * counts.get(i, 0)
        out[i] = TrajectoryPoint(points[i].position, t, dwell)
        if i < hi:
            t += dwell + moving * lengths[k] / total


def plan_time(trajectories: Iterable[Trajectory], collisions: Sequence[Collision], cfg: PlannerConfig,
              scene: NormalizedScene | None = None) -> AnimationPlan:
    """Collision i of n happens at i/(n+1); in between, vehicles move at constant speed."""
    instants = collision_instants(len(collisions))
    timed = []
    for traj in trajectories:
        pins = sorted(traj.collision_indices.items(), key=lambda kv: kv[1])
        ordinals = [o for o, _ in pins]
        if ordinals != sorted(ordinals) or len(set(i for _, i in pins)) != len(pins):
            raise PlanningError(f"collisions of {traj.vehicle_id} are out of order", "collision_order")
        anchors = [(0, 0.0)] + [(i, instants[o - 1]) for o, i in pins]
        n = len(traj.points)
        if not pins:
            anchors.append((n - 1, 1.0))
        elif anchors[-1][0] != n - 1:
            raise PlanningError(f"trajectory of {traj.vehicle_id} continues past its last collision", "collision_order")
        if anchors[1][0] == 0:
            raise PlanningError(f"{traj.vehicle_id} collides at its start point", "collision_order")
        out: list[TrajectoryPoint] = list(traj.points)
        for (lo, t0), (hi, t1) in zip(anchors, anchors[1:]):
            _time_segment(traj.points, traj.stops, lo, hi, t0, t1, out)
        timed.append(Trajectory(traj.vehicle_id, out, traj.collision_indices, traj.stops, traj.heading))
    return AnimationPlan(scene if scene is not None else NormalizedScene(None), tuple(timed), tuple(instants))
