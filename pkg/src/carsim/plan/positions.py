"""Start and end points of every vehicle."""

from __future__ import annotations

from ..errors import PlanningError
from ..fd import Direction, EventKind, Point2, Vehicle
from .config import PlannerConfig
from .geometry import frame_point
from .model import NormalizedScene


def final_heading(vehicle: Vehicle) -> Direction:
    d = vehicle.init_direction
    if d is None:
        raise PlanningError(f"vehicle {vehicle.ident} has no initial direction", "unplanned_direction")
    for e in vehicle.chain:
        if e is EventKind.TURN_LEFT:
            d = d.turned(True)
        elif e is EventKind.TURN_RIGHT:
            d = d.turned(False)
    return d


def plan_positions(scene: NormalizedScene, cfg: PlannerConfig) -> dict[str, tuple[Point2, Point2]]:
    """k-th vehicle of a direction starts ``start_distances[k]`` before the center.

    End distances are handed out in reverse so the vehicle starting closest
    to the center ends farthest from it.
    """
    ends = tuple(reversed(cfg.start_distances))
    rank: dict[Direction, int] = {}
    out = {}
    for v in scene.fd.dynamics:
        d = v.init_direction
        if d is None:
            raise PlanningError(f"vehicle {v.ident} has no initial direction", "unplanned_direction")
        k = rank.get(d, 0)
        if k >= cfg.max_same_direction:
            raise PlanningError(
                f"more than {cfg.max_same_direction} vehicles share initial direction {d.value}", "max_same_direction")
        rank[d] = k + 1
        start = frame_point(d, -cfg.start_distances[k], cfg.lane_offset)
        end = frame_point(final_heading(v), ends[k], cfg.lane_offset)
        out[v.ident] = (start, end)
    return out
