"""Planner data types."""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Optional

from ..fd import Direction, FormalDescription, Point2


@dataclass(frozen=True)
class TrajectoryPoint:
    position: Point2
    time: Optional[float] = None
    dwell: float = 0.0  # time spent standing at this point after arrival

    @property
    def departure(self) -> Optional[float]:
        return None if self.time is None else self.time + self.dwell


def _frozen_map(m: Mapping) -> Mapping:
    return MappingProxyType(dict(m))


@dataclass(frozen=True)
class Trajectory:
    vehicle_id: str
    points: tuple[TrajectoryPoint, ...]
    collision_indices: Mapping[int, int] = field(default_factory=dict)  # collision ordinal -> point index
    stops: Mapping[int, int] = field(default_factory=dict)  # point index -> number of stop events there
    heading: Optional[Direction] = None  # heading at the end of the event chain

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "collision_indices", _frozen_map(self.collision_indices))
        object.__setattr__(self, "stops", _frozen_map(self.stops))

    @property
    def positions(self) -> list[Point2]:
        return [p.position for p in self.points]

    @property
    def length(self) -> float:
        pts = self.positions
        return sum(a.distance(b) for a, b in zip(pts, pts[1:]))

    @property
    def last_pin(self) -> Optional[tuple[int, int]]:
        """(ordinal, index) of the latest collision this vehicle is pinned to."""
        if not self.collision_indices:
            return None
        ordinal = max(self.collision_indices)
        return ordinal, self.collision_indices[ordinal]


@dataclass(frozen=True)
class NormalizedScene:
    fd: FormalDescription
    diagnostics: tuple[str, ...] = ()


@dataclass(frozen=True)
class AnimationPlan:
    scene: NormalizedScene
    trajectories: tuple[Trajectory, ...]
    collision_times: tuple[float, ...]

    def trajectory(self, vehicle_id: str) -> Trajectory:
        for t in self.trajectories:
            if t.vehicle_id == vehicle_id:
                return t
        raise KeyError(vehicle_id)
