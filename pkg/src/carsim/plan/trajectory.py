"""Event chains to untimed point lists."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

from ..errors import PlanningError
from ..fd import Direction, EventKind, Point2, RoadKind, Vehicle
from .config import PlannerConfig
from .geometry import EPS, add, along, right_of, scale, straight
from .model import Trajectory, TrajectoryPoint

_TURNS = (EventKind.TURN_LEFT, EventKind.TURN_RIGHT)
_LANE_CHANGES = (EventKind.CHANGE_LANE_LEFT, EventKind.CHANGE_LANE_RIGHT)


def lane_change_offset(s: float, length: float, width: float) -> float:
    """Half-cosine lateral profile: 0 at s=0, ``width`` at s=length."""
    return width * (1.0 - math.cos(math.pi * s / length)) / 2.0


def fixed_length(event: EventKind, cfg: PlannerConfig) -> float:
    if event in _LANE_CHANGES:
        return cfg.lane_change_length
    if event is EventKind.OVERTAKE:
        return 3 * cfg.lane_change_length
    return 0.0


def turn_entry(turn: EventKind, cfg: PlannerConfig) -> float:
    """Along-track position where a turn must start to exit into the crossing lane."""
    if turn is EventKind.TURN_LEFT:
        return cfg.lane_offset - cfg.turn_radius
    return -cfg.lane_offset - cfg.turn_radius


def first_turn_midpoint(vehicle: Vehicle, cfg: PlannerConfig) -> Point2 | None:
    """Middle of the vehicle's first turn arc, assuming it is still in its own lane."""
    turn = next((e for e in vehicle.chain if e in _TURNS), None)
    if turn is None or vehicle.init_direction is None:
        return None
    left = turn is EventKind.TURN_LEFT
    d = vehicle.init_direction
    r = right_of(d)
    entry = add(Point2(0.0, 0.0), scale(d.vector, turn_entry(turn, cfg)), scale(r, cfg.lane_offset))
    center = add(entry, scale(r, (-1.0 if left else 1.0) * cfg.turn_radius))
    a = (1.0 if left else -1.0) * math.pi / 4
    ux, uy = entry.x - center.x, entry.y - center.y
    return Point2(center.x + ux * math.cos(a) - uy * math.sin(a), center.y + ux * math.sin(a) + uy * math.cos(a))


@dataclass(frozen=True)
class Arc:
    """Points ``first..last`` of a path lie on this quarter circle."""

    first: int
    last: int
    center: Point2
    radius: float
    entry_heading: Direction
    exit_heading: Direction
    left: bool


@dataclass(frozen=True)
class Path:
    points: tuple[Point2, ...]
    stops: Mapping[int, int]
    heading: Direction
    arcs: tuple[Arc, ...]


class _Builder:
    def __init__(self, start: Point2, heading: Direction, cfg: PlannerConfig):
        self.points = [start]
        self.heading = heading
        self.cfg = cfg
        self.stops: dict[int, int] = {}
        self.arcs: list[Arc] = []

    @property
    def here(self) -> Point2:
        return self.points[-1]

    def forward(self, dist: float) -> None:
        if dist <= EPS:
            return
        target = add(self.here, scale(self.heading.vector, dist))
        self.points.extend(straight(self.here, target, self.cfg.sample_step))

    def stop(self) -> None:
        i = len(self.points) - 1
        self.stops[i] = self.stops.get(i, 0) + 1

    def change_lane(self, left: bool) -> None:
        cfg = self.cfg
        base, f = self.here, self.heading.vector
        side = scale(right_of(self.heading), -1.0 if left else 1.0)
        n = max(2, math.ceil(cfg.lane_change_length / cfg.sample_step - EPS))
        width = 2 * cfg.lane_offset
        for i in range(1, n + 1):
            s = cfg.lane_change_length * i / n
            self.points.append(add(base, scale(f, s), scale(side, lane_change_offset(s, cfg.lane_change_length, width))))

    def turn(self, left: bool) -> None:
        """Quarter arc of ``turn_radius`` tangent to the current heading."""
        cfg = self.cfg
        r = right_of(self.heading)
        side = -1.0 if left else 1.0  # center lies on the turn side
        center = add(self.here, scale(r, side * cfg.turn_radius))
        ux, uy = self.here.x - center.x, self.here.y - center.y
        sign = 1.0 if left else -1.0  # counter-clockwise for left turns
        first = len(self.points) - 1
        n = cfg.arc_samples
        for j in range(1, n + 1):
            a = sign * (math.pi / 2) * j / n
            c, s = math.cos(a), math.sin(a)
            self.points.append(Point2(center.x + ux * c - uy * s, center.y + ux * s + uy * c))
        entry = self.heading
        self.heading = self.heading.turned(left)
        self.arcs.append(Arc(first, len(self.points) - 1, center, cfg.turn_radius, entry, self.heading, left))

    def run(self, events, budget: float, implicit_first: bool) -> None:
        """Play non-turn events; driving_forward events share what is left of ``budget``."""
        forwards = sum(1 for e in events if e is EventKind.DRIVING_FORWARD)
        free = max(0.0, budget - sum(fixed_length(e, self.cfg) for e in events))
        if forwards == 0 and implicit_first:
            self.forward(free)
        share = free / forwards if forwards else 0.0
        for e in events:
            if e is EventKind.DRIVING_FORWARD:
                self.forward(share)
            elif e is EventKind.STOP:
                self.stop()
            elif e in _LANE_CHANGES:
                self.change_lane(e is EventKind.CHANGE_LANE_LEFT)
            elif e is EventKind.OVERTAKE:
                self.change_lane(True)
                self.forward(self.cfg.lane_change_length)
                self.change_lane(False)
        if forwards == 0 and not implicit_first:
            self.forward(free)


def build_path(vehicle: Vehicle, positions: Mapping[str, tuple[Point2, Point2]], road: RoadKind,
               cfg: PlannerConfig) -> Path:
    """Concatenate the point lists of every event of the vehicle's chain.

    Turns split the chain into legs. The first turn is anchored at the scene
    center so the vehicle leaves it in the crossing lane; the last leg runs
    to the planned end point.
    """
    start, end = positions[vehicle.ident]
    if vehicle.init_direction is None:
        raise PlanningError(f"vehicle {vehicle.ident} has no initial direction", "unplanned_direction")
    chain = list(vehicle.chain) or [EventKind.DRIVING_FORWARD]
    if road is RoadKind.STRAIGHTROAD and any(e in _TURNS for e in chain):
        raise PlanningError(f"vehicle {vehicle.ident} turns on a straight road", "turn_on_straightroad")

    legs: list[list[EventKind]] = [[]]
    turns: list[EventKind] = []
    for e in chain:
        if e in _TURNS:
            turns.append(e)
            legs.append([])
        else:
            legs[-1].append(e)

    b = _Builder(start, vehicle.init_direction, cfg)
    for k, leg in enumerate(legs):
        last = k == len(legs) - 1
        if last:
            budget = along(end, b.heading) - along(b.here, b.heading)
        elif k == 0:
            budget = turn_entry(turns[0], cfg) - along(b.here, b.heading)
        else:
            budget = cfg.between_turns
        b.run(leg, budget, implicit_first=(k == 0))
        if not last:
            b.turn(turns[k] is EventKind.TURN_LEFT)
    if len(b.points) < 2:
        b.forward(cfg.sample_step)  # a chain of stops still needs a direction to face
    return Path(tuple(b.points), dict(b.stops), b.heading, tuple(b.arcs))


def plan_trajectory(vehicle: Vehicle, positions: Mapping[str, tuple[Point2, Point2]], road: RoadKind,
                    cfg: PlannerConfig) -> Trajectory:
    """Untimed trajectory of one vehicle; see :func:`build_path`."""
    path = build_path(vehicle, positions, road, cfg)
    return Trajectory(vehicle.ident, [TrajectoryPoint(p) for p in path.points], {}, path.stops, path.heading)
