"""Consistency pass: default every missing value and drop contradictions."""

from __future__ import annotations

from dataclasses import replace
from typing import Optional

from ..errors import FDValidationError, PlanningError
from ..fd import (
    Collision, Crossing, EventKind, FormalDescription, Light, Participant, Point2, RoadKind, StopSign, Tree,
    Vehicle, VehiclePart, validate_fd,
)
from ..scenario import assign_directions, default_chain
from .config import PlannerConfig
from .geometry import add, closest_approach, first_intersection, scale
from .model import NormalizedScene
from .positions import final_heading, plan_positions
from .trajectory import first_turn_midpoint, plan_trajectory

_CORNERS = (Point2(5.0, -5.0), Point2(-5.0, -5.0), Point2(5.0, 5.0), Point2(-5.0, 5.0))
_CROSSINGS = (Point2(-6.0, 0.0), Point2(6.0, 0.0), Point2(0.0, -6.0), Point2(0.0, 6.0))
_STOP_SIGNS = (Point2(-6.0, -4.5), Point2(6.0, 4.5), Point2(4.5, -6.0), Point2(-4.5, 6.0))
FIRST_COLLISION_RADIUS = 2.0  # crossroads impacts stay this close to the center
LATER_COLLISION_GAP = 10.0


def _corner_slots():
    yield from _CORNERS
    ring = 2
    while True:
        d = 5.0 * ring
        yield from (Point2(d, -d), Point2(-d, -d), Point2(d, d), Point2(-d, d))
        ring += 1


def _edge_slots(table, road: RoadKind):
    usable = [p for p in table if road is not RoadKind.STRAIGHTROAD or abs(p.y) < abs(p.x)]
    ring = 1
    while True:
        yield from (Point2(p.x * ring, p.y * ring) for p in usable)
        ring += 1


def _place_statics(fd: FormalDescription, notes: list[str]):
    road = fd.road_kind
    used = {s.coord for s in fd.statics if s.coord is not None}
    slots = {"corner": _corner_slots(), "crossing": _edge_slots(_CROSSINGS, road),
             "stopsign": _edge_slots(_STOP_SIGNS, road)}

    def free(kind: str) -> Point2:
        for p in slots[kind]:
            if p not in used:
                used.add(p)
                return p
        raise AssertionError("slot generators are infinite")

    out = []
    for s in fd.statics:
        if s.coord is None and isinstance(s, (Tree, Light, StopSign, Crossing)):
            kind = "corner" if isinstance(s, (Tree, Light)) else ("crossing" if isinstance(s, Crossing) else "stopsign")
            s = replace(s, coord=free(kind))
            name = type(s).__name__.lower() + (f" {s.ident}" if s.ident else "")
            notes.append(f"placed {name} at ({s.coord.x}, {s.coord.y})")
        out.append(s)
    return tuple(out)


def _normalize_vehicles(fd: FormalDescription, cfg: PlannerConfig, notes: list[str]) -> tuple[Vehicle, ...]:
    road = fd.road_kind
    directions = assign_directions(road, fd.dynamics, fd.collisions, cfg.max_same_direction)
    counts: dict = {}
    out = []
    for v in fd.dynamics:
        d = directions[v.ident]
        if v.init_direction is None:
            notes.append(f"vehicle {v.ident}: initial direction defaulted to {d.value}")
        counts[d] = counts.get(d, 0) + 1
        if counts[d] > cfg.max_same_direction:
            raise PlanningError(
                f"more than {cfg.max_same_direction} vehicles share initial direction {d.value}", "max_same_direction")
        chain = v.chain
        if not chain:
            chain = (EventKind.DRIVING_FORWARD,)
            notes.append(f"vehicle {v.ident}: empty event chain set to driving_forward")
        if road is RoadKind.STRAIGHTROAD and any(e in (EventKind.TURN_LEFT, EventKind.TURN_RIGHT) for e in chain):
            chain = tuple(EventKind.DRIVING_FORWARD if e in (EventKind.TURN_LEFT, EventKind.TURN_RIGHT) else e
                          for e in chain)
            notes.append(f"vehicle {v.ident}: turn on a straight road replaced by driving_forward")
        out.append(Vehicle(v.ident, v.kind, d, chain))
    return tuple(out)


def _nominal_paths(fd: FormalDescription, cfg: PlannerConfig) -> dict[str, list[Point2]]:
    scene = NormalizedScene(fd)
    positions = plan_positions(scene, cfg)
    return {v.ident: plan_trajectory(v, positions, fd.road_kind, cfg).positions for v in fd.dynamics}


def _first_collision_point(fd: FormalDescription, c: Collision, paths, cfg: PlannerConfig) -> Point2:
    actor = paths[c.actor.ident]
    victim = paths.get(c.victim.ident)
    if victim is None:  # static victim without coordinates cannot happen after placement
        return Point2(0.0, 0.0)
    hit = first_intersection(actor, victim)
    if hit is None and fd.road_kind.is_turn:
        # lanes of a bend never cross: meet between the two turn arcs
        mids = [first_turn_midpoint(fd.vehicle(i), cfg) for i in (c.actor.ident, c.victim.ident)]
        if None not in mids:
            hit = Point2((mids[0].x + mids[1].x) / 2, (mids[0].y + mids[1].y) / 2)
    if hit is None:
        hit = closest_approach(actor, victim)
    # keep every start point outside the collision circle
    limit = cfg.start_distances[0] - cfg.collision_radius - cfg.sample_step
    if fd.road_kind is RoadKind.CROSSROADS:
        limit = min(limit, FIRST_COLLISION_RADIUS)
    r = (hit.x ** 2 + hit.y ** 2) ** 0.5
    if limit > 0 and r > limit:
        k = limit / r
        hit = Point2(hit.x * k, hit.y * k)
    return hit


def _place_collisions(fd: FormalDescription, cfg: PlannerConfig, notes: list[str]) -> tuple[Collision, ...]:
    out: list[Collision] = []
    paths: Optional[dict] = None
    for k, c in enumerate(fd.collisions):
        actor_part = c.actor.part
        if actor_part is VehiclePart.UNKNOWN:
            actor_part = VehiclePart.FRONT
            notes.append(f"collision {k + 1}: actor part defaulted to front")
        coord = c.coord
        if coord is None:
            static = fd.static(c.victim.ident)
            if static is not None:
                coord = static.coord
            elif k == 0:
                paths = paths if paths is not None else _nominal_paths(fd, cfg)
                coord = _first_collision_point(fd, c, paths, cfg)
            else:
                heading = final_heading(fd.vehicle(c.actor.ident))
                coord = add(out[-1].coord, scale(heading.vector, LATER_COLLISION_GAP))
            coord = Point2(round(coord.x, 9) + 0.0, round(coord.y, 9) + 0.0)
            notes.append(f"collision {k + 1}: placed at ({coord.x}, {coord.y})")
        out.append(Collision(Participant(c.actor.ident, actor_part), c.victim, coord))
    return tuple(out)


def preplan(fd: FormalDescription, cfg: Optional[PlannerConfig] = None) -> NormalizedScene:
    """Fill coordinates, directions, chains and parts; idempotent."""
    cfg = cfg or PlannerConfig()
    violations = validate_fd(fd)
    if violations:
        raise FDValidationError(violations)
    notes: list[str] = []
    fd = FormalDescription(_place_statics(fd, notes), fd.dynamics, fd.collisions)
    fd = FormalDescription(fd.statics, _normalize_vehicles(fd, cfg, notes), fd.collisions)
    fd = FormalDescription(fd.statics, fd.dynamics, _place_collisions(fd, cfg, notes))
    return NormalizedScene(fd, tuple(notes))
