"""Road-configuration defaults shared by extraction and preplanning."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .fd import Collision, Direction, EventKind, RoadKind, Vehicle, VehiclePart

DF, TL, TR = EventKind.DRIVING_FORWARD, EventKind.TURN_LEFT, EventKind.TURN_RIGHT


@dataclass(frozen=True)
class RoadDefaults:
    directions: tuple[Direction, ...]  # slot order: first actor, first victim, then the rest
    chains: tuple[tuple[EventKind, ...], ...]  # default chain per direction above
    actor_part: VehiclePart
    victim_part: VehiclePart


ROAD_DEFAULTS = {
    # head-on impact at opposite ends of the road
    RoadKind.STRAIGHTROAD: RoadDefaults((Direction.EAST, Direction.WEST), ((DF,), (DF,)),
                                        VehiclePart.FRONT, VehiclePart.FRONT),
    # actor's front against the left-hand side of the victim
    RoadKind.CROSSROADS: RoadDefaults((Direction.EAST, Direction.NORTH, Direction.WEST, Direction.SOUTH),
                                      ((DF,), (DF,), (DF,), (DF,)),
                                      VehiclePart.FRONT, VehiclePart.LEFTSIDE),
    # frontal impact in the middle of the bend
    RoadKind.TURN_LEFT: RoadDefaults((Direction.EAST, Direction.SOUTH), ((DF, TL, DF), (DF, TR, DF)),
                                     VehiclePart.FRONT, VehiclePart.FRONT),
    RoadKind.TURN_RIGHT: RoadDefaults((Direction.EAST, Direction.NORTH), ((DF, TR, DF), (DF, TL, DF)),
                                      VehiclePart.FRONT, VehiclePart.FRONT),
}


def default_chain(road: RoadKind, direction: Direction) -> tuple[EventKind, ...]:
    d = ROAD_DEFAULTS[road]
    if direction in d.directions:
        return d.chains[d.directions.index(direction)]
    return (DF,)


def slot_order(vehicles: Sequence[Vehicle], collisions: Iterable[Collision]) -> list[str]:
    """Vehicle ids with the first collision's actor and victim up front."""
    ids = [v.ident for v in vehicles]
    first: list[str] = []
    for c in collisions:
        first = [p for p in (c.actor.ident, c.victim.ident) if p in ids]
        break
    return first + [i for i in ids if i not in first]


def assign_directions(road: RoadKind, vehicles: Sequence[Vehicle], collisions: Iterable[Collision],
                      max_same: int = 3) -> dict[str, Direction]:
    """Initial directions for every vehicle, keeping the ones already set."""
    table = ROAD_DEFAULTS[road].directions
    by_id = {v.ident: v for v in vehicles}
    counts = {d: 0 for d in Direction}
    for v in vehicles:
        if v.init_direction is not None:
            counts[v.init_direction] += 1
    out: dict[str, Direction] = {}
    for k, ident in enumerate(slot_order(vehicles, collisions)):
        v = by_id[ident]
        if v.init_direction is not None:
            out[ident] = v.init_direction
            continue
        pick = table[k % len(table)]
        if counts[pick] >= max_same:
            pick = min(table, key=lambda d: (counts[d], table.index(d)))
        counts[pick] += 1
        out[ident] = pick
    return out
