"""Structural comparison of two FDs up to identifier spelling and coordinates."""

from __future__ import annotations

from collections import Counter

from .fd import FormalDescription, Road


def census(fd: FormalDescription) -> Counter:
    counts = Counter(type(s).__name__.lower() for s in fd.statics if not isinstance(s, Road))
    counts["vehicle"] = len(fd.dynamics)
    return counts


def fd_differences(got: FormalDescription, want: FormalDescription) -> list[str]:
    """Why ``got`` is not equivalent to ``want``; empty when equivalent.

    Compared: road kind, object census, collision count and order, who is
    actor and victim in each collision (through a consistent one-to-one
    renaming of ids) and the participating parts.
    """
    diffs = []
    if got.road_kind is not want.road_kind:
        diffs.append(f"road: {got.road_kind.value} != {want.road_kind.value}")
    cg, cw = census(got), census(want)
    if cg != cw:
        diffs.append(f"census: {dict(sorted(cg.items()))} != {dict(sorted(cw.items()))}")
    if len(got.collisions) != len(want.collisions):
        diffs.append(f"collisions: {len(got.collisions)} != {len(want.collisions)}")
        return diffs

    forward: dict[str, str] = {}
    backward: dict[str, str] = {}

    def kind(fd: FormalDescription, ident: str) -> str:
        return "vehicle" if fd.vehicle(ident) is not None else type(fd.static(ident)).__name__.lower()

    for k, (a, b) in enumerate(zip(got.collisions, want.collisions), 1):
        for role, pa, pb in (("actor", a.actor, b.actor), ("victim", a.victim, b.victim)):
            if kind(got, pa.ident) != kind(want, pb.ident):
                diffs.append(f"collision {k} {role}: {kind(got, pa.ident)} != {kind(want, pb.ident)}")
            elif forward.setdefault(pa.ident, pb.ident) != pb.ident or backward.setdefault(pb.ident, pa.ident) != pa.ident:
                diffs.append(f"collision {k} {role}: {pa.ident} does not correspond to {pb.ident}")
            if pa.part is not pb.part:
                diffs.append(f"collision {k} {role} part: {pa.part.value} != {pb.part.value}")
    return diffs


def fd_equivalent(got: FormalDescription, want: FormalDescription) -> bool:
    return not fd_differences(got, want)
