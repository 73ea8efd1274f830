"""Plan documents: JSON with a fixed field order for golden files."""

from __future__ import annotations

import json
from typing import Any

from ..errors import CarsimError, PlanFormatError
from ..fd import Direction, Point2, parse_fd, serialize_fd
from .model import AnimationPlan, NormalizedScene, Trajectory, TrajectoryPoint

FORMAT = "carsim-plan"
VERSION = 1


def plan_to_dict(plan: AnimationPlan) -> dict[str, Any]:
    fd = plan.scene.fd
    collisions = []
    for k, (c, t) in enumerate(zip(fd.collisions, plan.collision_times), 1):
        collisions.append({
            "ordinal": k,
            "actor": c.actor.ident,
            "actor_part": c.actor.part.value,
            "victim": c.victim.ident,
            "victim_part": c.victim.part.value,
            "coord": [c.coord.x, c.coord.y],
            "time": t,
        })
    kinds = {v.ident: v.kind.value for v in fd.dynamics}
    vehicles = []
    for traj in plan.trajectories:
        vehicles.append({
            "id": traj.vehicle_id,
            "kind": kinds.get(traj.vehicle_id, "car"),
            "heading": traj.heading.value if traj.heading else None,
            "points": [[p.position.x, p.position.y, p.time] for p in traj.points],
            "dwell": {str(i): p.dwell for i, p in enumerate(traj.points) if p.dwell},
            "stops": {str(i): n for i, n in sorted(traj.stops.items())},
            "collision_indices": {str(o): i for o, i in sorted(traj.collision_indices.items())},
        })
    return {
        "format": FORMAT,
        "version": VERSION,
        "fd": serialize_fd(fd),
        "diagnostics": list(plan.scene.diagnostics),
        "collisions": collisions,
        "vehicles": vehicles,
    }


def dump_plan(plan: AnimationPlan) -> str:
    return json.dumps(plan_to_dict(plan), indent=2) + "\n"


def load_plan(text: str) -> AnimationPlan:
    """Inverse of :func:`dump_plan`."""
    try:
        data = json.loads(text)
        if data.get("format") != FORMAT or data.get("version") != VERSION:
            raise PlanFormatError(f"not a {FORMAT} v{VERSION} document")
        fd = parse_fd(data["fd"])
        trajectories = []
        for v in data["vehicles"]:
            dwell = {int(i): float(d) for i, d in v.get("dwell", {}).items()}
            points = [TrajectoryPoint(Point2(float(x), float(y)), None if t is None else float(t), dwell.get(i, 0.0))
                      for i, (x, y, t) in enumerate(v["points"])]
            trajectories.append(Trajectory(
                v["id"], points,
                {int(o): int(i) for o, i in v.get("collision_indices", {}).items()},
                {int(i): int(n) for i, n in v.get("stops", {}).items()},
                Direction.parse(v["heading"]) if v.get("heading") else None,
            ))
        times = tuple(float(c["time"]) for c in data["collisions"])
    except CarsimError as exc:
        raise PlanFormatError(f"invalid plan document: {exc.message}") from exc
    except (ValueError, KeyError, TypeError) as exc:
        raise PlanFormatError(f"invalid plan document: {exc}") from exc
    if len(times) != len(fd.collisions):
        raise PlanFormatError("collision records do not match the embedded FD")
    return AnimationPlan(NormalizedScene(fd, tuple(data.get("diagnostics", ()))), tuple(trajectories), times)
