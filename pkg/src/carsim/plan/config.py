"""Planner parameters."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, fields
from typing import Any, Mapping


@dataclass(frozen=True)
class PlannerConfig:
    start_distances: tuple[float, ...] = (20.0, 26.0, 32.0)
    max_same_direction: int = 3
    lane_offset: float = 1.75
    turn_radius: float = 8.0
    sample_step: float = 2.0
    collision_radius: float = 5.0
    lane_change_length: float = 15.0
    frames_hint: int = 60
    arc_samples: int = 16  # per quarter circle
    between_turns: float = 10.0  # straight run separating two turns

    def __post_init__(self) -> None:
        object.__setattr__(self, "start_distances", tuple(float(d) for d in self.start_distances))
        d = self.start_distances
        if not d:
            raise ValueError("start_distances must not be empty")
        if any(b <= a for a, b in zip(d, d[1:])):
            raise ValueError("start_distances must be strictly increasing")
        if self.max_same_direction < 1:
            raise ValueError("max_same_direction must be at least 1")
        if self.max_same_direction > len(d):
            raise ValueError("max_same_direction exceeds the number of start distances")
        checked = [(f"start_distances[{i}]", v) for i, v in enumerate(d)]
        checked += [(name, getattr(self, name)) for name in
                    ("lane_offset", "turn_radius", "sample_step", "collision_radius", "lane_change_length", "between_turns")]
        for name, value in checked:
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be a positive finite number, got {value!r}")
        if self.collision_radius >= d[0]:
            raise ValueError("collision_radius must be smaller than the smallest start distance")
        if self.frames_hint < 1 or self.arc_samples < 1:
            raise ValueError("frames_hint and arc_samples must be positive")

    def to_dict(self) -> dict[str, Any]:
        out = asdict(self)
        out["start_distances"] = list(self.start_distances)
        return out

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "PlannerConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown planner setting(s): {', '.join(sorted(unknown))}")
        return cls(**dict(data))
