"""FD to timed trajectories: preplan, positions, trajectories, accidents, time."""

from __future__ import annotations

from typing import Optional

from ..fd import FormalDescription
from .accident import plan_accident
from .config import PlannerConfig
from .export import dump_plan, load_plan, plan_to_dict
from .model import AnimationPlan, NormalizedScene, Trajectory, TrajectoryPoint
from .positions import plan_positions
from .preplan import preplan
from .temporal import collision_instants, plan_time
from .trajectory import plan_trajectory

__all__ = [
    "AnimationPlan", "NormalizedScene", "PlannerConfig", "Trajectory", "TrajectoryPoint", "collision_instants", "dump_plan",
    "load_plan", "plan_to_dict",
    "plan", "plan_accident", "plan_positions", "plan_time", "plan_trajectory", "preplan",
]


def plan(fd: FormalDescription, cfg: Optional[PlannerConfig] = None) -> AnimationPlan:
    cfg = cfg or PlannerConfig()
    scene = preplan(fd, cfg)
    positions = plan_positions(scene, cfg)
    trajectories = {v.ident: plan_trajectory(v, positions, scene.fd.road_kind, cfg) for v in scene.fd.dynamics}
    for ordinal, collision in enumerate(scene.fd.collisions, 1):
        trajectories = plan_accident(trajectories, collision, ordinal, cfg)
    return plan_time(trajectories.values(), scene.fd.collisions, cfg, scene)
