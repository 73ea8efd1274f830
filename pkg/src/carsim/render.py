"""Top-down SVG frames of an animation plan."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional
from xml.sax.saxutils import escape

from .errors import RenderError
from .fd import Crossing, Light, LightColor, Point2, RoadKind, StopSign, Tree, VehicleKind
from .plan.model import AnimationPlan, Trajectory

ARM_WIDTH = 7.0  # meters, both lanes of one road arm
VEHICLE_SIZE = {VehicleKind.CAR: (4.5, 1.8), VehicleKind.TRUCK: (8.0, 2.5)}
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")
LIGHT_FILL = {LightColor.RED: "#d62728", LightColor.ORANGE: "#ff9f1c", LightColor.GREEN: "#2ca02c",
              LightColor.INACTIVE: "#7f7f7f"}


@dataclass(frozen=True)
class FrameSpec:
    width: int = 800
    height: int = 800
    meters_per_pixel: float = 0.1
    frame_count: int = 61

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise ValueError("canvas size must be positive")
        if not (math.isfinite(self.meters_per_pixel) and self.meters_per_pixel > 0):
            raise ValueError("meters_per_pixel must be positive")
        if self.frame_count < 1:
            raise ValueError("frame_count must be at least 1")


def _f(v: float) -> str:
    s = f"{v:.3f}"
    return "0.000" if s == "-0.000" else s


def vehicle_state(traj: Trajectory, t: float) -> tuple[Point2, float]:
    """Center and heading angle (radians) at time ``t``; linear between points, still during dwells."""
    pts = traj.points
    pos = [p.position for p in pts]

    def angle(i: int) -> float:
        a, b = (pos[i - 1], pos[i]) if i > 0 else (pos[0], pos[1])
        return math.atan2(b.y - a.y, b.x - a.x)

    for i, p in enumerate(pts):
        if p.time is None:
            raise RenderError(f"trajectory of {traj.vehicle_id} is not timed")
        if i > 0 and t < p.time:
            prev = pts[i - 1]
            dep = prev.time + prev.dwell
            if t <= dep:
                return pos[i - 1], angle(i - 1) if i - 1 > 0 else angle(i)
            k = (t - dep) / (p.time - dep)
            a, b = pos[i - 1], pos[i]
            return Point2(a.x + (b.x - a.x) * k, a.y + (b.y - a.y) * k), angle(i)
        if i == 0 and t <= p.time:
            return pos[0], angle(0)
    return pos[-1], angle(len(pos) - 1)


def _road(kind: RoadKind, half_w: float, half_h: float) -> list[str]:
    w = ARM_WIDTH / 2
    west = (-half_w, -w, half_w, 2 * w)
    east = (0.0, -w, half_w, 2 * w)
    north = (-w, 0.0, 2 * w, half_h)
    south = (-w, -half_h, 2 * w, half_h)
    horizontal = (-half_w, -w, 2 * half_w, 2 * w)
    vertical = (-w, -half_h, 2 * w, 2 * half_h)
    arms = {
        RoadKind.STRAIGHTROAD: [horizontal],
        RoadKind.CROSSROADS: [horizontal, vertical],
        RoadKind.TURN_LEFT: [west, north, (-w, -w, 2 * w, 2 * w)],
        RoadKind.TURN_RIGHT: [west, south, (-w, -w, 2 * w, 2 * w)],
    }[kind]
    out = [f'<rect x="{_f(x)}" y="{_f(y)}" width="{_f(wd)}" height="{_f(ht)}" fill="#555555"/>' for x, y, wd, ht in arms]
    dash = 'stroke="#ffffff" stroke-width="0.15" stroke-dasharray="1.5 1.5"'
    if kind in (RoadKind.STRAIGHTROAD, RoadKind.CROSSROADS):
        out.append(f'<line x1="{_f(-half_w)}" y1="0.000" x2="{_f(half_w)}" y2="0.000" {dash}/>')
    if kind is RoadKind.CROSSROADS:
        out.append(f'<line x1="0.000" y1="{_f(-half_h)}" x2="0.000" y2="{_f(half_h)}" {dash}/>')
    if kind.is_turn:
        out.append(f'<line x1="{_f(-half_w)}" y1="0.000" x2="0.000" y2="0.000" {dash}/>')
        end = half_h if kind is RoadKind.TURN_LEFT else -half_h
        out.append(f'<line x1="0.000" y1="0.000" x2="0.000" y2="{_f(end)}" {dash}/>')
    return out


def _static(s) -> list[str]:
    c = s.coord
    if c is None:
        return []
    if isinstance(s, Tree):
        return [f'<circle cx="{_f(c.x)}" cy="{_f(c.y)}" r="1.500" fill="#2e7d32" stroke="#1b5e20" stroke-width="0.2"/>']
    if isinstance(s, Light):
        return [f'<rect x="{_f(c.x - 0.5)}" y="{_f(c.y - 1.2)}" width="1.000" height="2.400" fill="#222222"/>',
                f'<circle cx="{_f(c.x)}" cy="{_f(c.y)}" r="0.400" fill="{LIGHT_FILL[s.color]}"/>']
    if isinstance(s, StopSign):
        pts = " ".join(f"{_f(c.x + 0.8 * math.cos(math.pi / 8 + k * math.pi / 4))},"
                       f"{_f(c.y + 0.8 * math.sin(math.pi / 8 + k * math.pi / 4))}" for k in range(8))
        return [f'<polygon points="{pts}" fill="#c62828" stroke="#ffffff" stroke-width="0.1"/>']
    if isinstance(s, Crossing):
        # zebra stripes across the road the crossing sits on
        across_x = abs(c.x) >= abs(c.y)
        out = []
        for k in range(-3, 4):
            if across_x:
                x, y, w, h = c.x - 1.0, c.y + k - 0.25, 2.0, 0.5
            else:
                x, y, w, h = c.x + k - 0.25, c.y - 1.0, 0.5, 2.0
            out.append(f'<rect x="{_f(x)}" y="{_f(y)}" width="{_f(w)}" height="{_f(h)}" fill="#ffffff"/>')
        return out
    return []


def render_frame(plan: AnimationPlan, t: float, spec: Optional[FrameSpec] = None) -> str:
    """One standalone SVG 1.1 document showing the scene at time ``t``."""
    spec = spec or FrameSpec()
    if not (0.0 <= t <= 1.0):
        raise RenderError(f"frame time {t!r} outside [0, 1]")
    fd = plan.scene.fd
    mpp = spec.meters_per_pixel
    half_w, half_h = spec.width * mpp / 2, spec.height * mpp / 2
    k = 1.0 / mpp
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{spec.width}" height="{spec.height}" '
        f'viewBox="0 0 {spec.width} {spec.height}">',
        f'<rect x="0" y="0" width="{spec.width}" height="{spec.height}" fill="#d9ead3"/>',
        f'<g transform="translate({_f(spec.width / 2)} {_f(spec.height / 2)}) scale({_f(k)} {_f(-k)})">',
    ]
    out += _road(fd.road_kind, half_w, half_h)
    for s in fd.statics:
        out += _static(s)
    kinds = {v.ident: v.kind for v in fd.dynamics}
    labels = []
    for n, traj in enumerate(plan.trajectories):
        c, a = vehicle_state(traj, t)
        length, width = VEHICLE_SIZE[kinds.get(traj.vehicle_id, VehicleKind.CAR)]
        color = PALETTE[n % len(PALETTE)]
        out.append(
            f'<g transform="translate({_f(c.x)} {_f(c.y)}) rotate({_f(math.degrees(a))})">'
            f'<rect x="{_f(-length / 2)}" y="{_f(-width / 2)}" width="{_f(length)}" height="{_f(width)}" '
            f'fill="{color}" stroke="#000000" stroke-width="0.1"/>'
            f'<rect x="{_f(length / 2 - 0.6)}" y="{_f(-width / 2)}" width="0.600" height="{_f(width)}" fill="#ffffff" '
            f'fill-opacity="0.6"/></g>')
        labels.append(f'<text x="{_f(spec.width / 2 + c.x * k)}" y="{_f(spec.height / 2 - c.y * k - width * k)}" '
                      f'font-family="sans-serif" font-size="12" text-anchor="middle">{escape(traj.vehicle_id)}</text>')
    out.append("</g>")
    out += labels
    out.append(f'<text x="10" y="20" font-family="monospace" font-size="14">t = {t:.4f}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def frame_times(count: int) -> list[float]:
    if count == 1:
        return [0.0]
    return [k / (count - 1) for k in range(count)]


def render_animation(plan: AnimationPlan, spec: Optional[FrameSpec], out_dir: str | os.PathLike) -> list[Path]:
    """Write ``frame_0000.svg``... at evenly spaced times from 0 to 1."""
    spec = spec or FrameSpec()
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        paths = []
        for k, t in enumerate(frame_times(spec.frame_count)):
            path = out / f"frame_{k:04d}.svg"
            path.write_text(render_frame(plan, t, spec), encoding="utf-8")
            paths.append(path)
    except OSError as exc:
        raise RenderError(f"cannot write frames to {out}: {exc}") from exc
    return paths
