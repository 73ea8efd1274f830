"""Small plane-geometry helpers over :class:`Point2`."""

from __future__ import annotations

import math
from typing import Optional, Sequence

from ..fd import Direction, Point2

EPS = 1e-9


def add(p: Point2, *vs: tuple[float, float]) -> Point2:
    x, y = p.x, p.y
    for vx, vy in vs:
        x += vx
        y += vy
    return Point2(x, y)


def scale(v: tuple[float, float], k: float) -> tuple[float, float]:
    return (v[0] * k, v[1] * k)


def right_of(d: Direction) -> tuple[float, float]:
    fx, fy = d.vector
    return (fy, -fx)


def along(p: Point2, d: Direction) -> float:
    fx, fy = d.vector
    return p.x * fx + p.y * fy


def lateral(p: Point2, d: Direction) -> float:
    rx, ry = right_of(d)
    return p.x * rx + p.y * ry


def frame_point(d: Direction, s: float, l: float) -> Point2:
    """Point at along-track ``s`` and rightward offset ``l`` for heading ``d``."""
    f, r = d.vector, right_of(d)
    return Point2(f[0] * s + r[0] * l, f[1] * s + r[1] * l)


def straight(p: Point2, q: Point2, step: float) -> list[Point2]:
    """Samples from ``p`` (excluded) to ``q`` (included, exact) no more than ``step`` apart."""
    dist = p.distance(q)
    if dist <= EPS:
        return []
    n = max(1, math.ceil(dist / step - EPS))
    out = [Point2(p.x + (q.x - p.x) * i / n, p.y + (q.y - p.y) * i / n) for i in range(1, n)]
    out.append(q)
    return out


def _seg_intersection(a: Point2, b: Point2, c: Point2, d: Point2) -> Optional[tuple[float, Point2]]:
    rx, ry = b.x - a.x, b.y - a.y
    sx, sy = d.x - c.x, d.y - c.y
    den = rx * sy - ry * sx
    if abs(den) < EPS:
        return None
    qx, qy = c.x - a.x, c.y - a.y
    t = (qx * sy - qy * sx) / den
    u = (qx * ry - qy * rx) / den
    if -EPS <= t <= 1 + EPS and -EPS <= u <= 1 + EPS:
        return t, Point2(a.x + t * rx, a.y + t * ry)
    return None


def first_intersection(path: Sequence[Point2], other: Sequence[Point2]) -> Optional[Point2]:
    """First crossing of ``other`` met while walking along ``path``."""
    for a, b in zip(path, path[1:]):
        hits = [h for c, d in zip(other, other[1:]) if (h := _seg_intersection(a, b, c, d)) is not None]
        if hits:
            return min(hits, key=lambda h: h[0])[1]
    return None


def _closest_on_segment(p: Point2, a: Point2, b: Point2) -> Point2:
    vx, vy = b.x - a.x, b.y - a.y
    n = vx * vx + vy * vy
    t = 0.0 if n == 0 else max(0.0, min(1.0, ((p.x - a.x) * vx + (p.y - a.y) * vy) / n))
    return Point2(a.x + t * vx, a.y + t * vy)


def closest_approach(path: Sequence[Point2], other: Sequence[Point2]) -> Point2:
    """Midpoint of the closest pair of points of two polylines.

    Among (near-)equally close pairs the midpoint nearest the origin wins, so
    parallel lanes meet abreast of the scene center.
    """
    best = None
    for a, b in zip(path, path[1:]):
        for c, d in zip(other, other[1:]):
            for p, q in ((a, _closest_on_segment(a, c, d)), (b, _closest_on_segment(b, c, d)),
                         (_closest_on_segment(c, a, b), c), (_closest_on_segment(d, a, b), d)):
                mid = Point2((p.x + q.x) / 2, (p.y + q.y) / 2)
                key = (round(p.distance(q), 6), math.hypot(mid.x, mid.y))
                if best is None or key < best[0]:
                    best = (key, mid)
    if best is None:
        raise ValueError("closest_approach needs two polylines with at least two points each")
    return best[1]


def heading_angle(a: Point2, b: Point2) -> float:
    return math.atan2(b.y - a.y, b.x - a.x)
