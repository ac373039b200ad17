"""Exact rational plane geometry used by the drawing constructors."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import cmp_to_key, lru_cache

Point = tuple[Fraction, Fraction]


def as_point(p) -> Point:
    return (Fraction(p[0]), Fraction(p[1]))


def cross(o: Point, a: Point, b: Point) -> Fraction:
    """z-component of (a - o) x (b - o)."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def cross_dir(u: Point, v: Point) -> Fraction:
    return u[0] * v[1] - u[1] * v[0]


def sub(a: Point, b: Point) -> Point:
    return (a[0] - b[0], a[1] - b[1])


def sign(x) -> int:
    return (x > 0) - (x < 0)


def segment_intersection(p: Point, q: Point, r: Point, s: Point):
    """Classify the intersection of closed segments pq and rs.

    Returns ``None`` when disjoint, ``("proper", t, u)`` for a single
    interior crossing with parameters along each segment, and
    ``("touch", t, u)`` when the common point is an endpoint of either
    segment.  Collinear overlaps return ``("overlap", None, None)``.
    """
    d1 = sub(q, p)
    d2 = sub(s, r)
    den = cross_dir(d1, d2)
    w = sub(r, p)
    if den == 0:
        if cross_dir(w, d1) != 0:
            return None
        # collinear: project onto d1
        dd = d1[0] * d1[0] + d1[1] * d1[1]
        t0 = (w[0] * d1[0] + w[1] * d1[1]) / dd
        w2 = sub(s, p)
        t1 = (w2[0] * d1[0] + w2[1] * d1[1]) / dd
        lo, hi = min(t0, t1), max(t0, t1)
        if hi < 0 or lo > 1:
            return None
        if hi == 0 or lo == 1:
            return ("touch", Fraction(0) if hi == 0 else Fraction(1), None)
        return ("overlap", None, None)
    t = cross_dir(w, d2) / den
    u = cross_dir(w, d1) / den
    if t < 0 or t > 1 or u < 0 or u > 1:
        return None
    if t in (0, 1) or u in (0, 1):
        return ("touch", t, u)
    return ("proper", t, u)


def _half(v: Point) -> int:
    # 0 for angles in [0, pi), 1 for [pi, 2pi)
    return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1


def angle_cmp(u: Point, v: Point) -> int:
    """Exact comparison of direction angles in [0, 2pi)."""
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return -1 if hu < hv else 1
    c = cross_dir(u, v)
    return -1 if c > 0 else (1 if c < 0 else 0)


def sort_by_angle(items, direction):
    """Sort ``items`` counter-clockwise by ``direction(item)``."""
    return sorted(items, key=cmp_to_key(lambda a, b: angle_cmp(direction(a), direction(b))))


@lru_cache(maxsize=None)
def convex_points(k: int) -> tuple[Point, ...]:
    """``k`` rational points in strictly convex position, counter-clockwise.

    The points sit on the unit circle via the rational parametrisation
    ``((1 - s^2) / (1 + s^2), 2s / (1 + s^2))`` with ``s`` a rational
    approximation of ``tan(theta / 2)`` for slightly offset regular angles.
    The offset breaks the concurrences of the regular polygon's diagonals.
    """
    pts = []
    for i in range(k):
        theta = -math.pi + 2 * math.pi * (i + 0.377) / k
        s = Fraction(math.tan(theta / 2)).limit_denominator(10**5 + 7 * i)
        den = 1 + s * s
        pts.append(((1 - s * s) / den, 2 * s / den))
    for i in range(k):
        if cross(pts[i], pts[(i + 1) % k], pts[(i + 2) % k]) <= 0:
            raise ArithmeticError("convex point set degenerated")
    return tuple(pts)
