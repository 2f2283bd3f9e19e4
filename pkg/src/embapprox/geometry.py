"""Exact rational plane geometry for the canonical drawings.

Points live on rational parametrizations of circles so that every crossing
test is an integer-free Fraction computation; parities must never depend on
floating point.
"""

from __future__ import annotations

from fractions import Fraction

Point = tuple[Fraction, Fraction]


class DegenerateConfiguration(Exception):
    """Segments touch instead of crossing cleanly; the caller re-jitters."""


def circle_point(t: Fraction, radius: Fraction) -> Point:
    """Point at angle 2*atan(t) on the circle of the given radius.

    Strictly monotone in t, sweeping counterclockwise from just past angle
    -pi (t very negative) to just short of +pi (t very positive), so sorted
    t values give counterclockwise cyclic order with the gap at (-radius, 0).
    """
    den = 1 + t * t
    return (radius * (1 - t * t) / den, radius * 2 * t / den)


def orient(p: Point, q: Point, r: Point) -> int:
    v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (v > 0) - (v < 0)


def _on_segment(p: Point, a: Point, b: Point) -> bool:
    """p collinear with ab assumed; is p within the closed box of ab?"""
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(
        a[1], b[1]
    )


def proper_crossing(p1: Point, p2: Point, q1: Point, q2: Point) -> bool:
    """Do the open segments cross in exactly one interior point?

    Raises DegenerateConfiguration on any touching contact: an endpoint on
    the other segment or collinear overlap.  Sharing is never legitimate in
    the drawings that call this, so a touch means the jitter must move.
    """
    o1 = orient(p1, p2, q1)
    o2 = orient(p1, p2, q2)
    o3 = orient(q1, q2, p1)
    o4 = orient(q1, q2, p2)
    if o1 == 0 and _on_segment(q1, p1, p2):
        raise DegenerateConfiguration
    if o2 == 0 and _on_segment(q2, p1, p2):
        raise DegenerateConfiguration
    if o3 == 0 and _on_segment(p1, q1, q2):
        raise DegenerateConfiguration
    if o4 == 0 and _on_segment(p2, q1, q2):
        raise DegenerateConfiguration
    return o1 != o2 and o3 != o4 and o1 != 0 and o3 != 0
