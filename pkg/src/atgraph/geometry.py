"""Straight-line drawings of K_n used as a ground-truth oracle.

Rotations are read off by angular sorting, crossings by segment
intersection.  Points must be in general position.
"""

from __future__ import annotations

import itertools
import math
from typing import Sequence

from .core import ATGraph, EdgePair
from .rotation import ExtendedRotationSystem, normalize_cycle

Point = tuple[float, float]


def circle_points(n: int, jitter: float = 0.23) -> list[Point]:
    """Points on the unit circle in id order, with deterministic angular jitter
    so that no three chords are concurrent."""
    pts = []
    for i in range(n):
        t = 2 * math.pi * (i + jitter * math.sin(1.7 * i + 0.3)) / n
        pts.append((math.cos(t), math.sin(t)))
    return pts


def _cross(o: Point, a: Point, b: Point) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def segment_crossing(p1: Point, p2: Point, p3: Point, p4: Point):
    """Parameter along ``p1p2`` and point of a proper crossing, else None."""
    d1, d2 = _cross(p3, p4, p1), _cross(p3, p4, p2)
    d3, d4 = _cross(p1, p2, p3), _cross(p1, p2, p4)
    eps = 1e-12
    if min(abs(d1), abs(d2), abs(d3), abs(d4)) < eps:
        raise ValueError("degenerate point configuration")
    if (d1 > 0) == (d2 > 0) or (d3 > 0) == (d4 > 0):
        return None
    t = d1 / (d1 - d2)
    return t, (p1[0] + t * (p2[0] - p1[0]), p1[1] + t * (p2[1] - p1[1]))


def _clockwise(center: Point, labeled: Sequence[tuple[int, Point]]) -> tuple[int, ...]:
    # clockwise = decreasing polar angle
    order = sorted(labeled, key=lambda lp: -math.atan2(lp[1][1] - center[1], lp[1][0] - center[0]))
    return normalize_cycle([label for label, _ in order])


def straight_line_ers(points: Sequence[Point]) -> ExtendedRotationSystem:
    n = len(points)
    rs = tuple(_clockwise(points[v], [(u, points[u]) for u in range(n) if u != v]) for v in range(n))
    crossings: set[EdgePair] = set()
    rotations = {}
    along: dict[tuple[int, int], list[tuple[float, tuple[int, int]]]] = {}
    for (a, b), (c, d) in itertools.combinations(itertools.combinations(range(n), 2), 2):
        if len({a, b, c, d}) < 4:
            continue
        hit = segment_crossing(points[a], points[b], points[c], points[d])
        if hit is None:
            continue
        t, x = hit
        s, _ = segment_crossing(points[c], points[d], points[a], points[b])
        p = ((a, b), (c, d))
        crossings.add(p)
        rotations[p] = _clockwise(x, [(w, points[w]) for w in (a, b, c, d)])
        along.setdefault((a, b), []).append((t, (c, d)))
        along.setdefault((c, d), []).append((s, (a, b)))
    orders = {e: tuple(f for _, f in sorted(lst)) for e, lst in along.items()}
    return ExtendedRotationSystem(rs, frozenset(crossings), rotations, orders)


def convex_ers(n: int) -> ExtendedRotationSystem:
    return straight_line_ers(circle_points(n))


def convex_atgraph(n: int) -> ATGraph:
    return ATGraph(n, convex_ers(n).crossings)


def mirror(points: Sequence[Point]) -> list[Point]:
    return [(-x, y) for x, y in points]


# K4 configurations: four points in convex position, and a triangle with an interior point.
K4_CONVEX: list[Point] = [(1.0, 0.1), (0.05, 1.0), (-1.0, -0.05), (0.1, -1.0)]
K4_TRIANGLE: list[Point] = [(0.0, 0.0), (4.0, 0.2), (1.9, 3.5), (2.0, 1.1)]
