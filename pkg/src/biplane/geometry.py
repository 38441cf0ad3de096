"""Exact planar geometric primitives on integer coordinates.

All predicates are evaluated with exact integer arithmetic (Python ints never
overflow); COORD_LIMIT bounds coordinates anyway so that file formats stay
portable and accidental floats are rejected early.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cmp_to_key
from typing import Iterable, Sequence

from .errors import PreconditionError

#: Coordinates must satisfy |x|, |y| <= COORD_LIMIT.  At this bound every
#: 3-point orientation determinant and every doubled polygon area used in the
#: library is below 2**66, exactly representable by Python integers.
COORD_LIMIT = 2 ** 30


class Orientation(Enum):
    CCW = 1
    COLLINEAR = 0
    CW = -1


@dataclass(frozen=True)
class Point:
    """Immutable planar point with integer coordinates and a vertex id.

    The id is stable within the PointSet that owns the point (-1 for free
    points that are not part of a set yet).
    """

    x: int
    y: int
    id: int = -1

    def coords(self) -> tuple[int, int]:
        return (self.x, self.y)

    def __repr__(self) -> str:
        return f"Point({self.x}, {self.y}, id={self.id})"


def cross(o: Point, a: Point, b: Point) -> int:
    """Exact cross product (a - o) x (b - o); twice the signed triangle area."""
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def orientation(p: Point, q: Point, r: Point) -> Orientation:
    """Sign of the exact 3x3 orientation determinant of (p, q, r)."""
    d = cross(p, q, r)
    if d > 0:
        return Orientation.CCW
    if d < 0:
        return Orientation.CW
    return Orientation.COLLINEAR


def segments_properly_cross(a: Point, b: Point, c: Point, d: Point) -> bool:
    """True iff open segments ab and cd share exactly one interior point.

    Segments that share an endpoint never properly cross (general position
    rules out overlap along a line).
    """
    if a.coords() in (c.coords(), d.coords()) or b.coords() in (c.coords(), d.coords()):
        return False
    d1 = cross(a, b, c)
    d2 = cross(a, b, d)
    d3 = cross(c, d, a)
    d4 = cross(c, d, b)
    return (d1 > 0) != (d2 > 0) and d1 != 0 and d2 != 0 \
        and (d3 > 0) != (d4 > 0) and d3 != 0 and d4 != 0


class PointSet:
    """Ordered, validated point set: distinct points, no three collinear.

    Vertex ids are assigned by position.  Immutable after construction.
    """

    def __init__(self, points: Sequence[Point] | Sequence[tuple[int, int]]):
        pts: list[Point] = []
        for i, p in enumerate(points):
            if isinstance(p, Point):
                x, y = p.x, p.y
            else:
                x, y = p
            if not isinstance(x, int) or not isinstance(y, int):
                raise PreconditionError(f"point {i}: coordinates must be integers, got ({x!r}, {y!r})")
            if abs(x) > COORD_LIMIT or abs(y) > COORD_LIMIT:
                raise PreconditionError(f"point {i}: coordinate exceeds COORD_LIMIT={COORD_LIMIT}")
            pts.append(Point(x, y, i))
        seen: set[tuple[int, int]] = set()
        for p in pts:
            if p.coords() in seen:
                raise PreconditionError(f"duplicate point {p.coords()}")
            seen.add(p.coords())
        n = len(pts)
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    if cross(pts[i], pts[j], pts[k]) == 0:
                        raise PreconditionError(
                            f"points {i}, {j}, {k} are collinear (general position required)")
        self.points: tuple[Point, ...] = tuple(pts)
        self._hull: tuple[int, ...] | None = None

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]

    def hull(self) -> tuple[int, ...]:
        """Counterclockwise convex hull as a tuple of vertex ids (cached)."""
        if self._hull is None:
            self._hull = tuple(convex_hull(self))
        return self._hull

    def hull_set(self) -> frozenset[int]:
        return frozenset(self.hull())

    def interior_ids(self) -> tuple[int, ...]:
        h = self.hull_set()
        return tuple(p.id for p in self.points if p.id not in h)

    def subset(self, ids: Iterable[int]) -> "PointSet":
        """New PointSet of the given vertices, kept in original order."""
        keep = sorted(set(ids))
        return PointSet([self.points[i].coords() for i in keep])


def convex_hull(ps: PointSet | Sequence[Point]) -> list[int]:
    """Counterclockwise hull vertex ids via Andrew's monotone chain."""
    pts = list(ps.points if isinstance(ps, PointSet) else ps)
    if len(pts) < 3:
        raise PreconditionError("convex hull needs at least 3 points")
    order = sorted(pts, key=lambda p: (p.x, p.y))

    def half(seq: list[Point]) -> list[Point]:
        out: list[Point] = []
        for p in seq:
            while len(out) >= 2 and cross(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(order)
    upper = half(order[::-1])
    return [p.id for p in lower[:-1] + upper[:-1]]


def is_convex_position(ps: PointSet) -> bool:
    """True iff every point is a hull vertex."""
    return len(ps.hull()) == len(ps)


def polygon_doubled_area(pts: Sequence[Point]) -> int:
    """Exact doubled (shoelace) area; positive for counterclockwise order."""
    total = 0
    for a, b in zip(pts, pts[1:] + list(pts[:1])):
        total += a.x * b.y - b.x * a.y
    return total


def point_strictly_inside_hull(ps: PointSet, s: Point) -> bool:
    h = ps.hull()
    pts = ps.points
    return all(cross(pts[h[i]], pts[h[(i + 1) % len(h)]], s) > 0 for i in range(len(h)))


def point_in_triangle(a: Point, b: Point, c: Point, s: Point) -> bool:
    """Strict interior test (general position: boundary cases cannot occur
    for distinct set members, but the test is strict regardless)."""
    d1, d2, d3 = cross(a, b, s), cross(b, c, s), cross(c, a, s)
    return (d1 > 0 and d2 > 0 and d3 > 0) or (d1 < 0 and d2 < 0 and d3 < 0)


def _hull_edge_index(ps: PointSet, edge: tuple[int, int]) -> int:
    h = ps.hull()
    u, v = edge
    for i in range(len(h)):
        a, b = h[i], h[(i + 1) % len(h)]
        if {a, b} == {u, v}:
            return i
    raise PreconditionError(f"({u}, {v}) is not a hull edge")


def point_sees_hull_edge(s: Point, ps: PointSet, edge: tuple[int, int]) -> bool:
    """True iff exterior point s sees hull edge (u, v): triangle s,u,v lies
    outside ch(ps), i.e. s is strictly on the outer side of the edge line."""
    if point_strictly_inside_hull(ps, s) or any(p.coords() == s.coords() for p in ps):
        raise PreconditionError("point must be strictly exterior to the hull")
    i = _hull_edge_index(ps, edge)
    h = ps.hull()
    a, b = ps[h[i]], ps[h[(i + 1) % len(h)]]
    return cross(a, b, s) < 0


def segment_sees_hull_edge(s: Point, t: Point, ps: PointSet, edge: tuple[int, int]) -> bool:
    """Both endpoints of st see the hull edge."""
    return point_sees_hull_edge(s, ps, edge) and point_sees_hull_edge(t, ps, edge)


def visible_hull_edges(s: Point, ps: PointSet) -> list[int]:
    """Indices i of hull edges (hull[i], hull[i+1]) visible from exterior s."""
    h = ps.hull()
    return [i for i in range(len(h))
            if cross(ps[h[i]], ps[h[(i + 1) % len(h)]], s) < 0]


def _angular_ccw_key(anchor: Point):
    """Sort key for points strictly lex-greater than anchor: CCW starting
    just above the downward vertical.  Exact, comparison based."""

    def cmp(p: Point, q: Point) -> int:
        c = cross(anchor, p, q)
        if c > 0:
            return -1
        if c < 0:
            return 1
        raise PreconditionError("collinear points in angular sort")

    return cmp_to_key(cmp)


def max_convex_subset_indices(ps: PointSet) -> tuple[int, ...]:
    """Ids of a maximum-cardinality convex-position subset.

    Ties are broken by largest doubled hull area, then by lexicographically
    smallest sorted id tuple, which makes the result deterministic.  Dynamic
    program over directed chain edges, run once per choice of the
    lexicographically smallest member of the subset.
    """
    if len(ps) < 3:
        raise PreconditionError("need at least 3 points")
    pts = ps.points
    lex = sorted(pts, key=lambda p: (p.x, p.y))
    best: tuple[int, int, tuple[int, ...]] | None = None  # (size, area2, ids) to maximize

    def better(cand: tuple[int, int, tuple[int, ...]]) -> bool:
        if best is None:
            return True
        if cand[0] != best[0]:
            return cand[0] > best[0]
        if cand[1] != best[1]:
            return cand[1] > best[1]
        return cand[2] < best[2]

    for ai, anchor in enumerate(lex):
        cand_pts = sorted(lex[ai + 1:], key=_angular_ccw_key(anchor))
        m = len(cand_pts)
        # state[(u, v)] = best chain anchor -> ... -> u -> v with convex left
        # turns at every interior vertex; u == -1 stands for the anchor.
        # Value (size, doubled area, sorted id tuple); extensions add the same
        # increments to every chain ending at the same edge, so keeping a
        # single dominating value per edge is sound.
        state: dict[tuple[int, int], tuple[int, int, tuple[int, ...]]] = {
            (-1, vi): (2, 0, tuple(sorted((anchor.id, cand_pts[vi].id))))
            for vi in range(m)
        }
        for vi in range(m):
            v = cand_pts[vi]
            for ui in [-1] + list(range(vi)):
                st = state.get((ui, vi))
                if st is None:
                    continue
                size, area, ids = st
                prev = anchor if ui == -1 else cand_pts[ui]
                for wi in range(vi + 1, m):
                    w = cand_pts[wi]
                    if cross(prev, v, w) > 0:
                        nxt = (size + 1, area + cross(anchor, v, w),
                               tuple(sorted(ids + (w.id,))))
                        cur = state.get((vi, wi))
                        if cur is None or nxt[0] > cur[0] or (
                                nxt[0] == cur[0] and (nxt[1] > cur[1] or (
                                nxt[1] == cur[1] and nxt[2] < cur[2]))):
                            state[(vi, wi)] = nxt
        # a chain closes into a polygon when the turn at its last vertex
        # toward the anchor is convex; the turn at the anchor itself is
        # automatic because candidates span less than a half turn.
        for (ui, vi), (size, area, ids) in state.items():
            if ui >= 0 and cross(cand_pts[ui], cand_pts[vi], anchor) > 0:
                cand = (size, area, ids)
                if better(cand):
                    best = cand
    if best is None or best[0] < 3:
        # every 3 general-position points are in convex position
        raise PreconditionError("no convex subset found")  # pragma: no cover
    return best[2]


def max_convex_subset(ps: PointSet) -> PointSet:
    """Maximum convex-position subset as a fresh PointSet (original order)."""
    return ps.subset(max_convex_subset_indices(ps))
