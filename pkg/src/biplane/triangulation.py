"""Plane triangulations with face adjacency, edge flips and classification."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .errors import InternalInvariantError, PreconditionError
from .geometry import (Point, PointSet, cross, point_in_triangle,
                       segments_properly_cross)

Edge = tuple[int, int]


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def triangle_key(a: int, b: int, c: int) -> tuple[int, int, int]:
    return tuple(sorted((a, b, c)))  # type: ignore[return-value]


class TriangulationClass(Enum):
    WHEEL = "wheel"
    FAN = "fan"
    OTHER = "other"


@dataclass(frozen=True)
class Quad:
    """Quadrilateral formed by the two triangles adjacent to a non-hull edge.

    cycle lists the four vertices in boundary order (u, a, v, b) where (u, v)
    is the shared edge and a, b are the two opposite vertices.
    """

    cycle: tuple[int, int, int, int]

    @property
    def diagonal(self) -> Edge:
        return edge_key(self.cycle[0], self.cycle[2])

    @property
    def opposite(self) -> Edge:
        return edge_key(self.cycle[1], self.cycle[3])


class Triangulation:
    """Triangulation of a PointSet, stored as its set of triangle faces.

    Every bounded face is an empty triangle; construction validates the Euler
    edge count 3n - 3 - h, pairwise noncrossing edges and face emptiness.
    """

    def __init__(self, ps: PointSet, triangles: Iterable[Sequence[int]], validate: bool = True):
        self.ps = ps
        self.triangles: frozenset[tuple[int, int, int]] = frozenset(
            triangle_key(*t) for t in triangles)
        edges: set[Edge] = set()
        opposites: dict[Edge, list[int]] = {}
        for (a, b, c) in self.triangles:
            for e, w in ((edge_key(a, b), c), (edge_key(b, c), a), (edge_key(a, c), b)):
                edges.add(e)
                opposites.setdefault(e, []).append(w)
        self.edges: frozenset[Edge] = frozenset(edges)
        self._opposites = {e: tuple(sorted(ws)) for e, ws in opposites.items()}
        self.hull: tuple[int, ...] = ps.hull()
        adj: dict[int, set[int]] = {p.id: set() for p in ps}
        for (u, v) in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        self._adj = adj
        if validate:
            self._validate()

    # ------------------------------------------------------------------
    def _validate(self) -> None:
        ps, n, h = self.ps, len(self.ps), len(self.hull)
        if n < 3:
            raise PreconditionError("triangulation needs at least 3 points")
        expected = 3 * n - 3 - h
        if len(self.edges) != expected:
            raise InternalInvariantError(
                f"edge count {len(self.edges)} != 3n-3-h = {expected}")
        hull_edges = self.hull_edges()
        for e, ws in self._opposites.items():
            want = 1 if e in hull_edges else 2
            if len(ws) != want:
                raise InternalInvariantError(f"edge {e} lies in {len(ws)} triangles, expected {want}")
        if not hull_edges <= self.edges:
            raise InternalInvariantError("hull edge missing from triangulation")
        for (a, b, c) in self.triangles:
            pa, pb, pc = ps[a], ps[b], ps[c]
            for p in ps:
                if p.id not in (a, b, c) and point_in_triangle(pa, pb, pc, p):
                    raise InternalInvariantError(f"triangle {(a, b, c)} contains vertex {p.id}")
        es = sorted(self.edges)
        for i in range(len(es)):
            u1, v1 = es[i]
            for j in range(i + 1, len(es)):
                u2, v2 = es[j]
                if segments_properly_cross(ps[u1], ps[v1], ps[u2], ps[v2]):
                    raise InternalInvariantError(f"edges {es[i]} and {es[j]} cross")

    # ------------------------------------------------------------------
    def hull_edges(self) -> frozenset[Edge]:
        h = self.hull
        return frozenset(edge_key(h[i], h[(i + 1) % len(h)]) for i in range(len(h)))

    def neighbors(self, v: int) -> frozenset[int]:
        return frozenset(self._adj[v])

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def opposites(self, e: Edge) -> tuple[int, ...]:
        return self._opposites[edge_key(*e)]

    def faces_at(self, v: int) -> list[tuple[int, int, int]]:
        return [t for t in self.triangles if v in t]

    def locate(self, s: Point) -> tuple[int, int, int]:
        """Triangle strictly containing s (linear scan, desk scale)."""
        for (a, b, c) in sorted(self.triangles):
            if point_in_triangle(self.ps[a], self.ps[b], self.ps[c], s):
                return (a, b, c)
        raise PreconditionError(f"point {s.coords()} lies in no triangle")

    def link_cycle(self, v: int) -> list[int]:
        """Neighbors of interior vertex v in counterclockwise angular order."""
        ps = self.ps
        center = ps[v]
        nbrs = sorted(self._adj[v])
        if not nbrs:
            raise PreconditionError(f"vertex {v} is isolated")

        def half(p: Point) -> int:
            dx, dy = p.x - center.x, p.y - center.y
            return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1

        import functools

        def cmp(i: int, j: int) -> int:
            pi, pj = ps[i], ps[j]
            hi, hj = half(pi), half(pj)
            if hi != hj:
                return hi - hj
            c = cross(center, pi, pj)
            return -1 if c > 0 else 1

        return sorted(nbrs, key=functools.cmp_to_key(cmp))

    def link_is_cycle(self, v: int) -> bool:
        """True iff the neighbors of v induce exactly their angular cycle
        (all ring edges present, no chords between nonconsecutive ones)."""
        ring = self.link_cycle(v)
        k = len(ring)
        if k < 3:
            return False
        ring_edges = {edge_key(ring[i], ring[(i + 1) % k]) for i in range(k)}
        if not ring_edges <= self.edges:
            return False
        induced = {edge_key(a, b) for i, a in enumerate(ring) for b in ring[i + 1:]
                   if edge_key(a, b) in self.edges}
        return induced == ring_edges


def triangulate(ps: PointSet) -> Triangulation:
    """Deterministic triangulation by incremental lexicographic insertion.

    Each point in (x, y) order lies outside the hull of its predecessors, so
    it is joined to every hull edge it sees; the hull is repaired in place.
    """
    if len(ps) < 3:
        raise PreconditionError("need at least 3 points")
    order = sorted(ps.points, key=lambda p: (p.x, p.y))
    tris: list[tuple[int, int, int]] = []
    a, b, c = order[0], order[1], order[2]
    tris.append(triangle_key(a.id, b.id, c.id))
    if cross(a, b, c) > 0:
        hull = [a.id, b.id, c.id]
    else:
        hull = [a.id, c.id, b.id]
    for p in order[3:]:
        m = len(hull)
        visible = [i for i in range(m)
                   if cross(ps[hull[i]], ps[hull[(i + 1) % m]], p) < 0]
        if not visible:
            raise InternalInvariantError("new lexicographic point sees no hull edge")
        for i in visible:
            tris.append(triangle_key(hull[i], hull[(i + 1) % m], p.id))
        vis = set(visible)
        # the visible edges form one contiguous arc; splice p in its place
        start = next(i for i in range(m) if i in vis and (i - 1) % m not in vis)
        run = len(visible)
        new_hull = [hull[start]] + [p.id]
        i = (start + run) % m
        while i != start:
            new_hull.append(hull[i])
            i = (i + 1) % m
        hull = new_hull
    return Triangulation(ps, tris)


def quad_of_edge(t: Triangulation, e: Edge) -> Quad:
    """Quadrilateral of the two triangles adjacent to non-hull edge e."""
    e = edge_key(*e)
    if e not in t.edges:
        raise PreconditionError(f"{e} is not an edge")
    if e in t.hull_edges():
        raise PreconditionError(f"{e} is a hull edge; its quadrilateral is undefined")
    a, b = t.opposites(e)
    u, v = e
    return Quad((u, a, v, b))


def is_flippable(t: Triangulation, e: Edge) -> bool:
    """A non-hull edge is flippable iff its quadrilateral is convex, i.e. the
    opposite diagonal properly crosses it."""
    e = edge_key(*e)
    if e not in t.edges or e in t.hull_edges():
        return False
    a, b = t.opposites(e)
    u, v = e
    return segments_properly_cross(t.ps[u], t.ps[v], t.ps[a], t.ps[b])


def flip(t: Triangulation, e: Edge) -> Triangulation:
    """Replace e by the opposite diagonal of its quadrilateral."""
    e = edge_key(*e)
    if not is_flippable(t, e):
        raise PreconditionError(f"edge {e} is not flippable")
    a, b = t.opposites(e)
    u, v = e
    tris = set(t.triangles)
    tris.discard(triangle_key(u, v, a))
    tris.discard(triangle_key(u, v, b))
    tris.add(triangle_key(a, b, u))
    tris.add(triangle_key(a, b, v))
    return Triangulation(t.ps, tris)


def classify(t: Triangulation) -> TriangulationClass:
    """Exact wheel / fan / other classification (n >= 4)."""
    n = len(t.ps)
    if n < 4:
        raise PreconditionError("classification requires n >= 4")
    h = len(t.hull)
    if h == n - 1:
        center = next(i for i in range(n) if i not in set(t.hull))
        if t.degree(center) == n - 1:
            return TriangulationClass.WHEEL
    if h == n and any(t.degree(v) == n - 1 for v in range(n)):
        return TriangulationClass.FAN
    return TriangulationClass.OTHER


def complete_to_triangulation(ps: PointSet, required: Iterable[Edge] = (),
                              avoid: Iterable[Edge] = ()) -> Triangulation:
    """Greedy completion of a crossing-free edge set to a full triangulation.

    Candidates outside `required` are tried with edges in `avoid` last, then
    by squared length, then by id order, which makes the result deterministic.
    """
    req = {edge_key(*e) for e in required}
    avoid_set = {edge_key(*e) for e in avoid}
    pts = ps.points
    chosen: list[Edge] = sorted(req)
    for i, e1 in enumerate(chosen):
        for e2 in chosen[i + 1:]:
            if segments_properly_cross(pts[e1[0]], pts[e1[1]], pts[e2[0]], pts[e2[1]]):
                raise PreconditionError(f"required edges {e1} and {e2} cross")
    n = len(ps)
    target = 3 * n - 3 - len(ps.hull())

    def sqlen(e: Edge) -> int:
        p, q = pts[e[0]], pts[e[1]]
        return (p.x - q.x) ** 2 + (p.y - q.y) ** 2

    candidates = [edge_key(u, v) for u in range(n) for v in range(u + 1, n)
                  if edge_key(u, v) not in req]
    candidates.sort(key=lambda e: (e in avoid_set, sqlen(e), e))
    for e in candidates:
        if len(chosen) == target:
            break
        eu, ev = pts[e[0]], pts[e[1]]
        if any(segments_properly_cross(eu, ev, pts[c[0]], pts[c[1]]) for c in chosen):
            continue
        chosen.append(e)
    if len(chosen) != target:
        raise InternalInvariantError("greedy completion failed to reach a triangulation")
    return triangulation_from_edges(ps, chosen)


def triangulation_from_edges(ps: PointSet, edges: Iterable[Edge]) -> Triangulation:
    """Rebuild the face set of a maximal plane edge set.

    In a full triangulation the bounded faces are exactly the empty 3-cycles.
    """
    es = {edge_key(*e) for e in edges}
    adj: dict[int, set[int]] = {p.id: set() for p in ps}
    for (u, v) in es:
        adj[u].add(v)
        adj[v].add(u)
    tris = []
    n = len(ps)
    for a in range(n):
        for b in sorted(adj[a]):
            if b < a:
                continue
            for c in sorted(adj[a] & adj[b]):
                if c < b:
                    continue
                pa, pb, pc = ps[a], ps[b], ps[c]
                if not any(point_in_triangle(pa, pb, pc, p) for p in ps
                           if p.id not in (a, b, c)):
                    tris.append((a, b, c))
    return Triangulation(ps, tris)
