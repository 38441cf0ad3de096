"""Deterministic instance generators: polygons, random point sets, random
triangulations and plane trees (seeded), used by the CLI and the test suite."""
from __future__ import annotations

import math
import random

from .errors import InternalInvariantError, PreconditionError
from .geometry import PointSet, is_convex_position, segments_properly_cross
from .triangulation import Edge, Triangulation, edge_key, flip, is_flippable, triangulate
from .layered import LAYER1, LayeredGraph


def _try_pointset(coords: list[tuple[int, int]]) -> PointSet | None:
    try:
        return PointSet(coords)
    except PreconditionError:
        return None


def regular_polygon_points(n: int, radius: int = 10 ** 6) -> PointSet:
    """n points in convex position on a rounded circle, validated; the radius
    is doubled until rounding artifacts disappear."""
    if n < 3:
        raise PreconditionError("polygon needs n >= 3")
    r = radius
    for _ in range(20):
        coords = []
        for j in range(n):
            # fixed angular offset avoids axis-aligned rounding collisions
            a = 2.0 * math.pi * (j + 0.37) / n
            coords.append((round(r * math.cos(a)), round(r * math.sin(a))))
        ps = _try_pointset(coords)
        if ps is not None and is_convex_position(ps):
            return ps
        r *= 2
    raise InternalInvariantError(f"no valid regular polygon found for n={n}")


def random_general_position(n: int, seed: int, span: int = 10 ** 4) -> PointSet:
    """n random points in general position, deterministic per seed."""
    rng = random.Random(seed)
    for _ in range(200):
        coords = {(rng.randint(-span, span), rng.randint(-span, span)) for _ in range(n)}
        while len(coords) < n:
            coords.add((rng.randint(-span, span), rng.randint(-span, span)))
        ps = _try_pointset(sorted(coords))
        if ps is not None:
            return ps
        span += span // 2 + 1
    raise InternalInvariantError("could not sample a general-position set")


def random_triangulation(n: int, seed: int, flips: int | None = None) -> Triangulation:
    """Random triangulation: deterministic scan triangulation diversified by a
    seeded walk in the flip graph."""
    ps = random_general_position(n, seed)
    t = triangulate(ps)
    rng = random.Random(seed ^ 0x5EED)
    for _ in range(flips if flips is not None else 3 * n):
        candidates = sorted(e for e in t.edges if is_flippable(t, e))
        if not candidates:
            break
        t = flip(t, candidates[rng.randrange(len(candidates))])
    return t


def random_plane_tree(n: int, seed: int) -> LayeredGraph:
    """Random noncrossing spanning tree: each point links to the nearest
    visible earlier point."""
    if n < 2:
        raise PreconditionError("tree needs n >= 2")
    ps = random_general_position(n, seed)
    rng = random.Random(seed ^ 0x7EEE)
    order = list(range(n))
    rng.shuffle(order)
    edges: list[Edge] = []
    placed = [order[0]]
    for v in order[1:]:
        pv = ps[v]
        ranked = sorted(placed, key=lambda u: ((ps[u].x - pv.x) ** 2 + (ps[u].y - pv.y) ** 2, u))
        for u in ranked:
            pu = ps[u]
            if not any(segments_properly_cross(pv, pu, ps[a], ps[b]) for (a, b) in edges):
                edges.append(edge_key(u, v))
                break
        else:
            raise InternalInvariantError("no visible vertex for tree growth")
        placed.append(v)
    return LayeredGraph(ps, {e: LAYER1 for e in edges})


def generate_wheel(n: int) -> Triangulation:
    """Wheel: n - 1 points in convex position plus an interior center joined
    to all of them."""
    if n < 4:
        raise PreconditionError("wheel needs n >= 4")
    m = n - 1
    base = regular_polygon_points(m)
    for cx, cy in ((0, 0), (1, 2), (2, 1), (3, 5), (5, 3), (7, 11)):
        ps = _try_pointset([p.coords() for p in base.points] + [(cx, cy)])
        if ps is None or len(ps.hull()) != m:
            continue
        hull = ps.hull()
        center = n - 1
        tris = [(center, hull[i], hull[(i + 1) % m]) for i in range(m)]
        return Triangulation(ps, tris)
    raise InternalInvariantError("could not place wheel center")


def generate_fan(n: int) -> Triangulation:
    """Fan: convex polygon with one hull vertex joined to all others."""
    if n < 3:
        raise PreconditionError("fan needs n >= 3")
    ps = regular_polygon_points(n)
    hull = ps.hull()
    c = hull[0]
    tris = [(c, hull[i], hull[i + 1]) for i in range(1, n - 1)]
    return Triangulation(ps, tris)


def _strip_triangles(top: list[int], bottom: list[int], xs: dict[int, int]) -> list[tuple[int, int, int]]:
    """Triangulate the x-monotone strip between two disjoint chains; the
    implied side edges are (top[0], bottom[0]) and (top[-1], bottom[-1])."""
    tris = []
    i, j = 0, 0
    while i < len(top) - 1 or j < len(bottom) - 1:
        if j == len(bottom) - 1 or (i < len(top) - 1 and xs[top[i + 1]] <= xs[bottom[j + 1]]):
            tris.append((top[i], top[i + 1], bottom[j]))
            i += 1
        else:
            tris.append((top[i], bottom[j], bottom[j + 1]))
            j += 1
    return tris


def generate_no5conn_counterexample(k: int) -> Triangulation:
    """Two-cluster 4-connected triangulation on 4k + 4 points.

    Top cluster: 4k - 3 convex points (lower chain x_1..x_2k on a parabola,
    upper chain of 2k - 3 cap points, each above one lower-chain gap).  Bottom
    cluster: 7 points far below, placed so that every segment from an upper
    chain point to the bottom cluster crosses its lower-chain edge; the offset
    is found by doubling search and the crossings are asserted.
    """
    if k < 2:
        raise PreconditionError("k >= 2 required")
    m = 2 * k
    p = [2 * j - (m + 1) for j in range(1, m + 1)]          # odd, symmetric
    q = [(p[i] + p[i + 1]) // 2 for i in range(1, m - 2)]   # gap midpoints, 2k-3 of them

    def build(height: int, depth: int) -> Triangulation | None:
        coords: list[tuple[int, int]] = []
        coords += [(8 * v, v * v) for v in p]                       # x_1..x_2k
        coords += [(8 * v, height - v * v) for v in q]              # y_1..y_{2k-3}
        coords += [(-8, -depth), (0, -depth - 8), (8, -depth)]      # c_1, c_2, c_3
        coords += [(-6, -depth + 8), (-2, -depth + 6),
                   (2, -depth + 6), (6, -depth + 8)]                # uL, z1, z2, uR
        ps = _try_pointset(coords)
        if ps is None:
            return None
        x = list(range(m))
        y = [m + i for i in range(m - 3)]
        c1, c2, c3 = 2 * m - 3, 2 * m - 2, 2 * m - 1
        ul, z1, z2, ur = 2 * m, 2 * m + 1, 2 * m + 2, 2 * m + 3
        expected_hull = {x[0], x[-1], c1, c2, c3, *y}
        if set(ps.hull()) != expected_hull:
            return None
        # required crossing property: y_i to any bottom point crosses x_{i+1} x_{i+2}
        bottom = [c1, c2, c3, ul, z1, z2, ur]
        for i in range(m - 3):
            a, b = ps[x[i + 1]], ps[x[i + 2]]
            for w in bottom:
                if not segments_properly_cross(ps[y[i]], ps[w], a, b):
                    return None
        tris: list[tuple[int, int, int]] = []
        tris.append((x[0], x[1], y[0]))
        tris += [(y[i], x[i + 1], x[i + 2]) for i in range(m - 3)]
        tris += [(y[i], y[i + 1], x[i + 2]) for i in range(m - 4)]
        tris.append((y[-1], x[-2], x[-1]))
        tris += _strip_triangles(x, [ul, z1, z2, ur],
                                 {v: ps[v].x for v in range(len(ps))})
        tris += [(x[0], c1, ul), (ul, c1, z1), (z1, c1, c2), (z1, c2, z2),
                 (z2, c2, c3), (z2, c3, ur), (ur, c3, x[-1])]
        try:
            return Triangulation(ps, tris)
        except InternalInvariantError:
            return None

    depth = 256
    for _ in range(30):
        height = 64
        for _ in range(20):
            t = build(height, depth)
            if t is not None:
                return t
            height *= 2
        depth *= 2
    raise InternalInvariantError("no valid two-cluster construction found")
