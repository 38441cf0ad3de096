"""Augmenting a triangulation with a plane graph to reach 4-connectivity.

Wheels and fans are provably non-augmentable and rejected.  3-connected
inputs get a star or the bichord-star construction; inputs with chords are
handled by induction over leaf cells of the chord decomposition, with a
double-flip reinsertion for size-3 leaf cells and a bisector-split attachment
for larger ones.
"""
from __future__ import annotations

import functools
from typing import Sequence

from .connectivity import check_4conn_augmentation, cut_structures, vertex_connectivity
from .errors import ImpossibleError, InternalInvariantError, PreconditionError
from .geometry import Point, PointSet, cross, polygon_doubled_area, segments_properly_cross
from .triangulation import (Edge, Triangulation, TriangulationClass, classify,
                            complete_to_triangulation, edge_key, flip,
                            is_flippable, triangle_key)


def flip_pair_helper(t: Triangulation, u: int, v: int, w: int, v2: int) -> tuple[Triangulation, list[tuple[Edge, Edge]]]:
    """Flip edge uw, then whichever of u-v2, v2-w became flippable.

    Requires u, v, w consecutive hull vertices with empty triangles (u,v,w)
    and (u,v2,w) present; uw is then always flippable, and after replacing it
    by v-v2 one of the two candidate edges is flippable (u-v2 preferred when
    both are).  Returns the new triangulation and both (removed, added) pairs.
    """
    if len(t.ps) < 5:
        raise PreconditionError("the double flip requires n >= 5")
    hull = list(t.hull)
    h = len(hull)
    iv = hull.index(v) if v in hull else -1
    if iv < 0 or {hull[(iv - 1) % h], hull[(iv + 1) % h]} != {u, w}:
        raise PreconditionError("u, v, w must be consecutive hull vertices")
    if triangle_key(u, v, w) not in t.triangles or triangle_key(u, v2, w) not in t.triangles:
        raise PreconditionError("triangles (u,v,w) and (u,v2,w) must be present")
    e_uw = edge_key(u, w)
    if not is_flippable(t, e_uw):
        raise InternalInvariantError("edge uw is not flippable")
    t1 = flip(t, e_uw)
    first = (e_uw, edge_key(v, v2))
    for cand in (edge_key(u, v2), edge_key(v2, w)):
        if is_flippable(t1, cand):
            a, b = t1.opposites(cand)
            t2 = flip(t1, cand)
            return t2, [first, (cand, edge_key(a, b))]
    raise InternalInvariantError("neither u-v2 nor v2-w is flippable after the first flip")


def _chords_of(t: Triangulation) -> list[Edge]:
    hullset = set(t.hull)
    hull_edges = t.hull_edges()
    return sorted(e for e in t.edges
                  if e[0] in hullset and e[1] in hullset and e not in hull_edges)


def _non_edges(t: Triangulation) -> list[Edge]:
    n = len(t.ps)
    return [edge_key(u, v) for u in range(n) for v in range(u + 1, n)
            if edge_key(u, v) not in t.edges]


def _pairwise_noncrossing(ps: PointSet, edges: Sequence[Edge]) -> bool:
    edges = sorted(edges)
    for i in range(len(edges)):
        a, b = edges[i]
        for j in range(i + 1, len(edges)):
            c, d = edges[j]
            if segments_properly_cross(ps[a], ps[b], ps[c], ps[d]):
                return False
    return True


# ----------------------------------------------------------------------
# Exact angle comparisons (for the bisector splits)
# ----------------------------------------------------------------------

def _angle_parts(center: Point, frm: Point, to: Point) -> tuple[int, int, int, int]:
    """(half, dot, |u|^2, |v|^2) describing the ccw angle frm->to at center;
    half 0 means the angle lies in (0, pi), half 1 in (pi, 2 pi)."""
    ux, uy = frm.x - center.x, frm.y - center.y
    vx, vy = to.x - center.x, to.y - center.y
    cr = ux * vy - uy * vx
    if cr == 0:
        raise InternalInvariantError("collinear directions in angle comparison")
    half = 0 if cr > 0 else 1
    return (half, ux * vx + uy * vy, ux * ux + uy * uy, vx * vx + vy * vy)


def _angle_cmp(center: Point, a: tuple[Point, Point], b: tuple[Point, Point]) -> int:
    """Exact three-way comparison of two ccw angles around center."""
    ha, dta, nua, nva = _angle_parts(center, *a)
    hb, dtb, nub, nvb = _angle_parts(center, *b)
    if ha != hb:
        return -1 if ha < hb else 1
    sa = (dta > 0) - (dta < 0)
    sb = (dtb > 0) - (dtb < 0)
    if sa != sb:
        cos_cmp = 1 if sa > sb else -1
    else:
        left = dta * dta * nub * nvb
        right = dtb * dtb * nua * nva
        if left == right:
            cos_cmp = 0
        elif (left > right) == (sa >= 0):
            cos_cmp = 1
        else:
            cos_cmp = -1
    if cos_cmp == 0:
        return 0
    if ha == 0:
        return -1 if cos_cmp > 0 else 1  # bigger cosine, smaller angle
    return -1 if cos_cmp < 0 else 1


def _in_ccw_sweep(center: Point, a: Point, b: Point, q: Point) -> bool:
    """Is direction center->q strictly inside the ccw sweep from center->a to
    center->b?"""
    ca = cross(center, a, q)
    cb = cross(center, q, b)
    if cross(center, a, b) > 0:
        return ca > 0 and cb > 0
    return ca > 0 or cb > 0


def _closer_to_first_ray(center: Point, p1: Point, p2: Point, q: Point) -> bool:
    """For q inside one of the wedges bounded by rays center->p1, center->p2:
    is q's rotation distance from p1 at most its distance from p2 (the angle
    bisector side test; ties go to the p1 side)?"""
    if _in_ccw_sweep(center, p1, p2, q):
        return _angle_cmp(center, (p1, q), (q, p2)) <= 0
    if _in_ccw_sweep(center, p2, p1, q):
        return _angle_cmp(center, (q, p1), (p2, q)) <= 0
    raise InternalInvariantError("query direction coincides with a wedge boundary")


# ----------------------------------------------------------------------
# Case 1: 3-connected triangulations (no chords)
# ----------------------------------------------------------------------

def _augment_3connected(t: Triangulation) -> set[Edge]:
    n = len(t.ps)
    report = cut_structures(t)
    in_cut = {v for triple in report.cut_triples() for v in triple}
    free = [v for v in range(n) if v not in in_cut]
    if free:
        v = free[0]
        return {edge_key(v, u) for u in range(n) if u != v} - set(t.edges)
    if report.separating_triangles:
        raise InternalInvariantError("every-vertex-in-a-cut inputs cannot have separating triangles")
    hull = list(t.hull)
    hullset = set(hull)
    arms: dict[int, set[int]] = {}
    for b in report.bichords:
        if b.m in hullset:
            raise InternalInvariantError("hull-middle bichord in a chordless triangulation")
        arms.setdefault(b.m, set()).update((b.u, b.w))
    if not arms:
        raise InternalInvariantError("no bichords although every vertex is in a 3-cut")
    e0 = min(edge_key(hull[i], hull[(i + 1) % len(hull)]) for i in range(len(hull)))

    def sector_labels(center: int) -> tuple[int, list[int]]:
        """Area of the sector of `center` containing e0, plus the arm labels
        clockwise starting at the e0 sector's ccw boundary arm."""
        h = len(hull)
        arm_pos = sorted(hull.index(a) for a in arms[center])
        k = len(arm_pos)
        iu, iv = hull.index(e0[0]), hull.index(e0[1])
        for j in range(k):
            lo, hi = arm_pos[j], arm_pos[(j + 1) % k]
            span = [lo]
            pos = lo
            while pos != hi:
                pos = (pos + 1) % h
                span.append(pos)
            if iu in span and iv in span:
                pts = [t.ps[center]] + [t.ps[hull[p]] for p in span]
                area = abs(polygon_doubled_area(pts))
                labels = [hull[arm_pos[(j - i) % k]] for i in range(k)]
                return area, labels
        raise InternalInvariantError("hull edge lies in no sector")

    center = min(arms, key=lambda c: (-sector_labels(c)[0], c))
    _, labels = sector_labels(center)
    k = len(labels)
    if k < 4:
        raise InternalInvariantError(f"maximal sector star has only {k} arms")
    v2, vk1, vk = labels[1], labels[k - 2], labels[k - 1]
    interior = [x for x in range(n) if x not in hullset and x != center]
    if not interior:
        raise InternalInvariantError("no second interior vertex available")
    ps = t.ps
    last_bad: set[Edge] | None = None
    for v_prime in interior:
        new_edges: set[Edge] = {edge_key(v_prime, lab) for lab in labels[1:k - 1]}
        c, p2, pk1, pk = ps[v_prime], ps[v2], ps[vk1], ps[vk]
        for hv in hull:
            if hv in (v2, vk1):
                continue
            ok_side = (_in_ccw_sweep(c, p2, pk1, ps[hv]) == _in_ccw_sweep(c, p2, pk1, pk))
            if not ok_side:
                continue
            if _closer_to_first_ray(c, p2, pk1, ps[hv]):
                new_edges.add(edge_key(v2, hv))
            else:
                new_edges.add(edge_key(vk1, hv))
        new_edges -= set(t.edges)
        if _pairwise_noncrossing(ps, sorted(new_edges)):
            return new_edges
        last_bad = new_edges
    raise InternalInvariantError(
        f"no interior anchor yields a plane star construction (last tried {sorted(last_bad or ())})")


# ----------------------------------------------------------------------
# Case 2: triangulations with chords (induction over leaf cells)
# ----------------------------------------------------------------------

def _sub_triangulation(t: Triangulation, keep: list[int]) -> tuple[Triangulation, list[int]]:
    """Induced triangulation on the kept vertices; sub->parent id map."""
    keep = sorted(keep)
    to_sub = {old: new for new, old in enumerate(keep)}
    ps = t.ps.subset(keep)
    tris = [tuple(to_sub[x] for x in tri) for tri in t.triangles
            if all(x in to_sub for x in tri)]
    return Triangulation(ps, tris), keep


def _k5_base(t: Triangulation) -> set[Edge]:
    missing = _non_edges(t)
    if len(missing) != 2:
        raise InternalInvariantError("the 5-point base case must miss exactly 2 edges")
    return set(missing)


def _convex6_base(t: Triangulation) -> set[Edge]:
    """Try the (few) noncrossing 3-subsets of absent edges; the chord triangle
    and chord path patterns always admit one making the union 4-connected."""
    from itertools import combinations

    for trio in combinations(_non_edges(t), 3):
        if not _pairwise_noncrossing(t.ps, trio):
            continue
        if vertex_connectivity(6, set(t.edges) | set(trio)) >= 4:
            return set(trio)
    raise InternalInvariantError("no 3-edge completion found for the 6-point convex base")


def _two_interior_base(t: Triangulation) -> set[Edge]:
    """Six points, a unique chord, one interior point each side: two disjoint
    noncrossing edges across the chord."""
    chords = _chords_of(t)
    if len(chords) != 1:
        raise InternalInvariantError("the 6-point two-interior base needs a unique chord")
    chord = chords[0]
    ps = t.ps
    a, b = ps[chord[0]], ps[chord[1]]
    side1 = [v for v in range(6) if v not in chord and cross(a, b, ps[v]) > 0]
    side2 = [v for v in range(6) if v not in chord and cross(a, b, ps[v]) < 0]
    if len(side1) != 2 or len(side2) != 2:
        raise InternalInvariantError("expected two vertices on each side of the chord")
    for pairing in (((side1[0], side2[0]), (side1[1], side2[1])),
                    ((side1[0], side2[1]), (side1[1], side2[0]))):
        (x1, y1), (x2, y2) = pairing
        if not segments_properly_cross(ps[x1], ps[y1], ps[x2], ps[y2]):
            return {edge_key(x1, y1), edge_key(x2, y2)}
    raise InternalInvariantError("both pairings of the cross-chord edges cross")


def _leaf_cells(t: Triangulation) -> list[tuple[Edge, frozenset[int]]]:
    from .treeaug import build_cell_tree

    ct = build_cell_tree(t)
    return sorted(((leaf.chord, leaf.members) for leaf in ct.leaves),
                  key=lambda item: item[0])


def _reinsert_double_flip(ps: PointSet, sub_tris: list[tuple[int, int, int]],
                          u: int, w: int, v: int) -> tuple[set[Edge], int, int]:
    """Add the outer triangle (u, v, w) to the partner triangulation of
    ps-minus-v, run the double flip, and return (edges, v_prime, x) where
    v_prime and x are v's two new neighbors."""
    tris = set(sub_tris) | {triangle_key(u, v, w)}
    t_full = Triangulation(ps, tris)
    v_prime = next(q for q in t_full.opposites(edge_key(u, w)) if q != v)
    flipped, moves = flip_pair_helper(t_full, u, v, w, v_prime)
    (_, added1), (_, added2) = moves
    if added1 != edge_key(v, v_prime):
        raise InternalInvariantError("first flip did not create the spoke to the apex")
    x = next(q for q in added2 if q != v)
    return set(flipped.edges), v_prime, x


def _case_leaf_triangle(t: Triangulation, size3: list[tuple[Edge, frozenset[int]]]) -> set[Edge]:
    """A leaf cell of size 3: remove its private degree-2 vertex, recurse, and
    stitch the vertex back with the double-flip reinsertion.  A removal that
    leaves a wheel is answered with a star; one that leaves a fan is skipped
    in favor of a different degree-2 vertex."""
    n = len(t.ps)
    candidates = sorted((next(x for x in members if x not in chord), chord)
                        for chord, members in size3)
    for v, chord in candidates:
        keep = [x for x in range(n) if x != v]
        t1, idmap = _sub_triangulation(t, keep)
        cls = classify(t1) if len(keep) >= 4 else TriangulationClass.OTHER
        if cls is TriangulationClass.WHEEL:
            return {edge_key(v, q) for q in range(n) if q != v} - set(t.edges)
        if cls is TriangulationClass.FAN:
            continue
        partner_sub = _plane_partner(t1)
        t2_sub = complete_to_triangulation(t1.ps, required=partner_sub)
        lifted = [tuple(idmap[q] for q in tri) for tri in t2_sub.triangles]
        edges, _, _ = _reinsert_double_flip(t.ps, lifted, chord[0], chord[1], v)
        return edges - set(t.edges)
    raise InternalInvariantError(
        "every size-3 leaf removal yields a fan; the input should have been a fan")


def _case_leaf_large(t: Triangulation, cells: list[tuple[Edge, frozenset[int]]]) -> set[Edge]:
    """No size-3 leaf cell: peel a minimal leaf cell of size >= 4, recurse on
    the remainder, reinsert the cell triangle apex by the double flip, and
    hang the other cell vertices off the bisector split of its two new
    neighbors."""
    n = len(t.ps)
    if n == 6:
        return _two_interior_base(t)
    chord, members = min(cells, key=lambda item: (len(item[1]), item[0]))
    u, w = chord
    inner = sorted(members - {u, w})
    keep = [x for x in range(n) if x not in inner]
    t1, idmap = _sub_triangulation(t, keep)
    cls = classify(t1) if len(keep) >= 4 else TriangulationClass.OTHER
    if cls is TriangulationClass.FAN:
        raise InternalInvariantError("the peeled remainder cannot be a fan")
    if cls is TriangulationClass.WHEEL:
        return _wheel_remainder_wiring(t, chord, members, t1, idmap)
    partner_sub = _plane_partner(t1)
    t2_sub = complete_to_triangulation(t1.ps, required=partner_sub)
    v = next(x for x in t.opposites(chord) if x in members and x not in chord)
    local_ids = sorted(keep + [v])
    to_local = {old: i for i, old in enumerate(local_ids)}
    ps_local = t.ps.subset(local_ids)
    tris_local = [tuple(to_local[idmap[q]] for q in tri) for tri in t2_sub.triangles]
    edges_local, vp_local, x_local = _reinsert_double_flip(
        ps_local, tris_local, to_local[u], to_local[w], to_local[v])
    edges = {edge_key(local_ids[a], local_ids[b]) for (a, b) in edges_local}
    v_prime, x = local_ids[vp_local], local_ids[x_local]
    ps = t.ps
    for q in inner:
        if q == v:
            continue
        if _closer_to_first_ray(ps[v], ps[x], ps[v_prime], ps[q]):
            edges.add(edge_key(q, x))
        else:
            edges.add(edge_key(q, v_prime))
    return edges - set(t.edges)


def _wheel_remainder_wiring(t: Triangulation, chord: Edge, members: frozenset[int],
                            t1: Triangulation, idmap: list[int]) -> set[Edge]:
    """The peeled remainder is a wheel: join a rotated-first cell point to the
    rim vertices between the chord ends and join the rim vertex next to one
    chord end to the whole cell interior."""
    u, w = chord
    rim_sub = list(t1.hull)
    rim = [idmap[i] for i in rim_sub]
    iw = rim.index(w)
    if rim[(iw + 1) % len(rim)] == u:
        order = [rim[(iw - k) % len(rim)] for k in range(len(rim))]
    else:
        order = [rim[(iw + k) % len(rim)] for k in range(len(rim))]
    if order[0] != w or order[-1] != u:
        raise InternalInvariantError("wheel rim does not run from w to u")
    vs = order[1:-1]
    if len(vs) < 2:
        raise InternalInvariantError("wheel rim too short")
    v1 = vs[0]
    cell_inner = sorted(members - {u, w})
    ps = t.ps

    def first_hit(pivot: int, toward: int, sweep_ccw: bool) -> int:
        """Cell point first hit when rotating the line pivot-toward."""
        base = ps[toward]
        c0 = ps[pivot]

        def norm(p: int) -> tuple[int, int]:
            dx, dy = ps[p].x - c0.x, ps[p].y - c0.y
            cr = (base.x - c0.x) * dy - (base.y - c0.y) * dx
            if cr == 0:
                raise InternalInvariantError("cell point collinear with the rotation line")
            want_positive = sweep_ccw
            if (cr > 0) != want_positive:
                dx, dy = -dx, -dy
            return dx, dy

        def cmp(p: int, q: int) -> int:
            px, py = norm(p)
            qx, qy = norm(q)
            cr = px * qy - py * qx
            if cr == 0:
                raise InternalInvariantError("two cell points aligned with the pivot")
            if sweep_ccw:
                return -1 if cr > 0 else 1
            return -1 if cr < 0 else 1

        return sorted(cell_inner, key=functools.cmp_to_key(cmp))[0]

    for sweep_ccw in (False, True):
        u_prime = first_hit(v1, u, sweep_ccw)
        new_edges = {edge_key(u_prime, vj) for vj in vs}
        new_edges |= {edge_key(v1, q) for q in cell_inner}
        new_edges -= set(t.edges)
        if _pairwise_noncrossing(t.ps, sorted(new_edges)):
            return new_edges
    raise InternalInvariantError("wheel-remainder wiring crosses itself in both sweeps")


def _plane_partner(t: Triangulation) -> set[Edge]:
    """Plane edge set (possibly sharing edges with t) whose union with t is
    4-connected; the recursion backbone."""
    n = len(t.ps)
    convex = len(t.hull) == n
    chords = _chords_of(t)
    if not chords:
        return _augment_3connected(t)
    if n == 5:
        return _k5_base(t)
    if convex and n == 6:
        return _convex6_base(t)
    cells = _leaf_cells(t)
    size3 = [(chord, mem) for chord, mem in cells if len(mem) == 3]
    if size3:
        return _case_leaf_triangle(t, size3)
    return _case_leaf_large(t, cells)


def augment_to_4conn(t: Triangulation) -> frozenset[Edge]:
    """Noncrossing new edges E' with kappa(T union E') >= 4; wheels and fans
    are rejected (no plane second layer can 4-connect them)."""
    n = len(t.ps)
    convex = len(t.hull) == n
    if n >= 4:
        cls = classify(t)
        if cls is TriangulationClass.WHEEL:
            raise ImpossibleError("a wheel plus any plane layer stays at most 3-connected")
        if cls is TriangulationClass.FAN:
            raise ImpossibleError("a fan plus any second layer stays at most 3-connected")
    if (convex and n < 6) or n < 5:
        raise PreconditionError("need n >= 6 in convex position or n >= 5 otherwise")
    partner = _plane_partner(t)
    new_edges = frozenset(e for e in partner if e not in t.edges)
    if not _pairwise_noncrossing(t.ps, sorted(new_edges)):
        raise InternalInvariantError("augmentation edges cross each other")
    ok, violations = check_4conn_augmentation(t, new_edges)
    if not ok:
        raise InternalInvariantError("augmentation violates crossing conditions: "
                                     + "; ".join(violations))
    return new_edges
