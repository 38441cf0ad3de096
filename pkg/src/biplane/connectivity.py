"""Independent verification: vertex connectivity via unit-capacity max-flow,
2-edge-connectivity, biplanarity via crossing-conflict coloring, and the
chord / bichord / separating-triangle cut structure of triangulations."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import PreconditionError
from .geometry import PointSet, cross, point_in_triangle, segments_properly_cross
from .layered import LayeredGraph
from .triangulation import Edge, Triangulation, edge_key

INF = 1 << 30


def _adjacency(n: int, edges: Iterable[Edge]) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in range(n)]
    for (u, v) in edges:
        if u == v or not (0 <= u < n and 0 <= v < n):
            raise PreconditionError(f"bad edge ({u}, {v})")
        adj[u].add(v)
        adj[v].add(u)
    return adj


class _FlowNet:
    """Tiny augmenting-path max-flow on an explicit residual arc list."""

    def __init__(self, nodes: int):
        self.head: list[list[int]] = [[] for _ in range(nodes)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add(self, u: int, v: int, c: int) -> None:
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(c)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)

    def max_flow(self, s: int, t: int, limit: int) -> int:
        flow = 0
        while flow < limit:
            parent_arc = [-1] * len(self.head)
            parent_arc[s] = -2
            queue = deque([s])
            while queue and parent_arc[t] == -1:
                u = queue.popleft()
                for a in self.head[u]:
                    v = self.to[a]
                    if parent_arc[v] == -1 and self.cap[a] > 0:
                        parent_arc[v] = a
                        queue.append(v)
            if parent_arc[t] == -1:
                break
            v = t
            while v != s:
                a = parent_arc[v]
                self.cap[a] -= 1
                self.cap[a ^ 1] += 1
                v = self.to[a ^ 1]
            flow += 1
        return flow


def _local_vertex_connectivity(n: int, adj: Sequence[set[int]], s: int, t: int) -> int:
    """Max number of internally vertex-disjoint s-t paths (s, t nonadjacent):
    unit capacity on split vertices, infinite on arcs."""
    net = _FlowNet(2 * n)
    for v in range(n):
        net.add(2 * v, 2 * v + 1, INF if v in (s, t) else 1)
    for u in range(n):
        for v in adj[u]:
            net.add(2 * u + 1, 2 * v, INF)
    return net.max_flow(2 * s + 1, 2 * t, n)


def vertex_connectivity(n: int, edges: Iterable[Edge]) -> int:
    """Exact vertex connectivity kappa (n - 1 for complete graphs).

    Pair schedule: fix a minimum-degree vertex s, run flow to every
    non-neighbor of s, then between every nonadjacent pair of neighbors of s.
    """
    if n < 2:
        raise PreconditionError("vertex connectivity needs n >= 2")
    adj = _adjacency(n, edges)
    s = min(range(n), key=lambda v: (len(adj[v]), v))
    best = n - 1
    for t in range(n):
        if t != s and t not in adj[s]:
            best = min(best, _local_vertex_connectivity(n, adj, s, t))
    nbrs = sorted(adj[s])
    for i, u in enumerate(nbrs):
        for v in nbrs[i + 1:]:
            if v not in adj[u]:
                best = min(best, _local_vertex_connectivity(n, adj, u, v))
    return best


def kappa_of(g: LayeredGraph | Triangulation) -> int:
    """Vertex connectivity of the abstract union graph (layers ignored)."""
    if isinstance(g, LayeredGraph):
        return vertex_connectivity(len(g.ps), g.edges())
    return vertex_connectivity(len(g.ps), g.edges)


def is_connected(n: int, edges: Iterable[Edge]) -> bool:
    adj = _adjacency(n, edges)
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == n


def is_two_edge_connected(n: int, edges: Iterable[Edge]) -> bool:
    """Connected with no bridge (linear-time lowpoint search)."""
    adj = _adjacency(n, edges)
    if n == 0:
        return False
    if not is_connected(n, edges):
        return False
    if n == 1:
        return True
    disc = [-1] * n
    low = [0] * n
    timer = 0
    bridge = False
    stack: list[tuple[int, int, Iterable[int]]] = [(0, -1, iter(sorted(adj[0])))]
    disc[0] = low[0] = timer
    timer += 1
    parent_skipped = [False] * n
    while stack:
        u, parent, it = stack[-1]
        advanced = False
        for v in it:
            if v == parent and not parent_skipped[u]:
                parent_skipped[u] = True
                continue
            if disc[v] == -1:
                disc[v] = low[v] = timer
                timer += 1
                stack.append((v, u, iter(sorted(adj[v]))))
                advanced = True
                break
            low[u] = min(low[u], disc[v])
        if not advanced:
            stack.pop()
            if parent != -1:
                low[parent] = min(low[parent], low[u])
                if low[u] > disc[parent]:
                    bridge = True
                    break
    return not bridge


def crossing_conflict_graph(ps: PointSet, edges: Sequence[Edge]) -> tuple[list[Edge], list[set[int]]]:
    """Graph over edge indices with an arc per properly crossing pair."""
    es = [edge_key(*e) for e in edges]
    conflicts: list[set[int]] = [set() for _ in es]
    for i in range(len(es)):
        a, b = ps[es[i][0]], ps[es[i][1]]
        for j in range(i + 1, len(es)):
            c, d = ps[es[j][0]], ps[es[j][1]]
            if segments_properly_cross(a, b, c, d):
                conflicts[i].add(j)
                conflicts[j].add(i)
    return es, conflicts


def compute_layering(ps: PointSet, edges: Sequence[Edge]) -> tuple[dict[Edge, int] | None, list[Edge] | None]:
    """Two-coloring of edges with no same-layer crossing, if one exists.

    Returns (layers, None) on success and (None, odd_cycle) otherwise, where
    odd_cycle is a cyclic list of edges that pairwise-consecutively cross and
    has odd length.
    """
    es, conflicts = crossing_conflict_graph(ps, edges)
    color = [-1] * len(es)
    parent = [-1] * len(es)
    for root in range(len(es)):
        if color[root] != -1:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in sorted(conflicts[u]):
                if color[v] == -1:
                    color[v] = 1 - color[u]
                    parent[v] = u
                    queue.append(v)
                elif color[v] == color[u]:
                    # reconstruct the odd cycle through the BFS tree
                    pu = []
                    x = u
                    while x != -1:
                        pu.append(x)
                        x = parent[x]
                    pv = []
                    x = v
                    while x != -1:
                        pv.append(x)
                        x = parent[x]
                    iu, iv = set(pu), set(pv)
                    lca = next(x for x in pu if x in iv)
                    cyc = pu[:pu.index(lca) + 1] + pv[:pv.index(lca)][::-1]
                    return None, [es[i] for i in cyc]
    return {es[i]: 1 + color[i] for i in range(len(es))}, None


def verify_layering(g: LayeredGraph) -> bool:
    """True iff within each layer no two edges properly cross."""
    for layer in (1, 2):
        es = sorted(g.layer_edges(layer))
        for i in range(len(es)):
            a, b = g.ps[es[i][0]], g.ps[es[i][1]]
            for j in range(i + 1, len(es)):
                c, d = g.ps[es[j][0]], g.ps[es[j][1]]
                if segments_properly_cross(a, b, c, d):
                    return False
    return True


# ----------------------------------------------------------------------
# Cut structures of a triangulation
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Bichord:
    """Two-edge path (u, m, w) between hull vertices, with one witness vertex
    recorded per side of the path."""

    u: int
    m: int
    w: int
    witnesses: tuple[int, ...]

    def path_edges(self) -> tuple[Edge, Edge]:
        return edge_key(self.u, self.m), edge_key(self.m, self.w)


@dataclass(frozen=True)
class SeparatingTriangle:
    vertices: tuple[int, int, int]
    inside_witness: int
    outside_witness: int

    def sides(self) -> tuple[Edge, Edge, Edge]:
        a, b, c = self.vertices
        return edge_key(a, b), edge_key(b, c), edge_key(a, c)


@dataclass
class CutReport:
    chords: list[Edge] = field(default_factory=list)
    bichords: list[Bichord] = field(default_factory=list)
    separating_triangles: list[SeparatingTriangle] = field(default_factory=list)

    def is_empty(self) -> bool:
        return not (self.chords or self.bichords or self.separating_triangles)

    def cut_triples(self) -> set[tuple[int, ...]]:
        out: set[tuple[int, ...]] = set()
        for b in self.bichords:
            out.add(tuple(sorted((b.u, b.m, b.w))))
        for s in self.separating_triangles:
            out.add(tuple(sorted(s.vertices)))
        return out


def _hull_arc(hull: Sequence[int], a: int, b: int) -> list[int]:
    """Hull vertices strictly between a and b walking forward from a."""
    i = hull.index(a)
    out = []
    j = (i + 1) % len(hull)
    while hull[j] != b:
        out.append(hull[j])
        j = (j + 1) % len(hull)
    return out


def cut_structures(t: Triangulation) -> CutReport:
    """Complete enumeration of chords, bichords and separating triangles.

    Side witnesses for bichords follow the hull cyclic order split at the
    path endpoints (three parts when the middle vertex lies on the hull); a
    pocket with interior-only witnesses always shows up as a separating
    triangle instead, so the kappa characterizations are preserved.
    """
    if len(t.ps) < 5:
        raise PreconditionError("cut structures are defined for n >= 5")
    hull = list(t.hull)
    hullset = set(hull)
    hull_edges = t.hull_edges()
    report = CutReport()

    for e in sorted(t.edges):
        u, v = e
        if u in hullset and v in hullset and e not in hull_edges:
            report.chords.append(e)

    adj = {v: t.neighbors(v) for v in range(len(t.ps))}
    for m in range(len(t.ps)):
        hull_nbrs = sorted(x for x in adj[m] if x in hullset)
        for i, u in enumerate(hull_nbrs):
            for w in hull_nbrs[i + 1:]:
                e1, e2 = edge_key(u, m), edge_key(m, w)
                if e1 in hull_edges or e2 in hull_edges:
                    continue
                if m in hullset:
                    # split the cycle at u, m, w: all three arcs must be nonempty
                    iu, im, iw = hull.index(u), hull.index(m), hull.index(w)
                    order = sorted([(iu, u), (im, m), (iw, w)])
                    parts = []
                    for k in range(3):
                        a = order[k][1]
                        b = order[(k + 1) % 3][1]
                        parts.append(_hull_arc(hull, a, b))
                    if all(parts):
                        report.bichords.append(Bichord(u, m, w, (parts[0][0], parts[1][0], parts[2][0])))
                else:
                    arc1 = _hull_arc(hull, u, w)
                    arc2 = _hull_arc(hull, w, u)
                    if arc1 and arc2:
                        report.bichords.append(Bichord(u, m, w, (arc1[0], arc2[0])))

    seen: set[tuple[int, int, int]] = set()
    for e in sorted(t.edges):
        u, v = e
        for w in sorted(adj[u] & adj[v]):
            tri = tuple(sorted((u, v, w)))
            if tri in seen:
                continue
            seen.add(tri)
            pa, pb, pc = t.ps[tri[0]], t.ps[tri[1]], t.ps[tri[2]]
            inside = [p.id for p in t.ps if p.id not in tri and point_in_triangle(pa, pb, pc, p)]
            outside = [p.id for p in t.ps if p.id not in tri and p.id not in inside]
            if inside and outside:
                report.separating_triangles.append(
                    SeparatingTriangle(tri, inside[0], outside[0]))
    return report


def _crossings_with_path(ps: PointSet, e: Edge, path_edges: Sequence[Edge]) -> int:
    a, b = ps[e[0]], ps[e[1]]
    return sum(1 for (u, v) in path_edges
               if segments_properly_cross(a, b, ps[u], ps[v]))


def check_4conn_augmentation(t: Triangulation, added: Iterable[Edge]) -> tuple[bool, list[str]]:
    """Evaluate the three augmentation conditions for 4-connectivity.

    (i) every separating triangle and every bichord is properly crossed by at
    least one new edge; (ii) every chord is properly crossed by at least two
    new edges; (iii) a chord with at least two points on each side must be
    crossed by two nonadjacent new edges.  Returns all violations.
    """
    new_edges = sorted(edge_key(*e) for e in added)
    ps = t.ps
    report = cut_structures(t)
    violations: list[str] = []

    for chord in report.chords:
        crossers = [e for e in new_edges
                    if segments_properly_cross(ps[e[0]], ps[e[1]], ps[chord[0]], ps[chord[1]])]
        if len(crossers) < 2:
            violations.append(f"chord {chord} crossed by {len(crossers)} < 2 new edges")
            continue
        a, b = ps[chord[0]], ps[chord[1]]
        side1 = sum(1 for p in ps if p.id not in chord and cross(a, b, p) > 0)
        side2 = sum(1 for p in ps if p.id not in chord and cross(a, b, p) < 0)
        if side1 >= 2 and side2 >= 2:
            if not any(not set(e1) & set(e2)
                       for i, e1 in enumerate(crossers) for e2 in crossers[i + 1:]):
                violations.append(f"chord {chord}: no two nonadjacent crossing edges")

    for b in report.bichords:
        if not any(_crossings_with_path(ps, e, b.path_edges()) == 1 for e in new_edges):
            violations.append(f"bichord ({b.u}, {b.m}, {b.w}) not properly crossed")

    for s in report.separating_triangles:
        if not any(_crossings_with_path(ps, e, s.sides()) == 1 for e in new_edges):
            violations.append(f"separating triangle {s.vertices} not properly crossed")

    return not violations, violations
