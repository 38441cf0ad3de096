"""Tree augmentation to 2-edge-connectivity and minimal 3-connectivity
augmentation of triangulations via the cell tree of hull chords."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import InternalInvariantError, PreconditionError
from .geometry import Point, convex_hull, segments_properly_cross
from .layered import LAYER1, LAYER2, LayeredGraph
from .triangulation import Edge, Triangulation, edge_key


class RootedTreeIndex:
    """Constant-time lowest-common-ancestor queries via an Euler tour and a
    sparse table over tour depths."""

    def __init__(self, adjacency: Mapping[int, set], root: int):
        self.root = root
        self.parent: dict[int, int | None] = {root: None}
        self.depth: dict[int, int] = {root: 0}
        self.euler: list[int] = []
        self.first: dict[int, int] = {}
        children: dict[int, list[int]] = {}
        stack: list[tuple[int, int | None]] = [(root, None)]
        while stack:
            u, par = stack.pop()
            kids = sorted(v for v in adjacency[u] if v != par)
            children[u] = kids
            for v in kids:
                self.parent[v] = u
                self.depth[v] = self.depth[u] + 1
                stack.append((v, u))
        if len(self.parent) != len(adjacency):
            raise PreconditionError("adjacency is not a connected tree")
        # iterative Euler tour; each return from a child appends the parent
        walk: list[tuple[int, int]] = [(root, 0)]
        while walk:
            u, ki = walk.pop()
            if ki == 0:
                self.first[u] = len(self.euler)
            self.euler.append(u)
            if ki < len(children[u]):
                walk.append((u, ki + 1))
                walk.append((children[u][ki], 0))
        m = len(self.euler)
        levels = max(1, m.bit_length())
        table = [list(range(m))]
        k = 1
        while (1 << k) <= m:
            prev = table[-1]
            row = []
            for i in range(m - (1 << k) + 1):
                a, b = prev[i], prev[i + (1 << (k - 1))]
                row.append(a if self.depth[self.euler[a]] <= self.depth[self.euler[b]] else b)
            table.append(row)
            k += 1
        self._table = table

    def lca(self, u: int, v: int) -> int:
        lo, hi = self.first[u], self.first[v]
        if lo > hi:
            lo, hi = hi, lo
        k = (hi - lo + 1).bit_length() - 1
        row = self._table[k]
        a, b = row[lo], row[hi - (1 << k) + 1]
        best = a if self.depth[self.euler[a]] <= self.depth[self.euler[b]] else b
        return self.euler[best]

    def is_ancestor(self, a: int, b: int) -> bool:
        return self.lca(a, b) == a


def _pairing_for_root(adjacency: Mapping[int, set], root: int,
                      leaf_points: Mapping[int, Point]) -> list[tuple[int, int]]:
    """One leaf-pairing run: while more than 3 leaves remain, a hull vertex v
    of the leaf set (not the root) is joined to the hull neighbor whose lowest
    common ancestor with v is the higher of the two; the terminal 2 or 3
    leaves get a spanning path.  Every selected pair is a hull edge of the
    shrinking leaf set, so the connections never cross.

    Two guards close gaps the bare rule leaves open: the root never gets
    consumed as a partner (so the terminal set always contains it), and a pair
    that would remove the last two live leaves below a single tree edge is
    skipped when a safe alternative exists (detected through live-leaf counts
    at the pair's lowest common ancestor)."""
    index = RootedTreeIndex(adjacency, root)
    leaves = sorted(u for u in adjacency if len(adjacency[u]) == 1)
    pairs: list[tuple[int, int]] = []
    live = set(leaves)

    def live_count_at(node: int) -> int:
        total = 0
        for leaf in live:
            x = leaf
            while x is not None:
                if x == node:
                    total += 1
                    break
                x = index.parent[x]
        return total

    def safe(v: int, p: int) -> bool:
        c = index.lca(v, p)
        return c == root or live_count_at(c) > 2

    while len(live) > 3:
        pts = sorted(live)
        hull_ids = convex_hull([Point(leaf_points[u].x, leaf_points[u].y, i)
                                for i, u in enumerate(pts)])
        ring = [pts[i] for i in hull_ids]
        moves: list[tuple[int, int]] = []
        for v in sorted(x for x in ring if x != root):
            i = ring.index(v)
            u, w2 = ring[i - 1], ring[(i + 1) % len(ring)]
            ordered: list[int]
            if u == root:
                ordered = [w2]
            elif w2 == root:
                ordered = [u]
            else:
                a, b = index.lca(u, v), index.lca(v, w2)
                if not (index.is_ancestor(a, b) or index.is_ancestor(b, a)):
                    raise InternalInvariantError("lca candidates are incomparable")
                ordered = [u, w2] if index.depth[a] <= index.depth[b] else [w2, u]
            moves.extend((v, p) for p in ordered)
        if not moves:
            raise InternalInvariantError("no selectable hull pair")
        chosen = next((mv for mv in moves if safe(*mv)), moves[0])
        pairs.append(chosen)
        live -= set(chosen)
    rest = sorted(live)
    for a, b in zip(rest, rest[1:]):
        pairs.append((a, b))
    return pairs


def _pairs_two_edge_connect(adjacency: Mapping[int, set], pairs: list[tuple[int, int]]) -> bool:
    """Abstract 2-edge-connectivity of the tree plus the selected pairs."""
    nodes = sorted(adjacency)
    idx = {u: i for i, u in enumerate(nodes)}
    multi: list[tuple[int, int]] = []
    for u in nodes:
        for v in adjacency[u]:
            if idx[u] < idx[v]:
                multi.append((idx[u], idx[v]))
    tree_edges = list(multi)
    extra = [(idx[a], idx[b]) for (a, b) in pairs]
    from .connectivity import is_connected

    def connected_without(skip: tuple[int, int]) -> bool:
        es = [e for e in tree_edges if e != skip] + extra
        return is_connected(len(nodes), es)

    return all(connected_without(e) for e in tree_edges)


def _noncrossing_leaf_pairing(adjacency: Mapping[int, set], leaf_points: Mapping[int, Point]) -> list[tuple[int, int]]:
    """Pair up tree leaves with ceil(m/2) pairwise-noncrossing connections so
    that the tree plus the pairs is 2-edge-connected.

    The hull-plus-lca loop leaves the root and a tie in the ancestor
    comparison unspecified; a bad resolution can strand the last leaves of a
    subtree, so every candidate root is tried in deterministic order (leaves
    first) and the first pairing that verifies 2-edge-connected is returned.
    """
    leaves = sorted(u for u in adjacency if len(adjacency[u]) == 1)
    internal = sorted(u for u in adjacency if len(adjacency[u]) > 1)
    last_error: InternalInvariantError | None = None
    for root in leaves + internal:
        try:
            pairs = _pairing_for_root(adjacency, root, leaf_points)
        except InternalInvariantError as exc:
            last_error = exc
            continue
        if _pairs_two_edge_connect(adjacency, pairs):
            return pairs
    if last_error is not None:
        raise last_error
    raise InternalInvariantError("no root produced a 2-edge-connecting pairing")


def augment_tree_2edge(tree: LayeredGraph) -> frozenset[Edge]:
    """ceil(m/2) pairwise-noncrossing leaf-to-leaf edges whose addition makes
    the plane tree 2-edge-connected."""
    ps = tree.ps
    n = len(ps)
    edges = sorted(tree.edges())
    if len(edges) != n - 1:
        raise PreconditionError("input is not a tree (edge count)")
    adjacency: dict[int, set[int]] = {v: set() for v in range(n)}
    for (u, v) in edges:
        adjacency[u].add(v)
        adjacency[v].add(u)
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for v in adjacency[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    if len(seen) != n:
        raise PreconditionError("input is not a tree (disconnected)")
    for i in range(len(edges)):
        a, b = edges[i]
        for j in range(i + 1, len(edges)):
            c, d = edges[j]
            if segments_properly_cross(ps[a], ps[b], ps[c], ps[d]):
                raise PreconditionError(f"tree edges {edges[i]} and {edges[j]} cross")
    leaves = [v for v in range(n) if len(adjacency[v]) == 1]
    m = len(leaves)
    if m < 2:
        raise PreconditionError("tree must have at least 2 leaves")
    pairs = _noncrossing_leaf_pairing(adjacency, {v: ps[v] for v in leaves})
    out = frozenset(edge_key(a, b) for (a, b) in pairs)
    if len(out) != math.ceil(m / 2):
        raise InternalInvariantError(f"selected {len(out)} edges, expected ceil({m}/2)")
    return out


# ----------------------------------------------------------------------
# Cells of the hull chords and minimal 3-connectivity augmentation
# ----------------------------------------------------------------------

@dataclass
class LeafCell:
    cell: int
    chord: Edge
    members: frozenset[int]          # vertices in or on the cell, chord included
    inner_members: frozenset[int]    # members minus the chord endpoints
    representative: int              # an inner member on the hull of S


@dataclass
class CellTree:
    """Dual tree of the convex cells cut out by the hull chords."""

    cells: list[frozenset[int]]
    adjacency: dict[int, set[int]]
    chord_of: dict[tuple[int, int], Edge]
    leaves: list[LeafCell]

    def leaf_count(self) -> int:
        return len(self.leaves)


def build_cell_tree(t: Triangulation) -> CellTree:
    """Cells are the chord-free connected components of the triangle faces;
    two cells are adjacent when they share a chord."""
    hullset = set(t.hull)
    hull_edges = t.hull_edges()
    chords = {e for e in t.edges
              if e[0] in hullset and e[1] in hullset and e not in hull_edges}
    tris = sorted(t.triangles)
    tri_index = {tri: i for i, tri in enumerate(tris)}
    comp = list(range(len(tris)))

    def find(i: int) -> int:
        while comp[i] != i:
            comp[i] = comp[comp[i]]
            i = comp[i]
        return i

    def union(i: int, j: int) -> None:
        comp[find(i)] = find(j)

    edge_tris: dict[Edge, list[int]] = {}
    for i, (a, b, c) in enumerate(tris):
        for e in (edge_key(a, b), edge_key(b, c), edge_key(a, c)):
            edge_tris.setdefault(e, []).append(i)
    for e, owners in edge_tris.items():
        if len(owners) == 2 and e not in chords:
            union(owners[0], owners[1])
    roots = sorted({find(i) for i in range(len(tris))})
    cell_id = {r: k for k, r in enumerate(roots)}
    members: list[set[int]] = [set() for _ in roots]
    for i, tri in enumerate(tris):
        members[cell_id[find(i)]].update(tri)
    adjacency: dict[int, set[int]] = {k: set() for k in range(len(roots))}
    chord_of: dict[tuple[int, int], Edge] = {}
    for e in sorted(chords):
        owners = edge_tris[e]
        if len(owners) != 2:
            raise InternalInvariantError("chord not shared by two triangles")
        c1, c2 = cell_id[find(owners[0])], cell_id[find(owners[1])]
        adjacency[c1].add(c2)
        adjacency[c2].add(c1)
        chord_of[(min(c1, c2), max(c1, c2))] = e
    if len(roots) != len(chords) + 1:
        raise InternalInvariantError("cell dual graph is not a tree")
    leaves = []
    hull_order = list(t.hull)
    for k in range(len(roots)):
        if len(adjacency[k]) == 1:
            other = next(iter(adjacency[k]))
            chord = chord_of[(min(k, other), max(k, other))]
            inner = frozenset(members[k] - set(chord))
            on_hull = sorted(v for v in inner if v in hullset)
            if not on_hull:
                raise InternalInvariantError("leaf cell without a hull representative")
            leaves.append(LeafCell(k, chord, frozenset(members[k]), inner, on_hull[0]))
    if leaves and any(l1.inner_members & l2.inner_members
                      for i, l1 in enumerate(leaves) for l2 in leaves[i + 1:]):
        raise InternalInvariantError("leaf cells share inner members")
    return CellTree([frozenset(mm) for mm in members], adjacency, chord_of, leaves)


def min_augment_3conn(t: Triangulation) -> frozenset[Edge]:
    """Minimum set of new edges whose addition makes the triangulation a
    3-connected biplane graph: one noncrossing leaf-to-leaf connection per
    two leaf cells of the chord decomposition (ceil(m/2) edges)."""
    cell_tree = build_cell_tree(t)
    m = cell_tree.leaf_count()
    if m == 0:
        return frozenset()
    reps = {leaf.cell: leaf.representative for leaf in cell_tree.leaves}
    pairs = _noncrossing_leaf_pairing(
        cell_tree.adjacency,
        {cell: t.ps[rep] for cell, rep in reps.items()})
    out = frozenset(edge_key(reps[a], reps[b]) for (a, b) in pairs)
    if len(out) != math.ceil(m / 2):
        raise InternalInvariantError("wrong number of augmentation edges")
    if not out.isdisjoint(t.edges):
        raise InternalInvariantError("augmentation edge already present")
    return out


def biplane_after_3conn_augment(t: Triangulation, added: Iterable[Edge] | None = None) -> LayeredGraph:
    """Package the triangulation plus the added edges as a layered graph."""
    extra = frozenset(edge_key(*e) for e in added) if added is not None else min_augment_3conn(t)
    layers = {e: LAYER1 for e in t.edges}
    layers.update({e: LAYER2 for e in extra})
    return LayeredGraph(t.ps, layers)
