"""Geometric graphs with a two-layer edge tagging (the biplane artifact)."""
from __future__ import annotations

from typing import Mapping

from .errors import PreconditionError
from .geometry import PointSet
from .triangulation import (Edge, Triangulation, complete_to_triangulation,
                            edge_key, triangulate)

LAYER1 = 1
LAYER2 = 2
BOTH = 3  # edge present in both layers, stored once


class LayeredGraph:
    """Geometric graph whose edges carry a layer tag in {1, 2, 3 = both}.

    Edges shared by both layers are stored once with the both-layers flag;
    layer queries report membership per layer.
    """

    def __init__(self, ps: PointSet, layers: Mapping[Edge, int]):
        self.ps = ps
        norm: dict[Edge, int] = {}
        n = len(ps)
        for e, tag in layers.items():
            u, v = e
            if u == v or not (0 <= u < n and 0 <= v < n):
                raise PreconditionError(f"bad edge {e}")
            if tag not in (LAYER1, LAYER2, BOTH):
                raise PreconditionError(f"bad layer tag {tag} for edge {e}")
            k = edge_key(u, v)
            if k in norm and norm[k] != tag:
                raise PreconditionError(f"conflicting tags for edge {k}")
            norm[k] = tag
        self.layers: dict[Edge, int] = dict(sorted(norm.items()))

    # ------------------------------------------------------------------
    def edges(self) -> frozenset[Edge]:
        return frozenset(self.layers)

    def edge_count(self) -> int:
        return len(self.layers)

    def layer_edges(self, layer: int) -> frozenset[Edge]:
        if layer not in (LAYER1, LAYER2):
            raise PreconditionError("layer must be 1 or 2")
        return frozenset(e for e, tag in self.layers.items() if tag in (layer, BOTH))

    def adjacency(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {p.id: set() for p in self.ps}
        for (u, v) in self.layers:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for e in self.layers if v in e)


def union_of_triangulations(t1: Triangulation, t2: Triangulation) -> LayeredGraph:
    """Tag edges by membership in the two triangulations (shared -> both)."""
    if t1.ps is not t2.ps and t1.ps.points != t2.ps.points:
        raise PreconditionError("triangulations live on different point sets")
    layers: dict[Edge, int] = {}
    for e in t1.edges:
        layers[e] = BOTH if e in t2.edges else LAYER1
    for e in t2.edges:
        layers.setdefault(e, LAYER2)
    return LayeredGraph(t1.ps, layers)


def saturate_to_maximal_biplane(ps: PointSet, seed: Triangulation | None = None) -> LayeredGraph:
    """Union of two triangulations, greedily edge-maximal.

    Layer 1 is the seed (or the deterministic triangulation of ps); layer 2 is
    completed greedily preferring candidate edges absent from layer 1.
    """
    if len(ps) < 3:
        raise PreconditionError("need at least 3 points")
    t1 = seed if seed is not None else triangulate(ps)
    if seed is not None and (t1.ps.points != ps.points):
        raise PreconditionError("seed triangulation is not on the given point set")
    t2 = complete_to_triangulation(ps, required=(), avoid=t1.edges)
    return union_of_triangulations(t1, t2)
