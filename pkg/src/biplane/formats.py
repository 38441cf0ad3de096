"""Text formats: point sets ("x y" per line, '#' comments) and layered edge
lists (header "n m", then "u v layer" with layer in {1, 2, 3})."""
from __future__ import annotations

from typing import Iterable

from .errors import PreconditionError
from .geometry import PointSet
from .layered import BOTH, LAYER1, LAYER2, LayeredGraph
from .triangulation import Edge, edge_key


def dumps_points(ps: PointSet) -> str:
    return "".join(f"{p.x} {p.y}\n" for p in ps)


def loads_points(text: str) -> PointSet:
    coords: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise PreconditionError(f"line {lineno}: expected 'x y', got {raw!r}")
        try:
            coords.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise PreconditionError(f"line {lineno}: non-integer coordinate in {raw!r}") from exc
    return PointSet(coords)


def dumps_layered(g: LayeredGraph) -> str:
    lines = [f"{len(g.ps)} {g.edge_count()}"]
    for (u, v), tag in sorted(g.layers.items()):
        lines.append(f"{u} {v} {tag}")
    return "\n".join(lines) + "\n"


def loads_layered(text: str, ps: PointSet) -> LayeredGraph:
    rows = [r.split("#", 1)[0].strip() for r in text.splitlines()]
    rows = [r for r in rows if r]
    if not rows:
        raise PreconditionError("empty edge list")
    head = rows[0].split()
    if len(head) != 2:
        raise PreconditionError("header must be 'n m'")
    n, m = int(head[0]), int(head[1])
    if n != len(ps):
        raise PreconditionError(f"edge list is for {n} points, point set has {len(ps)}")
    if len(rows) - 1 != m:
        raise PreconditionError(f"header promises {m} edges, found {len(rows) - 1}")
    layers: dict[Edge, int] = {}
    for row in rows[1:]:
        parts = row.split()
        if len(parts) != 3:
            raise PreconditionError(f"expected 'u v layer', got {row!r}")
        u, v, tag = int(parts[0]), int(parts[1]), int(parts[2])
        if tag not in (LAYER1, LAYER2, BOTH):
            raise PreconditionError(f"layer must be 1, 2 or 3, got {tag}")
        e = edge_key(u, v)
        if e in layers:
            raise PreconditionError(f"duplicate edge {e}")
        layers[e] = tag
    return LayeredGraph(ps, layers)


def edges_as_layered(ps: PointSet, edges: Iterable[Edge], layer: int = LAYER1) -> LayeredGraph:
    return LayeredGraph(ps, {edge_key(*e): layer for e in edges})
