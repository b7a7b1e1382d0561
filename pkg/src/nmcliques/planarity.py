"""Planarity, outerplanarity and combinatorial embeddings.

The planarity decision and the initial embedding come from networkx's
left-right planarity test; everything downstream (rotation systems, face
tracing, Euler checks) is plain combinatorics on the rotation system.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import networkx as nx

from .core import NMGraph, NMGraphError


@dataclass(frozen=True)
class RotationSystem:
    """Cyclic (anticlockwise) neighbor order around every vertex."""

    order: int
    rotations: tuple[tuple[int, ...], ...]
    outer_face: int = 0

    def succ(self, v: int, u: int) -> int:
        rot = self.rotations[v]
        return rot[(rot.index(u) + 1) % len(rot)]

    def pred(self, v: int, u: int) -> int:
        rot = self.rotations[v]
        return rot[(rot.index(u) - 1) % len(rot)]

    def restrict(self, vertices) -> RotationSystem:
        """Rotation system of the induced subgraph on ``vertices`` (same numbering)."""
        keep = set(vertices)
        rots = tuple(
            tuple(w for w in rot if w in keep) if v in keep else ()
            for v, rot in enumerate(self.rotations)
        )
        return RotationSystem(self.order, rots, 0)

    def restrict_edges(self, edges) -> RotationSystem:
        """Rotation system of the spanning subgraph with the given edges."""
        keep = {frozenset(e) for e in edges}
        rots = tuple(
            tuple(w for w in rot if frozenset((v, w)) in keep)
            for v, rot in enumerate(self.rotations)
        )
        return RotationSystem(self.order, rots, 0)


def _check_rotation_system(rs: RotationSystem) -> None:
    if len(rs.rotations) != rs.order:
        raise NMGraphError("rotation system does not cover every vertex")
    for v, rot in enumerate(rs.rotations):
        if len(set(rot)) != len(rot):
            raise NMGraphError(f"repeated neighbor in the rotation at {v}")
        for w in rot:
            if not 0 <= w < rs.order or w == v or v not in rs.rotations[w]:
                raise NMGraphError(f"rotation at {v} lists {w} asymmetrically")


def _underlying(edges, order: int) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(order))
    h.add_edges_from(sorted(edges))
    return h


@lru_cache(maxsize=200_000)
def _planar_edges(edges: frozenset, order: int) -> bool:
    return nx.check_planarity(_underlying(edges, order))[0]


def _edge_key(g: NMGraph) -> frozenset:
    return frozenset(g.underlying_edges())


def is_planar(g: NMGraph) -> bool:
    if g.order >= 3 and g.edge_count() > 3 * g.order - 6:
        return False
    return _planar_edges(_edge_key(g), g.order)


def is_outerplanar(g: NMGraph) -> bool:
    """Planarity of the graph plus one vertex adjacent to everything."""
    if g.order >= 2 and g.edge_count() > 2 * g.order - 3:
        return False
    apex = g.order
    edges = set(g.underlying_edges()) | {(v, apex) for v in range(g.order)}
    return _planar_edges(frozenset(edges), g.order + 1)


def is_planar_edges(edges, order: int) -> bool:
    """Planarity of a plain undirected graph given as an edge list."""
    edges = frozenset((min(u, v), max(u, v)) for u, v in edges)
    if order >= 3 and len(edges) > 3 * order - 6:
        return False
    return _planar_edges(edges, order)


def is_outerplanar_edges(edges, order: int) -> bool:
    edges = {(min(u, v), max(u, v)) for u, v in edges}
    if order >= 2 and len(edges) > 2 * order - 3:
        return False
    edges |= {(v, order) for v in range(order)}
    return _planar_edges(frozenset(edges), order + 1)


def faces(rs: RotationSystem) -> list[tuple[int, ...]]:
    """Faces as cyclic vertex walks, traced from darts in increasing order.

    The dart after ``(u, v)`` is ``(v, succ_v(u))``.  An isolated vertex
    forms a face of its own with a one-vertex walk.
    """
    return [tuple(d[0] for d in f) for f in face_darts(rs)]


def face_darts(rs: RotationSystem) -> list[list[tuple[int, int]]]:
    _check_rotation_system(rs)
    out = []
    seen = set()
    for u in range(rs.order):
        if not rs.rotations[u]:
            out.append([(u, u)])
            continue
        for v in sorted(rs.rotations[u]):
            if (u, v) in seen:
                continue
            walk = []
            dart = (u, v)
            while dart not in seen:
                seen.add(dart)
                walk.append(dart)
                a, b = dart
                dart = (b, rs.succ(b, a))
            out.append(walk)
    return out


def _components(rs: RotationSystem) -> list[set[int]]:
    comp = []
    done = set()
    for s in range(rs.order):
        if s in done:
            continue
        stack, part = [s], {s}
        while stack:
            v = stack.pop()
            for w in rs.rotations[v]:
                if w not in part:
                    part.add(w)
                    stack.append(w)
        done |= part
        comp.append(part)
    return comp


def euler_characteristics(rs: RotationSystem) -> list[int]:
    """``|V| - |E| + |F|`` for every connected component (2 when planar)."""
    fs = face_darts(rs)
    out = []
    for part in _components(rs):
        e = sum(len(rs.rotations[v]) for v in part) // 2
        f = sum(1 for walk in fs if walk[0][0] in part)
        out.append(len(part) - e + f)
    return out


def embed(g: NMGraph) -> RotationSystem | None:
    """A planar rotation system of ``g``, or ``None`` if ``g`` is not planar.

    The outer face is a longest face (least face index on ties).
    """
    planar, emb = nx.check_planarity(_underlying(g.underlying_edges(), g.order))
    if not planar:
        return None
    rots = tuple(
        tuple(reversed(list(emb.neighbors_cw_order(v)))) if g.neighbor_mask(v) else ()
        for v in range(g.order)
    )
    rs = RotationSystem(g.order, rots, 0)
    fs = faces(rs)
    outer = max(range(len(fs)), key=lambda i: (len(fs[i]), -i)) if fs else 0
    return RotationSystem(g.order, rots, outer)
