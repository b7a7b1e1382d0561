"""Canonical forms of (n,m)-graphs under label-preserving isomorphism.

Individualization-refinement: vertices are colored by their label degrees,
colors are refined by the multiset of (label, neighbor color) pairs, and
non-singleton cells are split by trying each member in turn.  Among all
discrete orderings reached, the one with the lexicographically largest
upper-triangle label vector wins.  Swapping two twin vertices is an
automorphism, so only one twin per cell is branched on.
"""

from __future__ import annotations

import struct

from .core import NMGraph


def _refine(rows, colors: list[int]) -> list[int]:
    n = len(rows)
    ncells = len(set(colors))
    while True:
        sigs = [
            (colors[v], tuple(sorted((a, colors[w]) for w, a in enumerate(rows[v]) if a)))
            for v in range(n)
        ]
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        k = len(ranks)
        if k == ncells:
            return new
        colors, ncells = new, k


def _initial_colors(rows, p: int) -> list[int]:
    sigs = []
    for r in rows:
        counts = [0] * (p + 1)
        for a in r:
            counts[a] += 1
        sigs.append(tuple(counts[1:]))
    ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
    return [ranks[s] for s in sigs]


def _twins(rows, v: int, w: int) -> bool:
    if rows[v][w] != rows[w][v]:
        return False
    rv, rw = rows[v], rows[w]
    return all(rv[z] == rw[z] for z in range(len(rows)) if z != v and z != w)


def _vector(rows, order: list[int]) -> tuple[int, ...]:
    n = len(order)
    return tuple(rows[order[i]][order[j]] for i in range(n) for j in range(i + 1, n))


def canonical_ordering(g: NMGraph) -> list[int]:
    """Vertices listed in canonical position order."""
    n = g.order
    if n == 0:
        return []
    rows = [g.row(u) for u in range(n)]
    best_vec = None
    best_order = None

    def search(colors: list[int]) -> None:
        nonlocal best_vec, best_order
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = next((c for c in sorted(cells) if len(cells[c]) > 1), None)
        if target is None:
            order = sorted(range(n), key=colors.__getitem__)
            vec = _vector(rows, order)
            if best_vec is None or vec > best_vec:
                best_vec, best_order = vec, order
            return
        tried: list[int] = []
        for v in cells[target]:
            if any(_twins(rows, v, t) for t in tried):
                continue
            tried.append(v)
            keyed = [(c, 0 if (c == target and u == v) else 1) for u, c in enumerate(colors)]
            ranks = {k: i for i, k in enumerate(sorted(set(keyed)))}
            search(_refine(rows, [ranks[k] for k in keyed]))

    search(_refine(rows, _initial_colors(rows, g.params.p)))
    return best_order


def canonical_graph(g: NMGraph) -> NMGraph:
    order = canonical_ordering(g)
    perm = [0] * g.order
    for pos, v in enumerate(order):
        perm[v] = pos
    return g.relabel(perm)


def canonical_form(g: NMGraph) -> bytes:
    """Bytes equal for two graphs exactly when they are isomorphic.

    Layout: ``b"nmc"``, n, m, order, number of non-adjacent pairs, then the
    canonical upper-triangle label vector (0 = not adjacent).  Denser graphs
    therefore sort first.
    """
    n = g.order
    order = canonical_ordering(g)
    nonadj = n * (n - 1) // 2 - g.edge_count()
    head = b"nmc" + struct.pack(">BBHH", g.params.n, g.params.m, n, nonadj)
    rows = [g.row(u) for u in range(n)]
    return head + bytes(_vector(rows, order))
