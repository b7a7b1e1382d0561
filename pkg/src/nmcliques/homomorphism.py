"""Label-preserving homomorphisms, (n,m)-chromatic number and absolute clique number."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import NMGraph, NMGraphError


@dataclass(frozen=True)
class HomMapping:
    source_order: int
    target_order: int
    map: tuple[int, ...]

    def __post_init__(self):
        if len(self.map) != self.source_order:
            raise NMGraphError("mapping must be total on the source vertices")
        if any(not 0 <= t < self.target_order for t in self.map):
            raise NMGraphError("mapping leaves the target vertex range")

    def compose(self, other: HomMapping) -> HomMapping:
        """``other ∘ self``: first this map, then ``other``."""
        return HomMapping(
            self.source_order, other.target_order, tuple(other.map[t] for t in self.map)
        )


@dataclass(frozen=True)
class HomViolation:
    pair: tuple[int, int]
    expected: int
    found: int | None  # None: images coincide or are non-adjacent


def _same_params(g: NMGraph, h: NMGraph) -> None:
    if g.params != h.params:
        raise NMGraphError(f"parameter mismatch: {g.params} vs {h.params}")


def check_homomorphism(
    g: NMGraph, h: NMGraph, mapping: HomMapping | Sequence[int]
) -> tuple[bool, list[HomViolation]]:
    _same_params(g, h)
    if not isinstance(mapping, HomMapping):
        mapping = HomMapping(g.order, h.order, tuple(mapping))
    if mapping.source_order != g.order or mapping.target_order != h.order:
        raise NMGraphError("mapping orders do not match the graphs")
    f = mapping.map
    bad = []
    for u, v, a in g.pairs():
        found = h.row(f[u])[f[v]] or None
        if found != a:
            bad.append(HomViolation((u, v), a, found))
    return not bad, bad


def find_homomorphism(g: NMGraph, h: NMGraph) -> HomMapping | None:
    """Lexicographically least homomorphism ``g -> h``, or ``None``.

    Backtracking in vertex order with forward checking on the candidate
    sets of not-yet-mapped neighbors.
    """
    _same_params(g, h)
    n = g.order
    if n == 0:
        return HomMapping(0, h.order, ())
    full = (1 << h.order) - 1
    domains = [full] * n
    f = [-1] * n
    rows = [g.row(u) for u in range(n)]

    def extend(u: int) -> bool:
        if u == n:
            return True
        cand = domains[u]
        while cand:
            low = cand & -cand
            t = low.bit_length() - 1
            cand ^= low
            saved = []
            ok = True
            for w in range(u + 1, n):
                a = rows[u][w]
                if a:
                    saved.append((w, domains[w]))
                    domains[w] &= h.label_mask(t, a)
                    if not domains[w]:
                        ok = False
                        break
            if ok:
                f[u] = t
                if extend(u + 1):
                    return True
            for w, d in saved:
                domains[w] = d
        return False

    if not extend(0):
        return None
    return HomMapping(n, h.order, tuple(f))


# -- chromatic number via quotients -------------------------------------------


def _min_quotient(g: NMGraph, limit: int) -> list[int] | None:
    """Class assignment of a smallest homomorphic image with at most ``limit`` classes.

    Vertices are placed in index order, each either into an existing class
    (merging it with that class) or into a fresh one.  A placement is legal
    when the vertex is not adjacent to any member of the class and every
    pair of classes keeps a single label between them.
    """
    n = g.order
    if n == 0:
        return []
    rows = [g.row(u) for u in range(n)]
    color = [-1] * n
    table: dict[tuple[int, int], int] = {}
    best: list[int] | None = None
    best_k = limit + 1

    def place(v: int, used: int) -> None:
        nonlocal best, best_k
        if used >= best_k:
            return
        if v == n:
            best, best_k = color.copy(), used
            return
        row = rows[v]
        for c in range(used + 1):
            if max(used, c + 1) >= best_k:
                break
            added = []
            ok = True
            for w in range(v):
                a = row[w]
                if not a:
                    continue
                d = color[w]
                if d == c:
                    ok = False
                    break
                have = table.get((c, d))
                if have is None:
                    table[(c, d)] = a
                    table[(d, c)] = rows[w][v]
                    added.append((c, d))
                elif have != a:
                    ok = False
                    break
            if ok:
                color[v] = c
                place(v + 1, max(used, c + 1))
                color[v] = -1
            for c1, d1 in added:
                del table[(c1, d1)]
                del table[(d1, c1)]

    place(0, 0)
    return best


def chromatic_number(g: NMGraph, limit: int | None = None) -> int | None:
    """Least order of a homomorphic image of ``g``; ``None`` if it exceeds ``limit``."""
    if limit is None:
        limit = g.order
    if limit < 1:
        raise NMGraphError("limit must be at least 1")
    if g.order == 0:
        return 0
    classes = _min_quotient(g, limit)
    return None if classes is None else max(classes) + 1


def optimal_quotient(g: NMGraph, limit: int | None = None) -> tuple[NMGraph, HomMapping] | None:
    """A smallest homomorphic image together with the quotient map."""
    classes = _min_quotient(g, g.order if limit is None else limit)
    if classes is None:
        return None
    k = max(classes, default=-1) + 1
    rows = [[0] * k for _ in range(k)]
    for u, v, a in g.pairs():
        rows[classes[u]][classes[v]] = a
        rows[classes[v]][classes[u]] = g.row(v)[u]
    q = NMGraph._from_rows(g.params, rows)
    return q, HomMapping(g.order, k, tuple(classes))


# -- absolute clique number ---------------------------------------------------


def _can_see_within(rows, nbr, u: int, v: int, allowed: int) -> bool:
    if rows[u][v]:
        return True
    common = nbr[u] & nbr[v] & allowed
    ru, rv = rows[u], rows[v]
    while common:
        low = common & -common
        w = low.bit_length() - 1
        if ru[w] != rv[w]:
            return True
        common ^= low
    return False


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _violates_at_most_three(g: NMGraph, members: int) -> bool:
    """Does some adjacent pair (or pair with >= 6 common members) have 4 common
    members with the same label pattern?"""
    p = g.params.p
    vs = list(_bits(members))
    for i, u in enumerate(vs):
        for v in vs[i + 1 :]:
            common = g.neighbor_mask(u) & g.neighbor_mask(v) & members
            if not g.adjacent(u, v) and common.bit_count() < 6:
                continue
            if common.bit_count() < 4:
                continue
            for a in range(1, p + 1):
                ma = g.label_mask(u, a) & common
                if ma.bit_count() < 4:
                    continue
                for b in range(1, p + 1):
                    if (ma & g.label_mask(v, b)).bit_count() > 3:
                        return True
    return False


def absolute_clique_number(
    g: NMGraph, planar: bool | None = None
) -> tuple[int, frozenset[int]]:
    """Largest vertex set inducing an (n,m)-complete graph, and the
    lexicographically least such set.

    When the host graph is planar every candidate set is a planar complete
    graph, so a set in which two adjacent vertices share four neighbors with
    identical label pattern can be discarded with all its supersets.
    ``planar=None`` decides planarity itself.
    """
    n = g.order
    if n == 0:
        return 0, frozenset()
    if planar is None:
        from .planarity import is_planar

        planar = is_planar(g)
    rows = [g.row(u) for u in range(n)]
    nbr = [g.neighbor_mask(u) for u in range(n)]
    best_size = 0
    best_mask = 0

    def filter_rest(a_list, a_mask, rest):
        # drop remaining vertices that cannot see some member of the current set
        changed = True
        while changed:
            changed = False
            allowed = a_mask | rest
            for r in _bits(rest):
                if not all(_can_see_within(rows, nbr, r, a, allowed) for a in a_list):
                    rest &= ~(1 << r)
                    changed = True
        return rest

    def members_ok(a_list, allowed):
        for i, u in enumerate(a_list):
            for v in a_list[i + 1 :]:
                if not _can_see_within(rows, nbr, u, v, allowed):
                    return False
        return True

    def rec(a_list, a_mask, rest):
        nonlocal best_size, best_mask
        if len(a_list) + rest.bit_count() <= best_size:
            return
        if not members_ok(a_list, a_mask | rest):
            return
        if not rest:
            best_size, best_mask = len(a_list), a_mask
            return
        v = (rest & -rest).bit_length() - 1
        rest_v = rest & ~(1 << v)
        inc_mask = a_mask | (1 << v)
        if not (planar and _violates_at_most_three(g, inc_mask)):
            inc_list = a_list + [v]
            rec(inc_list, inc_mask, filter_rest(inc_list, inc_mask, rest_v))
        rec(a_list, a_mask, rest_v)

    rec([], 0, (1 << n) - 1)
    return best_size, frozenset(_bits(best_mask))
