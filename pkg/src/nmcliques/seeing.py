"""Special 2-paths, the seeing relation and the two completeness tests.

``u`` sees ``v`` when the two are adjacent or share a neighbor ``w`` whose
label from ``u`` differs from its label from ``v``.  A graph is
(n,m)-complete exactly when every pair of vertices sees each other; the
second test below reaches the same verdict by literally identifying each
pair and inspecting the merged multigraph.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations

from .core import NMGraph, NMGraphError


class SeeKind(str, Enum):
    ADJACENT = "adjacent"
    SPECIAL_PATH = "special-path"


@dataclass(frozen=True)
class SeeWitness:
    kind: SeeKind
    middle: int | None = None
    labels: tuple[int, int] | None = None

    def holds_in(self, g: NMGraph, u: int, v: int) -> bool:
        """Re-check this certificate against ``g``."""
        if self.kind is SeeKind.ADJACENT:
            return g.adjacent(u, v)
        w = self.middle
        if w is None or self.labels is None or w in (u, v):
            return False
        a, b = self.labels
        return a != b and g.label(u, w) == a and g.label(v, w) == b

    def __str__(self):
        if self.kind is SeeKind.ADJACENT:
            return "ADJACENT"
        return f"SPECIAL-PATH via {self.middle} labels {self.labels[0]} {self.labels[1]}"


def _distinct(*vs: int) -> None:
    if len(set(vs)) != len(vs):
        raise NMGraphError(f"vertices {vs} must be distinct")


def is_special_two_path(g: NMGraph, u: int, w: int, v: int) -> tuple[int, int] | None:
    """Label pair ``(label(u,w), label(v,w))`` if ``u w v`` is a special 2-path."""
    _distinct(u, w, v)
    for x in (u, w, v):
        g._check_vertex(x)
    a, b = g.row(u)[w], g.row(v)[w]
    if a and b and a != b:
        return a, b
    return None


def sees(g: NMGraph, u: int, v: int) -> SeeWitness | None:
    _distinct(u, v)
    g._check_vertex(u)
    g._check_vertex(v)
    if g.adjacent(u, v):
        return SeeWitness(SeeKind.ADJACENT)
    ru, rv = g.row(u), g.row(v)
    common = g.neighbor_mask(u) & g.neighbor_mask(v)
    while common:
        low = common & -common
        w = low.bit_length() - 1
        if ru[w] != rv[w]:
            return SeeWitness(SeeKind.SPECIAL_PATH, w, (ru[w], rv[w]))
        common ^= low
    return None


def _sees_fast(g: NMGraph, u: int, v: int) -> bool:
    if g.row(u)[v]:
        return True
    ru, rv = g.row(u), g.row(v)
    common = g.neighbor_mask(u) & g.neighbor_mask(v)
    while common:
        low = common & -common
        w = low.bit_length() - 1
        if ru[w] != rv[w]:
            return True
        common ^= low
    return False


def non_seeing_pairs(g: NMGraph) -> list[tuple[int, int]]:
    return [
        (u, v) for u, v in combinations(range(g.order), 2) if not _sees_fast(g, u, v)
    ]


def is_nm_complete_by_seeing(g: NMGraph) -> tuple[bool, tuple[int, int] | None]:
    """``(True, None)`` or ``(False, least non-seeing pair)``."""
    for u, v in combinations(range(g.order), 2):
        if not _sees_fast(g, u, v):
            return False, (u, v)
    return True, None


def identify(g: NMGraph, u: int, v: int) -> list[tuple[int, int, int]]:
    """Adjacency list of the multigraph obtained by merging ``v`` into ``u``.

    Entries are ``(a, b, label)`` with ``a``/``b`` in the old numbering except
    that ``v`` is replaced by ``u``; parallel entries and loops are kept.
    """
    out = []
    for a, b, lab in g.pairs():
        a2 = u if a == v else a
        b2 = u if b == v else b
        # orient every entry away from the merged vertex when it is involved
        if b2 == u and a2 != u:
            a2, b2, lab = b2, a2, g.row(b)[a]
        out.append((a2, b2, lab))
    return out


def _identification_is_forbidden(g: NMGraph, u: int, v: int) -> bool:
    merged = identify(g, u, v)
    seen: dict[int, set[int]] = {}
    for a, b, lab in merged:
        if a == b:
            return True  # loop
        if a == u:
            seen.setdefault(b, set()).add(lab)
    return any(len(labels) > 1 for labels in seen.values())


def is_nm_complete_by_identification(
    g: NMGraph,
) -> tuple[bool, tuple[int, int] | None]:
    """Completeness via vertex identification.

    A pair may be identified without loss when the merged multigraph has
    no loop and every parallel class of adjacencies carries one label.
    """
    for u, v in combinations(range(g.order), 2):
        if not _identification_is_forbidden(g, u, v):
            return False, (u, v)
    return True, None


def is_nm_complete(g: NMGraph) -> bool:
    return is_nm_complete_by_seeing(g)[0]
