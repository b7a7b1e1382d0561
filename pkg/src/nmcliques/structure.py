"""Structural audit of planar (n,m)-complete graphs.

A graph of domination number two is split around a dominating pair
``x, y`` chosen with the most common neighbors:

* ``C``      common neighbors of ``x`` and ``y``, split by label pair into
  ``C[a, b]`` (``a``-neighbors of ``x`` that are ``b``-neighbors of ``y``);
* ``S_x``    private neighbors of ``x``, split by label into ``S_x[a]``;
  likewise ``S_y``;
* ``E``      excess common neighbors: ``c`` in ``C[a, b]`` with ``S_x[a]``
  or ``S_y[b]`` non-empty;
* ``i, j``   number of labels used by ``x`` (resp. ``y``) towards private
  neighbors, normalized so that ``i >= j``; ``s_max`` is the largest
  ``|S_y[b]|``.

With ``|C| = k >= 2`` a planar embedding cuts the plane into ``k`` regions
bounded by the 4-cycles ``x c[t-1] y c[t]``.  Every counting inequality
below is evaluated on the graph as given and reported with its hypothesis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .core import NMGraph, NMGraphError, order_bound
from .planarity import RotationSystem, embed, face_darts, is_planar
from .seeing import is_nm_complete_by_identification, is_nm_complete_by_seeing


class NotApplicableError(NMGraphError):
    pass


# -- domination ---------------------------------------------------------------


@dataclass(frozen=True)
class DominatingPair:
    x: int
    y: int
    common: frozenset[int]
    dominating_vertex: int | None = None

    @property
    def k(self) -> int:
        return len(self.common)


def dominating_vertex(g: NMGraph) -> int | None:
    full = (1 << g.order) - 1
    for v in range(g.order):
        if g.neighbor_mask(v) | (1 << v) == full:
            return v
    return None


def dominating_pair(g: NMGraph) -> DominatingPair | None:
    """Dominating pair with the most common neighbors (least ``(x, y)`` on ties)."""
    full = (1 << g.order) - 1
    best = None
    for x, y in combinations(range(g.order), 2):
        cover = g.neighbor_mask(x) | g.neighbor_mask(y) | (1 << x) | (1 << y)
        if cover != full:
            continue
        common = (g.neighbor_mask(x) & g.neighbor_mask(y)).bit_count()
        if best is None or common > best[0]:
            best = (common, x, y)
    if best is None:
        return None
    _, x, y = best
    return DominatingPair(x, y, _common(g, x, y), dominating_vertex(g))


def _common(g: NMGraph, x: int, y: int) -> frozenset[int]:
    return frozenset(w for w in range(g.order) if g.adjacent(x, w) and g.adjacent(y, w))


def _is_dominating(g: NMGraph, x: int, y: int) -> bool:
    full = (1 << g.order) - 1
    return g.neighbor_mask(x) | g.neighbor_mask(y) | (1 << x) | (1 << y) == full


# -- decomposition ------------------------------------------------------------


@dataclass(frozen=True)
class Decomposition:
    pair: DominatingPair
    c_by_labels: dict[tuple[int, int], frozenset[int]]
    c_x: dict[int, frozenset[int]]
    c_y: dict[int, frozenset[int]]
    s_x: dict[int, frozenset[int]]
    s_y: dict[int, frozenset[int]]
    excess: frozenset[int]
    i: int
    j: int
    s_max: int
    swapped: bool = False

    @property
    def C(self) -> frozenset[int]:
        return self.pair.common

    @property
    def S_x(self) -> frozenset[int]:
        return frozenset().union(*self.s_x.values())

    @property
    def S_y(self) -> frozenset[int]:
        return frozenset().union(*self.s_y.values())

    @property
    def S(self) -> frozenset[int]:
        return self.S_x | self.S_y


def _split(g: NMGraph, x: int, y: int) -> Decomposition:
    p = g.params.p
    C = _common(g, x, y)
    labels = range(1, p + 1)
    c_by = {(a, b): frozenset(c for c in C if g.row(x)[c] == a and g.row(y)[c] == b)
            for a in labels for b in labels}
    c_x = {a: frozenset(c for c in C if g.row(x)[c] == a) for a in labels}
    c_y = {b: frozenset(c for c in C if g.row(y)[c] == b) for b in labels}
    s_x = {a: frozenset(w for w in g.alpha_neighbors(x, a) if w not in C and w != y)
           for a in labels}
    s_y = {b: frozenset(w for w in g.alpha_neighbors(y, b) if w not in C and w != x)
           for b in labels}
    excess = frozenset(
        c for (a, b), part in c_by.items() for c in part if s_x[a] or s_y[b]
    )
    i = sum(1 for a in labels if s_x[a])
    j = sum(1 for b in labels if s_y[b])
    s_max = max((len(s) for s in s_y.values()), default=0)
    pair = DominatingPair(x, y, C, dominating_vertex(g))
    return Decomposition(pair, c_by, c_x, c_y, s_x, s_y, excess, i, j, s_max)


def decompose(g: NMGraph, pair: DominatingPair) -> Decomposition:
    """Split ``g`` around ``pair``; roles of ``x`` and ``y`` swap when needed for ``i >= j``."""
    if pair.x == pair.y or not _is_dominating(g, pair.x, pair.y):
        raise NMGraphError(f"{{{pair.x}, {pair.y}}} does not dominate the graph")
    dec = _split(g, pair.x, pair.y)
    if dec.i < dec.j:
        sw = _split(g, pair.y, pair.x)
        return Decomposition(**{**sw.__dict__, "swapped": True})
    return dec


# -- regions ------------------------------------------------------------------


@dataclass(frozen=True)
class Region:
    index: int
    boundary: tuple[int, int, int, int]  # (x, c_a, y, c_b)
    angles: dict[int, tuple[int, int]]  # vertex -> (first, last) neighbor, anticlockwise


@dataclass(frozen=True)
class RegionAssignment:
    region_count: int
    c_order: tuple[int, ...]
    regions: tuple[Region, ...]
    placement: dict[int, int]

    @property
    def boundary(self) -> list[tuple[int, int, int, int]]:
        return [r.boundary for r in self.regions]

    def adjacent(self, a: int, b: int) -> bool:
        """Distinct regions whose boundaries share a common neighbor."""
        if a == b:
            return False
        ca = {self.regions[a].boundary[1], self.regions[a].boundary[3]}
        cb = {self.regions[b].boundary[1], self.regions[b].boundary[3]}
        return bool(ca & cb)

    def near(self, a: int, b: int) -> bool:
        return a == b or self.adjacent(a, b)

    def on_boundary(self, v: int, region: int) -> bool:
        return v in self.regions[region].boundary

    def occupied(self, vertices) -> set[int]:
        return {self.placement[v] for v in vertices}


def regions(g: NMGraph, pair: DominatingPair, rs: RotationSystem) -> RegionAssignment:
    """Number ``C`` anticlockwise around ``x`` and place every private neighbor.

    ``R[0]`` is the outer region, bounded by ``x c[0] y c[k-1]``; ``c[0]`` is
    chosen so that this cycle is lexicographically least.  ``R[t]`` is
    bounded by ``x c[t-1] y c[t]``.  A private neighbor ``s`` of ``x``
    lies in the region owning the angle at ``x`` that contains edge ``xs``
    (likewise at ``y``).
    """
    x, y, C = pair.x, pair.y, pair.common
    k = len(C)
    if k < 2:
        raise NotApplicableError(f"regions need at least two common neighbors, got {k}")
    around_x = [w for w in rs.rotations[x] if w in C]
    if len(around_x) != k:
        raise NMGraphError("rotation system does not match the graph")
    start = min(range(k), key=lambda s: (around_x[s], around_x[s - 1]))
    c_order = tuple(around_x[(start + t) % k] for t in range(k))
    index_of = {c: t for t, c in enumerate(c_order)}

    skeleton = rs.restrict_edges([(x, c) for c in C] + [(y, c) for c in C])
    region_of_angle: dict[tuple[int, int], int] = {}
    built: dict[int, Region] = {}
    for walk in face_darts(skeleton):
        if len(walk) != 4:
            continue  # isolated vertices of the skeleton
        angles = {}
        for (a, v), (_, b) in zip(walk, walk[1:] + walk[:1]):
            angles[v] = (a, b)
        if x not in angles:
            continue
        first, last = angles[x]
        t = (index_of[first] + 1) % k
        if c_order[(t - 1) % k] != first or c_order[t] != last:
            raise NMGraphError("rotation system is not planar around the dominating pair")
        a, b = (c_order[0], c_order[-1]) if t == 0 else (c_order[t - 1], c_order[t])
        built[t] = Region(t, (x, a, y, b), angles)
        for v, (a, _) in angles.items():
            region_of_angle[(v, a)] = t
    if len(built) != k:
        raise NMGraphError("rotation system is not planar around the dominating pair")

    placement = {}
    for s in range(g.order):
        if s in C or s in (x, y):
            continue
        d = x if g.adjacent(x, s) else y
        rot = rs.rotations[d]
        pos = rot.index(s)
        a = next(rot[(pos - step) % len(rot)] for step in range(1, len(rot) + 1)
                 if rot[(pos - step) % len(rot)] in C)
        placement[s] = region_of_angle[(d, a)]
    return RegionAssignment(k, c_order, tuple(built[t] for t in range(k)), placement)


def nearest_order(
    g: NMGraph,
    rs: RotationSystem,
    region: Region,
    u: int,
    v: int,
    Z,
) -> list[int]:
    """``Z`` sorted from the 1-nearest to the ``|Z|``-nearest vertex to the edge ``uv``.

    ``uv`` is a boundary edge of ``region`` and every member of ``Z`` lies
    inside the region, adjacent to both ends.  The members form nested
    triangles on ``uv``, so sweeping the rotation at ``u`` from ``v`` into
    the region meets them innermost first.  Reverse the result for the
    farthest ordering.
    """
    Z = set(Z)
    for z in Z:
        if not (g.adjacent(z, u) and g.adjacent(z, v)):
            raise NMGraphError(f"{z} is not adjacent to both {u} and {v}")
    if not g.adjacent(u, v) and u not in region.angles:
        raise NMGraphError(f"{u}{v} is not a boundary edge of region {region.index}")
    if u not in region.angles:
        raise NMGraphError(f"{u} is not on the boundary of region {region.index}")
    first, last = region.angles[u]
    if v == first:
        step, stop = rs.succ, last
    elif v == last:
        step, stop = rs.pred, first
    else:
        raise NMGraphError(f"{u}{v} is not a boundary edge of region {region.index}")
    out = []
    w = step(u, v)
    while w != stop and w != v:
        if w in Z:
            out.append(w)
        w = step(u, w)
    if len(out) != len(Z):
        raise NMGraphError(f"{sorted(Z - set(out))} not inside region {region.index}")
    return out


# -- counting inequalities ----------------------------------------------------


def eval_estimate_C(p: int, i: int, j: int) -> int:
    """Upper bound on the non-excess common neighbors: 3(p-i)(p-j)."""
    if not (0 <= i <= p and 0 <= j <= p):
        raise NMGraphError("need 0 <= i, j <= p")
    return 3 * (p - i) * (p - j)


def eval_estimate_S(p: int, i: int, j: int, s_max: int) -> int:
    """Upper bound on the private neighbors: 3pi + j - (i-j) s_max."""
    if i < j:
        raise NMGraphError("normalize so that i >= j first")
    if s_max < 0:
        raise NMGraphError("s_max must be non-negative")
    return 3 * p * i + j - (i - j) * s_max


def eval_key_bigC(p: int, i: int, j: int, s_max: int, e: int) -> int:
    """Order bound for two-sided private neighbors with ``e`` excess vertices.

    Equals ``2 + eval_estimate_C + e + eval_estimate_S`` rearranged around
    ``3p^2 + p + 1``.  Meaningful only for ``e <= 6``; callers gate on that.
    """
    if i < j:
        raise NMGraphError("normalize so that i >= j first")
    bound = 3 * p * p + p + 1
    return bound - (3 * j * (p - i) + p + (i - j) * s_max - j - e - 1)


@dataclass(frozen=True)
class InequalityReport:
    name: str
    hypothesis_holds: bool
    lhs: int
    rhs: int

    @property
    def satisfied(self) -> bool:
        return not self.hypothesis_holds or self.lhs <= self.rhs

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "hypothesis": self.hypothesis_holds,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "ok": self.satisfied,
        }


def _planar_complete(g: NMGraph) -> bool:
    return is_planar(g) and is_nm_complete_by_seeing(g)[0]


def check_observation_3(g: NMGraph, host_ok: bool | None = None) -> list[InequalityReport]:
    """Common neighbors of two vertices sharing one label pattern, against 3.

    One report per pair with common neighbors and per label pattern that
    occurs.  The hypothesis holds for planar complete graphs when the pair
    is adjacent or has at least six common neighbors.
    """
    if host_ok is None:
        host_ok = _planar_complete(g)
    out = []
    for u, v in combinations(range(g.order), 2):
        common = g.neighbor_mask(u) & g.neighbor_mask(v)
        if not common:
            continue
        hyp = host_ok and (g.adjacent(u, v) or common.bit_count() >= 6)
        counts: dict[tuple[int, int], int] = {}
        for w in range(g.order):
            if common >> w & 1:
                key = (g.row(u)[w], g.row(v)[w])
                counts[key] = counts.get(key, 0) + 1
        for (a, b), c in sorted(counts.items()):
            out.append(InequalityReport(f"alike-common-neighbors[{u},{v}|{a},{b}]", hyp, c, 3))
    return out


def check_trade_offs(
    g: NMGraph,
    dec: Decomposition,
    ra: RegionAssignment | None,
    host_ok: bool | None = None,
) -> list[InequalityReport]:
    """Relations between common-neighbor classes, private classes and regions."""
    if host_ok is None:
        host_ok = _planar_complete(g)
    p = g.params.p
    k = len(dec.C)
    out: list[InequalityReport] = []
    sides = (("x", dec.c_x, dec.s_x), ("y", dec.c_y, dec.s_y))

    for t, cmap, smap in sides:
        for a in range(1, p + 1):
            nc, ns = len(cmap[a]), len(smap[a])
            out.append(InequalityReport(f"crowded-class-no-private[{t}|{a}]",
                                        host_ok and nc >= 5, ns, 0))
            out.append(InequalityReport(f"large-class-few-private[{t}|{a}]",
                                        host_ok and nc >= 4, ns, 2))
            out.append(InequalityReport(f"large-class-few-private-big-common[{t}|{a}]",
                                        host_ok and nc >= 4 and k >= 5, ns, 1))

    both = bool(dec.S_x) and bool(dec.S_y)
    have_regions = host_ok and ra is not None
    spread_all = have_regions and len(ra.occupied(dec.S)) == k
    smax_x = max((len(s) for s in dec.s_x.values()), default=0)
    smax_y = max((len(s) for s in dec.s_y.values()), default=0)
    for a in range(1, p + 1):
        for b in range(1, p + 1):
            union = dec.s_x[a] | dec.s_y[b]
            if not union:
                continue
            out.append(InequalityReport(
                f"private-pair-class-size[{a},{b}]",
                have_regions and k >= 3 and not spread_all, len(union), 3 * p + 1))
            if have_regions:
                occ = sorted(ra.occupied(union))
                out.append(InequalityReport(f"label-class-spread[{a},{b}]", k >= 4, len(occ), 2))
                far = int(len(occ) == 2 and not ra.adjacent(*occ))
                out.append(InequalityReport(f"label-class-spread-adjacent[{a},{b}]",
                                            k >= 4 and len(occ) == 2, far, 0))
    for a in range(1, p + 1):
        hyp = host_ok and k >= 3 and both
        out.append(InequalityReport(f"private-class-tradeoff[x|{a}]", hyp,
                                    len(dec.s_x[a]), 3 * p + 1 - smax_y))
        out.append(InequalityReport(f"private-class-tradeoff[y|{a}]", hyp,
                                    len(dec.s_y[a]), 3 * p + 1 - smax_x))
        out.append(InequalityReport(f"private-class-size[x|{a}]", hyp, len(dec.s_x[a]), 3 * p))
        out.append(InequalityReport(f"private-class-size[y|{a}]", hyp, len(dec.s_y[a]), 3 * p))

    if have_regions:
        out.extend(_region_placement_checks(g, dec, ra))
    return out


def _region_placement_checks(g, dec: Decomposition, ra: RegionAssignment):
    p = g.params.p
    pl = ra.placement
    cross = sum(1 for u in dec.S_x for v in dec.S_y if not ra.near(pl[u], pl[v]))
    same = 0
    for smap in (dec.s_x, dec.s_y):
        for a in range(1, p + 1):
            same += sum(1 for u, v in combinations(sorted(smap[a]), 2)
                        if not ra.near(pl[u], pl[v]))
    out = [
        InequalityReport("private-pairs-far-apart", True, cross, 0),
        InequalityReport("same-label-private-far-apart", True, same, 0),
    ]
    far = 0
    for smap, cmap in ((dec.s_x, dec.c_x), (dec.s_y, dec.c_y)):
        for a in range(1, p + 1):
            for u in smap[a]:
                r = pl[u]
                for c in cmap[a]:
                    if not any(ra.on_boundary(c, q) for q in range(ra.region_count)
                               if ra.near(r, q)):
                        far += 1
    out.append(InequalityReport("private-to-common-far-apart", True, far, 0))
    return out


def excess_window(ra: RegionAssignment, excess) -> int:
    """Shortest run of cyclically consecutive common neighbors containing ``excess``."""
    if not excess:
        return 0
    k = ra.region_count
    pos = sorted(ra.c_order.index(c) for c in excess)
    if len(pos) == 1:
        return 1
    gaps = [(pos[(t + 1) % len(pos)] - pos[t]) % k for t in range(len(pos))]
    return k - max(gaps) + 1


# -- audit --------------------------------------------------------------------


@dataclass
class StructureReport:
    input: str
    valid: bool
    case: str
    quantities: dict[str, int | None]
    bound: int | None
    inequalities: list[InequalityReport]
    verdict: str
    notes: list[str] = field(default_factory=list)
    pair: DominatingPair | None = None
    decomposition: Decomposition | None = None
    region_assignment: RegionAssignment | None = None

    @property
    def violations(self) -> list[InequalityReport]:
        return [r for r in self.inequalities if not r.satisfied]

    def as_dict(self) -> dict:
        return {
            "input": self.input,
            "valid": self.valid,
            "case": self.case,
            "quantities": self.quantities,
            "bound": self.bound,
            "inequalities": [r.as_dict() for r in self.inequalities],
            "verdict": self.verdict,
        }


def is_triangulated(g: NMGraph) -> bool:
    return g.order < 3 or g.edge_count() == 3 * g.order - 6


def _classify(p: int, dec: Decomposition, ra: RegionAssignment | None) -> str:
    k = len(dec.C)
    sx, sy = bool(dec.S_x), bool(dec.S_y)
    if not sx and not sy:
        return "no-private"
    if not (sx and sy):
        return "one-sided-small-common" if k <= 5 else "one-sided-large-common"
    if k <= 2:
        return "two-sided-small-common"
    if k <= 4 and ra is not None and len(ra.occupied(dec.S)) == k:
        return "two-sided-spread"
    i, j, e = dec.i, dec.j, len(dec.excess)
    if i <= p - 2 or (i == p - 1 and j >= 2) or (i == p - 1 and j == 1 and e <= 4):
        return "two-sided-slack"
    if i == p - 1 and j == 1:
        return "two-sided-near-full"
    if i == p and j < p:
        return "two-sided-full-x"
    return "two-sided-full-both"


def audit(g: NMGraph, name: str = "<graph>") -> StructureReport:
    p = g.params.p
    qty: dict[str, int | None] = {"p": p, "k": None, "i": None, "j": None,
                                  "s_max": None, "E": None, "|V|": g.order}
    notes: list[str] = []

    def done(valid, case, bound, ineqs, **extra):
        if not valid:
            verdict = "inapplicable"
        elif any(not r.satisfied for r in ineqs):
            verdict = "refutation"
        else:
            verdict = "consistent"
        return StructureReport(name, valid, case, qty, bound, ineqs, verdict, notes, **extra)

    if g.params.excluded:
        notes.append("(n,m) = (0,1) is outside the scope of the order bound")
        return done(False, "excluded-parameters", None, [])
    bound = order_bound(g.params)
    complete = is_nm_complete_by_seeing(g)[0]
    if complete != is_nm_complete_by_identification(g)[0]:
        raise AssertionError("completeness checkers disagree")
    planar = is_planar(g)
    if not complete:
        notes.append("graph is not (n,m)-complete")
    if not planar:
        notes.append("graph is not planar")
    if not (complete and planar):
        return done(False, "inapplicable", bound, [])
    if not is_triangulated(g):
        notes.append("input is not triangulated; the small-common one-sided count assumes it")

    order_check = InequalityReport("order", True, g.order, bound)
    obs3 = check_observation_3(g, host_ok=True)
    if dominating_vertex(g) is not None:
        return done(True, "dominated", bound, obs3 + [order_check])
    pair = dominating_pair(g)
    if pair is None:
        notes.append("domination number exceeds two")
        return done(True, "undominated", bound, obs3 + [order_check])

    dec = decompose(g, pair)
    k = len(dec.C)
    qty.update(k=k, i=dec.i, j=dec.j, s_max=dec.s_max, E=len(dec.excess))
    rs = embed(g)
    ra = regions(g, dec.pair, rs) if k >= 2 else None
    if ra is None:
        notes.append("fewer than two common neighbors: region checks skipped")
    ineqs = obs3 + check_trade_offs(g, dec, ra, host_ok=True)
    case = _classify(p, dec, ra)
    S, E, C = dec.S, dec.excess, dec.C

    if case == "no-private":
        ineqs.append(InequalityReport("common-size-no-private", k >= 6, k, 3 * p * p))
        ineqs.append(InequalityReport("order-no-private", True, g.order, 2 + max(5, 3 * p * p)))
    elif case == "one-sided-small-common":
        ineqs.append(InequalityReport("private-size-small-common", is_triangulated(g), len(S), 15))
    elif case == "one-sided-large-common":
        for a in range(1, p + 1):
            ineqs.append(InequalityReport(f"class-plus-private[{a}]", True,
                                          len(dec.c_x[a]) + len(dec.s_x[a]), 3 * p))
        ineqs.append(InequalityReport("order-one-sided", True, g.order, 2 + 3 * p * p))
    elif case.startswith("two-sided") and k >= 3 and case != "two-sided-spread":
        # this counting argument is only made for p >= 3; p = 2 rests on earlier results
        scope = p >= 3
        if not scope:
            notes.append("p = 2: two-sided counting inequalities reported with hypothesis off")
        i, j, e = dec.i, dec.j, len(E)
        key = eval_key_bigC(p, i, j, dec.s_max, e)
        ineqs += [
            InequalityReport("excess-size", scope, e, 6),
            InequalityReport("excess-window", scope and ra is not None,
                             excess_window(ra, E) if ra else 0, 6),
            InequalityReport("non-excess-common-size", scope, len(C - E),
                             eval_estimate_C(p, i, j)),
            InequalityReport("private-size", scope, len(S), eval_estimate_S(p, i, j, dec.s_max)),
            InequalityReport("order-excess-bound", scope and e <= 6, g.order, key),
        ]
        if case == "two-sided-slack":
            ineqs.append(InequalityReport("excess-bound-within-order-bound", scope, key, bound))
        elif case == "two-sided-full-x":
            ineqs.append(InequalityReport("all-common-excess", scope, len(C - E), 0))
        elif case == "two-sided-full-both":
            ineqs.append(InequalityReport("order-full-labels", scope, g.order,
                                          eval_key_bigC(p, p, p, dec.s_max, e)))
    ineqs.append(order_check)
    return done(True, case, bound, ineqs, pair=dec.pair, decomposition=dec,
                region_assignment=ra)
