"""Extremal search for planar / outerplanar absolute (n,m)-cliques.

Graphs are grown one vertex at a time; every new vertex is joined to a
non-empty set of earlier vertices, so each level holds connected graphs and
every connected graph is reached through some vertex order (for instance a
breadth-first one).  Levels are deduplicated by canonical form.  Each
partial graph is an induced subgraph of any complete graph it could grow
into, which makes the following prunings sound:

* class membership (planarity and outerplanarity are hereditary);
* in the planar class, two adjacent vertices (or two with six common
  neighbors) share at most three neighbors carrying one label pattern;
* every pair that does not see each other must still be able to gain a new
  common neighbor with distinct labels, within the remaining vertex budget.
"""

from __future__ import annotations

import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from concurrent.futures import TimeoutError as FutureTimeout
from dataclasses import dataclass, field
from enum import Enum
from itertools import product
from pathlib import Path

from .canonical import canonical_form, canonical_graph
from .core import NMGraph, NMGraphError, Params, order_bound, read_nmg
from .planarity import is_outerplanar, is_outerplanar_edges, is_planar, is_planar_edges
from .seeing import is_nm_complete_by_identification, is_nm_complete_by_seeing

log = logging.getLogger(__name__)


class GraphClass(str, Enum):
    PLANAR = "planar"
    OUTERPLANAR = "outerplanar"
    ANY = "any"


class Status(str, Enum):
    EXHAUSTED = "exhausted"
    BUDGET_EXHAUSTED = "budget_exhausted"


@dataclass(frozen=True)
class SearchConfig:
    params: Params
    graph_class: GraphClass = GraphClass.ANY
    max_order: int = 6
    time_budget: float = 60.0
    thread_count: int = 1
    seed: int = 0
    pruning: bool = True
    stop_at_bound: bool = False

    def __post_init__(self):
        object.__setattr__(self, "graph_class", GraphClass(self.graph_class))
        if self.max_order < 1:
            raise NMGraphError("max_order must be at least 1")
        if self.thread_count < 1:
            raise NMGraphError("thread_count must be at least 1")
        if self.time_budget <= 0:
            raise NMGraphError("time_budget must be positive")

    @property
    def effective_max_order(self) -> int:
        if (
            self.stop_at_bound
            and self.graph_class is GraphClass.PLANAR
            and not self.params.excluded
        ):
            return min(self.max_order, order_bound(self.params))
        return self.max_order


@dataclass
class SearchOutcome:
    best_order: int
    witness: NMGraph
    status: Status
    nodes_explored: int
    level_sizes: list[int] = field(default_factory=list)
    complete_counts: list[int] = field(default_factory=list)


@dataclass(frozen=True)
class WitnessReport:
    graph_class: GraphClass
    order: int
    class_ok: bool
    complete_by_seeing: bool
    complete_by_identification: bool
    blaming_pair: tuple[int, int] | None
    bound: int | None
    within_bound: bool | None

    @property
    def complete(self) -> bool:
        return self.complete_by_seeing and self.complete_by_identification

    @property
    def passed(self) -> bool:
        return self.class_ok and self.complete and self.within_bound is not False

    def as_dict(self) -> dict:
        return {
            "class": self.graph_class.value,
            "order": self.order,
            "class_ok": self.class_ok,
            "complete": self.complete,
            "complete_by_seeing": self.complete_by_seeing,
            "complete_by_identification": self.complete_by_identification,
            "blaming_pair": list(self.blaming_pair) if self.blaming_pair else None,
            "bound": self.bound,
            "within_bound": self.within_bound,
            "passed": self.passed,
        }


def in_class(g: NMGraph, graph_class: GraphClass | str) -> bool:
    graph_class = GraphClass(graph_class)
    if graph_class is GraphClass.PLANAR:
        return is_planar(g)
    if graph_class is GraphClass.OUTERPLANAR:
        return is_outerplanar(g)
    return True


def verify_witness(g: NMGraph, graph_class: GraphClass | str = GraphClass.ANY) -> WitnessReport:
    graph_class = GraphClass(graph_class)
    by_seeing, blame = is_nm_complete_by_seeing(g)
    by_ident, blame2 = is_nm_complete_by_identification(g)
    bound = None if g.params.excluded else order_bound(g.params)
    return WitnessReport(
        graph_class=graph_class,
        order=g.order,
        class_ok=in_class(g, graph_class),
        complete_by_seeing=by_seeing,
        complete_by_identification=by_ident,
        blaming_pair=blame or blame2,
        bound=bound,
        within_bound=None if bound is None else g.order <= bound,
    )


# -- search internals ---------------------------------------------------------


def _class_ok_edges(graph_class: GraphClass, edges, order: int) -> bool:
    if graph_class is GraphClass.PLANAR:
        return is_planar_edges(edges, order)
    if graph_class is GraphClass.OUTERPLANAR:
        return is_outerplanar_edges(edges, order)
    return True


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _non_seeing(rows, nbr) -> list[tuple[int, int]]:
    n = len(rows)
    out = []
    for u in range(n):
        ru = rows[u]
        for v in range(u + 1, n):
            if ru[v]:
                continue
            rv = rows[v]
            common = nbr[u] & nbr[v]
            ok = False
            while common:
                low = common & -common
                w = low.bit_length() - 1
                if ru[w] != rv[w]:
                    ok = True
                    break
                common ^= low
            if not ok:
                out.append((u, v))
    return out


def _too_many_alike(rows, nbr, new: int, p: int) -> bool:
    """At-most-three check for every pair whose counts the new vertex changed."""
    n = len(rows)
    nb = _bits(nbr[new])
    pairs = [(new, a) for a in nb]
    pairs += [(a, b) for i, a in enumerate(nb) for b in nb[i + 1 :]]
    for u, v in pairs:
        common = nbr[u] & nbr[v]
        c = common.bit_count()
        if c < 4 or (not rows[u][v] and c < 6):
            continue
        counts: dict[tuple[int, int], int] = {}
        ru, rv = rows[u], rows[v]
        for w in _bits(common):
            key = (ru[w], rv[w])
            counts[key] = counts.get(key, 0) + 1
            if counts[key] > 3:
                return True
    return False


def _colorable(vertices: list[int], conflicts: list[tuple[int, int]], k: int) -> bool:
    """Can the vertices get one of ``k`` labels with conflicting pairs differing?"""
    adj = {v: set() for v in vertices}
    for a, b in conflicts:
        adj[a].add(b)
        adj[b].add(a)
    order = sorted(vertices, key=lambda v: -len(adj[v]))
    col: dict[int, int] = {}

    def go(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for c in range(k):
            if all(col.get(w) != c for w in adj[v]):
                col[v] = c
                if go(i + 1):
                    return True
                del col[v]
        return False

    return go(0)


class _Expander:
    """Generates the surviving children of one partial graph."""

    def __init__(self, config: SearchConfig, max_order: int):
        self.config = config
        self.params = config.params
        self.p = config.params.p
        self.cls = config.graph_class
        self.max_order = max_order
        self.nodes = 0

    def _viable(self, rows, nbr, edges, order: int) -> bool:
        """Necessary conditions for growing into a complete class member."""
        missing = _non_seeing(rows, nbr)
        if not missing:
            return True
        remaining = self.max_order - order
        if remaining <= 0 or self.p < 2:
            return False
        for u, v in missing:
            if not _class_ok_edges(self.cls, edges | {(u, order), (v, order)}, order + 1):
                return False
        if remaining == 1:
            touched = sorted({w for pair in missing for w in pair})
            extra = {(w, order) for w in touched}
            if not _class_ok_edges(self.cls, edges | extra, order + 1):
                return False
            if not _colorable(touched, missing, self.p):
                return False
        return True

    def children(self, g: NMGraph) -> list[tuple[bytes, NMGraph, bool]]:
        t = g.order
        base_rows = [list(g.row(u)) for u in range(t)]
        base_edges = set(g.underlying_edges())
        out = []
        prune = self.config.pruning
        last_level = t + 1 == self.max_order
        labels = list(self.params.labels)
        for mask in range(1, 1 << t):
            nb = _bits(mask)
            edges = base_edges | {(w, t) for w in nb}
            if not _class_ok_edges(self.cls, edges, t + 1):
                continue
            for labs in product(labels, repeat=len(nb)):
                self.nodes += 1
                rows = [r + [0] for r in base_rows]
                rows.append([0] * (t + 1))
                for w, a in zip(nb, labs):
                    rows[t][w] = a
                    rows[w][t] = _rev(a, self.params)
                nbr = [sum(1 << w for w, a in enumerate(r) if a) for r in rows]
                if prune:
                    if self.cls is GraphClass.PLANAR and _too_many_alike(rows, nbr, t, self.p):
                        continue
                    if not self._viable(rows, nbr, edges, t + 1):
                        continue
                complete = not _non_seeing(rows, nbr)
                if last_level and not complete:
                    continue
                child = NMGraph._from_rows(self.params, rows)
                out.append((canonical_form(child), child, complete))
        return out


def _rev(a: int, params: Params) -> int:
    if a > 2 * params.n:
        return a
    return a - 1 if a % 2 == 0 else a + 1


def _expand_chunk(args):
    config, max_order, graphs = args
    ex = _Expander(config, max_order)
    found: dict[bytes, tuple[NMGraph, bool]] = {}
    for g in graphs:
        for key, child, complete in ex.children(g):
            found.setdefault(key, (child, complete))
    return found, ex.nodes


def search_extremal(config: SearchConfig) -> SearchOutcome:
    """Largest (n,m)-complete graph of the configured class up to ``max_order``.

    ``status`` is ``exhausted`` only when every level up to the target order
    (or until a level dies out) was generated completely.
    """
    start = time.monotonic()
    deadline = start + config.time_budget
    max_order = config.effective_max_order
    rng = random.Random(config.seed)
    single = NMGraph.empty(config.params, 1)
    level: dict[bytes, NMGraph] = {canonical_form(single): single}
    best_order, witness = 1, single
    nodes = 1
    sizes = [1]
    counts = [1]
    status = Status.EXHAUSTED
    pool = ProcessPoolExecutor(config.thread_count) if config.thread_count > 1 else None
    try:
        for t in range(1, max_order):
            keys = sorted(level)
            # seed only permutes the processing order; level contents do not depend on it
            rng.shuffle(keys)
            nxt: dict[bytes, tuple[NMGraph, bool]] = {}
            timed_out = False
            if pool is None:
                ex = _Expander(config, max_order)
                for key in keys:
                    if time.monotonic() > deadline:
                        timed_out = True
                        break
                    for ck, child, complete in ex.children(level[key]):
                        nxt.setdefault(ck, (child, complete))
                nodes += ex.nodes
            else:
                chunks = [keys[i :: config.thread_count * 4] for i in range(config.thread_count * 4)]
                jobs = [
                    pool.submit(_expand_chunk, (config, max_order, [level[k] for k in chunk]))
                    for chunk in chunks
                    if chunk
                ]
                for job in jobs:
                    remaining = deadline - time.monotonic()
                    try:
                        found, n_nodes = job.result(timeout=max(remaining, 0.001))
                    except FutureTimeout:
                        timed_out = True
                        for j in jobs:
                            j.cancel()
                        break
                    nodes += n_nodes
                    for ck, val in found.items():
                        nxt.setdefault(ck, val)
            complete_keys = sorted(k for k, (_, c) in nxt.items() if c)
            if complete_keys:
                best_order = t + 1
                witness = canonical_graph(nxt[complete_keys[0]][0])
            sizes.append(len(nxt))
            counts.append(len(complete_keys))
            log.info("order %d: %d graphs, %d complete", t + 1, len(nxt), len(complete_keys))
            if timed_out:
                status = Status.BUDGET_EXHAUSTED
                break
            if not nxt:
                break
            level = {k: g for k, (g, _) in nxt.items()}
    finally:
        if pool is not None:
            pool.shutdown(wait=True, cancel_futures=True)
    report = verify_witness(witness, config.graph_class)
    if not (report.class_ok and report.complete) or witness.order != best_order:
        raise AssertionError(f"search produced an invalid witness: {report}")
    return SearchOutcome(best_order, witness, status, nodes, sizes, counts)


# -- labeling a fixed underlying graph ----------------------------------------


def complete_labeling(
    params: Params,
    order: int,
    edges,
    seed: int = 0,
    max_steps: int = 20_000,
    noise: float = 0.1,
) -> NMGraph | None:
    """Min-conflicts search for labels making the given graph (n,m)-complete.

    Each step picks a non-seeing pair and a common neighbor, and relabels
    one of the two edges through it so the pair sees; the move is kept if
    the number of non-seeing pairs does not grow (or with probability
    ``noise``).  Returns ``None`` if no labeling is found; that is not a
    proof that none exists, except when some non-adjacent pair has no
    common neighbor at all.
    """
    rng = random.Random(seed)
    p = params.p
    rows = [[0] * order for _ in range(order)]
    nbr = [0] * order
    for u, v in edges:
        if u == v or not (0 <= u < order and 0 <= v < order):
            raise NMGraphError(f"bad edge ({u}, {v})")
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u
    if params.excluded:
        return None
    for u in range(order):
        for v in range(u + 1, order):
            if nbr[u] >> v & 1:
                a = rng.randint(1, p)
                rows[u][v], rows[v][u] = a, _rev(a, params)
            elif not nbr[u] & nbr[v]:
                return None

    def set_label(u, v, a):
        rows[u][v], rows[v][u] = a, _rev(a, params)

    bad = _non_seeing(rows, nbr)
    for _ in range(max_steps):
        if not bad:
            return NMGraph._from_rows(params, rows)
        u, v = rng.choice(bad)
        w = rng.choice(_bits(nbr[u] & nbr[v]))
        s, t = (u, v) if rng.random() < 0.5 else (v, u)
        choices = [a for a in range(1, p + 1) if a != rows[t][w] and a != rows[s][w]]
        if not choices:
            continue
        old = rows[s][w]
        set_label(s, w, rng.choice(choices))
        new_bad = _non_seeing(rows, nbr)
        if len(new_bad) <= len(bad) or rng.random() < noise:
            bad = new_bad
        else:
            set_label(s, w, old)
    return NMGraph._from_rows(params, rows) if not bad else None


# -- witness corpus -----------------------------------------------------------


@dataclass(frozen=True)
class CorpusRow:
    file: str
    params: Params
    graph_class: GraphClass
    claimed_order: int


@dataclass
class CorpusResult:
    row: CorpusRow
    ok: bool
    problems: list[str]
    report: WitnessReport | None = None


def read_manifest(directory) -> list[CorpusRow]:
    """Rows of ``manifest.tsv``: ``file  n  m  class  claimed_order``."""
    path = Path(directory) / "manifest.tsv"
    rows = []
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if fields[0] == "file":
            continue
        if len(fields) != 5:
            raise NMGraphError(f"manifest line {lineno}: expected 5 tab-separated fields")
        name, n, m, cls, claimed = fields
        rows.append(CorpusRow(name, Params(int(n), int(m)), GraphClass(cls), int(claimed)))
    return rows


def verify_corpus(directory) -> list[CorpusResult]:
    out = []
    for row in read_manifest(directory):
        problems = []
        try:
            g = read_nmg(Path(directory) / row.file)
        except (OSError, NMGraphError) as exc:
            out.append(CorpusResult(row, False, [f"unreadable: {exc}"]))
            continue
        if g.params != row.params:
            problems.append(f"file has (n,m) = ({g.params.n},{g.params.m})")
        if g.order != row.claimed_order:
            problems.append(f"order {g.order} != claimed {row.claimed_order}")
        rep = verify_witness(g, row.graph_class)
        if not rep.class_ok:
            problems.append(f"not {row.graph_class.value}")
        if not rep.complete:
            problems.append(f"not complete, pair {rep.blaming_pair} does not see")
        if rep.within_bound is False:
            problems.append(f"order {g.order} exceeds bound {rep.bound}")
        out.append(CorpusResult(row, not problems, problems, rep))
    return out
