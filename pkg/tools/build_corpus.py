"""Regenerate corpus/: search witnesses plus labeled random planar graphs.

Run from the repository root: ``python3 tools/build_corpus.py``.
"""

from __future__ import annotations

import random
import sys
from pathlib import Path

import networkx as nx

from nmcliques.core import Params, save_nmg
from nmcliques.search import GraphClass, SearchConfig, complete_labeling, search_extremal
from nmcliques.structure import audit

ROOT = Path(__file__).resolve().parent.parent / "corpus"

SEARCHES = [
    (1, 0, GraphClass.ANY, 5),
    (0, 2, GraphClass.ANY, 5),
    (1, 0, GraphClass.OUTERPLANAR, 7),
    (0, 2, GraphClass.OUTERPLANAR, 7),
    (1, 0, GraphClass.PLANAR, 6),
    (0, 2, GraphClass.PLANAR, 6),
    (1, 1, GraphClass.PLANAR, 5),
    (0, 3, GraphClass.PLANAR, 5),
]

# (n, m, k, stacks, seed, sides, join) reaching the rarer structural cases
CASE_SEEDS = [
    (1, 0, 4, 0, 96136, (0, 1), False),  # no-private
    (0, 2, 5, 4, 8892, (0,), False),  # one-sided-small-common
    (1, 1, 6, 7, 262209, (0, 1), False),  # one-sided-large-common
    (1, 1, 4, 4, 737211, (0, 1), False),  # two-sided-spread
    (0, 3, 6, 5, 565724, (0, 1), True),  # two-sided-near-full
    (1, 0, 4, 5, 491608, (0, 1), True),  # two-sided-full-x
    (0, 2, 4, 5, 479062, (0, 1), True),  # two-sided-full-both
]


def random_triangulation(order: int, rng: random.Random, flips: int) -> nx.Graph:
    """Stacked triangulation followed by random edge flips."""
    g = nx.Graph([(0, 1), (1, 2), (0, 2)])
    faces = [(0, 1, 2), (0, 2, 1)]
    for v in range(3, order):
        a, b, c = faces.pop(rng.randrange(len(faces)))
        g.add_edges_from([(v, a), (v, b), (v, c)])
        faces += [(a, b, v), (b, c, v), (c, a, v)]
    edges = list(g.edges)
    for _ in range(flips):
        u, v = rng.choice(edges)
        common = list(nx.common_neighbors(g, u, v))
        if len(common) != 2:
            continue
        a, b = common
        if g.has_edge(a, b) or g.degree(u) <= 3 or g.degree(v) <= 3:
            continue
        g.remove_edge(u, v)
        g.add_edge(a, b)
        if not nx.check_planarity(g)[0]:
            g.remove_edge(a, b)
            g.add_edge(u, v)
            continue
        edges = list(g.edges)
    return g


def double_cone(k: int, stacks: int, rng: random.Random, sides=(0, 1), join=False) -> nx.Graph:
    """Vertices 0, 1 joined to a k-cycle, then ``stacks`` vertices stacked into
    faces through 0 or 1 (whichever are listed in ``sides``).

    With ``join`` one cycle edge is replaced by the edge 01.
    """
    cyc = list(range(2, k + 2))
    g = nx.Graph()
    faces = []
    for t in range(k):
        a, b = cyc[t], cyc[(t + 1) % k]
        g.add_edges_from([(0, a), (1, a), (a, b)])
        faces += [(0, a, b), (1, b, a)]
    if join:
        a, b = cyc[-1], cyc[0]
        g.remove_edge(a, b)
        g.add_edge(0, 1)
        faces = [f for f in faces if set(f) != {0, a, b} and set(f) != {1, a, b}]
        faces += [(0, a, 1), (1, b, 0)]
    v = k + 2
    for _ in range(stacks):
        options = [f for f in faces if any(s in f for s in sides)]
        f = options[rng.randrange(len(options))]
        faces.remove(f)
        a, b, c = f
        g.add_edges_from([(v, a), (v, b), (v, c)])
        faces += [(a, b, v), (b, c, v), (c, a, v)]
        v += 1
    return g


def labeled_pair_graph(
    params: Params, k: int, stacks: int, seed: int, sides=(0, 1), join=False, attempts=10
):
    rng = random.Random(seed)
    for attempt in range(attempts):
        h = double_cone(k, stacks, rng, sides, join)
        if nx.diameter(h) > 2:
            continue
        g = complete_labeling(params, h.number_of_nodes(), sorted(h.edges),
                              seed=rng.randrange(1 << 30), max_steps=5_000)
        if g is not None:
            return g
    return None


def labeled_planar(params: Params, order: int, seed: int, drop: int = 0):
    rng = random.Random(seed)
    for attempt in range(200):
        h = random_triangulation(order, rng, flips=4 * order)
        for _ in range(drop):
            h.remove_edge(*rng.choice(sorted(h.edges)))
        if not nx.is_connected(h) or nx.diameter(h) > 2:
            continue
        if max(d for _, d in h.degree) == order - 1:
            continue
        g = complete_labeling(params, order, sorted(h.edges), seed=rng.randrange(1 << 30))
        if g is not None:
            return g
    return None


def add_pair_graph(rows, n, m, k, stacks, seed, sides, join) -> None:
    g = labeled_pair_graph(Params(n, m), k, stacks, seed, sides, join)
    if g is None:
        return
    name = f"pair_{n}{m}_{k}_{stacks}_{seed}.nmg"
    save_nmg(g, ROOT / name)
    rows.append((name, n, m, "planar", g.order))
    print(name, audit(g).case, file=sys.stderr)


def main() -> int:
    ROOT.mkdir(exist_ok=True)
    rows = []
    for n, m, cls, k in SEARCHES:
        out = search_extremal(SearchConfig(Params(n, m), cls, k, time_budget=600))
        name = f"search_{n}{m}_{cls.value}_{out.best_order}.nmg"
        save_nmg(out.witness, ROOT / name)
        rows.append((name, n, m, cls.value, out.best_order))
        print(name, out.status.value, file=sys.stderr)
    seed = 0
    for n, m in [(1, 0), (0, 2), (1, 1), (0, 3), (2, 0), (1, 2)]:
        for order in (8, 9, 10, 11, 12):
            for drop in (0, 1):
                seed += 1
                g = labeled_planar(Params(n, m), order, seed, drop)
                if g is None:
                    continue
                name = f"planar_{n}{m}_{order}_{seed}.nmg"
                save_nmg(g, ROOT / name)
                rows.append((name, n, m, "planar", order))
                print(name, audit(g).case, file=sys.stderr)
    for n, m, k, stacks, seed, sides, join in CASE_SEEDS:
        add_pair_graph(rows, n, m, k, stacks, seed, sides, join)
    seed = 1000
    for n, m in [(1, 0), (0, 2), (1, 1), (0, 3)]:
        for k in (3, 4, 5, 6):
            for stacks in (2, 5):
                for join in (False, True):
                    seed += 1
                    add_pair_graph(rows, n, m, k, stacks, seed, (0, 1), join)
    lines = ["file\tn\tm\tclass\tclaimed_order"]
    lines += ["\t".join(map(str, r)) for r in rows]
    (ROOT / "manifest.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
