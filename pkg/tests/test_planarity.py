import random
from itertools import combinations

import networkx as nx
import pytest

from nmcliques.core import NMGraph, NMGraphError, Params
from nmcliques.planarity import (
    RotationSystem,
    embed,
    euler_characteristics,
    face_darts,
    faces,
    is_outerplanar,
    is_outerplanar_edges,
    is_planar,
)

from oracles import has_minor, naive_outerplanar, random_graph

P02 = Params(0, 2)


def plain(order, edges, params=P02):
    rng = random.Random(order * 1000 + len(edges))
    return NMGraph.from_pairs(params, order, [(u, v, rng.randint(1, params.p)) for u, v in edges])


def complete(k):
    return plain(k, list(combinations(range(k), 2)))


def bipartite(a, b):
    return plain(a + b, [(u, a + v) for u in range(a) for v in range(b)])


def cycle(k):
    return plain(k, [(t, (t + 1) % k) for t in range(k)])


def test_planarity_examples():
    assert is_planar(complete(4))
    assert not is_planar(complete(5))
    assert not is_planar(bipartite(3, 3))


def test_outerplanarity_examples():
    assert is_outerplanar(cycle(5))
    assert not is_outerplanar(complete(4))
    assert not is_outerplanar(bipartite(2, 3))


def test_embed_examples():
    assert len(faces(embed(complete(4)))) == 4
    tree = plain(5, [(0, 1), (1, 2), (1, 3), (3, 4)])
    assert len(faces(embed(tree))) == 1
    assert embed(complete(5)) is None


def test_face_examples():
    tri = embed(cycle(3))
    assert sorted(len(f) for f in faces(tri)) == [3, 3]
    assert all(len(f) == 3 for f in faces(embed(complete(4))))
    assert sorted(len(f) for f in faces(embed(cycle(4)))) == [4, 4]


def test_outer_face_is_a_longest_face():
    g = plain(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)])
    rs = embed(g)
    fs = faces(rs)
    assert len(fs[rs.outer_face]) == max(len(f) for f in fs)


def test_invalid_rotation_system_rejected():
    with pytest.raises(NMGraphError):
        faces(RotationSystem(2, ((1,), ())))
    with pytest.raises(NMGraphError):
        faces(RotationSystem(2, ((1, 1), (0,))))


def test_restrict_keeps_cyclic_order():
    rs = RotationSystem(4, ((1, 2, 3), (0,), (0,), (0,)))
    assert rs.restrict([0, 1, 3]).rotations[0] == (1, 3)
    assert rs.restrict_edges([(0, 3), (0, 2)]).rotations[0] == (2, 3)


def test_random_graphs_embeddings_and_screens():
    rng = random.Random(21)
    for _ in range(400):
        order = rng.randint(1, 11)
        g = random_graph(P02, order, rng, density=rng.uniform(0.1, 0.7))
        planar = is_planar(g)
        rs = embed(g)
        assert (rs is not None) == planar
        if planar:
            if order >= 3:
                assert g.edge_count() <= 3 * order - 6
            assert all(x == 2 for x in euler_characteristics(rs))
            darts = [d for f in face_darts(rs) for d in f if d[0] != d[1]]
            assert len(darts) == len(set(darts)) == 2 * g.edge_count()
            for f in faces(rs):
                for a, b in zip(f, f[1:] + f[:1]):
                    assert a == b or g.adjacent(a, b)
        if is_outerplanar(g):
            assert planar
            if order >= 2:
                assert g.edge_count() <= 2 * order - 3


def test_planarity_invariant_under_relabeling():
    rng = random.Random(22)
    for _ in range(150):
        order = rng.randint(4, 10)
        g = random_graph(P02, order, rng, density=0.5)
        perm = list(range(order))
        rng.shuffle(perm)
        h = g.relabel(perm)
        assert is_planar(g) == is_planar(h)
        assert is_outerplanar(g) == is_outerplanar(h)


def test_outerplanarity_against_forbidden_minors():
    rng = random.Random(23)
    pairs5 = list(combinations(range(5), 2))
    for mask in range(1 << len(pairs5)):
        edges = [e for i, e in enumerate(pairs5) if mask >> i & 1]
        assert is_outerplanar_edges(edges, 5) == naive_outerplanar(5, edges)
    pairs6 = list(combinations(range(6), 2))
    for _ in range(60):
        edges = [e for e in pairs6 if rng.random() < 0.45]
        assert is_outerplanar_edges(edges, 6) == naive_outerplanar(6, edges)


def test_planarity_against_forbidden_minors():
    rng = random.Random(24)
    pairs = list(combinations(range(6), 2))
    k5, k33 = nx.complete_graph(5), nx.complete_bipartite_graph(3, 3)
    for _ in range(40):
        edges = [e for e in pairs if rng.random() < 0.7]
        es, vs = {frozenset(e) for e in edges}, frozenset(range(6))
        naive = not (has_minor(es, vs, 10, k5) or has_minor(es, vs, 9, k33))
        assert is_planar(plain(6, edges)) == naive
