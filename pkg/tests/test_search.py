import random
from functools import lru_cache
from pathlib import Path

import pytest

from nmcliques.canonical import canonical_form
from nmcliques.core import NMGraph, NMGraphError, Params, parse_nmg, write_nmg
from nmcliques.planarity import is_outerplanar, is_planar
from nmcliques.search import (
    GraphClass,
    SearchConfig,
    Status,
    complete_labeling,
    read_manifest,
    search_extremal,
    verify_corpus,
    verify_witness,
)
from nmcliques.seeing import is_nm_complete

from oracles import all_graphs, naive_complete

P10 = Params(1, 0)
TRIANGLE = parse_nmg("nmg 1 0 3 3\n0 1 2\n1 2 2\n2 0 2\n")
CORPUS = Path(__file__).resolve().parent.parent / "corpus"


@lru_cache(maxsize=None)
def naive_complete_counts(n, m, cls, max_order):
    """Non-isomorphic complete graphs of the class per order, by brute force."""
    params = Params(n, m)
    counts = []
    for order in range(1, max_order + 1):
        forms = set()
        for g in all_graphs(params, order):
            if cls == "planar" and not is_planar(g):
                continue
            if cls == "outerplanar" and not is_outerplanar(g):
                continue
            if naive_complete(g):
                forms.add(canonical_form(g))
        counts.append(len(forms))
    return counts


def test_config_validation():
    with pytest.raises(NMGraphError):
        SearchConfig(P10, max_order=0)
    with pytest.raises(NMGraphError):
        SearchConfig(P10, thread_count=0)
    with pytest.raises(NMGraphError):
        SearchConfig(P10, time_budget=0)
    with pytest.raises(ValueError):
        SearchConfig(P10, graph_class="toroidal")


def test_directed_triangle_example():
    out = search_extremal(SearchConfig(P10, GraphClass.ANY, 3))
    assert out.best_order == 3 and out.status is Status.EXHAUSTED
    assert write_nmg(out.witness) == write_nmg(TRIANGLE)


def test_k4_endpoint():
    out = search_extremal(SearchConfig(Params(0, 1), GraphClass.PLANAR, 6))
    assert out.best_order == 4 and out.status is Status.EXHAUSTED
    assert out.witness.edge_count() == 6


@pytest.mark.parametrize("cls", ["any", "outerplanar", "planar"])
@pytest.mark.parametrize("nm", [(1, 0), (0, 2)])
def test_complete_counts_match_brute_force(nm, cls):
    max_order = 5 if nm == (1, 0) else 4
    expected = naive_complete_counts(*nm, cls, max_order)
    for pruning in (True, False):
        out = search_extremal(SearchConfig(Params(*nm), cls, max_order, pruning=pruning))
        assert out.status is Status.EXHAUSTED
        assert out.complete_counts == expected
        assert out.best_order == max(k + 1 for k, c in enumerate(expected) if c)


@pytest.mark.slow
def test_outerplanar_golden_values():
    # computed once by this exhaustive search and frozen here
    for nm in [(1, 0), (0, 2)]:
        out = search_extremal(SearchConfig(Params(*nm), "outerplanar", 8, time_budget=600))
        assert out.status is Status.EXHAUSTED
        assert out.best_order == 7
        assert out.level_sizes[-1] == 0


def test_pruned_and_unpruned_agree_on_outerplanar_six():
    a = search_extremal(SearchConfig(P10, "outerplanar", 6))
    b = search_extremal(SearchConfig(P10, "outerplanar", 6, pruning=False))
    assert a.best_order == b.best_order == 6
    assert a.complete_counts == b.complete_counts
    assert write_nmg(a.witness) == write_nmg(b.witness)


def test_budget_exhaustion_is_reported():
    out = search_extremal(SearchConfig(P10, "planar", 7, time_budget=0.05))
    assert out.status is Status.BUDGET_EXHAUSTED
    assert verify_witness(out.witness, "planar").passed


def test_seeds_do_not_change_results():
    outs = [search_extremal(SearchConfig(Params(0, 2), "planar", 5, seed=s)) for s in range(5)]
    assert len({write_nmg(o.witness) for o in outs}) == 1
    assert len({(o.best_order, o.nodes_explored, tuple(o.level_sizes)) for o in outs}) == 1


def test_threads_agree_with_single_thread():
    one = search_extremal(SearchConfig(Params(0, 2), "outerplanar", 6))
    two = search_extremal(SearchConfig(Params(0, 2), "outerplanar", 6, thread_count=2))
    assert one.best_order == two.best_order
    assert one.complete_counts == two.complete_counts
    assert write_nmg(one.witness) == write_nmg(two.witness)


def test_stop_at_bound_caps_planar_search():
    cfg = SearchConfig(P10, "planar", 40, stop_at_bound=True)
    assert cfg.effective_max_order == 15
    assert SearchConfig(P10, "planar", 40).effective_max_order == 40


def test_verify_witness_examples():
    rep = verify_witness(TRIANGLE, "any")
    assert rep.passed and rep.bound == 15 and rep.within_bound
    rng = random.Random(0)
    k5 = NMGraph.from_pairs(
        Params(0, 2), 5, [(u, v, rng.randint(1, 2)) for u in range(5) for v in range(u + 1, 5)]
    )
    rep = verify_witness(k5, "planar")
    assert rep.complete and not rep.class_ok and not rep.passed
    sink = parse_nmg("nmg 1 0 3 2\n0 1 2\n2 1 2\n")
    rep = verify_witness(sink, "any")
    assert not rep.complete and rep.blaming_pair == (0, 2)


def test_verify_witness_excluded_case_has_no_bound():
    k4 = NMGraph.from_pairs(Params(0, 1), 4, [(u, v, 1) for u in range(4) for v in range(u + 1, 4)])
    rep = verify_witness(k4, "planar")
    assert rep.passed and rep.bound is None


def test_complete_labeling_finds_labels():
    octahedron = [(0, c) for c in range(2, 6)] + [(1, c) for c in range(2, 6)]
    octahedron += [(2, 3), (3, 4), (4, 5), (5, 2)]
    for params in (P10, Params(0, 2), Params(1, 1)):
        g = complete_labeling(params, 6, octahedron, seed=1)
        assert g is not None and is_nm_complete(g)
        assert sorted(g.underlying_edges()) == sorted(tuple(sorted(e)) for e in octahedron)


def test_complete_labeling_gives_up_on_far_pairs():
    assert complete_labeling(Params(1, 1), 4, [(0, 1), (1, 2), (2, 3)]) is None
    assert complete_labeling(Params(0, 1), 3, [(0, 1), (1, 2)]) is None


def test_manifest_errors(tmp_path):
    (tmp_path / "manifest.tsv").write_text("file\tn\tm\tclass\tclaimed_order\nx.nmg\t1\t0\n")
    with pytest.raises(NMGraphError):
        read_manifest(tmp_path)


def test_verify_corpus_reports_problems(tmp_path):
    (tmp_path / "tri.nmg").write_bytes(write_nmg(TRIANGLE))
    (tmp_path / "sink.nmg").write_text("nmg 1 0 3 2\n0 1 2\n2 1 2\n")
    (tmp_path / "manifest.tsv").write_text(
        "file\tn\tm\tclass\tclaimed_order\n"
        "tri.nmg\t1\t0\tany\t3\n"
        "tri.nmg\t1\t0\tany\t4\n"
        "sink.nmg\t1\t0\tany\t3\n"
        "missing.nmg\t1\t0\tany\t3\n"
    )
    ok = [r.ok for r in verify_corpus(tmp_path)]
    assert ok == [True, False, False, False]


def test_shipped_corpus_verifies():
    results = verify_corpus(CORPUS)
    assert results and all(r.ok for r in results), [r.problems for r in results if not r.ok]
