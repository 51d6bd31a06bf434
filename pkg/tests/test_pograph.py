"""Graph construction: coverage, media rules, condensation, reduction,
reachability, density sweeps, and file round-trips.

Oracles here are deliberately independent of the library code: relations are
re-derived with plain set arithmetic, closures with Floyd-Warshall, and
components with a mutual-reachability scan.
"""

from __future__ import annotations

import itertools

import numpy as np
import pytest

from learnext.corpus import Corpus
from learnext.pograph import (
    GraphConfig,
    GraphError,
    build_graph,
    build_relation,
    coverage,
    density_sweep,
    fuzzy_harder,
    graph_from_relation,
    load_graph,
    media_dominates,
    reduce_relation,
    resolve_cycles,
    save_graph,
)
from learnext.simulate import SynthParams, gen_synthetic_corpus

from conftest import make_material, text_corpus


def closure_pairs(pairs, nodes):
    """Floyd-Warshall transitive closure over explicit node list."""
    idx = {v: i for i, v in enumerate(nodes)}
    n = len(nodes)
    reach = [[False] * n for _ in range(n)]
    for a, b in pairs:
        reach[idx[a]][idx[b]] = True
    for k in range(n):
        for i in range(n):
            if reach[i][k]:
                row_k = reach[k]
                row_i = reach[i]
                for j in range(n):
                    if row_k[j]:
                        row_i[j] = True
    return {
        (nodes[i], nodes[j]) for i in range(n) for j in range(n) if reach[i][j]
    }


class TestCoverage:
    def test_full_inclusion(self):
        s1 = make_material("s1", ["a", "b", "c"])
        s2 = make_material("s2", ["a", "b"])
        assert coverage(s1, s2) == 1.0

    def test_partial(self):
        s1 = make_material("s1", ["a", "b"])
        s2 = make_material("s2", ["a", "c", "d", "e"])
        assert coverage(s1, s2) == 0.25

    def test_multiplicities_ignored(self):
        s1 = make_material("s1", ["a", "a", "b"])
        s2 = make_material("s2", ["a", "b", "b", "c"])
        assert coverage(s1, s2) == pytest.approx(2 / 3)

    def test_self_coverage_is_one(self):
        s = make_material("s", ["a", "b", "c"])
        assert coverage(s, s) == 1.0


class TestMediaDominates:
    def test_text_vs_anything(self):
        t = make_material("t", ["a"])
        v = make_material("v", ["a"], media="video", rate=9.0, subtitles=True)
        assert media_dominates(t, v)
        assert media_dominates(v, t)

    def test_audio_pair_compares_rate(self):
        fast = make_material("f", ["a"], media="audio", rate=6.0)
        slow = make_material("s", ["a"], media="audio", rate=4.0)
        assert media_dominates(fast, slow)
        assert not media_dominates(slow, fast)
        assert media_dominates(fast, fast)

    def test_audio_video_pair_compares_rate_only(self):
        audio = make_material("a", ["a"], media="audio", rate=5.0)
        video = make_material("v", ["a"], media="video", rate=5.0, subtitles=True)
        assert media_dominates(audio, video)
        assert media_dominates(video, audio)

    def test_unsubtitled_video_beats_subtitled_at_equal_rate(self):
        plain = make_material("p", ["a"], media="video", rate=5.0, subtitles=False)
        subbed = make_material("s", ["a"], media="video", rate=5.0, subtitles=True)
        assert media_dominates(plain, subbed)

    def test_subtitled_video_never_harder_than_unsubtitled(self):
        subbed = make_material("s", ["a"], media="video", rate=6.0, subtitles=True)
        plain = make_material("p", ["a"], media="video", rate=5.0, subtitles=False)
        assert not media_dominates(subbed, plain)


class TestFuzzyHarder:
    def test_boundary_coverage_counts(self):
        s2 = make_material("s2", list("abcde"))
        s1 = make_material("s1", list("abcdX"))
        assert coverage(s1, s2) == 0.8
        assert fuzzy_harder(s1, s2, 0.8)

    def test_video_pair_fails_on_rate(self):
        s1 = make_material("v1", ["a", "b"], media="video", rate=4.0)
        s2 = make_material("v2", ["a", "b"], media="video", rate=5.0)
        assert not fuzzy_harder(s1, s2, 0.8)

    def test_text_vs_audio_ignores_rate(self):
        s2 = make_material("a2", list("abcdefghij"), media="audio", rate=9.9)
        s1 = make_material("t1", list("abcdefghiX"))
        assert coverage(s1, s2) == 0.9
        assert fuzzy_harder(s1, s2, 0.8)

    def test_alpha_validated(self):
        s = make_material("s", ["a"])
        with pytest.raises(GraphError):
            fuzzy_harder(s, s, 0.0)
        with pytest.raises(GraphError):
            GraphConfig(alpha=1.5)


class TestBuildRelation:
    def test_hand_enumerated_triple(self):
        corpus = text_corpus(
            {"A": ["a", "b", "c", "d"], "B": ["a", "b", "c"], "C": ["a", "b"]}
        )
        relation = build_relation(corpus, GraphConfig(alpha=0.8))
        assert relation == {("A", "B"), ("A", "C"), ("B", "C")}

    def test_alpha_one_equals_set_inclusion(self):
        rng = np.random.default_rng(7)
        mats = {
            f"m{i}": [f"w{k}" for k in rng.choice(12, size=rng.integers(2, 7), replace=False)]
            for i in range(15)
        }
        corpus = text_corpus(mats)
        relation = build_relation(corpus, GraphConfig(alpha=1.0))
        expected = {
            (h, e)
            for h in mats
            for e in mats
            if h != e and set(mats[e]) <= set(mats[h])
        }
        assert relation == expected

    def test_identical_texts_are_mutual(self):
        corpus = text_corpus({"x": ["a", "b"], "y": ["a", "b"]})
        relation = build_relation(corpus, GraphConfig(alpha=0.8))
        assert relation == {("x", "y"), ("y", "x")}

    def test_matches_bruteforce_definition(self):
        corpus = gen_synthetic_corpus(SynthParams(n_materials=40, seed=3))
        for alpha in (1.0, 0.8, 0.65):
            got = build_relation(corpus, GraphConfig(alpha=alpha))
            expected = set()
            for m1, m2 in itertools.permutations(corpus, 2):
                inter = len(m1.distinct_concepts & m2.distinct_concepts)
                if inter / len(m2.distinct_concepts) >= alpha and media_dominates(m1, m2):
                    expected.add((m1.id, m2.id))
            assert got == expected


class TestResolveCycles:
    def test_mutual_pair_collapses(self):
        classes, class_rel = resolve_cycles({("i", "j"), ("j", "i")})
        assert classes == [("i", "j")]
        assert class_rel == set()

    def test_acyclic_relation_gives_singletons(self):
        relation = {("a", "b"), ("b", "c"), ("a", "c")}
        classes, class_rel = resolve_cycles(relation)
        assert classes == [("a",), ("b",), ("c",)]
        idx = {c[0]: i for i, c in enumerate(classes)}
        assert class_rel == {(idx[h], idx[e]) for h, e in relation}

    def test_three_cycle_single_class(self):
        classes, class_rel = resolve_cycles({("i", "j"), ("j", "k"), ("k", "i")})
        assert classes == [("i", "j", "k")]
        assert class_rel == set()

    def test_matches_mutual_reachability_oracle(self):
        rng = np.random.default_rng(11)
        nodes = [f"n{i}" for i in range(12)]
        pairs = {
            (nodes[i], nodes[j])
            for i, j in rng.integers(0, 12, size=(40, 2))
            if i != j
        }
        classes, _ = resolve_cycles(pairs, nodes=nodes)
        reach = closure_pairs(pairs, nodes)
        expected_groups = set()
        for v in nodes:
            group = frozenset(
                [v]
                + [
                    u
                    for u in nodes
                    if u != v and (v, u) in reach and (u, v) in reach
                ]
            )
            expected_groups.add(group)
        assert {frozenset(c) for c in classes} == expected_groups

    def test_isolated_nodes_become_singletons(self):
        classes, _ = resolve_cycles({("a", "b")}, nodes=["a", "b", "lonely"])
        assert ("lonely",) in classes


class TestReduce:
    def test_textbook_reduction(self):
        assert reduce_relation({("A", "B"), ("B", "C"), ("A", "C")}) == {
            ("A", "B"),
            ("B", "C"),
        }

    def test_single_pair_untouched(self):
        assert reduce_relation({("A", "B")}) == {("A", "B")}

    def test_random_dags_preserve_reachability(self):
        rng = np.random.default_rng(5)
        for _ in range(25):
            n = int(rng.integers(5, 21))
            nodes = list(range(n))
            relation = {
                (i, j)
                for i in nodes
                for j in nodes
                if i < j and rng.random() < 0.3
            }
            reduced = reduce_relation(relation)
            assert reduced <= relation
            closure = closure_pairs(reduced, nodes)
            assert relation <= closure


class TestReachability:
    def test_chain(self):
        graph = graph_from_relation("ABC", {("A", "B"), ("B", "C")})
        assert graph.easier_reach["A"] == {"B", "C"}
        assert graph.harder_reach["C"] == {"A", "B"}
        assert graph.easier_reach["C"] == frozenset()

    def test_class_siblings_mutually_reachable(self):
        graph = graph_from_relation(
            ["X1", "X2", "Y"],
            {("X1", "X2"), ("X2", "X1"), ("X1", "Y")},
        )
        assert graph.easier_reach["X1"] == {"X2", "Y"}
        assert graph.easier_reach["X2"] == {"X1", "Y"}
        assert graph.harder_reach["Y"] == {"X1", "X2"}

    def test_diamond(self):
        graph = graph_from_relation(
            "ABCD", {("A", "B"), ("A", "C"), ("B", "D"), ("C", "D")}
        )
        assert graph.harder_reach["D"] == {"A", "B", "C"}
        assert graph.easier_reach["A"] == {"B", "C", "D"}

    def test_reach_sets_are_inverse(self):
        corpus = gen_synthetic_corpus(SynthParams(n_materials=60, seed=9))
        graph = build_graph(corpus)
        for h in graph.node_ids:
            for e in graph.easier_reach[h]:
                assert h in graph.harder_reach[e]
            assert h not in graph.easier_reach[h]
            assert h not in graph.harder_reach[h]

    def test_relation_pairs_stay_reachable(self):
        corpus = gen_synthetic_corpus(SynthParams(n_materials=60, seed=10))
        graph = build_graph(corpus, GraphConfig(alpha=0.7))
        for h, e in graph.relation:
            assert e in graph.easier_reach[h]

    def test_direct_edges_backed_by_relation_pairs(self):
        corpus = gen_synthetic_corpus(SynthParams(n_materials=60, seed=12))
        graph = build_graph(corpus, GraphConfig(alpha=0.6))
        members = {cls[0]: cls for cls in graph.classes}
        for h, e in graph.direct_edges:
            assert any(
                (x, y) in graph.relation
                for x in members[h]
                for y in members[e]
            )

    def test_minimal_materials_have_no_outgoing_edge(self):
        graph = graph_from_relation(
            "ABCD", {("A", "B"), ("B", "C"), ("A", "D")}
        )
        assert graph.minimal_materials() == ("C", "D")


class TestDensitySweep:
    def test_monotone_in_alpha(self):
        corpus = gen_synthetic_corpus(SynthParams(n_materials=50, seed=21))
        rows = density_sweep(corpus, [0.9, 0.8, 0.7])
        assert rows[0]["relation_count"] <= rows[1]["relation_count"]
        assert rows[1]["relation_count"] <= rows[2]["relation_count"]

    def test_alpha_one_no_inclusions_means_empty(self):
        corpus = text_corpus({"x": ["a", "b"], "y": ["b", "c"], "z": ["c", "a"]})
        rows = density_sweep(corpus, [1.0])
        assert rows[0]["relation_count"] == 0

    def test_relation_subset_property(self):
        corpus = gen_synthetic_corpus(SynthParams(n_materials=40, seed=2))
        rel_hi = build_relation(corpus, GraphConfig(alpha=0.9))
        rel_lo = build_relation(corpus, GraphConfig(alpha=0.7))
        assert rel_hi <= rel_lo


class TestGraphFile:
    def test_save_load_round_trip(self, tmp_path):
        from learnext.corpus import dump_corpus

        corpus = gen_synthetic_corpus(SynthParams(n_materials=30, seed=4))
        corpus_path = tmp_path / "corpus.jsonl"
        dump_corpus(corpus, corpus_path)
        graph = build_graph(corpus)
        graph_path = tmp_path / "graph.json"
        save_graph(graph, graph_path, corpus_path)
        loaded = load_graph(graph_path, corpus, corpus_path)
        assert loaded.direct_edges == graph.direct_edges
        assert loaded.classes == graph.classes
        assert loaded.easier_reach == graph.easier_reach

    def test_digest_mismatch_rejected(self, tmp_path):
        from learnext.corpus import dump_corpus

        corpus = gen_synthetic_corpus(SynthParams(n_materials=10, seed=4))
        other = gen_synthetic_corpus(SynthParams(n_materials=10, seed=5))
        p1, p2 = tmp_path / "c1.jsonl", tmp_path / "c2.jsonl"
        dump_corpus(corpus, p1)
        dump_corpus(other, p2)
        graph_path = tmp_path / "graph.json"
        save_graph(build_graph(corpus), graph_path, p1)
        with pytest.raises(GraphError, match="different corpus"):
            load_graph(graph_path, other, p2)

    def test_serialization_deterministic(self, tmp_path):
        from learnext.corpus import dump_corpus

        corpus = gen_synthetic_corpus(SynthParams(n_materials=25, seed=6))
        corpus_path = tmp_path / "c.jsonl"
        dump_corpus(corpus, corpus_path)
        p1, p2 = tmp_path / "g1.json", tmp_path / "g2.json"
        save_graph(build_graph(corpus), p1, corpus_path)
        save_graph(build_graph(corpus), p2, corpus_path)
        assert p1.read_bytes() == p2.read_bytes()

    def test_acyclic_class_edges_topologically_sortable(self):
        corpus = gen_synthetic_corpus(SynthParams(n_materials=60, seed=13))
        graph = build_graph(corpus, GraphConfig(alpha=0.6))
        rep = {members[0]: i for i, members in enumerate(graph.classes)}
        indeg = {i: 0 for i in range(len(graph.classes))}
        succ = {i: [] for i in range(len(graph.classes))}
        for h, e in graph.direct_edges:
            succ[rep[h]].append(rep[e])
            indeg[rep[e]] += 1
        frontier = [i for i, d in indeg.items() if d == 0]
        seen = 0
        while frontier:
            node = frontier.pop()
            seen += 1
            for child in succ[node]:
                indeg[child] -= 1
                if indeg[child] == 0:
                    frontier.append(child)
        assert seen == len(graph.classes)
