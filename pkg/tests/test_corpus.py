"""Corpus loading, validation, statistics, and round-trip behavior."""

from __future__ import annotations

import pytest

from learnext.corpus import (
    CorpusError,
    Media,
    concept_stats,
    dump_corpus,
    load_corpus,
)
from learnext.simulate import gen_synthetic_corpus

from conftest import record_line, text_corpus


class TestLoad:
    def test_three_records_keep_file_order(self, corpus_file):
        path = corpus_file(
            [
                record_line("m1", concepts=["a", "b"]),
                record_line("m2", concepts=["b", "c"]),
                record_line("m3", concepts=["c"]),
            ]
        )
        corpus = load_corpus(path)
        assert corpus.ids == ("m1", "m2", "m3")
        assert corpus["m2"].distinct_concepts == {"b", "c"}
        assert corpus.index == {"m1": 0, "m2": 1, "m3": 2}

    def test_duplicate_id_names_offending_line(self, corpus_file):
        path = corpus_file(
            [
                record_line("m1"),
                record_line("m2"),
                record_line("m3"),
                record_line("m1"),
            ]
        )
        with pytest.raises(CorpusError, match="line 4") as exc:
            load_corpus(path)
        assert "m1" in str(exc.value)

    def test_audio_without_speaking_rate_names_field(self, corpus_file):
        path = corpus_file([record_line("a1", media="audio")])
        with pytest.raises(CorpusError, match="speaking_rate"):
            load_corpus(path)

    def test_text_with_speaking_rate_rejected(self, corpus_file):
        path = corpus_file([record_line("t1", media="text", speaking_rate=4.0)])
        with pytest.raises(CorpusError, match="speaking_rate"):
            load_corpus(path)

    def test_empty_concepts_rejected(self, corpus_file):
        path = corpus_file([record_line("m1", concepts=[])])
        with pytest.raises(CorpusError, match="concepts"):
            load_corpus(path)

    def test_subtitles_on_audio_rejected(self, corpus_file):
        path = corpus_file(
            [record_line("a1", media="audio", speaking_rate=4.0, subtitles=True)]
        )
        with pytest.raises(CorpusError, match="subtitles"):
            load_corpus(path)

    def test_malformed_json_cites_line(self, corpus_file):
        path = corpus_file([record_line("m1"), "{not json"])
        with pytest.raises(CorpusError, match="line 2"):
            load_corpus(path)

    def test_unknown_fields_warn_but_load(self, corpus_file, caplog):
        path = corpus_file([record_line("m1", extra_field=1)])
        with caplog.at_level("WARNING"):
            corpus = load_corpus(path)
        assert len(corpus) == 1
        assert "extra_field" in caplog.text

    def test_negative_rate_rejected(self, corpus_file):
        path = corpus_file([record_line("a1", media="audio", speaking_rate=-1.0)])
        with pytest.raises(CorpusError, match="speaking_rate"):
            load_corpus(path)

    def test_video_record_keeps_features(self, corpus_file):
        path = corpus_file(
            [record_line("v1", media="video", speaking_rate=6.5, subtitles=True)]
        )
        mat = load_corpus(path)["v1"]
        assert mat.media is Media.VIDEO
        assert mat.speaking_rate == 6.5
        assert mat.has_subtitles

    def test_multiset_concepts_counted(self, corpus_file):
        path = corpus_file([record_line("m1", concepts=["a", "a", "b"])])
        mat = load_corpus(path)["m1"]
        assert mat.concepts == {"a": 2, "b": 1}
        assert mat.distinct_concepts == {"a", "b"}


class TestRoundTrip:
    def test_dump_then_load_is_identical(self, tmp_path, corpus_file):
        path = corpus_file(
            [
                record_line("m1", concepts=["b", "a", "a"]),
                record_line("a1", media="audio", speaking_rate=5.5, concepts=["x"]),
                record_line("v1", media="video", speaking_rate=7.0, subtitles=True),
            ]
        )
        corpus = load_corpus(path)
        out = tmp_path / "roundtrip.jsonl"
        dump_corpus(corpus, out)
        again = load_corpus(out)
        assert again.ids == corpus.ids
        for mid in corpus.ids:
            a, b = corpus[mid], again[mid]
            assert (a.media, a.concepts, a.speaking_rate, a.has_subtitles) == (
                b.media,
                b.concepts,
                b.speaking_rate,
                b.has_subtitles,
            )

    def test_dump_is_canonical(self, tmp_path):
        corpus = gen_synthetic_corpus()
        p1, p2 = tmp_path / "c1.jsonl", tmp_path / "c2.jsonl"
        dump_corpus(corpus, p1)
        dump_corpus(load_corpus(p1), p2)
        assert p1.read_bytes() == p2.read_bytes()

    def test_load_is_pure_given_bytes(self, corpus_file):
        path = corpus_file([record_line("m1"), record_line("m2", concepts=["q"])])
        c1, c2 = load_corpus(path), load_corpus(path)
        assert c1.ids == c2.ids
        assert all(c1[m].concepts == c2[m].concepts for m in c1.ids)


class TestStats:
    def test_histogram_keyed_by_distinct_count(self):
        corpus = text_corpus({"x": ["a", "b", "c"], "y": ["d", "e", "f"], "z": list("vwxyz")})
        stats = concept_stats(corpus)
        assert stats["materials"] == 3
        assert stats["concept_count_histogram"] == {3: 2, 5: 1}

    def test_single_material_corpus(self):
        corpus = text_corpus({"only": ["a"]})
        assert concept_stats(corpus)["materials"] == 1

    def test_synthetic_vocab_matches_independent_scan(self):
        corpus = gen_synthetic_corpus()
        support = set()
        for mat in corpus:
            support.update(mat.concepts)
        stats = concept_stats(corpus)
        assert stats["vocab_size"] == len(support)
        assert corpus.vocab == frozenset(support)
