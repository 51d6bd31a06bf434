"""Shared builders for tests: materials, corpora, and small graphs."""

from __future__ import annotations

import json

import pytest

from learnext.corpus import Corpus, Material, Media
from learnext.pograph import PoGraph, graph_from_relation


def make_material(
    mat_id: str,
    concepts,
    media: str = "text",
    rate: float | None = None,
    subtitles: bool = False,
) -> Material:
    counts: dict[str, int] = {}
    for tok in concepts:
        counts[tok] = counts.get(tok, 0) + 1
    if media != "text" and rate is None:
        rate = 5.0
    return Material(
        id=mat_id,
        media=Media(media),
        concepts=counts,
        title=f"title {mat_id}",
        content=f"content {mat_id}",
        speaking_rate=rate,
        has_subtitles=subtitles,
    )


def text_corpus(concepts_by_id: dict) -> Corpus:
    return Corpus(
        tuple(make_material(mid, toks) for mid, toks in concepts_by_id.items())
    )


def chain_graph(*ids: str) -> PoGraph:
    """Graph where ids[0] is hardest: ids[0] -> ids[1] -> ... -> ids[-1]."""
    relation = {(ids[i], ids[i + 1]) for i in range(len(ids) - 1)}
    return graph_from_relation(ids, relation)


def record_line(
    mat_id="m1",
    media="text",
    concepts=("a", "b"),
    title="t",
    content="c",
    **extra,
) -> str:
    obj = {
        "id": mat_id,
        "media": media,
        "concepts": list(concepts),
        "title": title,
        "content": content,
    }
    obj.update(extra)
    return json.dumps(obj)


@pytest.fixture
def corpus_file(tmp_path):
    """Write JSON-lines records to a temp corpus file and return the path."""

    def _write(lines):
        path = tmp_path / "corpus.jsonl"
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return path

    return _write
