"""Loading, validation, and indexing of concept-annotated learning materials.

A corpus is a line-delimited UTF-8 file with one JSON object per line:

    {"id": "m1", "media": "text", "concepts": ["rain", "city"],
     "title": "...", "content": "..."}

Audio and video records additionally carry ``speaking_rate`` (moras per
second); video records may carry ``subtitles``. Concept tokens are opaque
strings; any tokenization or lemmatization happens upstream of this loader.
"""

from __future__ import annotations

import hashlib
import json
import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterator, Mapping

logger = logging.getLogger(__name__)

KNOWN_FIELDS = {"id", "media", "concepts", "speaking_rate", "subtitles", "title", "content"}


class CorpusError(ValueError):
    """Raised when a corpus file is malformed or violates a record invariant."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class Media(str, Enum):
    TEXT = "text"
    AUDIO = "audio"
    VIDEO = "video"


@dataclass(frozen=True)
class Material:
    """One learning item: a text, audio, or video with its concept annotation.

    ``concepts`` keeps multiplicities (used for corpus statistics only);
    difficulty comparisons downstream work on ``distinct_concepts``.
    """

    id: str
    media: Media
    concepts: Mapping[str, int]
    title: str
    content: str
    speaking_rate: float | None = None
    has_subtitles: bool = False
    distinct_concepts: frozenset[str] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "distinct_concepts", frozenset(self.concepts))
        if not self.concepts:
            raise CorpusError(f"material {self.id!r} has no concepts")
        if self.media is Media.TEXT:
            if self.speaking_rate is not None:
                raise CorpusError(f"material {self.id!r}: speaking_rate not allowed for text")
        else:
            if self.speaking_rate is None:
                raise CorpusError(f"material {self.id!r}: speaking_rate required for {self.media.value}")
            if self.speaking_rate < 0:
                raise CorpusError(f"material {self.id!r}: speaking_rate must be >= 0")
        if self.media is not Media.VIDEO and self.has_subtitles:
            raise CorpusError(f"material {self.id!r}: subtitles only allowed for video")


@dataclass(frozen=True)
class Corpus:
    """Immutable ordered collection of materials, indexed by id."""

    materials: tuple[Material, ...]
    index: dict[str, int] = field(init=False)
    vocab: frozenset[str] = field(init=False)

    def __post_init__(self):
        if not self.materials:
            raise CorpusError("corpus must contain at least one material")
        index: dict[str, int] = {}
        vocab: set[str] = set()
        for pos, mat in enumerate(self.materials):
            if mat.id in index:
                raise CorpusError(f"duplicate material id {mat.id!r}")
            index[mat.id] = pos
            vocab.update(mat.distinct_concepts)
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "vocab", frozenset(vocab))

    def __len__(self) -> int:
        return len(self.materials)

    def __iter__(self) -> Iterator[Material]:
        return iter(self.materials)

    def __getitem__(self, material_id: str) -> Material:
        return self.materials[self.index[material_id]]

    def __contains__(self, material_id: str) -> bool:
        return material_id in self.index

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(m.id for m in self.materials)


def _parse_record(obj: dict, line: int) -> Material:
    if not isinstance(obj, dict):
        raise CorpusError("record must be a JSON object", line)

    unknown = set(obj) - KNOWN_FIELDS
    if unknown:
        logger.warning("line %d: ignoring unknown fields %s", line, sorted(unknown))

    def require(name: str, kind, kindname: str):
        if name not in obj:
            raise CorpusError(f"missing required field {name!r}", line)
        value = obj[name]
        if not isinstance(value, kind) or isinstance(value, bool) and kind is not bool:
            raise CorpusError(f"field {name!r} must be a {kindname}", line)
        return value

    mat_id = require("id", str, "string")
    if not mat_id:
        raise CorpusError("field 'id' must be nonempty", line)
    media_raw = require("media", str, "string")
    try:
        media = Media(media_raw)
    except ValueError:
        raise CorpusError(
            f"field 'media' must be one of 'text', 'audio', 'video', got {media_raw!r}", line
        ) from None
    concepts_raw = require("concepts", list, "array")
    if not concepts_raw:
        raise CorpusError("field 'concepts' must be a nonempty array", line)
    if not all(isinstance(c, str) and c for c in concepts_raw):
        raise CorpusError("field 'concepts' must contain nonempty strings", line)
    title = require("title", str, "string")
    content = require("content", str, "string")

    rate = obj.get("speaking_rate")
    if rate is not None and not isinstance(rate, (int, float)) or isinstance(rate, bool):
        raise CorpusError("field 'speaking_rate' must be a number", line)
    if media is Media.TEXT and rate is not None:
        raise CorpusError("field 'speaking_rate' not allowed for media 'text'", line)
    if media is not Media.TEXT and rate is None:
        raise CorpusError(f"field 'speaking_rate' required for media {media.value!r}", line)

    subtitles = obj.get("subtitles", False)
    if not isinstance(subtitles, bool):
        raise CorpusError("field 'subtitles' must be a boolean", line)
    if media is not Media.VIDEO and subtitles:
        raise CorpusError("field 'subtitles' only allowed for media 'video'", line)

    try:
        return Material(
            id=mat_id,
            media=media,
            concepts=dict(Counter(concepts_raw)),
            title=title,
            content=content,
            speaking_rate=float(rate) if rate is not None else None,
            has_subtitles=subtitles,
        )
    except CorpusError as exc:
        raise CorpusError(str(exc), line) from None


def load_corpus(path: str | Path) -> Corpus:
    """Load a corpus from a JSON-lines file.

    Materials keep file order. Raises :class:`CorpusError` with the offending
    line number on malformed JSON, duplicate ids, media/feature mismatches, or
    empty concept lists.
    """
    materials: list[Material] = []
    seen: dict[str, int] = {}
    with open(path, "r", encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"malformed JSON ({exc.msg})", line_no) from None
            mat = _parse_record(obj, line_no)
            if mat.id in seen:
                raise CorpusError(
                    f"duplicate id {mat.id!r} (first seen on line {seen[mat.id]})", line_no
                )
            seen[mat.id] = line_no
            materials.append(mat)
    if not materials:
        raise CorpusError("corpus file contains no records")
    return Corpus(tuple(materials))


def material_to_record(mat: Material) -> dict:
    """Canonical JSON-serializable record for one material."""
    record: dict = {
        "id": mat.id,
        "media": mat.media.value,
        "concepts": sorted(
            (tok for tok, count in mat.concepts.items() for _ in range(count))
        ),
        "title": mat.title,
        "content": mat.content,
    }
    if mat.speaking_rate is not None:
        record["speaking_rate"] = mat.speaking_rate
    if mat.media is Media.VIDEO:
        record["subtitles"] = mat.has_subtitles
    return record


def dump_corpus(corpus: Corpus, path: str | Path) -> None:
    """Write a corpus back to the JSON-lines format, one canonical record per line."""
    with open(path, "w", encoding="utf-8") as handle:
        for mat in corpus:
            handle.write(json.dumps(material_to_record(mat), sort_keys=True))
            handle.write("\n")


def corpus_digest(path: str | Path) -> str:
    """Hex SHA-256 of the raw corpus file bytes (identity check for graph files)."""
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def concept_stats(corpus: Corpus) -> dict:
    """Summary counts: material count, vocabulary size, and a histogram of
    distinct-concept counts per material."""
    histogram = Counter(len(m.distinct_concepts) for m in corpus)
    media_counts = Counter(m.media.value for m in corpus)
    return {
        "materials": len(corpus),
        "vocab_size": len(corpus.vocab),
        "media": dict(media_counts),
        "concept_count_histogram": dict(sorted(histogram.items())),
    }
