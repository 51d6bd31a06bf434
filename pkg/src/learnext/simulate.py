"""Synthetic corpora and simulated students for desk-scale validation.

The generator draws each material's distinct-concept set from a Zipf
distribution over a synthetic vocabulary, mirroring natural-language frequency
skew, and assigns media features per a configurable mix. Simulated students
know a frequency-ranked slice of the vocabulary and comprehend a material when
their known share of its distinct concepts reaches a threshold ``beta``;
responses optionally flip with a small noise probability.

Sessions pair the selector loop with a simulated student and record a
per-turn trace plus a terminal summary, including how well the inferred
statuses match the student's latent comprehension.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .corpus import Corpus, Material, Media
from .pograph import PoGraph
from .selector import (
    Heuristic,
    NoEligibleMaterial,
    SelectorConfig,
    next_material,
)
from .student import KnowledgeStatus, StudentState, init_state, record_response

DEFAULT_BETA = 0.8


@dataclass(frozen=True)
class SynthParams:
    """Synthetic-corpus generator parameters (defaults are the frozen preset
    used throughout the test suite)."""

    n_materials: int = 200
    vocab_size: int = 500
    zipf_exponent: float = 1.4
    length_range: tuple[int, int] = (4, 30)
    media_mix: tuple[float, float, float] = (0.7, 0.15, 0.15)
    rate_range: tuple[float, float] = (3.0, 9.0)
    subtitle_probability: float = 0.5
    seed: int = 42

    def __post_init__(self):
        if self.n_materials < 1:
            raise ValueError("n_materials must be >= 1")
        if self.length_range[0] < 1 or self.length_range[0] > self.length_range[1]:
            raise ValueError("length_range must satisfy 1 <= min <= max")
        if self.length_range[1] > self.vocab_size:
            raise ValueError("length_range max cannot exceed vocab_size")
        if abs(sum(self.media_mix) - 1.0) > 1e-9:
            raise ValueError("media_mix proportions must sum to 1")


def gen_synthetic_corpus(params: SynthParams | None = None) -> Corpus:
    """Deterministic synthetic corpus; identical params give identical bytes
    when serialized."""
    params = params or SynthParams()
    rng = np.random.default_rng(params.seed)
    ranks = np.arange(1, params.vocab_size + 1)
    weights = ranks ** (-params.zipf_exponent)
    weights /= weights.sum()
    tokens = [f"w{k:04d}" for k in ranks]
    width = len(str(params.n_materials))

    materials = []
    for i in range(params.n_materials):
        length = int(rng.integers(params.length_range[0], params.length_range[1] + 1))
        drawn = rng.choice(params.vocab_size, size=length, replace=False, p=weights)
        concepts = {tokens[k]: 1 for k in sorted(drawn)}
        media = Media(["text", "audio", "video"][rng.choice(3, p=params.media_mix)])
        rate = None
        subtitles = False
        if media is not Media.TEXT:
            rate = round(float(rng.uniform(*params.rate_range)), 2)
            if media is Media.VIDEO:
                subtitles = bool(rng.random() < params.subtitle_probability)
        mat_id = f"m{i + 1:0{width}d}"
        materials.append(
            Material(
                id=mat_id,
                media=media,
                concepts=concepts,
                title=f"Synthetic {media.value} {i + 1}",
                content=" ".join(sorted(concepts)),
                speaking_rate=rate,
                has_subtitles=subtitles,
            )
        )
    return Corpus(tuple(materials))


@dataclass(frozen=True)
class SimStudent:
    """Latent student: a known-vocabulary set plus a comprehension threshold."""

    known_vocab: frozenset[str]
    beta: float = DEFAULT_BETA
    noise: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.beta <= 1.0:
            raise ValueError("beta must be in (0, 1]")
        if not 0.0 <= self.noise < 0.5:
            raise ValueError("noise must be in [0, 0.5)")

    def comprehends(self, material: Material) -> bool:
        """Noiseless latent comprehension: known share of the material's
        distinct concepts reaches beta."""
        known = len(material.distinct_concepts & self.known_vocab)
        return known / len(material.distinct_concepts) >= self.beta


def gen_students(
    corpus: Corpus,
    n_students: int,
    seed: int,
    beta: float = DEFAULT_BETA,
    noise: float = 0.0,
) -> list[SimStudent]:
    """Students with frequency-ranked vocabularies of varying size.

    Each student knows the top fraction of the corpus vocabulary by total
    occurrence count, the fraction drawn uniformly from [0.05, 0.95].
    """
    freq: dict[str, int] = {}
    for mat in corpus:
        for tok, count in mat.concepts.items():
            freq[tok] = freq.get(tok, 0) + count
    ranked = sorted(corpus.vocab, key=lambda t: (-freq[t], t))
    rng = np.random.default_rng(seed)
    students = []
    for i in range(n_students):
        level = float(rng.uniform(0.05, 0.95))
        cutoff = max(1, int(round(level * len(ranked))))
        students.append(
            SimStudent(
                known_vocab=frozenset(ranked[:cutoff]),
                beta=beta,
                noise=noise,
                seed=seed + i,
            )
        )
    return students


def response_rng(seed: int, turn: int) -> random.Random:
    """Per-turn generator for response noise, disjoint from selector streams."""
    return random.Random(f"sim:{seed}:{turn}")


def sim_response(
    student: SimStudent, material: Material, rng: random.Random | None = None
) -> bool:
    """The student's answer for one material: latent comprehension, flipped
    with probability ``noise``."""
    understood = student.comprehends(material)
    if student.noise > 0.0 and rng is not None and rng.random() < student.noise:
        understood = not understood
    return understood


@dataclass(frozen=True)
class TurnRecord:
    turn: int
    material_id: str
    heuristic: Heuristic
    response: bool
    known_after: int
    score: float


@dataclass
class SessionTrace:
    """Per-turn records plus the terminal summary of one simulated session."""

    mode: str
    seed: int
    records: list[TurnRecord] = field(default_factory=list)
    turns: int = 0
    known_fraction: float = 0.0
    turns_to_90pct: int | None = None
    inferred_count: int = 0
    inferred_correct: int = 0
    contradiction_count: int = 0

    @property
    def inference_accuracy(self) -> float:
        """Fraction of inferred statuses matching latent truth; vacuously 1.0
        when nothing was inferred (see ``inferred_count``)."""
        if self.inferred_count == 0:
            return 1.0
        return self.inferred_correct / self.inferred_count


def run_session(
    graph: PoGraph,
    corpus: Corpus,
    student: SimStudent,
    config: SelectorConfig,
    max_turns: int,
) -> SessionTrace:
    """Run one select/respond/update loop until exhaustion or ``max_turns``."""
    if max_turns < 1:
        raise ValueError(f"max_turns must be >= 1, got {max_turns}")
    state = init_state(graph, config.seed)
    trace = SessionTrace(mode=config.mode.value, seed=config.seed)
    n = len(graph.node_ids)
    threshold_90 = 0.9 * n

    for turn in range(max_turns):
        try:
            sel = next_material(state, graph, config)
        except NoEligibleMaterial:
            break
        response = sim_response(
            student, corpus[sel.material_id], response_rng(student.seed, turn)
        )
        record_response(state, graph, sel.material_id, response)
        known = state.known_count()
        trace.records.append(
            TurnRecord(
                turn=turn,
                material_id=sel.material_id,
                heuristic=sel.heuristic_used,
                response=response,
                known_after=known,
                score=sel.score,
            )
        )
        if trace.turns_to_90pct is None and known >= threshold_90:
            trace.turns_to_90pct = turn + 1

    trace.turns = len(trace.records)
    trace.known_fraction = state.known_count() / n
    trace.contradiction_count = len(state.contradictions)
    for m, status in state.status.items():
        if status in (KnowledgeStatus.INFERRED_SOLVABLE, KnowledgeStatus.INFERRED_UNSOLVABLE):
            trace.inferred_count += 1
            latent = student.comprehends(corpus[m])
            if (status is KnowledgeStatus.INFERRED_SOLVABLE) == latent:
                trace.inferred_correct += 1
    return trace


def run_batch(
    graph: PoGraph,
    corpus: Corpus,
    students: Sequence[SimStudent],
    config: SelectorConfig,
    max_turns: int,
) -> list[SessionTrace]:
    """One session per student; session seeds derive as config.seed + index."""
    traces = []
    for i, student in enumerate(students):
        session_config = SelectorConfig(
            mode=config.mode, m=config.m, seed=config.seed + i
        )
        traces.append(run_session(graph, corpus, student, session_config, max_turns))
    return traces


def evaluate(traces: Sequence[SessionTrace]) -> dict[str, dict]:
    """Per-mode aggregates over session traces.

    Latent-truth comparisons are already folded into each trace's summary;
    this only aggregates. Accuracy is the pooled fraction of correct inferred
    statuses; it is reported as 1.0 with ``inferred_count`` 0 when nothing was
    inferred at all (vacuous).
    """
    if not traces:
        raise ValueError("traces must be nonempty")
    by_mode: dict[str, list[SessionTrace]] = {}
    for trace in traces:
        by_mode.setdefault(trace.mode, []).append(trace)

    reports = {}
    for mode, group in sorted(by_mode.items()):
        inferred = sum(t.inferred_count for t in group)
        correct = sum(t.inferred_correct for t in group)
        reached = [t.turns_to_90pct for t in group if t.turns_to_90pct is not None]
        rec_scores = [
            r.score
            for t in group
            for r in t.records
            if r.heuristic is Heuristic.RECOMMENDATION
        ]
        reports[mode] = {
            "mode": mode,
            "n_students": len(group),
            "mean_turns_to_90pct": (sum(reached) / len(reached)) if reached else None,
            "reached_90pct": len(reached),
            "inference_accuracy": (correct / inferred) if inferred else 1.0,
            "inferred_count": inferred,
            "mean_recommend_relevance": (
                sum(rec_scores) / len(rec_scores) if rec_scores else None
            ),
            "contradiction_count": sum(t.contradiction_count for t in group),
        }
    return reports


def write_traces(traces: Sequence[SessionTrace], path: str | Path) -> None:
    """JSON-lines trace dump, one record per turn."""
    with open(path, "w", encoding="utf-8") as handle:
        for i, trace in enumerate(traces):
            for rec in trace.records:
                handle.write(
                    json.dumps(
                        {
                            "session": i,
                            "mode": trace.mode,
                            "turn": rec.turn,
                            "material_id": rec.material_id,
                            "heuristic": rec.heuristic.value,
                            "response": rec.response,
                            "known_after": rec.known_after,
                            "score": rec.score,
                        },
                        sort_keys=True,
                    )
                )
                handle.write("\n")
