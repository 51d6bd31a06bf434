"""Next-material selection: adaptive assessment, ZPD recommendation, and the
baseline modes.

The assessment heuristic maximizes the expected number of materials whose
status becomes known: for candidate s with solve probability p it scores
``p * n_plus + (1 - p) * n_minus`` and picks the argmax. The recommendation
heuristic picks, among materials directly harder than something the student
can already solve, the one with the most direct edges into the solvable set.

Adaptive mode draws between the two heuristics with assessment probability
``max(0, 1 - presented / M)``. Note the direction: assessment dominates the
first turns and the share decays linearly, hitting zero once the student has
responded to M materials — from then on every turn is a recommendation.

All stochastic choices derive from (session seed, turn index), so a selection
can be replayed bit-for-bit without threading RNG objects through callers.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .pograph import PoGraph
from .student import KnowledgeStatus, StudentState, p_estimate

DEFAULT_M = 50


class SelectorError(ValueError):
    """Raised on invalid selector configuration."""


class NoEligibleMaterial(RuntimeError):
    """Every material already has a known status; the session is exhausted."""


class Mode(str, Enum):
    ADAPTIVE = "adaptive"
    NON_ADAPTIVE_RECOMMEND = "recommend"
    ASSESSMENT_ONLY = "assessment"
    RANDOM = "random"


class Heuristic(str, Enum):
    ASSESSMENT = "assessment"
    RECOMMENDATION = "recommendation"
    RANDOM = "random"


@dataclass(frozen=True)
class SelectorConfig:
    mode: Mode = Mode.ADAPTIVE
    m: int = DEFAULT_M
    seed: int = 0

    def __post_init__(self):
        if self.m < 1:
            raise SelectorError(f"balance horizon M must be >= 1, got {self.m}")


@dataclass(frozen=True)
class SelectionResult:
    material_id: str
    heuristic_used: Heuristic
    score: float
    candidates_considered: int


def turn_rng(seed: int, turn: int) -> random.Random:
    """Independent generator for one session turn; stable across replays."""
    return random.Random(f"{seed}:{turn}")


def eligible_materials(state: StudentState) -> list[str]:
    """Materials that may still be presented, in id order."""
    return sorted(
        m for m, s in state.status.items() if s is KnowledgeStatus.UNKNOWN
    )


def assess_select(state: StudentState, graph: PoGraph) -> SelectionResult:
    """Pick the eligible material with maximal expected information gain.

    Scores every candidate as p * n_plus + (1 - p) * n_minus in one pass over
    the graph's dense reach matrices; this matches the per-material counts of
    :func:`learnext.student.info_gain` exactly. Ties break to the
    lexicographically smallest id.
    """
    ids = graph.ids_sorted
    unknown = np.fromiter(
        (state.status[m] is KnowledgeStatus.UNKNOWN for m in ids),
        dtype=np.float64,
        count=len(ids),
    )
    eligible_idx = np.flatnonzero(unknown)
    if eligible_idx.size == 0:
        raise NoEligibleMaterial("no unknown material left to assess")
    p = p_estimate(state)
    n_plus = 1.0 + graph.easier_matrix @ unknown
    n_minus = 1.0 + graph.harder_matrix @ unknown
    scores = p * n_plus + (1.0 - p) * n_minus
    best = int(eligible_idx[int(np.argmax(scores[eligible_idx]))])
    return SelectionResult(
        material_id=ids[best],
        heuristic_used=Heuristic.ASSESSMENT,
        score=float(scores[best]),
        candidates_considered=int(eligible_idx.size),
    )


def zpd_candidates(
    state: StudentState, graph: PoGraph, solvable: set[str] | None = None
) -> set[str]:
    """Unknown materials directly harder than something the student can solve.

    Before anything is solvable (cold start), the boundary sits at the bottom
    of the hierarchy: the graph's minimal elements are the candidates.
    ``solvable`` accepts a precomputed solvable family to avoid rescanning.
    """
    if solvable is None:
        solvable = state.solvable_family()
    if not solvable:
        return {
            m
            for m in graph.minimal_materials()
            if state.status[m] is KnowledgeStatus.UNKNOWN
        }
    return {
        m
        for m, s in state.status.items()
        if s is KnowledgeStatus.UNKNOWN and graph.directly_easier(m) & solvable
    }


def relevance(
    material_id: str,
    state: StudentState,
    graph: PoGraph,
    solvable: set[str] | None = None,
) -> int:
    """Number of direct edges from ``material_id`` into the solvable family."""
    if solvable is None:
        solvable = state.solvable_family()
    return len(graph.directly_easier(material_id) & solvable)


def recommend_select(state: StudentState, graph: PoGraph) -> SelectionResult:
    """Pick the most relevant ZPD candidate; fall back to assessment when the
    candidate set is exhausted."""
    solvable = state.solvable_family()
    candidates = zpd_candidates(state, graph, solvable)
    if not candidates:
        return assess_select(state, graph)
    best_id = None
    best_rel = -1
    for m in sorted(candidates):
        rel = relevance(m, state, graph, solvable)
        if rel > best_rel:
            best_id, best_rel = m, rel
    return SelectionResult(
        material_id=best_id,
        heuristic_used=Heuristic.RECOMMENDATION,
        score=float(best_rel),
        candidates_considered=len(candidates),
    )


def balance_probability(state: StudentState, m: int) -> float:
    """Probability of choosing the assessment heuristic this turn: starts at
    1 and decays linearly to 0 after ``m`` presented problems."""
    if m < 1:
        raise SelectorError(f"balance horizon M must be >= 1, got {m}")
    return max(0.0, 1.0 - state.n_presented / m)


def next_material(
    state: StudentState,
    graph: PoGraph,
    config: SelectorConfig,
    rng: random.Random | None = None,
) -> SelectionResult:
    """Select the next material to present under the configured mode.

    ``rng`` defaults to the per-turn generator derived from the session seed
    and the current turn index; pass a stand-in to force coin flips in tests.
    """
    pool = eligible_materials(state)
    if not pool:
        raise NoEligibleMaterial("all materials have known status")
    if rng is None:
        rng = turn_rng(state.rng_seed, state.n_presented)

    if config.mode is Mode.ASSESSMENT_ONLY:
        return assess_select(state, graph)
    if config.mode is Mode.NON_ADAPTIVE_RECOMMEND:
        return recommend_select(state, graph)
    if config.mode is Mode.RANDOM:
        return SelectionResult(
            material_id=pool[rng.randrange(len(pool))],
            heuristic_used=Heuristic.RANDOM,
            score=0.0,
            candidates_considered=len(pool),
        )
    if rng.random() < balance_probability(state, config.m):
        return assess_select(state, graph)
    return recommend_select(state, graph)
