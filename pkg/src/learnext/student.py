"""Per-student knowledge state over the partial-ordering graph.

Every material is tracked as one of five statuses. A solved response marks
everything reachable below as inferred-solvable; a failed response marks
everything reachable above as inferred-unsolvable. Observations and prior
inferences are never overwritten: a response that contradicts an existing
inference (possible because fuzzy edges are fallible) is logged, the direct
observation wins for that one material, and no propagation happens from it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .pograph import PoGraph


class UsageError(RuntimeError):
    """Raised when an operation is applied to a material in the wrong status."""


class KnowledgeStatus(str, Enum):
    UNKNOWN = "unknown"
    INFERRED_SOLVABLE = "inferred_solvable"
    INFERRED_UNSOLVABLE = "inferred_unsolvable"
    OBSERVED_SOLVED = "observed_solved"
    OBSERVED_FAILED = "observed_failed"

    @property
    def observed(self) -> bool:
        return self in (KnowledgeStatus.OBSERVED_SOLVED, KnowledgeStatus.OBSERVED_FAILED)

    @property
    def solvable(self) -> bool:
        return self in (KnowledgeStatus.OBSERVED_SOLVED, KnowledgeStatus.INFERRED_SOLVABLE)

    @property
    def unsolvable(self) -> bool:
        return self in (KnowledgeStatus.OBSERVED_FAILED, KnowledgeStatus.INFERRED_UNSOLVABLE)


@dataclass
class Contradiction:
    """A response that disagreed with a prior inference for the same material."""

    turn: int
    material_id: str
    prior_status: KnowledgeStatus
    solved: bool


@dataclass
class StudentState:
    """Mutable session state: statuses, response counters, presentation order.

    ``n_pos``/``n_neg`` count solved/failed responses; the number of presented
    problems is ``len(presented)``. ``rng_seed`` drives every stochastic choice
    of the owning session.
    """

    status: dict[str, KnowledgeStatus]
    rng_seed: int
    n_pos: int = 0
    n_neg: int = 0
    presented: list[str] = field(default_factory=list)
    contradictions: list[Contradiction] = field(default_factory=list)

    @property
    def n_presented(self) -> int:
        return len(self.presented)

    def status_counts(self) -> dict[str, int]:
        counts = {status.value: 0 for status in KnowledgeStatus}
        for status in self.status.values():
            counts[status.value] += 1
        return counts

    def known_count(self) -> int:
        return sum(1 for s in self.status.values() if s is not KnowledgeStatus.UNKNOWN)

    def solvable_family(self) -> set[str]:
        return {
            m
            for m, s in self.status.items()
            if s is KnowledgeStatus.OBSERVED_SOLVED
            or s is KnowledgeStatus.INFERRED_SOLVABLE
        }

    def snapshot(self) -> dict:
        """JSON-serializable snapshot of the observable state."""
        return {
            "statuses": {m: s.value for m, s in self.status.items()},
            "n_pos": self.n_pos,
            "n_neg": self.n_neg,
            "presented": list(self.presented),
        }


def init_state(graph: PoGraph, seed: int) -> StudentState:
    """Fresh state: every material unknown, counters zero."""
    return StudentState(
        status={m: KnowledgeStatus.UNKNOWN for m in graph.node_ids},
        rng_seed=seed,
    )


def record_response(
    state: StudentState, graph: PoGraph, material_id: str, solved: bool
) -> StudentState:
    """Record a response to a presented material and propagate inferences.

    Mutates ``state`` in place and returns it. Raises :class:`UsageError` for
    materials outside the graph or already answered.
    """
    if material_id not in state.status:
        raise UsageError(f"material {material_id!r} is not in the graph")
    prior = state.status[material_id]
    if prior.observed:
        raise UsageError(f"material {material_id!r} was already answered")

    contradictory = (prior is KnowledgeStatus.INFERRED_SOLVABLE and not solved) or (
        prior is KnowledgeStatus.INFERRED_UNSOLVABLE and solved
    )
    if contradictory:
        state.contradictions.append(
            Contradiction(
                turn=state.n_presented,
                material_id=material_id,
                prior_status=prior,
                solved=solved,
            )
        )

    if solved:
        state.status[material_id] = KnowledgeStatus.OBSERVED_SOLVED
        state.n_pos += 1
        if not contradictory:
            for t in graph.easier_reach[material_id]:
                if state.status[t] is KnowledgeStatus.UNKNOWN:
                    state.status[t] = KnowledgeStatus.INFERRED_SOLVABLE
    else:
        state.status[material_id] = KnowledgeStatus.OBSERVED_FAILED
        state.n_neg += 1
        if not contradictory:
            for t in graph.harder_reach[material_id]:
                if state.status[t] is KnowledgeStatus.UNKNOWN:
                    state.status[t] = KnowledgeStatus.INFERRED_UNSOLVABLE
    state.presented.append(material_id)
    return state


def p_estimate(state: StudentState) -> float:
    """Estimated probability the student solves the next problem: the solved
    fraction of presented problems, 0.5 before any response."""
    total = state.n_pos + state.n_neg
    if total == 0:
        return 0.5
    return state.n_pos / total


def info_gain(state: StudentState, graph: PoGraph, material_id: str) -> tuple[int, int]:
    """(n_plus, n_minus): how many materials become known if ``material_id``
    is solved vs failed — the material itself plus the still-unknown part of
    its reach in each direction."""
    if state.status.get(material_id) is not KnowledgeStatus.UNKNOWN:
        raise UsageError(f"material {material_id!r} does not have unknown status")
    n_plus = 1 + sum(
        1
        for t in graph.easier_reach[material_id]
        if state.status[t] is KnowledgeStatus.UNKNOWN
    )
    n_minus = 1 + sum(
        1
        for t in graph.harder_reach[material_id]
        if state.status[t] is KnowledgeStatus.UNKNOWN
    )
    return n_plus, n_minus


def verify_consistency(state: StudentState, graph: PoGraph) -> None:
    """Check the closure invariants; raises AssertionError on violation.

    Solvable statuses must be downward-closed over easier_reach and
    unsolvable statuses upward-closed over harder_reach, except at materials
    whose direct observation contradicted a prior inference.
    """
    overridden = {c.material_id for c in state.contradictions}
    for m, status in state.status.items():
        if m in overridden:
            continue
        if status.solvable:
            for t in graph.easier_reach[m]:
                assert state.status[t].solvable or t in overridden, (
                    f"{t} below solvable {m} has status {state.status[t]}"
                )
        elif status.unsolvable:
            for t in graph.harder_reach[m]:
                assert state.status[t].unsolvable or t in overridden, (
                    f"{t} above unsolvable {m} has status {state.status[t]}"
                )
    assert state.n_pos == sum(
        1 for s in state.status.values() if s is KnowledgeStatus.OBSERVED_SOLVED
    )
    assert state.n_neg == sum(
        1 for s in state.status.values() if s is KnowledgeStatus.OBSERVED_FAILED
    )
    assert state.n_pos + state.n_neg == len(state.presented)
