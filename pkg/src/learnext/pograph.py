"""Fuzzy partial-ordering graph over a corpus of learning materials.

Material ``s1`` is fuzzily harder than ``s2`` when the distinct concepts of
``s1`` cover at least a proportion ``alpha`` of the distinct concepts of
``s2`` and the media features of ``s1`` dominate those of ``s2``. The raw
relation this induces is not guaranteed acyclic (mutual coverage above
``alpha`` is common), so strongly connected components are condensed into
equivalence classes of interchangeable difficulty before the edge set is
reduced to "directly harder than" pairs.

Edges are stored harder -> easier. Reachability indices are expanded back to
material granularity, with equivalence-class siblings mutually reachable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .corpus import Corpus, Material, Media, corpus_digest

DEFAULT_ALPHA = 0.8

Pair = tuple[str, str]


class GraphError(ValueError):
    """Raised on invalid graph parameters or a corrupt/mismatched graph file."""


@dataclass(frozen=True)
class GraphConfig:
    """Graph construction parameters. ``alpha`` is the coverage proportion a
    harder material must reach over an easier one's distinct concepts."""

    alpha: float = DEFAULT_ALPHA

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise GraphError(f"alpha must be in (0, 1], got {self.alpha}")


def coverage(s1: Material, s2: Material) -> float:
    """Fraction of s2's distinct concepts that also occur in s1."""
    inter = len(s1.distinct_concepts & s2.distinct_concepts)
    return inter / len(s2.distinct_concepts)


def media_dominates(s1: Material, s2: Material) -> bool:
    """Whether s1's media features allow it to be harder than s2.

    Pairs involving a text compare on vocabulary alone. Audio/audio and
    audio/video pairs require s1 to speak at least as fast. Video/video pairs
    additionally require that s1 is not subtitled while s2 is not: a subtitled
    video is never harder than an unsubtitled one on the subtitle dimension.
    """
    if s1.media is Media.TEXT or s2.media is Media.TEXT:
        return True
    if s1.speaking_rate < s2.speaking_rate:
        return False
    if s1.media is Media.VIDEO and s2.media is Media.VIDEO:
        return not (s1.has_subtitles and not s2.has_subtitles)
    return True


def fuzzy_harder(s1: Material, s2: Material, alpha: float) -> bool:
    """Whether s1 is fuzzily harder than s2 at coverage proportion alpha."""
    if not 0.0 < alpha <= 1.0:
        raise GraphError(f"alpha must be in (0, 1], got {alpha}")
    return coverage(s1, s2) >= alpha and media_dominates(s1, s2)


def _pair_matrices(corpus: Corpus) -> tuple[np.ndarray, np.ndarray]:
    """Pairwise coverage and media-dominance matrices for the whole corpus.

    ``cov[i, j]`` is coverage(m_i, m_j); ``dom[i, j]`` is media_dominates(m_i,
    m_j). This is the O(n^2) hot spot; coverage counts come from one integer
    matrix product over the material/concept incidence matrix, so one call
    serves every alpha in a sweep.
    """
    vocab = sorted(corpus.vocab)
    token_col = {tok: k for k, tok in enumerate(vocab)}
    n = len(corpus)
    incidence = np.zeros((n, len(vocab)), dtype=np.int64)
    for i, mat in enumerate(corpus):
        for tok in mat.distinct_concepts:
            incidence[i, token_col[tok]] = 1

    inter = incidence @ incidence.T
    sizes = incidence.sum(axis=1)
    cov = inter / sizes[np.newaxis, :]

    media = np.array([{"text": 0, "audio": 1, "video": 2}[m.media.value] for m in corpus])
    rates = np.array([m.speaking_rate if m.speaking_rate is not None else 0.0 for m in corpus])
    subs = np.array([m.has_subtitles for m in corpus])

    either_text = (media[:, None] == 0) | (media[None, :] == 0)
    rate_ok = rates[:, None] >= rates[None, :]
    both_video = (media[:, None] == 2) & (media[None, :] == 2)
    sub_ok = ~(subs[:, None] & ~subs[None, :])
    dom = either_text | (rate_ok & (~both_video | sub_ok))
    return cov, dom


def _relation_from_matrices(
    cov: np.ndarray, dom: np.ndarray, alpha: float
) -> list[tuple[int, int]]:
    mask = (cov >= alpha) & dom
    np.fill_diagonal(mask, False)
    return [(int(i), int(j)) for i, j in np.argwhere(mask)]


def build_relation(corpus: Corpus, config: GraphConfig) -> set[Pair]:
    """All ordered pairs (harder_id, easier_id) under the fuzzy-harder test."""
    cov, dom = _pair_matrices(corpus)
    ids = corpus.ids
    return {(ids[i], ids[j]) for i, j in _relation_from_matrices(cov, dom, config.alpha)}


def resolve_cycles(
    relation: Iterable[Pair], nodes: Iterable[str] | None = None
) -> tuple[list[tuple[str, ...]], set[tuple[int, int]]]:
    """Condense the relation digraph into equivalence classes.

    Strongly connected components become classes of mutually-harder (hence
    interchangeable) materials. Returns the classes, each sorted by id and the
    list sorted by smallest member, plus the induced class-index relation,
    which is acyclic by construction. ``nodes`` supplies isolated nodes that
    no relation pair mentions; defaults to the pairs' support.
    """
    pairs = list(relation)
    node_set = set(nodes) if nodes is not None else set()
    for h, e in pairs:
        node_set.add(h)
        node_set.add(e)
    succ: dict[str, list[str]] = {v: [] for v in sorted(node_set)}
    for h, e in pairs:
        succ[h].append(e)

    components = _tarjan_scc(succ)
    classes = sorted((tuple(sorted(comp)) for comp in components), key=lambda c: c[0])
    class_of = {v: idx for idx, members in enumerate(classes) for v in members}
    class_rel = {
        (class_of[h], class_of[e]) for h, e in pairs if class_of[h] != class_of[e]
    }
    return classes, class_rel


def _tarjan_scc(succ: dict[str, list[str]]) -> list[list[str]]:
    """Iterative Tarjan strongly-connected components (no recursion limit)."""
    index: dict[str, int] = {}
    lowlink: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    components: list[list[str]] = []
    counter = 0

    for root in succ:
        if root in index:
            continue
        work = [(root, iter(succ[root]))]
        index[root] = lowlink[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for child in it:
                if child not in index:
                    index[child] = lowlink[child] = counter
                    counter += 1
                    stack.append(child)
                    on_stack.add(child)
                    work.append((child, iter(succ[child])))
                    advanced = True
                    break
                if child in on_stack:
                    lowlink[node] = min(lowlink[node], index[child])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[node])
            if lowlink[node] == index[node]:
                comp = []
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    comp.append(member)
                    if member == node:
                        break
                components.append(comp)
    return components


def reduce_relation(relation: Iterable[tuple[int, int]]) -> set[tuple[int, int]]:
    """Keep only the "directly harder than" pairs of an acyclic relation.

    A pair (a, b) survives iff no c exists with (a, c) and (c, b) both in the
    relation. For a transitive relation this is the transitive reduction; the
    fuzzy relation is not always transitive, so reachability over the result
    may strictly exceed the input (downstream inference relies on
    reachability, which always preserves every input pair).
    """
    pairs = set(relation)
    succ: dict[int, set[int]] = {}
    pred: dict[int, set[int]] = {}
    for a, b in pairs:
        succ.setdefault(a, set()).add(b)
        pred.setdefault(b, set()).add(a)
    return {
        (a, b)
        for a, b in pairs
        if not (succ.get(a, set()) & pred.get(b, set()))
    }


def reachability(
    direct_edges: Iterable[tuple[int, int]], classes: Sequence[tuple[str, ...]]
) -> tuple[dict[str, frozenset[str]], dict[str, frozenset[str]]]:
    """Per-material reachability over the reduced class DAG.

    Returns (harder_reach, easier_reach): easier_reach(s) holds every material
    reachable from s, including s's own class siblings and every member of
    each reachable class, excluding s itself; harder_reach is the inverse.
    """
    n_classes = len(classes)
    succ: dict[int, set[int]] = {i: set() for i in range(n_classes)}
    for a, b in direct_edges:
        succ[a].add(b)

    below: list[set[int]] = [set() for _ in range(n_classes)]
    order = _topo_order(succ, n_classes)
    for c in reversed(order):
        reach: set[int] = set()
        for child in succ[c]:
            reach.add(child)
            reach |= below[child]
        below[c] = reach

    easier: dict[str, frozenset[str]] = {}
    harder_sets: dict[str, set[str]] = {m: set() for cls in classes for m in cls}
    for idx, members in enumerate(classes):
        downstream = [m for child in below[idx] for m in classes[child]]
        for m in members:
            reach_m = set(downstream)
            reach_m.update(sib for sib in members if sib != m)
            easier[m] = frozenset(reach_m)
            for t in reach_m:
                harder_sets[t].add(m)
    harder = {m: frozenset(s) for m, s in harder_sets.items()}
    return harder, easier


def _topo_order(succ: dict[int, set[int]], n: int) -> list[int]:
    indeg = [0] * n
    for a in succ:
        for b in succ[a]:
            indeg[b] += 1
    frontier = [i for i in range(n) if indeg[i] == 0]
    order: list[int] = []
    while frontier:
        node = frontier.pop()
        order.append(node)
        for child in succ[node]:
            indeg[child] -= 1
            if indeg[child] == 0:
                frontier.append(child)
    if len(order) != n:
        raise GraphError("class relation contains a cycle")
    return order


@dataclass(frozen=True)
class PoGraph:
    """Resolved fuzzy partial-ordering graph with reachability indices."""

    node_ids: tuple[str, ...]
    alpha: float
    relation: frozenset[Pair]
    classes: tuple[tuple[str, ...], ...]
    direct_edges: frozenset[Pair]
    harder_reach: dict[str, frozenset[str]]
    easier_reach: dict[str, frozenset[str]]
    class_of: dict[str, int] = field(init=False, compare=False, repr=False)
    ids_sorted: tuple[str, ...] = field(init=False, compare=False, repr=False)
    index_of: dict[str, int] = field(init=False, compare=False, repr=False)
    easier_matrix: np.ndarray = field(init=False, compare=False, repr=False)
    harder_matrix: np.ndarray = field(init=False, compare=False, repr=False)
    _down_class: dict[int, tuple[int, ...]] = field(
        init=False, compare=False, repr=False
    )
    _directly_easier: dict[str, frozenset[str]] = field(
        init=False, compare=False, repr=False
    )
    _minimal: tuple[str, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        class_of = {m: idx for idx, members in enumerate(self.classes) for m in members}
        rep_class = {members[0]: idx for idx, members in enumerate(self.classes)}
        down: dict[int, set[int]] = {i: set() for i in range(len(self.classes))}
        for h, e in self.direct_edges:
            down[rep_class[h]].add(rep_class[e])
        object.__setattr__(self, "class_of", class_of)
        object.__setattr__(
            self, "_down_class", {c: tuple(sorted(t)) for c, t in down.items()}
        )
        object.__setattr__(
            self,
            "_directly_easier",
            {
                m: frozenset(
                    t for target in down[idx] for t in self.classes[target]
                )
                for idx, members in enumerate(self.classes)
                for m in members
            },
        )
        object.__setattr__(
            self,
            "_minimal",
            tuple(
                sorted(
                    m
                    for idx, members in enumerate(self.classes)
                    if not down[idx]
                    for m in members
                )
            ),
        )
        # dense reach matrices back the vectorized selector scoring
        ids_sorted = tuple(sorted(self.node_ids))
        index_of = {m: i for i, m in enumerate(ids_sorted)}
        n = len(ids_sorted)
        easier = np.zeros((n, n), dtype=np.uint8)
        harder = np.zeros((n, n), dtype=np.uint8)
        for m, i in index_of.items():
            for t in self.easier_reach[m]:
                easier[i, index_of[t]] = 1
            for t in self.harder_reach[m]:
                harder[i, index_of[t]] = 1
        object.__setattr__(self, "ids_sorted", ids_sorted)
        object.__setattr__(self, "index_of", index_of)
        object.__setattr__(self, "easier_matrix", easier)
        object.__setattr__(self, "harder_matrix", harder)

    def directly_easier(self, material_id: str) -> frozenset[str]:
        """Materials one direct edge below ``material_id`` (through classes)."""
        return self._directly_easier[material_id]

    def minimal_materials(self) -> tuple[str, ...]:
        """Materials of classes with no outgoing direct edge (the easiest tier)."""
        return self._minimal

    def stats(self) -> dict:
        return {
            "alpha": self.alpha,
            "nodes": len(self.node_ids),
            "relation_pairs": len(self.relation),
            "edges": len(self.direct_edges),
            "classes": len(self.classes),
        }


def _assemble(
    node_ids: Sequence[str], relation: set[Pair], alpha: float
) -> PoGraph:
    classes, class_rel = resolve_cycles(relation, nodes=node_ids)
    direct_class_edges = reduce_relation(class_rel)
    harder, easier = reachability(direct_class_edges, classes)
    direct_edges = frozenset(
        (classes[a][0], classes[b][0]) for a, b in direct_class_edges
    )
    return PoGraph(
        node_ids=tuple(node_ids),
        alpha=alpha,
        relation=frozenset(relation),
        classes=tuple(classes),
        direct_edges=direct_edges,
        harder_reach=harder,
        easier_reach=easier,
    )


def build_graph(corpus: Corpus, config: GraphConfig | None = None) -> PoGraph:
    """Build the full graph for a corpus: relation, condensation, reduction,
    and reachability."""
    config = config or GraphConfig()
    return _assemble(corpus.ids, build_relation(corpus, config), config.alpha)


def graph_from_relation(
    node_ids: Sequence[str], relation: Iterable[Pair], alpha: float = DEFAULT_ALPHA
) -> PoGraph:
    """Assemble a graph from an explicit relation pair set (tests, tooling)."""
    return _assemble(tuple(node_ids), set(relation), alpha)


def density_sweep(corpus: Corpus, alphas: Sequence[float]) -> list[dict]:
    """Relation/edge/class counts per alpha, from one shared coverage pass."""
    for alpha in alphas:
        if not 0.0 < alpha <= 1.0:
            raise GraphError(f"alpha must be in (0, 1], got {alpha}")
    cov, dom = _pair_matrices(corpus)
    ids = corpus.ids
    rows = []
    for alpha in alphas:
        relation = {
            (ids[i], ids[j]) for i, j in _relation_from_matrices(cov, dom, alpha)
        }
        classes, class_rel = resolve_cycles(relation, nodes=ids)
        direct = reduce_relation(class_rel)
        rows.append(
            {
                "alpha": alpha,
                "relation_count": len(relation),
                "edge_count": len(direct),
                "class_count": len(classes),
            }
        )
    return rows


def save_graph(graph: PoGraph, path: str | Path, corpus_path: str | Path) -> None:
    """Serialize a graph next to the digest of the corpus it was built from.

    Output bytes are deterministic: classes and edges are sorted, JSON keys
    sorted, no whitespace variance.
    """
    payload = {
        "alpha": graph.alpha,
        "corpus_digest": corpus_digest(corpus_path),
        "classes": [list(c) for c in graph.classes],
        "edges": sorted([h, e] for h, e in graph.direct_edges),
    }
    Path(path).write_text(
        json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n",
        encoding="utf-8",
    )


def load_graph(path: str | Path, corpus: Corpus, corpus_path: str | Path) -> PoGraph:
    """Load a graph file, verify it matches the corpus, and rebuild indices.

    The graph is reconstructed from the corpus at the stored alpha (full
    rebuild; reachability indices are not serialized) and cross-checked
    against the stored classes and edges, so a stale or corrupt file fails
    loudly.
    """
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise GraphError(f"graph file is not valid JSON: {exc.msg}") from None
    for key in ("alpha", "corpus_digest", "classes", "edges"):
        if key not in payload:
            raise GraphError(f"graph file missing field {key!r}")
    digest = corpus_digest(corpus_path)
    if payload["corpus_digest"] != digest:
        raise GraphError(
            "graph file was built from a different corpus "
            f"(digest {payload['corpus_digest'][:12]}... != {digest[:12]}...)"
        )
    graph = build_graph(corpus, GraphConfig(alpha=payload["alpha"]))
    if [list(c) for c in graph.classes] != payload["classes"] or sorted(
        [h, e] for h, e in graph.direct_edges
    ) != payload["edges"]:
        raise GraphError("graph file contents do not match a rebuild from the corpus")
    return graph
