"""learnext: graph-based adaptive learning-material assessment and recommendation.

Materials annotated with concept tokens are organized into a fuzzy
partial-ordering graph; interactive sessions assess a student's knowledge
through the graph and recommend materials just beyond what they can already
handle.
"""

from .corpus import (
    Corpus,
    CorpusError,
    Material,
    Media,
    concept_stats,
    corpus_digest,
    dump_corpus,
    load_corpus,
)
from .pograph import (
    DEFAULT_ALPHA,
    GraphConfig,
    GraphError,
    PoGraph,
    build_graph,
    build_relation,
    coverage,
    density_sweep,
    fuzzy_harder,
    graph_from_relation,
    load_graph,
    media_dominates,
    reachability,
    reduce_relation,
    resolve_cycles,
    save_graph,
)
from .selector import (
    DEFAULT_M,
    Heuristic,
    Mode,
    NoEligibleMaterial,
    SelectionResult,
    SelectorConfig,
    assess_select,
    balance_probability,
    next_material,
    recommend_select,
    relevance,
    zpd_candidates,
)
from .simulate import (
    SessionTrace,
    SimStudent,
    SynthParams,
    evaluate,
    gen_students,
    gen_synthetic_corpus,
    run_batch,
    run_session,
    sim_response,
    write_traces,
)
from .student import (
    KnowledgeStatus,
    StudentState,
    UsageError,
    info_gain,
    init_state,
    p_estimate,
    record_response,
    verify_consistency,
)

__version__ = "0.1.0"

__all__ = [
    "Corpus",
    "CorpusError",
    "Material",
    "Media",
    "concept_stats",
    "corpus_digest",
    "dump_corpus",
    "load_corpus",
    "DEFAULT_ALPHA",
    "GraphConfig",
    "GraphError",
    "PoGraph",
    "build_graph",
    "build_relation",
    "coverage",
    "density_sweep",
    "fuzzy_harder",
    "graph_from_relation",
    "load_graph",
    "media_dominates",
    "reachability",
    "reduce_relation",
    "resolve_cycles",
    "save_graph",
    "DEFAULT_M",
    "Heuristic",
    "Mode",
    "NoEligibleMaterial",
    "SelectionResult",
    "SelectorConfig",
    "assess_select",
    "balance_probability",
    "next_material",
    "recommend_select",
    "relevance",
    "zpd_candidates",
    "KnowledgeStatus",
    "StudentState",
    "UsageError",
    "info_gain",
    "init_state",
    "p_estimate",
    "record_response",
    "verify_consistency",
    "SessionTrace",
    "SimStudent",
    "SynthParams",
    "evaluate",
    "gen_students",
    "gen_synthetic_corpus",
    "run_batch",
    "run_session",
    "sim_response",
    "write_traces",
]
