"""Compare the four selection strategies on a synthetic corpus.

Runs the same simulated student population through adaptive, pure
recommendation, pure assessment, and random selection, then prints the
per-mode report: how fast each mode classifies 90% of the corpus, how
accurate the propagated inferences are, and how relevant its
recommendations were.

Run:  python demos/03_strategy_comparison.py
"""

from learnext import (
    GraphConfig,
    Mode,
    SelectorConfig,
    build_graph,
    evaluate,
    gen_students,
    gen_synthetic_corpus,
    run_batch,
)

corpus = gen_synthetic_corpus()  # 200 materials, seed 42
graph = build_graph(corpus, GraphConfig(alpha=0.8))
students = gen_students(corpus, n_students=40, seed=7, beta=0.8, noise=0.0)
print(f"corpus: {len(corpus)} materials, graph: {graph.stats()}\n")

traces = []
for mode in Mode:
    config = SelectorConfig(mode=mode, m=50, seed=1000)
    traces.extend(run_batch(graph, corpus, students, config, max_turns=200))

reports = evaluate(traces)
header = (
    f"{'mode':<12} {'turns to 90%':>12} {'reached':>8} {'accuracy':>9} "
    f"{'rec. relevance':>15} {'contradictions':>15}"
)
print(header)
print("-" * len(header))
for mode, rep in reports.items():
    turns = (
        f"{rep['mean_turns_to_90pct']:.1f}"
        if rep["mean_turns_to_90pct"] is not None
        else "n/a"
    )
    rel = (
        f"{rep['mean_recommend_relevance']:.2f}"
        if rep["mean_recommend_relevance"] is not None
        else "n/a"
    )
    print(
        f"{mode:<12} {turns:>12} {rep['reached_90pct']:>8} "
        f"{rep['inference_accuracy']:>9.3f} {rel:>15} "
        f"{rep['contradiction_count']:>15}"
    )

print(
    "\nReading the table: assessment-style selection classifies the corpus in "
    "fewer turns;\nrecommendation-style selection stays near the student's "
    "ZPD boundary (tracked by relevance);\nthe adaptive mode starts like the "
    "former and drifts into the latter as the session grows."
)
