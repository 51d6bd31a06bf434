"""Build the difficulty graph for the bundled sample corpus and look around.

Walks through the core ideas: coverage between two materials, the fuzzy
harder-than relation, equivalence classes of interchangeable materials, the
"directly harder than" edges, and how graph density reacts to the coverage
threshold alpha.

Run:  python demos/01_graph_basics.py
"""

from importlib import resources

from learnext import (
    GraphConfig,
    build_graph,
    concept_stats,
    coverage,
    density_sweep,
    load_corpus,
    media_dominates,
)

corpus_path = resources.files("learnext").joinpath("data/sample_corpus.jsonl")
corpus = load_corpus(str(corpus_path))

print("== corpus ==")
for key, value in concept_stats(corpus).items():
    print(f"  {key}: {value}")

print("\n== pairwise comparisons ==")
t04, t03 = corpus["t04"], corpus["t03"]
print(f"  coverage(t04, t03) = {coverage(t04, t03):.2f}  "
      f"(t04's concepts cover all of t03's)")
v02, v01 = corpus["v02"], corpus["v01"]
print(f"  coverage(v02, v01) = {coverage(v02, v01):.2f}, "
      f"media_dominates = {media_dominates(v02, v01)}  "
      f"(faster, unsubtitled video can sit above the subtitled one)")
v01_vs_v02 = media_dominates(v01, v02)
print(f"  media_dominates(v01, v02) = {v01_vs_v02}  "
      f"(a subtitled video is never harder on the subtitle dimension)")

print("\n== graph at the default alpha = 0.8 ==")
graph = build_graph(corpus)
stats = graph.stats()
print(f"  nodes={stats['nodes']} relation_pairs={stats['relation_pairs']} "
      f"direct_edges={stats['edges']} classes={stats['classes']}")
print("  equivalence classes (mutually harder, interchangeable difficulty):")
for members in graph.classes:
    if len(members) > 1:
        print(f"    {' == '.join(members)}")
print("  direct harder -> easier edges:")
for h, e in sorted(graph.direct_edges):
    print(f"    {h} -> {e}")
print(f"  easiest tier (no outgoing edge): {graph.minimal_materials()}")

print("\n== density sweep: relaxing alpha densifies the graph ==")
rows = density_sweep(corpus, [1.0, 0.9, 0.8, 0.7, 0.6])
for row in rows:
    bar = "#" * (row["relation_count"] // 2)
    print(f"  alpha={row['alpha']:.1f}  relation={row['relation_count']:3d}  "
          f"edges={row['edge_count']:3d}  {bar}")
