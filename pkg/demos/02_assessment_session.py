"""Follow one adaptive session turn by turn.

A simulated student who knows the rain/market vocabulary but not the travel
vocabulary works through the sample corpus. Watch the selector switch between
the assessment heuristic (maximize expected newly-classified materials) and
the ZPD recommendation heuristic (directly harder than something already
solved), and watch each response propagate through the graph.

Run:  python demos/02_assessment_session.py
"""

from importlib import resources

from learnext import (
    Mode,
    NoEligibleMaterial,
    SelectorConfig,
    SimStudent,
    balance_probability,
    build_graph,
    init_state,
    load_corpus,
    next_material,
    record_response,
    sim_response,
)
from learnext.simulate import response_rng

corpus_path = resources.files("learnext").joinpath("data/sample_corpus.jsonl")
corpus = load_corpus(str(corpus_path))
graph = build_graph(corpus)

student = SimStudent(
    known_vocab=frozenset(
        {"rain", "umbrella", "station", "food", "market", "price"}
    ),
    beta=0.8,
    noise=0.0,
    seed=11,
)
config = SelectorConfig(mode=Mode.ADAPTIVE, m=6, seed=11)
state = init_state(graph, seed=config.seed)

print(f"student knows: {sorted(student.known_vocab)}")
print(f"balance horizon M = {config.m} "
      "(assessment share decays linearly, 0 after M responses)\n")

turn = 0
while True:
    p_assess = balance_probability(state, config.m)
    try:
        sel = next_material(state, graph, config)
    except NoEligibleMaterial:
        print("every material classified; session complete")
        break
    answer = sim_response(student, corpus[sel.material_id], response_rng(student.seed, turn))
    record_response(state, graph, sel.material_id, answer)
    counts = state.status_counts()
    print(
        f"turn {turn + 1}: p_assess={p_assess:.2f} -> {sel.heuristic_used.value:<14} "
        f"{sel.material_id} ({corpus[sel.material_id].title!r}) "
        f"answer={'understood' if answer else 'not understood'}"
    )
    print(
        f"         solved={counts['observed_solved']} failed={counts['observed_failed']} "
        f"inferred+={counts['inferred_solvable']} inferred-={counts['inferred_unsolvable']} "
        f"unknown={counts['unknown']}"
    )
    turn += 1

print("\nfinal statuses:")
for mat in corpus:
    print(f"  {mat.id}: {state.status[mat.id].value}")
print(f"contradictions observed: {len(state.contradictions)}")
