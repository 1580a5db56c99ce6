"""
Ranking candidate groups and scoring the ranking
================================================

All three scorers on a synthetic history with planted accretions, evaluated
by precision and recall of the global top-N list.  The candidate space is
large (every training group times every outside actor), so the useful
comparison is against a random ranking, whose expected precision is the
share of candidates that actually occur.
"""

from groupaccretion.candidates import actual_events, global_metrics, subgroup_count
from groupaccretion.corpus import SplitSpec
from groupaccretion.pipeline import run_scoring, training_view
from groupaccretion.synthetic import generate_corpus

corpus = generate_corpus(n_actors=600, n_train_groups=300, n_test_groups=150, accretion_share=0.4, seed=3)
view = training_view(corpus, SplitSpec(2003, 2007, 2008, 2010))
test = view.local_test_groups()
print(view.n, "training actors,", len(view.groups), "training groups,", len(test), "scorable test groups")

N = 5000
outside = sum(view.n - len(g) for g in view.groups)
print("IA candidates at most", outside, "- SA candidates at most",
      sum((view.n - len(g)) * subgroup_count(len(g)) for g in view.groups))

for method in ("gks", "brws", "glps"):
    result = run_scoring(view, method, ["ia", "sa"], n_top=N, n_top_group=None)
    for mode, ranked in result.global_lists.items():
        n_actual, _ = actual_events(view.groups, test, mode)
        p, r = global_metrics(ranked.keys(), N, test, n_actual)
        print(f"{method} {mode}: precision@{N} {p:.4f}  recall@{N} {r:.3f}  ({n_actual} actual)")

n_ia, _ = actual_events(view.groups, test, "ia")
print(f"random IA ranking: expected precision {n_ia / outside:.5f}, expected recall {N / outside:.3f}")
