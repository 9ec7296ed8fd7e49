"""Fuzzy quantification: exact values, bounds, limits, sampling.

"Some x satisfies P" over a finite universe is just a big disjunction, so
its confidence is one minus the all-false mass of the joint table.  When
only per-point beliefs are known, the confidence is bracketed by exact
bounds; countable universes are handled as growing finite truncations;
and a sampling strategy turns the question into an estimable expectation.
"""

import itertools

import markov_fuzzy as mf

# Full joint available: the answer is exact.
joint = mf.independent_product([0.3, 0.4])
print("exists, independent pair     :", mf.exists_exact(joint))

# Only the marginal beliefs: exact bounds.
table = mf.BeliefTable(universe=("a", "b"), p={"a": 0.3, "b": 0.4})
print("exists bounds, beliefs only  :", mf.exists_bounds(table))

# Adding the pairwise both-false confidence pins it down.
table_q = mf.BeliefTable(
    universe=("a", "b"), p={"a": 0.3, "b": 0.4}, q_pair={("a", "b"): 0.42}
)
print("exists bounds with pairwise q:", mf.exists_bounds(table_q))
print("forall bounds, beliefs only  :", mf.forall_bounds(table))
print()

# Countable universe: follow finite truncations.  With beliefs 1/2, 1/4,
# 1/8, ... the limit is computable and the sequence climbs monotonely.
ps = [2.0 ** -(i + 1) for i in range(8)]
joints = (mf.independent_product(ps[: m + 1]) for m in range(8))
print("truncated exists:", [round(v, 6) for v in mf.exists_truncated(joints)])
print()

# Sampling strategy: expected confidence of finding a witness among
# `tuple_length` draws.  The enumerated expectation sits inside the
# estimator's Hoeffding band.
universe = ("a", "b", "c")
p = {"a": 0.2, "b": 0.5, "c": 0.8}
table3 = mf.BeliefTable(universe=universe, p=p)
strategy = mf.SamplingStrategy(tuple_length=3, seed=42)
estimate = mf.sample_exists(table3, strategy, n_samples=20_000)

exact = 0.0
for combo in itertools.product(universe, repeat=3):
    miss = 1.0
    for x in combo:
        miss *= 1.0 - p[x]
    exact += (1.0 - miss) / 27.0

radius = estimate.hoeffding_radius(0.05)
print(f"enumerated expectation : {exact:.5f}")
print(f"sampled estimate       : {estimate.mean:.5f} +/- {radius:.5f} (95%)")
print(f"covered                : {abs(estimate.mean - exact) <= radius}")
