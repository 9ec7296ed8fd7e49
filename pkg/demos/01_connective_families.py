"""The one-parameter family of fuzzy connectives.

Two predicates with confidences p1 and p2 do not determine the confidence
of "P1 and P2" by themselves: it depends on the joint 2x2 distribution,
which (given the marginals) has exactly one remaining degree of freedom.
We parametrize it by q, the confidence that BOTH predicates are false,
and sweep q across its feasible interval.
"""

import numpy as np

import markov_fuzzy as mf

p1, p2 = 0.7, 0.6
b = mf.q_bounds(p1, p2)
print(f"marginals: p1={p1}, p2={p2}")
print(f"feasible q: [{b.q_min:.3f}, {b.q_max:.3f}], independence at {b.q_indep:.3f}")
print()

print("  q      and_q   or_q    implies_q")
for q in np.linspace(b.q_min, b.q_max, 7):
    print(
        f"  {q:5.3f}  {mf.and_q(p1, p2, q):5.3f}   "
        f"{mf.or_q(p1, p2, q):5.3f}   {mf.implies_q(p1, p2, q):5.3f}"
    )
print()

# The endpoints and the independence point recover the three classic
# fuzzy connective flavors.
for kind in ("and", "or", "implies"):
    flavors = {
        flavor: mf.classic(p1, p2, kind, flavor) for flavor in ("min", "indep", "max")
    }
    print(f"classic {kind:7s}:", "  ".join(f"{k}={v:.3f}" for k, v in flavors.items()))
print()

# Correlation matters: with p = 0.5, "P and not P" has confidence 0 and
# "P or not P" confidence 1, even though both conjuncts sit at 0.5.
p = 0.5
q_anti = mf.q_bounds(p, 1 - p).q_min  # exact anticorrelation
print(f"P & !P at q={q_anti}: {mf.and_q(p, 1 - p, q_anti)}")
print(f"P | !P at q={q_anti}: {mf.or_q(p, 1 - p, q_anti)}")

# Treating them as independent instead would give 0.25 and 0.75.
q_ind = mf.q_bounds(p, 1 - p).q_indep
print(f"pretending independence: and={mf.and_q(p, 1 - p, q_ind)}, "
      f"or={mf.or_q(p, 1 - p, q_ind)}")
