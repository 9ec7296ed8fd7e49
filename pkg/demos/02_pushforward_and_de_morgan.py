"""Connectives as pushforwards, and de Morgan's law as functoriality.

Every logic formula is a map between Boolean tuples; applying it to
uncertain predicates means transporting the joint probability table
through that map.  Because transport composes ("pushforward of a
composition is the composition of pushforwards"), Boolean identities
lift to fuzzy identities for free.
"""

import numpy as np

import markov_fuzzy as mf

# A joint table for two predicates: marginals 0.7 / 0.6, both-false mass 0.1.
pair = mf.pair_from_pq(0.7, 0.6, 0.1)
print("joint table [FF, TF, FT, TT]:", np.round(pair.probs, 3).tolist())

for name, gate in (("and", mf.and_function()), ("or", mf.or_function()),
                   ("implies", mf.implies_function()), ("xor", mf.xor_function())):
    pushed = mf.pushforward(pair, gate)
    print(f"confidence of {name:7s}: {float(pushed.probs[1]):.3f}")
print()

# The Boolean identity  not(a or b) == (not a) and (not b)  becomes an
# identity of truth tables...
nor = mf.compose(mf.not_function(), mf.or_function())
and_nn = mf.compose(mf.and_function(),
                    mf.product(mf.not_function(), mf.not_function()))
print("NOT . OR == AND . (NOT x NOT):", nor == and_nn)

# ... and therefore an identity of pushforwards, with no new computation.
lhs = mf.pushforward(pair, nor)
rhs = mf.pushforward(pair, and_nn)
print("pushforwards agree entrywise:",
      bool(np.allclose(lhs.probs, rhs.probs, atol=1e-15)))
print()

# At the confidence level this reads: the dual of an "or" is an "and" of
# the negated predicates, taken at q' = confidence both originals hold.
n1, n2, q_dual = mf.de_morgan_dual(0.7, 0.6, 0.1)
print(f"dual parameters: (1-p1, 1-p2, q') = ({n1:.1f}, {n2:.1f}, {q_dual:.1f})")
print(f"or_q  : {mf.or_q(0.7, 0.6, 0.1):.3f}")
print(f"1 - and_q(dual): {1.0 - mf.and_q(n1, n2, q_dual):.3f}")
print()

# Functoriality on a random chain of maps.
rng = np.random.default_rng(1)
dist = mf.make_joint(3, rng.dirichlet(np.ones(8)))
f = mf.BooleanFunction(3, 2, rng.integers(0, 4, size=8))
g = mf.BooleanFunction(2, 1, rng.integers(0, 2, size=4))
two_step = mf.pushforward(mf.pushforward(dist, f), g)
one_step = mf.pushforward(dist, mf.compose(g, f))
print("two-step == one-step on a random chain:",
      bool(np.allclose(two_step.probs, one_step.probs, atol=1e-15)))
