"""Pushforward into a non-Boolean alphabet: the two-coin winnings game.

Two coins with heads probability p; party 1 wins +1 on heads of coin 1,
party 2 wins +1 on tails of coin 2, losers get -1.  The total winnings
take values in {-2, 0, +2} and their distribution depends on the coins'
correlation, parametrized here by P(both heads).
"""

import numpy as np

import markov_fuzzy as mf

ADD = {
    (False, False): 0,   # tails, tails
    (True, False): +2,   # heads, tails: both parties win
    (False, True): -2,   # tails, heads: both lose
    (True, True): 0,     # heads, heads
}

p = 0.5
print(f"heads probability p = {p}; feasible P(hh) in [{max(0, 2*p-1)}, {p}]")
print()
print("P(hh)   P(+2)   P(0)    P(-2)")
for q_hh in np.linspace(max(0.0, 2 * p - 1.0), p, 6):
    # Table over (coin1 heads, coin2 heads) in index order FF, TF, FT, TT.
    dist = mf.make_joint(2, [1 - 2 * p + q_hh, p - q_hh, p - q_hh, q_hh])
    out = mf.pushforward_finite(dist, ADD)
    print(
        f"{q_hh:5.2f}   {out.prob(2):5.3f}   {out.prob(0):5.3f}   {out.prob(-2):5.3f}"
    )
print()

# Perfectly synchronized coins never split the pot.
dist = mf.make_joint(2, [1 - 2 * p + p, 0.0, 0.0, p])
print("fully synchronized coins:", mf.pushforward_finite(dist, ADD))

# Independent coins split it half the time.
dist = mf.independent_product([p, p])
print("independent coins       :", mf.pushforward_finite(dist, ADD))
