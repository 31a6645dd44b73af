# %% [markdown]
# # Following one card through repeated riffles
#
# Where does the bottom card of a 52-card deck end up after k riffle
# shuffles?  Its position is a Markov chain on 1..52 whose transition
# matrix for an a-shuffle is known exactly.

# %%
from riffle import single_card_matrix, tracked_card_distances, bottom_card_distribution
from riffle.asymptotics import bottom_card_tv_bounds, bottom_card_sep_bounds

P = single_card_matrix(3, 2)
for i in range(1, 4):
    print([str(x) for x in P.row(i)])

# %% [markdown]
# The matrix is doubly stochastic and symmetric about its centre, and
# P_a P_b = P_ab, so k riffles are a single 2^k-shuffle.

# %%
print(P.is_doubly_stochastic(), P.is_cross_symmetric())
print(single_card_matrix(3, 2) @ single_card_matrix(3, 2) == single_card_matrix(3, 4))

# %% [markdown]
# Distances to uniform for the bottom card of 52, next to the explicit
# sandwich bounds.

# %%
print(" k     TV    SEP   TV bounds")
for k in range(1, 13):
    a = 2**k
    sep, tv = tracked_card_distances(52, a, 52)
    tb = bottom_card_tv_bounds(52, a)
    print(f"{k:2d}  {float(tv):.3f}  {float(sep):.3f}   [{float(tb.lower):+.3f}, {float(tb.upper):.3f}]")

# %% [markdown]
# The sandwich is tight for moderate k and loosens once a is much larger
# than the deck.
#
# After four riffles the card most likely sits at the bottom still.

# %%
law = bottom_card_distribution(52, 16)
print(max(law, key=law.get), float(law[52]), 1 / 52)
