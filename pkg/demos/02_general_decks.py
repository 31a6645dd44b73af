# %% [markdown]
# # Decks with repeated cards
#
# In blackjack only values matter, in a tarot reading only suits, in a
# Zener deck only the five symbols.  Fewer distinguishable arrangements
# means fewer shuffles are needed.  The separation distance from the
# sorted start has an exact formula, evaluated here with a convolution of
# integer sequences.

# %%
import time

from riffle import DeckSpec, general_sep, full_deck_distances
from riffle.tables import parse_deck

decks = ["52x1", "9x4,16", "4x13", "26,26", "5x5"]
names = ["distinct", "blackjack", "suits", "red/black", "zener"]

# %%
t0 = time.perf_counter()
print("k   " + "  ".join(f"{n:>9s}" for n in names))
for k in range(1, 13):
    row = []
    for text in decks:
        deck = parse_deck(text)
        if deck.m == deck.n:
            sep = full_deck_distances(deck.n, 2**k)[0]
        else:
            sep = general_sep(deck, 2**k)
        row.append(f"{float(sep):9.3f}")
    print(f"{k:2d}  " + "  ".join(row))
print(f"{time.perf_counter() - t0:.1f}s")

# %% [markdown]
# The least likely arrangement is the deck turned upside down, so
# reversing the pile order changes nothing.

# %%
deck = DeckSpec([3, 1, 2])
print(general_sep(deck, 4) == general_sep(deck.reversed(), 4))
