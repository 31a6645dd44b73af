# %% [markdown]
# # One riffle of an alternating deck
#
# Start with R B R B ... and riffle once.  Every pair of consecutive cards
# still holds one red and one black (Gilbreath), so almost every colour
# pattern is unreachable.  Exhaustive enumeration sorts the reachable
# patterns into three mass classes.

# %%
from riffle.exact import alternating_tv, redblack_tv
from riffle.oracle import gilbreath_classify

rep = gilbreath_classify(5)
print(rep.class_counts)
print(rep.mass_table_holds, rep.overlap)

# %% [markdown]
# Summing over the classes gives the exact distance, which goes to 1.  The
# widely quoted closed form is exactly half of it once n >= 3.

# %%
for n in (3, 5, 10, 26, 100):
    print(n, float(alternating_tv(n, "classes")), float(alternating_tv(n, "printed")))

# %% [markdown]
# Sorted start (reds over blacks) for comparison:

# %%
print(float(redblack_tv(26)))
