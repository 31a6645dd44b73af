# %% [markdown]
# # Checking the formulas by simulation
#
# Shuffles are sampled with the inverse-shuffle digit model.  The
# random stream for each block of samples is derived from the seed, so the
# result does not depend on how many threads ran.

# %%
from riffle import tracked_card_distances
from riffle.montecarlo import SamplerConfig, estimate_distances

cfg = SamplerConfig(a=16, repetitions=200_000, seed=7, n=52)
rep = estimate_distances(cfg)
_, exact = tracked_card_distances(52, 16, 52)
print(f"empirical TV {float(rep.tv):.4f} +- {rep.tv_se:.4f}, exact {float(exact):.4f}")

# %%
fast = estimate_distances(SamplerConfig(a=16, repetitions=200_000, seed=7, n=52, workers=4))
print(fast.counts == rep.counts)

# %% [markdown]
# Plug-in TV is biased upward when cells are many and samples few; with
# 5! = 120 arrangements and 10^5 samples the bias is small.

# %%
from riffle.exact import full_deck_distances

rep = estimate_distances(SamplerConfig(a=4, repetitions=100_000, seed=1,
                                       feature="permutation", n=5))
print(float(rep.tv), float(full_deck_distances(5, 4)[1]))
