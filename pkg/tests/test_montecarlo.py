from fractions import Fraction as F
from math import comb

import numpy as np
import pytest
from scipy import stats

from riffle.combinatorics import DeckSpec, eulerian_numbers, rising_sequences
from riffle.errors import CapacityError, InputError
from riffle.exact import bd_probability, tracked_card_distances
from riffle.montecarlo import (SamplerConfig, block_stream, estimate_distances,
                               sample_a_shuffle, sample_block)
from riffle.oracle import sorted_start_distances


def test_one_hand_is_identity():
    perms = sample_block(8, 1, block_stream(3, 0), 100)
    assert (perms == np.arange(1, 9)).all()
    assert sample_a_shuffle(8, 1, block_stream(3, 0)) == tuple(range(1, 9))


def test_samples_are_permutations():
    perms = sample_block(10, 4, block_stream(1, 0), 500)
    assert (np.sort(perms, axis=1) == np.arange(1, 11)).all()


def test_seed_range():
    with pytest.raises(InputError):
        block_stream(-1, 0)


@pytest.mark.parametrize("n, a", [(3, 2), (4, 2), (4, 3), (5, 2), (5, 3)])
def test_chi_square_against_rising_sequence_law(n, a):
    cfg = SamplerConfig(a=a, repetitions=10**6, seed=20240601 + 10 * n + a,
                        feature="permutation", n=n)
    rep = estimate_distances(cfg)
    observed, expected = [], []
    for perm, count in rep.counts.items():
        p = bd_probability(n, a, rising_sequences(perm))
        assert p > 0
        observed.append(count)
        expected.append(float(p) * cfg.repetitions)
    # every reachable arrangement shows up at this sample size
    support = sum(e for r, e in enumerate(eulerian_numbers(n), 1) if r <= a)
    assert len(observed) == support
    assert stats.chisquare(observed, expected).pvalue > 1e-3


def test_mean_rising_sequences_52_cards():
    n, a, N = 52, 2, 200_000
    perms = sample_block(n, a, block_stream(99, 0), N)
    pos = np.argsort(perms, axis=1)
    r = 1 + (pos[:, 1:] < pos[:, :-1]).sum(axis=1)
    law = {k: bd_probability(n, a, k) * eulerian_numbers(n)[k - 1] for k in (1, 2)}
    mean = float(sum(k * p for k, p in law.items()))
    var = float(sum(k * k * p for k, p in law.items())) - mean**2
    assert abs(r.mean() - mean) < 4 * (var / N) ** 0.5


def test_bottom_card_tv():
    cfg = SamplerConfig(a=16, repetitions=10**6, seed=7, n=52)
    rep = estimate_distances(cfg)
    _, exact = tracked_card_distances(52, 16, 52)
    assert abs(rep.tv - exact) < F(1, 100)
    assert rep.sep is not None


def test_colour_word_tv():
    deck = DeckSpec([3, 3])
    cfg = SamplerConfig(a=2, repetitions=10**6, seed=11, feature="word", deck=deck)
    rep = estimate_distances(cfg)
    exact = sorted_start_distances(deck, 2).tv
    assert rep.cells == comb(6, 3)
    assert abs(float(rep.tv - exact)) < 3 * rep.tv_se + 1e-3


def test_worker_count_does_not_change_result():
    base = dict(a=3, repetitions=50_000, seed=5, feature="permutation", n=4, block_size=4096)
    one = estimate_distances(SamplerConfig(**base, workers=1))
    four = estimate_distances(SamplerConfig(**base, workers=4))
    assert one.counts == four.counts
    assert (one.tv, one.sep) == (four.tv, four.sep)


def test_same_seed_same_counts():
    cfg = SamplerConfig(a=2, repetitions=1000, seed=1, n=10)
    assert estimate_distances(cfg).counts == estimate_distances(cfg).counts


def test_single_repetition():
    rep = estimate_distances(SamplerConfig(a=2, repetitions=1, seed=0, n=5))
    assert rep.repetitions == 1
    assert rep.sep is None
    assert rep.tv == F(4, 5)


def test_config_validation():
    with pytest.raises(InputError):
        SamplerConfig(a=2, repetitions=0, seed=0, n=3)
    with pytest.raises(InputError):
        SamplerConfig(a=2, repetitions=10, seed=0, feature="word")
    with pytest.raises(InputError):
        SamplerConfig(a=2, repetitions=10, seed=0, feature="colour", n=3)


def test_cell_capacity():
    with pytest.raises(CapacityError):
        estimate_distances(SamplerConfig(a=2, repetitions=10, seed=0,
                                         feature="permutation", n=12))
