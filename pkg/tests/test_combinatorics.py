from collections import Counter
from itertools import permutations, product
from math import factorial

import pytest
from hypothesis import given, strategies as st

from riffle.combinatorics import (DeckSpec, enumerate_arrangements,
                                  eulerian_numbers, eulerian_polynomial,
                                  inverse, multinomial, rising_sequences)
from riffle.errors import CapacityError, InputError


def brute_rising_sequences(p):
    """Count maximal runs x, x+1, ... appearing left to right."""
    pos = {v: i for i, v in enumerate(p)}
    runs = 1
    for x in range(1, len(p)):
        if pos[x + 1] < pos[x]:
            runs += 1
    return runs


def test_deck_spec_fields():
    deck = DeckSpec([4] * 9 + [16])
    assert (deck.n, deck.m, deck.d) == (52, 10, 4)
    assert deck.sorted_word()[:5] == (1, 1, 1, 1, 2)
    assert deck.reversed_word()[0] == 10


@pytest.mark.parametrize("piles", [[], [0], [3, -1]])
def test_deck_spec_rejects(piles):
    with pytest.raises(InputError):
        DeckSpec(piles)


@pytest.mark.parametrize("n, parts, expected", [
    (2, [1, 1], 2),
    (4, [2, 2], 6),
    (52, [26, 26], 495918532948104),
])
def test_multinomial(n, parts, expected):
    assert multinomial(n, parts) == expected


def test_multinomial_matches_word_count():
    words = {w for w in product((1, 2), repeat=4) if w.count(1) == 2}
    assert multinomial(4, [2, 2]) == len(words)


def test_multinomial_bad_sum():
    with pytest.raises(InputError):
        multinomial(5, [2, 2])


@given(st.lists(st.integers(0, 6), min_size=1, max_size=5), st.randoms())
def test_multinomial_symmetric(parts, rnd):
    n = sum(parts)
    shuffled = parts[:]
    rnd.shuffle(shuffled)
    assert multinomial(n, parts) == multinomial(n, shuffled)


@pytest.mark.parametrize("p, r", [
    ((1, 2, 3, 4, 5), 1),
    ((5, 4, 3, 2, 1), 5),
    ((2, 1, 4, 3), 3),
])
def test_rising_sequences_examples(p, r):
    assert rising_sequences(p) == r


@pytest.mark.parametrize("n", range(1, 8))
def test_rising_sequences_range_and_brute(n):
    for p in permutations(range(1, n + 1)):
        r = rising_sequences(p)
        assert 1 <= r <= n
        assert r == brute_rising_sequences(p)


def test_inverse_roundtrip():
    p = (3, 1, 4, 2)
    assert inverse(inverse(p)) == p


@pytest.mark.parametrize("n", range(1, 8))
def test_eulerian_matches_enumeration(n):
    counts = Counter(brute_rising_sequences(p) for p in permutations(range(1, n + 1)))
    assert eulerian_numbers(n) == [counts[r] for r in range(1, n + 1)]


def test_eulerian_small_rows():
    assert eulerian_numbers(1) == [1]
    assert eulerian_numbers(3) == [1, 4, 1]
    assert sum(eulerian_numbers(4)) == 24


def test_eulerian_row_sums_to_60():
    for n in range(1, 61):
        assert sum(eulerian_numbers(n)) == factorial(n)


def test_eulerian_polynomial_generating_function():
    # sum_r r^k z^r (1 - z)^(k+1) truncated must reproduce A_k
    for k in range(0, 7):
        series = [r**k for r in range(40)]
        # multiply by (1 - z)^(k + 1)
        for _ in range(k + 1):
            series = [series[0]] + [series[i] - series[i - 1] for i in range(1, len(series))]
        poly = eulerian_polynomial(k)
        assert series[:len(poly)] == poly
        assert not any(series[len(poly):30])


@pytest.mark.parametrize("piles, expected", [
    ([1, 1], [(1, 2), (2, 1)]),
    ([2, 1], [(1, 1, 2), (1, 2, 1), (2, 1, 1)]),
])
def test_enumerate_arrangements_examples(piles, expected):
    assert enumerate_arrangements(DeckSpec(piles)) == expected


@pytest.mark.parametrize("piles", [[2, 2], [3, 1, 2], [1, 1, 1, 1], [4]])
def test_enumerate_arrangements_complete(piles):
    deck = DeckSpec(piles)
    words = enumerate_arrangements(deck)
    assert words == sorted(set(words))
    assert len(words) == multinomial(deck.n, piles)
    assert all(Counter(w) == Counter(deck.sorted_word()) for w in words)


def test_enumerate_arrangements_budget():
    with pytest.raises(CapacityError) as err:
        enumerate_arrangements(DeckSpec([26, 26]), budget=1000)
    assert err.value.budget == "--budget-states"
