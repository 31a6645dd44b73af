from fractions import Fraction as F
from itertools import product
from math import comb

import pytest

from riffle.combinatorics import DeckSpec
from riffle.errors import CapacityError, InputError
from riffle.exact import (alternating_tv, bd_probability,
                          bottom_card_distribution, composition_sum,
                          full_deck_distances, general_sep,
                          least_likely_probability, matrix_properties_check,
                          pile_sequence, redblack_tv,
                          redblack_word_probability, single_card_matrix,
                          tracked_card_distances, truncated_product)


def r3(x):
    return round(x, 3)


# -- distinct cards ---------------------------------------------------------

def test_bd_probability_trivial():
    for n in (1, 4, 9):
        assert bd_probability(n, 1, 1) == 1
    assert bd_probability(5, 1, 2) == 0


def test_bd_probability_three_cards_by_enumeration():
    # digit sequences for 3 cards and 2 piles; 231 has two rising sequences
    hits = 0
    for digits in product(range(2), repeat=3):
        dealt = sorted((1, 2, 3), key=lambda c: digits[c - 1])
        forward = tuple(dealt.index(c) + 1 for c in (1, 2, 3))
        hits += forward == (2, 3, 1)
    assert F(hits, 8) == bd_probability(3, 2, 2) == F(1, 8)


def test_bd_probability_rejects_r():
    with pytest.raises(InputError):
        bd_probability(4, 2, 5)


def test_full_deck_table_values():
    sep, tv = full_deck_distances(52, 2**7)
    assert r3(tv) == F("0.334")
    sep, _ = full_deck_distances(52, 2**12)
    assert r3(sep) == F("0.278")
    sep, _ = full_deck_distances(52, 2**10)
    assert r3(sep) == F("0.732")


def test_full_deck_trivial():
    assert full_deck_distances(1, 5) == (0, 0)
    sep, tv = full_deck_distances(4, 1)
    assert sep == 1 and tv == 1 - F(1, 24)


# -- single card ------------------------------------------------------------

@pytest.mark.parametrize("a", [1, 2, 3, 7])
def test_two_card_matrix(a):
    P = single_card_matrix(2, a)
    expected = [[F(a + 1, 2 * a), F(a - 1, 2 * a)], [F(a - 1, 2 * a), F(a + 1, 2 * a)]]
    assert [list(r) for r in P.entries] == expected


@pytest.mark.parametrize("a", [1, 2, 3, 5])
def test_three_card_matrix(a):
    s = 6 * a * a
    expected = [
        [F((a + 1) * (2 * a + 1), s), F(2 * (a * a - 1), s), F((a - 1) * (2 * a - 1), s)],
        [F(2 * (a * a - 1), s), F(2 * (a * a + 2), s), F(2 * (a * a - 1), s)],
        [F((a - 1) * (2 * a - 1), s), F(2 * (a * a - 1), s), F((a + 1) * (2 * a + 1), s)],
    ]
    assert [list(r) for r in single_card_matrix(3, a).entries] == expected


def test_three_card_matrix_at_two():
    expected = [[15, 6, 3], [6, 12, 6], [3, 6, 15]]
    assert [list(r) for r in single_card_matrix(3, 2).entries] == \
        [[F(x, 24) for x in row] for row in expected]


@pytest.mark.parametrize("n", [1, 4, 9])
def test_one_shuffle_is_identity(n):
    P = single_card_matrix(n, 1)
    assert all(P[i, j] == (i == j) for i in range(1, n + 1) for j in range(1, n + 1))


@pytest.mark.parametrize("n", range(1, 13))
@pytest.mark.parametrize("a", [1, 2, 3, 4, 5, 8])
def test_doubly_stochastic_and_cross_symmetric(n, a):
    P = single_card_matrix(n, a)
    assert P.is_doubly_stochastic()
    assert P.is_cross_symmetric()


@pytest.mark.parametrize("n", range(1, 11))
def test_multiplicative(n):
    mats = {a: single_card_matrix(n, a) for a in (2, 3, 4, 6, 8, 9, 12, 16)}
    for a in (2, 3, 4):
        for b in (2, 3, 4):
            assert mats[a] @ mats[b] == mats[a * b]


def test_two_by_two_product():
    assert single_card_matrix(2, 2) @ single_card_matrix(2, 3) == single_card_matrix(2, 6)


def test_bottom_card_trivial():
    assert bottom_card_distribution(5, 1) == {1: 0, 2: 0, 3: 0, 4: 0, 5: 1}
    assert bottom_card_distribution(2, 2) == {1: F(1, 4), 2: F(3, 4)}


def test_bottom_card_six_cards_by_enumeration():
    counts = [0] * 6
    for digits in product(range(2), repeat=6):
        dealt = sorted(range(1, 7), key=lambda c: digits[c - 1])
        # forward position of card 6 is the card the inverse shuffle put at 6
        counts[dealt[5] - 1] += 1
    assert list(bottom_card_distribution(6, 2).values()) == [F(c, 64) for c in counts]


@pytest.mark.parametrize("n", range(1, 11))
@pytest.mark.parametrize("a", [1, 2, 3, 5])
def test_bottom_card_is_last_row(n, a):
    law = bottom_card_distribution(n, a)
    assert sum(law.values()) == 1
    assert list(law.values()) == single_card_matrix(n, a).row(n)


@pytest.mark.parametrize("k, i, tv, sep", [
    (4, 52, "0.367", "0.875"),
    (2, 26, "0.152", "0.487"),
    (10, 52, None, "0.025"),
])
def test_tracked_card_table_values(k, i, tv, sep):
    s, t = tracked_card_distances(52, 2**k, i)
    assert r3(s) == F(sep)
    if tv:
        assert r3(t) == F(tv)


def test_tracked_card_two_cards():
    assert tracked_card_distances(2, 2, 2) == (F(1, 2), F(1, 4))


# -- eigenstructure ---------------------------------------------------------

def char_poly(M):
    """Faddeev-LeVerrier: coefficients of det(x I - M), leading first."""
    n = len(M)
    ident = [[F(int(i == j)) for j in range(n)] for i in range(n)]
    coeffs = [F(1)]
    Mk = [row[:] for row in ident]
    c = F(1)
    for k in range(1, n + 1):
        AM = [[sum(M[i][t] * Mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        c = -sum(AM[i][i] for i in range(n)) / k
        coeffs.append(c)
        Mk = [[AM[i][j] + (c if i == j else 0) for j in range(n)] for i in range(n)]
    return coeffs


def test_three_card_spectrum_by_characteristic_polynomial():
    M = [list(r) for r in single_card_matrix(3, 2).entries]
    # (x - 1)(x - 1/2)(x - 1/4)
    assert char_poly(M) == [1, -F(7, 4), F(7, 8), -F(1, 8)]


@pytest.mark.parametrize("n", range(2, 11))
@pytest.mark.parametrize("a", [2, 3])
def test_spectrum_and_eigenvectors(n, a):
    rep = matrix_properties_check(n, a)
    assert rep.spectrum_verified and rep.verified_form == "signed"
    assert rep.eigenvector_hits["signed"] == list(range(1, n))
    # the printed coefficient (i-1)^(i-1) only works at m = 1
    assert rep.eigenvector_hits["printed"] == [1]


def test_matrix_check_budget():
    with pytest.raises(CapacityError):
        matrix_properties_check(17, 2)


# -- general decks ----------------------------------------------------------

def compositions(total, parts):
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def brute_composition_sum(piles, a):
    m = len(piles)
    total = 0
    for comp in compositions(a, m):
        term = comp[-1] ** piles[-1]
        for x, size in zip(comp[:-1], piles[:-1]):
            term *= x**size - (x - 1)**size
        total += term
    return total


@pytest.mark.parametrize("piles", [[1], [3], [1, 1], [2, 3], [3, 1, 2], [2, 2, 2, 1], [4, 1, 1, 3]])
@pytest.mark.parametrize("a", [1, 2, 3, 5, 8, 13])
def test_composition_sum_against_enumeration(piles, a):
    expected = brute_composition_sum(piles, a)
    deck = DeckSpec(piles)
    assert composition_sum(deck, a) == expected
    assert composition_sum(deck, a, method="schoolbook") == expected


def test_truncated_product_methods_agree():
    u = pile_sequence(13, 40, last=False)
    v = pile_sequence(7, 40, last=True)
    assert truncated_product(u, v, 40) == truncated_product(u, v, 40, "schoolbook")


def test_single_label_deck_has_zero_separation():
    for a in (1, 2, 7, 64):
        assert general_sep(DeckSpec([6]), a) == 0
        assert least_likely_probability(DeckSpec([6]), a) == 1


@pytest.mark.parametrize("piles, k, expected", [
    ([26, 26], 3, "0.849"),
    ([5, 5, 5, 5, 5], 4, "0.943"),
])
def test_general_sep_table_values(piles, k, expected):
    assert r3(general_sep(DeckSpec(piles), 2**k)) == F(expected)


@pytest.mark.parametrize("n", range(1, 9))
def test_all_singletons_match_distinct_deck(n):
    deck = DeckSpec([1] * n)
    for a in range(1, 17):
        assert general_sep(deck, a) == full_deck_distances(n, a)[0]


def test_fewer_hands_than_piles():
    assert general_sep(DeckSpec([2, 3, 1, 4]), 3) == 1


def test_least_likely_two_cards():
    assert least_likely_probability(DeckSpec([1, 1]), 2) == F(1, 4)


def test_general_sep_budget():
    with pytest.raises(CapacityError) as err:
        general_sep(DeckSpec([4] * 9 + [16]), 2**16, budget=10**6)
    assert err.value.budget == "--budget-terms"
    assert err.value.estimate == 9 * (2**16 + 1) ** 2


# -- red/black --------------------------------------------------------------

def test_redblack_sorted_word():
    for n in (1, 3, 6):
        w = "R" * n + "B" * n
        assert redblack_word_probability(n, w) == F(2**n + 2**n - 1, 4**n)


def test_redblack_example_word():
    assert redblack_word_probability(2, "RBBR") == F(2, 16)
    assert redblack_word_probability(2, (1, 2, 2, 1)) == F(2, 16)


def test_redblack_word_rejects_bad_counts():
    with pytest.raises(InputError):
        redblack_word_probability(2, "RRRB")


@pytest.mark.parametrize("n", range(1, 7))
def test_redblack_word_probabilities_normalised(n):
    total = F(0)
    for bits in product("RB", repeat=2 * n):
        if bits.count("R") == n:
            total += redblack_word_probability(n, "".join(bits))
    assert total == 1


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_redblack_tv_direct_sum(n):
    u = F(1, comb(2 * n, n))
    words = ["".join(b) for b in product("RB", repeat=2 * n) if b.count("R") == n]
    direct = sum(abs(redblack_word_probability(n, w) - u) for w in words) / 2
    assert redblack_tv(n) == direct


def test_redblack_tv_52_cards():
    assert r3(redblack_tv(26)) == F("0.579")


def test_redblack_tv_increases_with_deck_size():
    values = [redblack_tv(n) for n in range(10, 201, 10)]
    assert all(x < y for x, y in zip(values, values[1:]))
    assert values[-1] > F(3, 4)


def test_alternating_tv_printed():
    assert r3(alternating_tv(26)) == F("0.500")
    assert abs(alternating_tv(200) - F(1, 2)) < F(1, 10**40)


def test_alternating_forms_differ_by_half():
    # from n = 3 on every reachable word is heavier than uniform
    assert alternating_tv(2, "classes") == F(7, 24)
    for n in range(3, 30):
        assert alternating_tv(n, "classes") == 2 * alternating_tv(n, "printed")
