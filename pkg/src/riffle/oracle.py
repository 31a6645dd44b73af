"""Brute-force ground truth for small decks.

An a-shuffle is realised through its inverse: every card draws an
independent uniform digit in 0..a-1 and the deck is stably sorted by digit.
Enumerating all a^n digit sequences (each of mass a^-n) and inverting the
resulting permutation gives the forward shuffle distribution exactly.
Nothing in this module uses the closed-form formulas it is meant to check.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import comb

import numpy as np

from .combinatorics import (DeckSpec, compose, enumerate_arrangements,
                            inverse)
from .errors import CapacityError, InputError
from .exact import alternating_tv

DEFAULT_SHUFFLE_BUDGET = 10**7
DEFAULT_STATE_BUDGET = 5000


def exhaustive_shuffle_distribution(n: int, a: int,
                                    budget: int = DEFAULT_SHUFFLE_BUDGET
                                    ) -> dict[tuple[int, ...], Fraction]:
    """Exact law of the arrangement after one a-shuffle of cards 1..n."""
    if n < 1 or a < 1:
        raise InputError("need n >= 1 and a >= 1")
    if a**n > budget:
        raise CapacityError("exhaustive shuffle enumeration", "--budget-terms",
                            budget, a**n)
    return dict(_exhaustive(n, a))


@lru_cache(maxsize=64)
def _exhaustive(n, a):
    counts = defaultdict(int)
    cards = range(1, n + 1)
    for digits in product(range(a), repeat=n):
        # stable sort by digit = inverse shuffle; its inverse is the shuffle
        dealt = tuple(sorted(cards, key=lambda c: digits[c - 1]))
        counts[inverse(dealt)] += 1
    total = a**n
    return tuple((perm, Fraction(c, total)) for perm, c in sorted(counts.items()))


def convolve(p: dict, q: dict) -> dict:
    """Law of the arrangement after shuffling by ``p`` and then by ``q``."""
    out = defaultdict(Fraction)
    for s1, m1 in p.items():
        for s2, m2 in q.items():
            out[compose(s1, s2)] += m1 * m2
    return dict(out)


def push_to_words(dist: dict, start) -> dict:
    """Image of a permutation law acting on the arrangement ``start``."""
    out = defaultdict(Fraction)
    for perm, mass in dist.items():
        out[tuple(start[i - 1] for i in perm)] += mass
    return dict(out)


def shuffle_row(deck: DeckSpec, a: int, start=None,
                budget: int = DEFAULT_SHUFFLE_BUDGET) -> dict:
    """Law of the arrangement after one a-shuffle of ``start`` (default:
    the sorted deck).  Unreachable arrangements are absent."""
    start = tuple(start) if start is not None else deck.sorted_word()
    return push_to_words(exhaustive_shuffle_distribution(deck.n, a, budget), start)


@dataclass
class QuotientChain:
    deck: DeckSpec
    a: int
    states: list
    K: list  # K[x][y], Fraction entries
    index: dict = field(repr=False, default_factory=dict)

    def row(self, start) -> list:
        try:
            return self.K[self.index[tuple(start)]]
        except KeyError:
            raise InputError(f"{start} is not an arrangement of deck {self.deck}") from None

    def is_doubly_stochastic(self) -> bool:
        if any(x < 0 for row in self.K for x in row):
            return False
        return (all(sum(row) == 1 for row in self.K)
                and all(sum(col) == 1 for col in zip(*self.K)))


def matrix_power(K, power, scale=None):
    """K^power with exact entries.

    When every entry of K is an integer over ``scale`` and scale^power stays
    below 2^62, the product runs in int64: each row of K^j sums to scale^j,
    so no partial sum can overflow.
    """
    size = len(K)
    if scale is not None and scale**power < 2**62:
        M = np.array([[int(x * scale) for x in row] for row in K], dtype=np.int64)
        P = np.eye(size, dtype=np.int64)
        for _ in range(power):
            P = P @ M
        denom = scale**power
        return [[Fraction(int(x), denom) for x in row] for row in P]
    result = [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]
    for _ in range(power):
        cols = list(zip(*K))
        result = [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in result]
    return result


def _chain_from_law(deck, a, law, budget_states):
    states = enumerate_arrangements(deck, budget_states)
    index = {s: t for t, s in enumerate(states)}
    K = []
    for x in states:
        row = [Fraction(0)] * len(states)
        for y, mass in push_to_words(law, x).items():
            row[index[y]] += mass
        K.append(row)
    return QuotientChain(deck, a, states, K, index)


def build_quotient_chain(deck: DeckSpec, a: int,
                         budget_states: int = DEFAULT_STATE_BUDGET,
                         budget_terms: int = DEFAULT_SHUFFLE_BUDGET) -> QuotientChain:
    """Markov chain on the arrangements of ``deck`` induced by a-shuffles."""
    law = exhaustive_shuffle_distribution(deck.n, a, budget_terms)
    return _chain_from_law(deck, a, law, budget_states)


@dataclass
class ConvolutionCheck:
    power_matches_convolution: bool
    convolution_matches_single_shuffle: bool

    @property
    def passed(self) -> bool:
        return self.power_matches_convolution and self.convolution_matches_single_shuffle


def verify_convolution_power(deck: DeckSpec, a: int, steps: int,
                             budget_states: int = DEFAULT_STATE_BUDGET,
                             budget_terms: int = DEFAULT_SHUFFLE_BUDGET) -> ConvolutionCheck:
    """Check K^l against the l-fold convolution pushed to arrangements, and
    the l-fold convolution of Q_a against Q_(a^l) computed directly."""
    if not 1 <= steps <= 4:
        raise InputError("steps must lie in 1..4")
    base = exhaustive_shuffle_distribution(deck.n, a, budget_terms)
    chain = _chain_from_law(deck, a, base, budget_states)
    law = base
    for _ in range(steps - 1):
        law = convolve(law, base)
    pushed = _chain_from_law(deck, a**steps, law, budget_states)
    power = matrix_power(chain.K, steps, scale=a**deck.n)
    direct = exhaustive_shuffle_distribution(deck.n, a**steps, budget_terms)
    return ConvolutionCheck(power == pushed.K, _same_law(law, direct))


def _same_law(p, q):
    keys = set(p) | set(q)
    return all(p.get(k, 0) == q.get(k, 0) for k in keys)


@dataclass
class BruteDistances:
    sep: Fraction
    tv: Fraction
    argmin: list  # every arrangement attaining the smallest probability


def brute_distances(chain: QuotientChain, start) -> BruteDistances:
    row = chain.row(start)
    size = len(row)
    u = Fraction(1, size)
    tv = sum((abs(p - u) for p in row), Fraction(0)) / 2
    low = min(row)
    argmin = [chain.states[t] for t, p in enumerate(row) if p == low]
    return BruteDistances(1 - size * low, tv, argmin)


@dataclass
class GilbreathReport:
    n: int
    masses: dict  # word -> Fraction, every arrangement (unreachable get 0)
    cut_parities: dict  # word -> frozenset of achievable cut parities
    classes: dict  # word -> "start" | "odd" | "even" | "both" | "unreachable"
    class_counts: dict
    overlap: list  # words reachable from both parities
    mass_table_holds: bool
    tv: Fraction
    tv_printed: Fraction
    tv_classes: Fraction


def gilbreath_classify(n: int, budget: int = 2**14) -> GilbreathReport:
    """Exhaust every cut and riffle of one 2-shuffle of R B R B ... (2n cards).

    A 2-shuffle picks one of 2^(2n) equally likely binary strings: position
    p of the output takes the next card from the top packet when the bit is
    0, from the bottom packet when it is 1; the number of zeros is the cut.
    """
    size = 2 * n
    if n < 1:
        raise InputError("need n >= 1")
    if 2**size > budget:
        raise CapacityError("Gilbreath enumeration", "--budget-terms", budget, 2**size)
    start = "RB" * n
    counts = defaultdict(int)
    parities = defaultdict(set)
    for bits in product((0, 1), repeat=size):
        cut = bits.count(0)
        packets = (iter(start[:cut]), iter(start[cut:]))
        word = "".join(next(packets[b]) for b in bits)
        counts[word] += 1
        parities[word].add(cut % 2)

    words = []
    for reds in combinations(range(size), n):
        w = ["B"] * size
        for p in reds:
            w[p] = "R"
        words.append("".join(w))
    words.sort()

    scale = 4**n
    masses = {w: Fraction(counts.get(w, 0), scale) for w in words}
    classes = {}
    expected_ok = True
    for w in words:
        par = parities.get(w, set())
        if w == start:
            cls, want = "start", 2**(n - 1) + 2**n
        elif par == {1}:
            cls, want = "odd", 2**(n - 1)
        elif par == {0}:
            cls, want = "even", 2**n
        elif par:
            cls, want = "both", None
        else:
            cls, want = "unreachable", 0
        classes[w] = cls
        if want is None or counts.get(w, 0) != want:
            expected_ok = False

    class_counts = defaultdict(int)
    for cls in classes.values():
        class_counts[cls] += 1
    u = Fraction(1, comb(size, n))
    tv = sum((abs(m - u) for m in masses.values()), Fraction(0)) / 2
    return GilbreathReport(
        n=n, masses=masses,
        cut_parities={w: frozenset(parities.get(w, ())) for w in words},
        classes=classes, class_counts=dict(class_counts),
        overlap=[w for w in words if len(parities.get(w, ())) == 2],
        mass_table_holds=expected_ok, tv=tv,
        tv_printed=alternating_tv(n, "printed"),
        tv_classes=alternating_tv(n, "classes"),
    )


def sorted_start_distances(deck: DeckSpec, a: int,
                           budget: int = DEFAULT_SHUFFLE_BUDGET) -> BruteDistances:
    """:func:`brute_distances` from the sorted deck without building the
    whole chain (one row only)."""
    row_law = shuffle_row(deck, a, budget=budget)
    states = enumerate_arrangements(deck, budget)
    row = [row_law.get(s, Fraction(0)) for s in states]
    size = len(row)
    u = Fraction(1, size)
    tv = sum((abs(p - u) for p in row), Fraction(0)) / 2
    low = min(row)
    return BruteDistances(1 - size * low, tv,
                          [s for s, p in zip(states, row) if p == low])


def single_card_oracle(n: int, a: int, i: int,
                       budget: int = DEFAULT_SHUFFLE_BUDGET) -> list:
    """Position law of the card starting at position i, by enumeration."""
    out = [Fraction(0)] * n
    for perm, mass in exhaustive_shuffle_distribution(n, a, budget).items():
        out[perm.index(i)] += mass
    return out
