"""Exact combinatorial primitives: decks, multinomials, rising sequences,
Eulerian numbers and multiset arrangements.

All integers are Python ints (unbounded) and all probabilities elsewhere in
the package are :class:`fractions.Fraction`, so nothing here ever rounds.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterator, Sequence

from .errors import CapacityError, InputError

#: Exact rational type used for every probability in the exact layer.
BigRational = Fraction

DEFAULT_ENUMERATION_BUDGET = 10**6


@dataclass(frozen=True)
class DeckSpec:
    """A multiset deck: ``piles[i]`` cards carry label ``i + 1``.

    The sorted deck has the 1's on top and the m's at the bottom.
    """

    piles: tuple[int, ...]

    def __init__(self, piles: Sequence[int]):
        piles = tuple(int(p) for p in piles)
        if not piles:
            raise InputError("a deck needs at least one pile")
        if any(p < 1 for p in piles):
            raise InputError(f"pile sizes must be positive, got {piles}")
        object.__setattr__(self, "piles", piles)

    @property
    def n(self) -> int:
        return sum(self.piles)

    @property
    def m(self) -> int:
        return len(self.piles)

    @property
    def d(self) -> int:
        return min(self.piles)

    def sorted_word(self) -> tuple[int, ...]:
        return tuple(label for label, size in enumerate(self.piles, 1)
                     for _ in range(size))

    def reversed_word(self) -> tuple[int, ...]:
        """The arrangement with the m's on top down to the 1's at the bottom."""
        return self.sorted_word()[::-1]

    def reversed(self) -> "DeckSpec":
        return DeckSpec(self.piles[::-1])

    def state_count(self) -> int:
        return multinomial(self.n, self.piles)

    def __str__(self):
        return ",".join(map(str, self.piles))


def multinomial(n: int, parts: Sequence[int]) -> int:
    """Number of words with ``parts[i]`` copies of letter ``i``."""
    if any(p < 0 for p in parts):
        raise InputError(f"negative part in {tuple(parts)}")
    if sum(parts) != n:
        raise InputError(f"parts {tuple(parts)} do not sum to {n}")
    result = factorial(n)
    for p in parts:
        result //= factorial(p)
    return result


def check_permutation(p: Sequence[int]) -> tuple[int, ...]:
    p = tuple(p)
    if sorted(p) != list(range(1, len(p) + 1)):
        raise InputError(f"{p} is not a permutation of 1..{len(p)}")
    return p


def inverse(p: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for pos, value in enumerate(p, 1):
        inv[value - 1] = pos
    return tuple(inv)


def compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """``(p o q)(i) = p(q(i))``, both one-based."""
    return tuple(p[qi - 1] for qi in q)


def descents(p: Sequence[int]) -> int:
    return sum(1 for x, y in zip(p, p[1:]) if x > y)


def rising_sequences(p: Sequence[int]) -> int:
    """Number of rising sequences of the arrangement ``p``.

    ``p[i]`` is the label of the card at position ``i + 1``. A rising
    sequence is a maximal run of consecutive labels x, x+1, ... found in
    left-to-right order, so the count is one more than the descents of the
    inverse permutation.
    """
    return 1 + descents(inverse(p))


@lru_cache(maxsize=None)
def _eulerian_row(n: int) -> tuple[int, ...]:
    if n == 1:
        return (1,)
    prev = _eulerian_row(n - 1)
    row = []
    for r in range(1, n + 1):
        stay = prev[r - 1] if r <= n - 1 else 0
        grow = prev[r - 2] if r >= 2 else 0
        row.append(r * stay + (n - r + 1) * grow)
    return tuple(row)


def eulerian_numbers(n: int) -> list[int]:
    """``[A(n, 1), ..., A(n, n)]`` where A(n, r) counts permutations of n
    with r rising sequences (equivalently r - 1 descents)."""
    if n < 1:
        raise InputError("eulerian_numbers needs n >= 1")
    # iterative warm-up keeps the cached recursion shallow for large n
    for k in range(1, n):
        _eulerian_row(k)
    return list(_eulerian_row(n))


def eulerian_polynomial(k: int) -> list[int]:
    """Coefficients (constant term first) of A_k(z), normalised so that
    sum_{r>=0} r^k z^r = A_k(z) / (1 - z)^(k + 1)."""
    if k < 0:
        raise InputError("k must be non-negative")
    if k == 0:
        return [1]
    return [0] + eulerian_numbers(k)


def enumerate_arrangements(deck: DeckSpec,
                           budget: int = DEFAULT_ENUMERATION_BUDGET
                           ) -> list[tuple[int, ...]]:
    """All distinct words realising ``deck``, in lexicographic order."""
    count = deck.state_count()
    if count > budget:
        raise CapacityError("arrangement enumeration", "--budget-states",
                            budget, count)
    return list(_multiset_words(list(deck.piles), deck.n))


def _multiset_words(remaining: list[int], length: int) -> Iterator[tuple[int, ...]]:
    if length == 0:
        yield ()
        return
    for label, left in enumerate(remaining, 1):
        if left:
            remaining[label - 1] -= 1
            for tail in _multiset_words(remaining, length - 1):
                yield (label,) + tail
            remaining[label - 1] += 1
