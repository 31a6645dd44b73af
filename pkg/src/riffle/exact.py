"""Exact distances to uniformity after an a-shuffle.

Every function here returns :class:`fractions.Fraction` values; floats only
appear at the presentation layer (see :mod:`riffle.cli`).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import comb, factorial
from typing import Optional, Sequence, Union

from .combinatorics import DeckSpec, eulerian_numbers, multinomial
from .errors import CapacityError, InputError

DEFAULT_TERM_BUDGET = 10**9
DEFAULT_MATRIX_ORDER_LIMIT = 16


def _check_a(a):
    if int(a) != a or a < 1:
        raise InputError(f"shuffle parameter a must be a positive integer, got {a}")
    return int(a)


def _check_n(n):
    if int(n) != n or n < 1:
        raise InputError(f"deck size n must be a positive integer, got {n}")
    return int(n)


@dataclass(frozen=True)
class DistanceReport:
    """One computed distance, the unit the CLI serialises."""

    deck: str
    a: int
    metric: str
    value: Union[Fraction, float, object]
    method: str
    error_bound: Optional[object] = None
    k: Optional[int] = None
    provenance: str = ""


# -- distinct cards ---------------------------------------------------------

def bd_probability(n: int, a: int, r: int) -> Fraction:
    """Chance that one a-shuffle of n distinct cards produces a given
    arrangement with r rising sequences: C(n + a - r, n) / a^n."""
    n, a = _check_n(n), _check_a(a)
    if not 1 <= r <= n:
        raise InputError(f"rising-sequence count must lie in 1..{n}, got {r}")
    return Fraction(comb(n + a - r, n), a**n)


def full_deck_distances(n: int, a: int) -> tuple[Fraction, Fraction]:
    """(SEP, TV) after an a-shuffle of n distinct cards.

    Permutations are grouped by rising-sequence count using the Eulerian
    numbers, so the cost is O(n) big-integer operations.
    """
    n, a = _check_n(n), _check_a(a)
    nfact = factorial(n)
    scale = a**n
    # TV = 1/2 sum_r A(n,r) |C(n+a-r,n)/a^n - 1/n!|, on the common denominator
    total = 0
    for r, count in enumerate(eulerian_numbers(n), 1):
        total += count * abs(comb(n + a - r, n) * nfact - scale)
    tv = Fraction(total, 2 * scale * nfact)
    sep = 1 - Fraction(nfact * comb(a, n), scale)
    return sep, tv


# -- a single tracked card --------------------------------------------------

@dataclass(frozen=True)
class TransitionMatrix:
    """Single-card transition matrix ``P_a``; rows/columns are positions
    1..n counted from the top.

    Entries are stored as integer numerators over the common denominator
    ``scale`` (= a^n for a shuffle matrix) so products stay in integers.
    """

    n: int
    a: Optional[int]
    numerators: tuple[tuple[int, ...], ...]
    scale: int

    def __getitem__(self, ij):
        i, j = ij
        return Fraction(self.numerators[i - 1][j - 1], self.scale)

    @cached_property
    def entries(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple(Fraction(x, self.scale) for x in row)
                     for row in self.numerators)

    def row(self, i: int) -> list[Fraction]:
        return list(self.entries[i - 1])

    def __matmul__(self, other: "TransitionMatrix") -> "TransitionMatrix":
        if self.n != other.n:
            raise InputError("matrix orders differ")
        cols = list(zip(*other.numerators))
        prod = tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols)
                     for row in self.numerators)
        a = self.a * other.a if self.a and other.a else None
        return TransitionMatrix(self.n, a, prod, self.scale * other.scale)

    def __eq__(self, other):
        if not isinstance(other, TransitionMatrix) or self.n != other.n:
            return NotImplemented
        # compare cross-multiplied so differing scales are handled exactly
        return all(x * other.scale == y * self.scale
                   for r1, r2 in zip(self.numerators, other.numerators)
                   for x, y in zip(r1, r2))

    __hash__ = None

    def apply(self, vector: Sequence) -> list[Fraction]:
        """Right action ``P v``."""
        return [Fraction(sum(x * v for x, v in zip(row, vector))) / self.scale
                for row in self.numerators]

    def is_doubly_stochastic(self) -> bool:
        if any(x < 0 for row in self.numerators for x in row):
            return False
        rows_ok = all(sum(row) == self.scale for row in self.numerators)
        cols_ok = all(sum(col) == self.scale for col in zip(*self.numerators))
        return rows_ok and cols_ok

    def is_cross_symmetric(self) -> bool:
        n = self.n
        return all(self.numerators[i][j] == self.numerators[n - 1 - i][n - 1 - j]
                   for i in range(n) for j in range(n))


def _single_card_numerators(n: int, a: int, i: int) -> list[int]:
    """Row i of a^n P_a, i.e. integer counts of digit sequences."""
    binom_up = [[comb(j, r) for r in range(j + 1)] for j in range(n)]
    row = [0] * n
    for k in range(1, a + 1):
        # power tables for the four bases; Python has 0**0 == 1
        pk = [k**e for e in range(n)]
        pak = [(a - k)**e for e in range(n)]
        pk1 = [(k - 1)**e for e in range(n)]
        pak1 = [(a - k + 1)**e for e in range(n)]
        for j in range(1, n + 1):
            lo = max(0, i + j - n - 1)
            hi = min(i - 1, j - 1)
            s = 0
            for r in range(lo, hi + 1):
                below = i - r - 1
                s += (binom_up[j - 1][r] * binom_up[n - j][below]
                      * pk[r] * pak[j - 1 - r] * pk1[below]
                      * pak1[n - j - below])
            row[j - 1] += s
    return row


def single_card_row(n: int, a: int, i: int) -> list[Fraction]:
    """Distribution of the new position of the card starting at position i."""
    n, a = _check_n(n), _check_a(a)
    if not 1 <= i <= n:
        raise InputError(f"start position must lie in 1..{n}, got {i}")
    scale = a**n
    return [Fraction(x, scale) for x in _single_card_numerators(n, a, i)]


def single_card_matrix(n: int, a: int) -> TransitionMatrix:
    n, a = _check_n(n), _check_a(a)
    rows = tuple(tuple(_single_card_numerators(n, a, i)) for i in range(1, n + 1))
    return TransitionMatrix(n, a, rows, a**n)


def bottom_card_distribution(n: int, a: int) -> dict[int, Fraction]:
    """Position (from the top) of the original bottom card after an a-shuffle."""
    n, a = _check_n(n), _check_a(a)
    scale = a**n
    return {j: Fraction(sum((k - 1)**(n - j) * k**(j - 1) for k in range(1, a + 1)),
                        scale)
            for j in range(1, n + 1)}


def row_distances(row: Sequence[Fraction]) -> tuple[Fraction, Fraction]:
    """(SEP, TV) of a distribution over ``len(row)`` states against uniform."""
    size = len(row)
    u = Fraction(1, size)
    tv = sum((abs(p - u) for p in row), Fraction(0)) / 2
    sep = max(1 - size * p for p in row)
    return sep, tv


def tracked_card_distances(n: int, a: int, i: int) -> tuple[Fraction, Fraction]:
    """(SEP, TV) for the position of the card that started at position i."""
    if i == n:
        row = list(bottom_card_distribution(n, a).values())
    else:
        row = single_card_row(n, a, i)
    return row_distances(row)


# -- eigenstructure ---------------------------------------------------------

def eigenvector_candidate(n: int, m: int, form: str = "signed") -> list[int]:
    """Candidate right eigenvector for eigenvalue a^-m, 1 <= m.

    ``form="printed"`` uses the coefficient (i-1)^(i-1) on the first
    binomial, ``form="signed"`` uses (-1)^(i-1).
    """
    out = []
    for i in range(1, n + 1):
        if form == "printed":
            lead = (i - 1)**(i - 1)
        elif form == "signed":
            lead = (-1)**(i - 1)
        else:
            raise InputError(f"unknown eigenvector form {form!r}")
        out.append(lead * comb(m - 1, i - 1) + (-1)**(n - i + m) * comb(m - 1, n - i))
    return out


def exact_rank(rows: Sequence[Sequence]) -> int:
    """Rank over the rationals by fraction-exact Gaussian elimination."""
    mat = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                f = mat[r][col] / mat[rank][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[rank])]
        rank += 1
    return rank


@dataclass
class MatrixPropertyReport:
    n: int
    a: int
    b: Optional[int]
    doubly_stochastic: bool
    cross_symmetric: bool
    multiplicative: Optional[bool]
    # form -> list of m for which P V_m = a^-m V_m holds with V_m != 0
    eigenvector_hits: dict = field(default_factory=dict)
    spectrum_verified: bool = False
    verified_form: Optional[str] = None

    @property
    def passed(self) -> bool:
        ok = self.doubly_stochastic and self.cross_symmetric and self.spectrum_verified
        return ok and self.multiplicative is not False


def matrix_properties_check(n: int, a: int, b: Optional[int] = None,
                            max_order: int = DEFAULT_MATRIX_ORDER_LIMIT
                            ) -> MatrixPropertyReport:
    """Exact checks of the single-card matrix family.

    The spectrum is certified by exhibiting n linearly independent exact
    eigenvectors: the all-ones vector for eigenvalue 1 and one candidate
    vector per eigenvalue a^-m, m = 1..n-1.
    """
    n, a = _check_n(n), _check_a(a)
    if n > max_order:
        raise CapacityError("exact matrix property check", "max_order",
                            max_order, n)
    P = single_card_matrix(n, a)
    multiplicative = None
    if b is not None:
        b = _check_a(b)
        multiplicative = (P @ single_card_matrix(n, b)) == single_card_matrix(n, a * b)

    hits = {}
    for form in ("printed", "signed"):
        hits[form] = []
        for m in range(1, n):
            v = eigenvector_candidate(n, m, form)
            if any(v) and P.apply(v) == [Fraction(x, a**m) for x in v]:
                hits[form].append(m)

    spectrum = False
    verified_form = None
    for form in ("signed", "printed"):
        if hits[form] == list(range(1, n)):
            basis = [[1] * n] + [eigenvector_candidate(n, m, form) for m in range(1, n)]
            if exact_rank(basis) == n:
                spectrum = True
                verified_form = form
                break
    if n == 1:
        spectrum, verified_form = True, "signed"

    return MatrixPropertyReport(n, a, b, P.is_doubly_stochastic(),
                                P.is_cross_symmetric(), multiplicative,
                                hits, spectrum, verified_form)


# -- general decks ----------------------------------------------------------

def _pack(seq, width):
    return int.from_bytes(b"".join(v.to_bytes(width, "little") for v in seq), "little")


def _unpack(x, width, count):
    data = x.to_bytes(max(width * count, (x.bit_length() + 7) // 8), "little")
    return [int.from_bytes(data[t * width:(t + 1) * width], "little")
            for t in range(count)]


def truncated_product(u: Sequence[int], v: Sequence[int], limit: int,
                      method: str = "kronecker") -> list[int]:
    """Coefficients 0..limit of the product of two non-negative integer
    sequences (power series).

    ``kronecker`` packs each sequence into one big integer and lets the
    interpreter's big-int multiply do the convolution; ``schoolbook`` is the
    plain double loop.
    """
    u = list(u[:limit + 1])
    v = list(v[:limit + 1])
    if not u or not v:
        return [0] * (limit + 1)
    if method == "schoolbook":
        out = [0] * (limit + 1)
        for s, x in enumerate(u):
            if x:
                for t, y in enumerate(v[:limit + 1 - s]):
                    out[s + t] += x * y
        return out
    if method != "kronecker":
        raise InputError(f"unknown convolution method {method!r}")
    if min(u) < 0 or min(v) < 0:
        raise InputError("kronecker product needs non-negative coefficients")
    bound = max(u) * max(v) * min(len(u), len(v))
    width = max(1, (bound.bit_length() + 8) // 8)
    prod = _pack(u, width) * _pack(v, width)
    return _unpack(prod, width, limit + 1)


def pile_sequence(size: int, a: int, last: bool) -> list[int]:
    """Per-pile weights g(0..a): d^D for the bottom pile, d^D - (d-1)^D
    otherwise, with g(0) = 0 so every part of the composition is >= 1."""
    if last:
        return [0] + [d**size for d in range(1, a + 1)]
    return [0] + [d**size - (d - 1)**size for d in range(1, a + 1)]


def composition_sum(deck: DeckSpec, a: int, budget: int = DEFAULT_TERM_BUDGET,
                    method: str = "kronecker") -> int:
    """Sum over compositions a_1 + ... + a_m = a (all a_j >= 1) of
    a_m^{D_m} prod_{j<m} (a_j^{D_j} - (a_j - 1)^{D_j}).

    Evaluated as the coefficient of x^a in the product of the per-pile
    series, built up one pile at a time (O(m a^2) term multiplications
    nominally).
    """
    a = _check_a(a)
    cost = (deck.m - 1) * (a + 1) ** 2
    if cost > budget:
        raise CapacityError("separation composition sum", "--budget-terms",
                            budget, cost)
    if a < deck.m:
        return 0
    acc = pile_sequence(deck.piles[0], a, last=deck.m == 1)
    for j, size in enumerate(deck.piles[1:], 2):
        acc = truncated_product(acc, pile_sequence(size, a, last=j == deck.m),
                                a, method)
    return acc[a]


def least_likely_probability(deck: DeckSpec, a: int,
                             budget: int = DEFAULT_TERM_BUDGET) -> Fraction:
    """Probability of the reversed arrangement after an a-shuffle of the
    sorted deck; this is the least likely arrangement."""
    a = _check_a(a)
    return Fraction(composition_sum(deck, a, budget), a**deck.n)


def general_sep(deck: DeckSpec, a: int, budget: int = DEFAULT_TERM_BUDGET) -> Fraction:
    """Separation distance after an a-shuffle of the sorted deck."""
    a = _check_a(a)
    q = least_likely_probability(deck, a, budget)
    return 1 - deck.state_count() * q


# -- red/black decks --------------------------------------------------------

def _redblack_word(w) -> str:
    if isinstance(w, str):
        word = w.upper()
    else:
        word = "".join({1: "R", 2: "B"}.get(x, "?") for x in w)
    if set(word) - {"R", "B"}:
        raise InputError(f"red-black word must use R/B (or labels 1/2), got {w!r}")
    return word


def redblack_word_probability(n: int, w) -> Fraction:
    """Chance of the red/black word ``w`` after one 2-shuffle of n reds on
    top of n blacks.  ``w`` is a string over R/B or a label sequence with
    1 = red, 2 = black."""
    n = _check_n(n)
    word = _redblack_word(w)
    if word.count("R") != n or word.count("B") != n:
        raise InputError(f"word must contain exactly {n} reds and {n} blacks")
    h = len(word) - len(word.lstrip("R"))
    t = len(word) - len(word.rstrip("B"))
    return Fraction(2**h + 2**t - 1, 4**n)


def redblack_tv(n: int) -> Fraction:
    """Total variation after one 2-shuffle of n reds atop n blacks.

    Words are grouped by (h, t): the sorted word itself, and for
    h, t < n the C(2n - h - t - 2, n - h - 1) words with exactly h leading
    reds and t trailing blacks.
    """
    n = _check_n(n)
    states = comb(2 * n, n)
    scale = 4**n
    # work on the common denominator scale * states
    total = abs((2**(n + 1) - 1) * states - scale)
    for i in range(n):
        for j in range(n):
            words = comb(2 * n - (i + j + 2), n - (i + 1))
            if words:
                total += words * abs((2**i + 2**j - 1) * states - scale)
    return Fraction(total, 2 * scale * states)


def alternating_tv(n: int, form: str = "printed") -> Fraction:
    """Total variation after one 2-shuffle of an alternating R B R B ... deck.

    ``form="printed"`` evaluates the closed form
    1/2 (1 - (2^n + 2^(n-1) - 1) / C(2n, n)).  ``form="classes"`` sums
    |Q - U| over the reachable classes found by exhaustive enumeration
    (see :func:`riffle.oracle.gilbreath_classify`): the start word with
    mass (2^(n-1) + 2^n) / 4^n, 2^n - 1 odd-cut words with mass
    2^(n-1) / 4^n, 2^(n-1) - 1 even-cut words with mass 2^n / 4^n, the rest
    unreachable.
    """
    n = _check_n(n)
    states = comb(2 * n, n)
    if form == "printed":
        return Fraction(1, 2) * (1 - Fraction(2**n + 2**(n - 1) - 1, states))
    if form != "classes":
        raise InputError(f"unknown form {form!r}")
    scale = 4**n
    classes = [(1, 2**(n - 1) + 2**n), (2**n - 1, 2**(n - 1)), (2**(n - 1) - 1, 2**n)]
    reachable = sum(c for c, _ in classes)
    total = sum(c * abs(mass * states - scale) for c, mass in classes)
    total += (states - reachable) * scale
    return Fraction(total, 2 * scale * states)
