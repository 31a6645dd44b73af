"""Bounds and closed-form approximations for separation and total variation.

Real-valued quantities (powers of alpha = 1 - 1/a inside logarithms) are
evaluated with :mod:`mpmath` at ``dps`` decimal digits.  Quantities that are
rational in a (the rule-of-thumb main term and its eta bound, the sum
approximations) are computed exactly as fractions.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, prod
from typing import Optional, Sequence

import mpmath

from .combinatorics import DeckSpec, eulerian_polynomial
from .errors import CapacityError, InputError

DEFAULT_DPS = 50
DEFAULT_COMPOSITION_BUDGET = 10**7
DEFAULT_DEGREE_BUDGET = 10**5


@dataclass(frozen=True)
class BoundPair:
    lower: object
    upper: object
    context: str = ""

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"lower bound {self.lower} exceeds upper {self.upper}")

    def contains(self, value) -> bool:
        value = to_mpf(value)
        return self.lower <= value <= self.upper


def to_mpf(x):
    """Exact conversion of ints/Fractions to mpf at the working precision."""
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def _alpha(n, a):
    if n < 2:
        raise InputError("bounds need n >= 2")
    if a < 2:
        raise InputError("bounds need a >= 2 (alpha = 1 - 1/a vanishes at a = 1)")
    return 1 - mpmath.mpf(1) / a


def bottom_card_prob_bounds(n: int, a: int, i: int, dps: int = DEFAULT_DPS) -> BoundPair:
    """Sandwich for the chance the original bottom card sits at position i
    (counted from the top) after an a-shuffle."""
    if not 1 <= i <= n:
        raise InputError(f"position must lie in 1..{n}")
    with mpmath.workdps(dps):
        al = _alpha(n, a)
        lower = al**(n - i + 1) / (a * (1 - al**n))
        upper = al**(n - i) / (a * (1 - al**(n - 1)))
        return BoundPair(+lower, +upper, f"n={n} a={a} i={i}")


def bottom_card_sep_bounds(n: int, a: int, dps: int = DEFAULT_DPS) -> BoundPair:
    """Sandwich for the bottom-card separation distance.

    SEP = 1 - n Q(1) and the position-1 probability bounds give
    1 - (n/a) f(alpha^(n-1)) <= SEP <= 1 - (n/a) f(alpha^n), f(x) = x/(1-x).
    """
    with mpmath.workdps(dps):
        al = _alpha(n, a)
        f = lambda x: x / (1 - x)  # noqa: E731
        lower = 1 - mpmath.mpf(n) / a * f(al**(n - 1))
        upper = 1 - mpmath.mpf(n) / a * f(al**n)
        return BoundPair(+lower, +upper, f"n={n} a={a}")


def bottom_card_tv_bounds(n: int, a: int, dps: int = DEFAULT_DPS) -> BoundPair:
    with mpmath.workdps(dps):
        al = _alpha(n, a)
        scale = 1 / (n * mpmath.log(1 / al))
        upper = (al**(n + 1) / (1 - al**n)
                 - a * al**2 * (1 - al**(n - 1)) / (n * (1 - al**n))
                 + scale * mpmath.log(mpmath.mpf(a) / n * (1 - al**n) / al**(n + 1)))
        lower = (al**n / (1 - al**(n - 1))
                 - a * (1 - al**n) / (n * al * (1 - al**(n - 1)))
                 + scale * mpmath.log(mpmath.mpf(a) / n * (1 - al**(n - 1)) / al**(n - 1)))
        return BoundPair(+lower, +upper, f"n={n} a={a}")


def sep_limit(c, dps: int = DEFAULT_DPS):
    """Large-n bottom-card separation when a = n 2^c:
    1 - 2^-c e^(-2^-c) / (1 - e^(-2^-c))."""
    with mpmath.workdps(dps):
        x = mpmath.mpf(2) ** (-mpmath.mpf(c))
        return +(1 - x * mpmath.exp(-x) / (1 - mpmath.exp(-x)))


def sep_tail(c, dps: int = DEFAULT_DPS):
    """Leading behaviour 2^(-c-1) of :func:`sep_limit` for large c."""
    with mpmath.workdps(dps):
        return mpmath.mpf(2) ** (-mpmath.mpf(c) - 1)


def tv_limit(c, dps: int = DEFAULT_DPS):
    """Large-n bottom-card total variation when a = n 2^c, C = 2^c:

    C log(C (e^(1/C) - 1)) + (1 - C (e^(1/C) - 1)) / (e^(1/C) - 1),

    the common n -> infinity limit of both sides of :func:`bottom_card_tv_bounds`.
    """
    with mpmath.workdps(dps):
        C = mpmath.mpf(2) ** mpmath.mpf(c)
        e = mpmath.expm1(1 / C)
        return +(C * mpmath.log(C * e) + (1 - C * e) / e)


# -- sums over compositions -------------------------------------------------

def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _check_sum_args(a, xi, r):
    if len(xi) != len(r):
        raise InputError("xi and r must have the same length")
    if len(r) < 2:
        raise InputError("need m >= 2 parts")
    if a < 0 or int(a) != a:
        raise InputError("a must be a non-negative integer")
    if min(r) < 2:
        raise InputError("every exponent must be at least 2")
    xi = [Fraction(x) for x in xi]
    if any(not 0 <= x <= 1 for x in xi):
        raise InputError("every shift must lie in [0, 1]")
    return int(a), xi, [int(e) for e in r]


def s_m_exact(a: int, xi: Sequence, r: Sequence[int],
              budget: int = DEFAULT_COMPOSITION_BUDGET) -> Fraction:
    """Sum over a_1 + ... + a_m = a (a_j >= 0) of prod (a_j + xi_j)^r_j.

    Shifts are converted to fractions exactly (floats keep their binary
    value), so the result is exact.
    """
    a, xi, r = _check_sum_args(a, xi, r)
    m = len(r)
    count = comb(a + m - 1, m - 1)
    if count > budget:
        raise CapacityError("composition enumeration", "budget", budget, count)
    return sum((prod((c + x)**e for c, x, e in zip(comp, xi, r))
                for comp in _compositions(a, m)), Fraction(0))


def s_m_approx(a: int, xi: Sequence, r: Sequence[int]) -> tuple[Fraction, Fraction]:
    """(main term, error bound) approximating :func:`s_m_exact`."""
    a, xi, r = _check_sum_args(a, xi, r)
    m = len(r)
    total = sum(r) + m - 1
    base = a + sum(xi)
    fact = prod(factorial(e) for e in r)
    main = Fraction(fact, factorial(total)) * base**total
    q = Fraction(1, 3 * (min(r) - 1))
    bound = fact * sum(comb(m - 1, j) * q**j * base**(total - 2 * j)
                       / factorial(total - 2 * j) for j in range(1, m))
    return main, Fraction(bound)


# -- rule of thumb ----------------------------------------------------------

@dataclass(frozen=True)
class RotEstimate:
    sep_estimate: Fraction
    eta_bound: Optional[Fraction]
    valid: bool
    # the estimated value of Q_a(w*)/U = 1 - SEP
    main_term: Fraction
    note: str = ""


def rot_main_term(deck: DeckSpec, a: int) -> Fraction:
    n, m = deck.n, deck.m
    rising = prod(range(n + 1, n + m))
    alt = sum((-1)**j * comb(m - 1, j) * Fraction(a - j, a)**(n + m - 1)
              for j in range(m))
    return Fraction(a**(m - 1), rising) * alt


def rot_eta_bound(deck: DeckSpec, a: int) -> Fraction:
    n, m, d = deck.n, deck.m, deck.d
    if d < 3:
        raise InputError("eta bound needs every pile to hold at least 3 cards")
    if a - m + 1 <= 0:
        raise InputError("eta bound needs a >= m")
    return (1 + Fraction(n * n, 3 * (d - 2) * (a - m + 1)**2))**(m - 1) - 1


def rule_of_thumb_sep(deck: DeckSpec, a: int) -> RotEstimate:
    """Closed-form separation estimate; the exact value satisfies
    1 - SEP = (1 + eta) * main_term with |eta| <= eta_bound when d >= 3."""
    if a < deck.m:
        raise InputError(f"rule of thumb needs a >= m = {deck.m} "
                         f"(for a < m the separation is exactly 1)")
    main = rot_main_term(deck, a)
    if deck.d >= 3:
        return RotEstimate(1 - main, rot_eta_bound(deck, a), True, main)
    note = f"smallest pile has {deck.d} < 3 cards; no eta bound available"
    warnings.warn(note, RuntimeWarning, stacklevel=2)
    return RotEstimate(1 - main, None, False, main, note)


# -- generating function ----------------------------------------------------

def _poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if x:
            for j, y in enumerate(q):
                out[i + j] += x * y
    return out


def eulerian_gf_coefficient(deck: DeckSpec, a: int,
                            budget: int = DEFAULT_DEGREE_BUDGET) -> int:
    """Coefficient of z^a in (1-z)^(m-1) f_{D_1}(z) ... f_{D_m}(z) where
    f_k(z) = sum r^k z^r = A_k(z) / (1-z)^(k+1).

    The product collapses to prod A_{D_j}(z) / (1-z)^(n+1); expanding
    1/(1-z)^(n+1) = sum C(s+n, n) z^s gives the coefficient as a finite sum.
    """
    n = deck.n
    if n > budget:
        raise CapacityError("Eulerian polynomial product", "budget", budget, n)
    poly = [1]
    for size in deck.piles:
        poly = _poly_mul(poly, eulerian_polynomial(size))
    return sum(c * comb(a - t + n, n) for t, c in enumerate(poly) if t <= a)
