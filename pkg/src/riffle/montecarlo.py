"""Seeded Monte Carlo estimates of distances after an a-shuffle.

Shuffles are drawn with the inverse-shuffle digit model: each card gets an
independent uniform digit in 0..a-1, a stable sort by digit performs the
inverse shuffle, and inverting that permutation gives the forward shuffle.

Reproducibility contract: samples are generated in blocks of
``block_size``; block ``b`` of a run with seed ``s`` draws from
``numpy.random.Philox(key=(b << 64) | s)``.  Counts are merged by integer
addition, so the report depends only on (config, block_size) and never on
how many workers ran the blocks.
"""
from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .combinatorics import DeckSpec, multinomial
from .errors import CapacityError, InputError

MAX_CELLS = 10**6
DEFAULT_BLOCK_SIZE = 1 << 16
FEATURES = ("permutation", "position", "word")


def block_stream(seed: int, block: int) -> np.random.Generator:
    if not 0 <= seed < 2**64:
        raise InputError("seed must be a 64-bit unsigned integer")
    return np.random.Generator(np.random.Philox(key=(block << 64) | seed))


def sample_a_shuffle(n: int, a: int, stream: np.random.Generator) -> tuple[int, ...]:
    """One arrangement of cards 1..n after an a-shuffle of the sorted deck."""
    if a < 1 or n < 1:
        raise InputError("need n >= 1 and a >= 1")
    digits = stream.integers(0, a, size=n)
    dealt = np.argsort(digits, kind="stable")
    return tuple(int(x) + 1 for x in np.argsort(dealt))


def sample_block(n: int, a: int, stream: np.random.Generator, size: int) -> np.ndarray:
    """``size`` independent shuffles as a (size, n) array of 1-based labels."""
    digits = stream.integers(0, a, size=(size, n))
    dealt = np.argsort(digits, axis=1, kind="stable")
    return np.argsort(dealt, axis=1) + 1


@dataclass(frozen=True)
class SamplerConfig:
    """What to sample.

    feature ``permutation`` tabulates whole arrangements of n distinct
    cards; ``position`` tracks the card that starts at ``start`` (default:
    the bottom card); ``word`` tabulates the label word of ``deck`` started
    in sorted order (a two-pile deck gives the colour word).
    """

    a: int
    repetitions: int
    seed: int
    feature: str = "position"
    n: Optional[int] = None
    deck: Optional[DeckSpec] = None
    start: Optional[int] = None
    block_size: int = DEFAULT_BLOCK_SIZE
    workers: int = 1

    def __post_init__(self):
        if self.repetitions < 1:
            raise InputError("repetitions must be at least 1")
        if self.a < 1:
            raise InputError("a must be at least 1")
        if self.feature not in FEATURES:
            raise InputError(f"feature must be one of {FEATURES}")
        if self.feature == "word":
            if self.deck is None:
                raise InputError("word feature needs a deck")
        elif self.n is None:
            raise InputError(f"{self.feature} feature needs n")
        if self.block_size < 1 or self.workers < 1:
            raise InputError("block_size and workers must be positive")

    @property
    def cards(self) -> int:
        return self.deck.n if self.feature == "word" else self.n

    def cell_count(self) -> int:
        if self.feature == "permutation":
            return math.factorial(self.n)
        if self.feature == "position":
            return self.n
        return multinomial(self.deck.n, self.deck.piles)


@dataclass
class EmpiricalReport:
    counts: dict
    tv: Fraction
    sep: Optional[Fraction]
    tv_se: float
    cells: int
    config: SamplerConfig

    @property
    def repetitions(self) -> int:
        return sum(self.counts.values())


def _features(config: SamplerConfig, perms: np.ndarray) -> Counter:
    if config.feature == "position":
        start = config.start or config.n
        if not 1 <= start <= config.n:
            raise InputError(f"start must lie in 1..{config.n}")
        positions = np.argmax(perms == start, axis=1) + 1
        values, counts = np.unique(positions, return_counts=True)
        return Counter({int(v): int(c) for v, c in zip(values, counts)})
    if config.feature == "word":
        base = np.asarray(config.deck.sorted_word())
        rows = base[perms - 1]
    else:
        rows = perms
    values, counts = np.unique(rows, axis=0, return_counts=True)
    return Counter({tuple(int(x) for x in v): int(c) for v, c in zip(values, counts)})


def _run_block(config: SamplerConfig, block: int) -> Counter:
    size = min(config.block_size, config.repetitions - block * config.block_size)
    perms = sample_block(config.cards, config.a, block_stream(config.seed, block), size)
    return _features(config, perms)


def estimate_distances(config: SamplerConfig, max_cells: int = MAX_CELLS) -> EmpiricalReport:
    """Plug-in TV (and SEP when every cell was observed) against uniform."""
    cells = config.cell_count()
    if cells > max_cells:
        raise CapacityError(f"{config.feature} feature table (use a coarser feature)",
                            "max_cells", max_cells, cells)
    blocks = range(-(-config.repetitions // config.block_size))
    total = Counter()
    if config.workers == 1:
        for b in blocks:
            total.update(_run_block(config, b))
    else:
        with ThreadPoolExecutor(config.workers) as pool:
            for part in pool.map(lambda b: _run_block(config, b), blocks):
                total.update(part)
    counts = dict(sorted(total.items()))

    N = config.repetitions
    unseen = cells - len(counts)
    # plug-in TV on the common denominator 2 N cells
    tv = Fraction(sum(abs(c * cells - N) for c in counts.values()) + unseen * N,
                  2 * N * cells)
    sep = 1 - Fraction(cells * min(counts.values()), N) if unseen == 0 else None

    # delta-method standard error of the plug-in TV
    u = 1 / cells
    signs = [(0.5 if c / N > u else -0.5, c / N) for c in counts.values()]
    mean = sum(s * p for s, p in signs)
    var = sum(s * s * p for s, p in signs) - mean * mean
    tv_se = math.sqrt(max(var, 0.0) / N)
    return EmpiricalReport(counts, tv, sep, tv_se, cells, config)
