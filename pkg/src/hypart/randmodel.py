"""Seeded samplers for the binomial random hypergraph model and the complete
hypergraph.

Every r-set gets its own keyed pseudo-random word, so the sample does not
depend on the order in which r-sets are visited or on how the work is split
between workers.

Decision rule: the r-set of lexicographic rank ``k`` (0-based, over all
r-subsets of ``1..n``) is an edge iff

    int.from_bytes(blake2b(trial || k, key=seed, digest_size=8), "big") < T

where ``trial`` and ``k`` are 8-byte big-endian unsigned integers, ``seed``
is the 8-byte big-endian key and ``T = floor(p * 2**64)`` is computed exactly
from the rational value of ``p``.
"""

from __future__ import annotations

import hashlib
import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import ConfigError
from .hypercore import Edge, Hypergraph

ProbabilityLike = Union[str, Fraction, int, float]

_U64 = 1 << 64


def parse_probability(p: ProbabilityLike) -> Fraction:
    """Exact rational value of ``p``; strings may be decimals or ``a/b``."""
    try:
        if isinstance(p, float):
            # repr gives the shortest decimal that round-trips
            value = Fraction(repr(p))
        else:
            value = Fraction(p)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"cannot parse probability {p!r}") from exc
    if not 0 <= value <= 1:
        raise ConfigError(f"probability {p!r} outside [0, 1]")
    return value


@dataclass(frozen=True)
class SampleConfig:
    n: int
    r: int
    p: ProbabilityLike
    seed: int
    trial_index: int = 0

    def __post_init__(self):
        if self.r < 2:
            raise ConfigError(f"uniformity must be at least 2, got {self.r}")
        if self.n < 0:
            raise ConfigError(f"vertex count must be nonnegative, got {self.n}")
        if not 0 <= self.seed < _U64:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if not 0 <= self.trial_index < _U64:
            raise ConfigError(f"trial index out of range: {self.trial_index}")
        parse_probability(self.p)

    @property
    def probability(self) -> Fraction:
        return parse_probability(self.p)

    @property
    def threshold(self) -> int:
        return math.floor(self.probability * _U64)


def keyed_word(seed: int, trial_index: int, rank: int) -> int:
    h = hashlib.blake2b(
        trial_index.to_bytes(8, "big") + rank.to_bytes(8, "big"),
        key=seed.to_bytes(8, "big"),
        digest_size=8,
    )
    return int.from_bytes(h.digest(), "big")


def unrank_combination(rank: int, n: int, r: int) -> Edge:
    """The ``rank``-th r-subset of ``1..n`` in lexicographic order."""
    out = []
    v = 1
    for slots in range(r, 0, -1):
        while True:
            below = math.comb(n - v, slots - 1)
            if rank < below:
                break
            rank -= below
            v += 1
        out.append(v)
        v += 1
    return tuple(out)


def _next_combination(c: list[int], n: int) -> bool:
    r = len(c)
    i = r - 1
    while i >= 0 and c[i] == n - r + i + 1:
        i -= 1
    if i < 0:
        return False
    c[i] += 1
    for j in range(i + 1, r):
        c[j] = c[j - 1] + 1
    return True


def _sample_range(cfg: SampleConfig, threshold: int, lo: int, hi: int) -> list[Edge]:
    out: list[Edge] = []
    if lo >= hi:
        return out
    c = list(unrank_combination(lo, cfg.n, cfg.r))
    for k in range(lo, hi):
        if keyed_word(cfg.seed, cfg.trial_index, k) < threshold:
            out.append(tuple(c))
        _next_combination(c, cfg.n)
    return out


def sample_hypergraph(cfg: SampleConfig, workers: int = 1) -> Hypergraph:
    """Draw one hypergraph from the binomial model described by ``cfg``.

    ``workers`` splits the r-sets into contiguous rank ranges evaluated
    concurrently; the result is identical for every worker count.
    """
    total = math.comb(cfg.n, cfg.r)
    threshold = cfg.threshold
    if threshold == 0 or total == 0:
        return Hypergraph(cfg.n, cfg.r, frozenset())
    if threshold >= _U64:
        return complete_hypergraph(cfg.n, cfg.r)
    if workers <= 1:
        edges = _sample_range(cfg, threshold, 0, total)
    else:
        step = -(-total // workers)
        bounds = [(lo, min(lo + step, total)) for lo in range(0, total, step)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = pool.map(lambda b: _sample_range(cfg, threshold, *b), bounds)
            edges = [e for chunk in chunks for e in chunk]
    return Hypergraph(cfg.n, cfg.r, frozenset(edges))


def complete_hypergraph(n: int, r: int) -> Hypergraph:
    return Hypergraph(n, r, frozenset(itertools.combinations(range(1, n + 1), r)))
