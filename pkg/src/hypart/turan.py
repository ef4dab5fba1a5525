"""Turán numbers for complete uniform cliques at small n.

``turan_number_exact`` runs a depth-first search over the s-subsets of
``1..n`` in lexicographic order (include before exclude), refusing any
inclusion that completes a forbidden clique and pruning with
``current + remaining <= best``. Among all extremal graphs it returns the
one whose sorted edge list is lexicographically least.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .budget import Budget
from .errors import BudgetExceeded, ConfigError
from .hypercore import Hypergraph

# exhaustive search is attempted automatically only up to this many s-subsets
EXHAUSTIVE_SLOT_LIMIT = 30

DEFAULT_TURAN_BUDGET = Budget(max_nodes=10**8, max_seconds=600.0)
DEFAULT_EXTREMAL_BUDGET = Budget(max_nodes=2 * 10**6, max_seconds=30.0)


@dataclass(frozen=True)
class TuranResult:
    n: int
    s: int
    t: int
    ex_value: int
    witness: Hypergraph
    exact: bool
    maximal: bool = False
    nodes: int = 0


def count_clique_copies(G: Hypergraph, t: int) -> int:
    """Number of t-vertex sets whose every s-subset is an edge of ``G``."""
    s = G.r
    if t <= s:
        raise ConfigError(f"clique order {t} must exceed uniformity {s}")
    edges = G.edges
    count = 0

    def grow(chosen: list[int], start: int):
        nonlocal count
        if len(chosen) == t:
            count += 1
            return
        for v in range(start, G.n + 1):
            if len(chosen) >= s - 1:
                ok = all(c + (v,) in edges for c in itertools.combinations(chosen, s - 1))
                if not ok:
                    continue
            chosen.append(v)
            grow(chosen, v + 1)
            chosen.pop()

    grow([], 1)
    return count


class _Slots:
    """Bit-indexed s-subsets of ``1..n`` with their clique-completion masks."""

    def __init__(self, n: int, s: int, t: int):
        self.n, self.s, self.t = n, s, t
        self.sets = list(itertools.combinations(range(1, n + 1), s))
        self.index = {e: i for i, e in enumerate(self.sets)}
        # completions[i]: for each t-set through slot i, the mask of its other s-subsets
        self.completions: list[list[int]] = [[] for _ in self.sets]
        for T in itertools.combinations(range(1, n + 1), t):
            ids = [self.index[e] for e in itertools.combinations(T, s)]
            full = 0
            for i in ids:
                full |= 1 << i
            for i in ids:
                self.completions[i].append(full & ~(1 << i))

    def closes_clique(self, i: int, mask: int) -> bool:
        return any(mask & c == c for c in self.completions[i])

    def to_hypergraph(self, mask: int) -> Hypergraph:
        return Hypergraph(
            self.n, self.s, frozenset(e for i, e in enumerate(self.sets) if mask >> i & 1)
        )

    def mask_of(self, G: Hypergraph) -> int:
        return sum(1 << i for i, e in enumerate(self.sets) if e in G.edges)

    def is_maximal(self, mask: int) -> bool:
        return all(
            mask >> i & 1 or self.closes_clique(i, mask) for i in range(len(self.sets))
        )


def _check_orders(s: int, t: int) -> None:
    if s < 1 or t <= s:
        raise ConfigError(f"need t > s >= 1, got s={s}, t={t}")


def turan_number_exact(n: int, s: int, t: int, budget: Budget | None = None) -> TuranResult:
    """Exact ex(n, K_t^(s)) by exhaustive search.

    Raises :class:`BudgetExceeded` (with the best witness found, flagged
    inexact) when the node or time budget runs out.
    """
    _check_orders(s, t)
    meter = (budget or DEFAULT_TURAN_BUDGET).meter()
    slots = _Slots(n, s, t)
    total = len(slots.sets)
    # only masks fully decided before slot i can block it
    early = [[c for c in cs if c >> i == 0] for i, cs in enumerate(slots.completions)]

    best_count = -1
    best_mask = 0
    aborted = False

    def dfs(i: int, mask: int, count: int):
        nonlocal best_count, best_mask, aborted
        if aborted:
            return
        if not meter.tick():
            aborted = True
            return
        if count + (total - i) <= best_count:
            return
        if i == total:
            best_count, best_mask = count, mask
            return
        if not any(mask & c == c for c in early[i]):
            dfs(i + 1, mask | (1 << i), count + 1)
        dfs(i + 1, mask, count)

    dfs(0, 0, 0)
    witness = slots.to_hypergraph(best_mask)
    result = TuranResult(
        n, s, t, max(best_count, 0), witness, exact=not aborted,
        maximal=slots.is_maximal(best_mask), nodes=meter.nodes,
    )
    if aborted:
        raise BudgetExceeded(
            f"Turán search for n={n}, s={s}, t={t} stopped after {meter.nodes} nodes",
            best=result,
        )
    return result


def local_search_witness(n: int, s: int, t: int, seed: int = 0,
                         restarts: int = 6, max_passes: int = 50) -> TuranResult:
    """Heuristic K_t^(s)-free graph: random maximal graphs improved by
    one-out/two-in edge swaps. Gives a lower bound on ex only."""
    _check_orders(s, t)
    slots = _Slots(n, s, t)
    total = len(slots.sets)
    neighbours: list[set[int]] = [set() for _ in range(total)]
    for i, cs in enumerate(slots.completions):
        for c in cs:
            j = 0
            while c:
                if c & 1:
                    neighbours[i].add(j)
                c >>= 1
                j += 1
    rng = random.Random(seed)
    best_mask, best_count = 0, -1
    for _ in range(restarts):
        order = list(range(total))
        rng.shuffle(order)
        mask = 0
        for i in order:
            if not slots.closes_clique(i, mask):
                mask |= 1 << i
        for _ in range(max_passes):
            improved = False
            members = [i for i in range(total) if mask >> i & 1]
            rng.shuffle(members)
            for e in members:
                if not mask >> e & 1:
                    continue
                trial = mask & ~(1 << e)
                cands = sorted(j for j in neighbours[e] if not trial >> j & 1 and j != e)
                rng.shuffle(cands)
                added = 0
                for j in cands:
                    if not slots.closes_clique(j, trial):
                        trial |= 1 << j
                        added += 1
                if added >= 2:
                    mask = trial
                    improved = True
            if not improved:
                break
        count = bin(mask).count("1")
        if count > best_count:
            best_mask, best_count = mask, count
    return TuranResult(
        n, s, t, max(best_count, 0), slots.to_hypergraph(best_mask), exact=False,
        maximal=slots.is_maximal(best_mask),
    )


def _balanced_bipartite(n: int) -> Hypergraph:
    # odd labels on one side, even on the other
    edges = frozenset((a, b) for a, b in itertools.combinations(range(1, n + 1), 2)
                      if (a - b) % 2)
    return Hypergraph(n, 2, edges)


def _three_class_construction(n: int) -> Hypergraph:
    """The classical K_4^(3)-free triple system: split vertices into three
    classes by label mod 3; keep transversal triples and triples with two
    vertices in class i and one in class i+1 (mod 3)."""
    edges = []
    for T in itertools.combinations(range(1, n + 1), 3):
        cls = sorted(v % 3 for v in T)
        if len(set(cls)) == 3:
            edges.append(T)
            continue
        if len(set(cls)) == 2:
            double = max(set(cls), key=cls.count)
            single = min(set(cls), key=cls.count)
            if single == (double + 1) % 3:
                edges.append(T)
    return Hypergraph(n, 3, frozenset(edges))


@lru_cache(maxsize=None)
def _extremal_cached(n: int, r: int, budget: Budget, seed: int) -> TuranResult:
    if r == 3:
        G = _balanced_bipartite(n)
        return TuranResult(n, 2, 3, len(G), G, exact=True, maximal=True)
    s, t = r - 1, r
    exact_try = None
    if math.comb(n, s) <= EXHAUSTIVE_SLOT_LIMIT:
        try:
            return turan_number_exact(n, s, t, budget)
        except BudgetExceeded as exc:
            exact_try = exc.best
    heuristic = local_search_witness(n, s, t, seed=seed)
    if r == 4:
        G = _three_class_construction(n)
        if len(G) > heuristic.ex_value:
            slots = _Slots(n, s, t)
            heuristic = TuranResult(n, s, t, len(G), G, exact=False,
                                    maximal=slots.is_maximal(slots.mask_of(G)))
    if exact_try is not None and exact_try.ex_value > heuristic.ex_value:
        return exact_try
    return heuristic


def extremal_construction(n: int, r: int, budget: Budget | None = None,
                          seed: int = 0) -> TuranResult:
    """A K_r^(r-1)-free (r-1)-graph on ``n`` vertices with as many edges as
    we can certify.

    For ``r == 3`` this is the balanced complete bipartite graph (odd versus
    even labels), which is extremal. For ``r >= 4`` exhaustive search is
    used when there are at most ``EXHAUSTIVE_SLOT_LIMIT`` (r-1)-sets and it
    fits the budget; otherwise a seeded local search supplies the witness
    and ``exact`` is False.
    """
    if r < 3:
        raise ConfigError(f"extremal construction needs r >= 3, got {r}")
    return _extremal_cached(n, r, budget or DEFAULT_EXTREMAL_BUDGET, seed)


class DensityEntry(NamedTuple):
    n: int
    value: int
    ratio: Fraction
    exact: bool


def density_sequence(r: int, n_min: int, n_max: int,
                     budget: Budget | None = None) -> list[DensityEntry]:
    """``ex(n, K_r^(r-1)) / C(n, r-1)`` (or a lower-bound ratio when inexact)
    for ``n_min <= n <= n_max``."""
    if n_min < r:
        raise ConfigError(f"n_min must be at least r={r}")
    out = []
    for n in range(n_min, n_max + 1):
        res = extremal_construction(n, r, budget)
        out.append(DensityEntry(n, res.ex_value, Fraction(res.ex_value, math.comb(n, r - 1)),
                                res.exact))
    return out
