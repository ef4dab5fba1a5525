"""Brute-force reference computations used to derive and cross-check
expected values. Deliberately naive and independent of the package's search
code; only usable on tiny instances."""

from __future__ import annotations

import itertools
from collections import Counter
from functools import lru_cache


def all_rsets(n, r):
    return list(itertools.combinations(range(1, n + 1), r))


def product_members(parts):
    return {tuple(sorted(c)) for c in itertools.product(*parts)}


def naive_blocks(n, r, edges, nontrivial=False):
    """Every complete r-partite block of the edge set, as a frozenset of
    frozenset parts, by trying all (r+1)^n labelings of the vertices."""
    edges = set(edges)
    found = set()
    for labels in itertools.product(range(r + 1), repeat=n):
        parts = [frozenset(v + 1 for v in range(n) if labels[v] == j) for j in range(r)]
        if any(not p for p in parts):
            continue
        key = frozenset(parts)
        if key in found:
            continue
        if nontrivial and sum(len(p) > 1 for p in parts) < 2:
            continue
        if product_members(parts) <= edges:
            found.add(key)
    return found


def brute_min_partition(n, r, edges, nontrivial=False, limit=None):
    """Minimum exact cover of ``edges`` by naive blocks (iterative deepening).
    Returns None if no exact cover exists."""
    edges = frozenset(edges)
    if not edges:
        return 0
    blocks = [frozenset(product_members(b)) for b in naive_blocks(n, r, edges, nontrivial)]
    by_edge = {e: [b for b in blocks if e in b] for e in edges}

    def cover(remaining, k):
        if not remaining:
            return True
        if k == 0:
            return False
        e = min(remaining)
        return any(cover(remaining - b, k - 1) for b in by_edge[e] if b <= remaining)

    top = limit if limit is not None else len(edges)
    for k in range(1, top + 1):
        if cover(edges, k):
            return k
    return None


def multiplicities(blocks):
    hits = Counter()
    for parts in blocks:
        hits.update(product_members(parts))
    return hits


def brute_mis_size(n, edges):
    edges = [tuple(e) for e in edges]
    for k in range(n, -1, -1):
        for S in itertools.combinations(range(1, n + 1), k):
            s = set(S)
            if not any(a in s and b in s for a, b in edges):
                return k
    return 0


def contains_clique(n, s, t, edges):
    edges = set(edges)
    return any(all(c in edges for c in itertools.combinations(T, s))
               for T in itertools.combinations(range(1, n + 1), t))


def brute_turan(n, s, t):
    slots = all_rsets(n, s)
    best = 0
    for mask in range(1 << len(slots)):
        m = bin(mask).count("1")
        if m <= best:
            continue
        chosen = [slots[i] for i in range(len(slots)) if mask >> i & 1]
        if not contains_clique(n, s, t, chosen):
            best = m
    return best


@lru_cache(maxsize=None)
def turan_formula_mantel(n):
    return n * n // 4
