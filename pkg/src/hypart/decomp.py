"""Decompositions of a hypergraph's edge set into complete r-partite blocks.

* :func:`greedy_turan_decomposition` walks a list of (r-1)-sets and, at
  each one, peels off every still-uncovered edge through it as a single
  trivial block.
* :func:`upper_bound_pipeline` feeds it the complement of a K_r^(r-1)-free
  (r-1)-graph, so every r-set contains some cover member.
* :func:`star_decomposition` is the graph case: stars centred outside an
  independent set.
* :func:`exact_min_partition` is a branch-and-bound for the minimum.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .budget import Budget
from .errors import ConfigError, CoverGap, NotIndependent
from .hypercore import Block, Edge, Hypergraph, Partition, Prefix, canonicalize_edge
from .turan import extremal_construction

DEFAULT_EXACT_BUDGET = Budget(max_nodes=10**7, max_seconds=60.0)


@dataclass(frozen=True)
class GreedyStep:
    index: int
    cover_edge: Edge
    assigned: tuple[Edge, ...]
    last: frozenset[int]


@dataclass(frozen=True)
class GreedyTrace:
    cover_edges: tuple[Edge, ...]
    steps: tuple[GreedyStep, ...]
    skipped: tuple[int, ...]


def greedy_turan_decomposition(
    H: Hypergraph, cover: Sequence[Iterable[int]]
) -> tuple[Partition, GreedyTrace]:
    """Decompose ``H`` into trivial blocks, one per useful cover member.

    Cover members are processed in the given order. An edge is assigned to
    the first cover member it contains. Raises :class:`CoverGap` if some edge
    of ``H`` contains no cover member.
    """
    if H.r < 3:
        raise ConfigError(f"greedy decomposition needs r >= 3, got r={H.r}")
    cover_edges = tuple(canonicalize_edge(e, H.r - 1, H.n) for e in cover)
    cover_set = set(cover_edges)
    for F in H.sorted_edges:
        if not any(sub in cover_set for sub in itertools.combinations(F, H.r - 1)):
            raise CoverGap(F)

    uncovered = set(H.edges)
    blocks: list[Block] = []
    steps: list[GreedyStep] = []
    skipped: list[int] = []
    for i, e in enumerate(cover_edges):
        inside = set(e)
        assigned = []
        last = []
        for v in H.vertices:
            if v in inside:
                continue
            F = tuple(sorted(e + (v,)))
            if F in uncovered:
                assigned.append(F)
                last.append(v)
        if not assigned:
            skipped.append(i)
            continue
        uncovered.difference_update(assigned)
        block = Block(Prefix(tuple(frozenset((v,)) for v in e)), frozenset(last))
        blocks.append(block)
        steps.append(GreedyStep(i, e, tuple(assigned), block.last))
    return (
        Partition(H.n, H.r, tuple(blocks), "greedy"),
        GreedyTrace(cover_edges, tuple(steps), tuple(skipped)),
    )


@dataclass(frozen=True)
class BoundReport:
    n: int
    r: int
    q: int
    block_count: int
    ratio: Fraction
    turan_exact: bool
    ex_value: int


def upper_bound_pipeline(
    H: Hypergraph, budget: Budget | None = None, seed: int = 0
) -> tuple[Partition, BoundReport]:
    """Greedy decomposition using the complement of an extremal
    K_r^(r-1)-free witness, listed lexicographically, as the cover."""
    if H.r < 3:
        raise ConfigError(f"upper-bound pipeline needs r >= 3, got r={H.r}")
    n, r = H.n, H.r
    witness = extremal_construction(n, r, budget, seed)
    cover = [e for e in itertools.combinations(range(1, n + 1), r - 1)
             if e not in witness.witness.edges]
    part, _ = greedy_turan_decomposition(H, cover)
    denom = math.comb(n, r - 1)
    report = BoundReport(
        n=n, r=r, q=len(cover), block_count=part.block_count,
        ratio=Fraction(part.block_count, denom) if denom else Fraction(0),
        turan_exact=witness.exact, ex_value=witness.ex_value,
    )
    return part, report


def _require_graph(G: Hypergraph) -> None:
    if G.r != 2:
        raise ConfigError(f"expected a graph (r=2), got r={G.r}")


@dataclass(frozen=True)
class IndependentSet:
    vertices: frozenset[int]
    exact: bool
    nodes: int = 0

    def __len__(self):
        return len(self.vertices)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _greedy_clique_cover(P: int, adj: list[int]) -> int:
    count = 0
    while P:
        u = (P & -P).bit_length() - 1
        clique = 1 << u
        cand = P & adj[u]
        while cand:
            w = (cand & -cand).bit_length() - 1
            clique |= 1 << w
            cand &= adj[w]
        P &= ~clique
        count += 1
    return count


def max_independent_set(G: Hypergraph, budget: Budget | None = None) -> IndependentSet:
    """Maximum independent set by branch and bound.

    Branches on a maximum-degree vertex (smallest label on ties) and bounds
    with a greedy clique cover of the candidates. Ties between optima are
    broken toward the lexicographically least sorted vertex list. If the
    budget runs out the best set found is returned with ``exact=False``.
    """
    _require_graph(G)
    n = G.n
    adj = [0] * n
    for a, b in G.edges:
        adj[a - 1] |= 1 << (b - 1)
        adj[b - 1] |= 1 << (a - 1)
    meter = (budget or DEFAULT_EXACT_BUDGET).meter()
    best_mask, best_size = 0, -1

    def key(mask):
        return [v + 1 for v in _bits(mask)]

    def rec(P: int, C: int, size: int):
        nonlocal best_mask, best_size
        if not meter.tick():
            return
        iso = 0
        for v in _bits(P):
            if not adj[v] & P:
                iso |= 1 << v
        if iso:
            C |= iso
            P &= ~iso
            size += bin(iso).count("1")
        if not P:
            if size > best_size or (size == best_size and key(C) < key(best_mask)):
                best_mask, best_size = C, size
            return
        if size + _greedy_clique_cover(P, adj) < best_size:
            return
        v = max(_bits(P), key=lambda u: (bin(adj[u] & P).count("1"), -u))
        rec(P & ~adj[v] & ~(1 << v), C | (1 << v), size + 1)
        rec(P & ~(1 << v), C, size)

    rec((1 << n) - 1, 0, 0)
    return IndependentSet(frozenset(v + 1 for v in _bits(best_mask)),
                          exact=not meter.exhausted, nodes=meter.nodes)


def star_decomposition(G: Hypergraph, independent: Iterable[int]) -> Partition:
    """Stars centred at each vertex outside ``independent``, ascending; each
    star takes the centre's edges not already used by an earlier star."""
    _require_graph(G)
    I = frozenset(independent)
    for a, b in G.sorted_edges:
        if a in I and b in I:
            raise NotIndependent((a, b))
    used: set[Edge] = set()
    blocks = []
    for v in G.vertices:
        if v in I:
            continue
        leaves = []
        for u in G.vertices:
            e = (min(u, v), max(u, v))
            if u != v and e in G.edges and e not in used:
                leaves.append(u)
                used.add(e)
        if leaves:
            blocks.append(Block(Prefix((frozenset((v,)),)), frozenset(leaves)))
    return Partition(G.n, 2, tuple(blocks), "star")


# ---------------------------------------------------------------------------
# exact branch and bound


def inertia(matrix: Sequence[Sequence[int]]) -> tuple[int, int]:
    """(positive, negative) eigenvalue counts of a symmetric integer matrix,
    computed exactly by congruence (symmetric elimination over rationals)."""
    A = [[Fraction(x) for x in row] for row in matrix]
    active = list(range(len(A)))
    pos = neg = 0
    while active:
        p = next((i for i in active if A[i][i] != 0), None)
        if p is None:
            pair = next(((i, j) for i in active for j in active
                         if i < j and A[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            for k in active:
                A[i][k] += A[j][k]
            for k in active:
                A[k][i] += A[k][j]
            continue
        d = A[p][p]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(p)
        row = A[p]
        for i in active:
            if A[i][p] != 0:
                f = A[i][p] / d
                Ai = A[i]
                for j in active:
                    if row[j]:
                        Ai[j] -= f * row[j]
    return pos, neg


def biclique_lower_bound(pairs: Iterable[tuple[int, int]]) -> int:
    """Any partition of this graph into complete bipartite pieces needs at
    least max(positive, negative) eigenvalues of its adjacency matrix."""
    pairs = list(pairs)
    verts = sorted({v for e in pairs for v in e})
    pos_of = {v: i for i, v in enumerate(verts)}
    A = [[0] * len(verts) for _ in verts]
    for a, b in pairs:
        A[pos_of[a]][pos_of[b]] = A[pos_of[b]][pos_of[a]] = 1
    return max(inertia(A))


@dataclass(frozen=True)
class ExactResult:
    value: int | None
    partition: Partition | None
    status: str  # optimal | upper_bound_only | infeasible
    nodes_expanded: int
    # None when no finite bound exists (infeasible)
    lower_bound: int | None


MODES = ("all_blocks", "nontrivial_only")


def _nontrivial(parts) -> bool:
    return sum(len(p) > 1 for p in parts) >= 2


class _Search:
    def __init__(self, H: Hypergraph, nontrivial: bool, budget: Budget):
        self.H = H
        self.r = H.r
        self.nontrivial = nontrivial
        self.edges = H.sorted_edges
        self.index = {e: i for i, e in enumerate(self.edges)}
        self.full = (1 << len(self.edges)) - 1
        self.meter = budget.meter()
        self.lb_cache: dict[int, float] = {}
        self.link_cache: dict[frozenset, int] = {}
        self.cap = max(
            (bin(m).count("1") for i in range(len(self.edges))
             for m, _ in self.blocks_through(i, self.full)),
            default=0,
        )

    def blocks_through(self, fi: int, U: int) -> list[tuple[int, tuple]]:
        """Every complete block inside the uncovered set ``U`` whose product
        contains edge ``fi``. Part j is the one holding the j-th vertex of
        the pivot, which makes the representation unique."""
        F = self.edges[fi]
        r = self.r
        index = self.index
        allowed = []
        for v in self.H.vertices:
            if v in F:
                continue
            js = []
            for j in range(r):
                e = tuple(sorted(F[:j] + F[j + 1:] + (v,)))
                bi = index.get(e)
                if bi is not None and U >> bi & 1:
                    js.append(j)
            if js:
                allowed.append((v, js))
        parts = [[f] for f in F]
        out = []
        nontrivial = self.nontrivial

        def rec(k: int, mask: int):
            if k == len(allowed):
                if not nontrivial or _nontrivial(parts):
                    out.append((mask, tuple(tuple(p) for p in parts)))
                return
            rec(k + 1, mask)
            v, js = allowed[k]
            for j in js:
                add = 0
                for combo in itertools.product(*(parts[i] for i in range(r) if i != j)):
                    bi = index.get(tuple(sorted(combo + (v,))))
                    if bi is None or not U >> bi & 1:
                        break
                    add |= 1 << bi
                else:
                    parts[j].append(v)
                    rec(k + 1, mask | add)
                    parts[j].pop()

        rec(0, 1 << fi)
        return out

    def link_bound(self, U: int) -> int:
        links: dict[tuple, set] = {}
        r = self.r
        for bi in _bits(U):
            e = self.edges[bi]
            for pair in itertools.combinations(range(r), 2):
                S = tuple(v for k, v in enumerate(e) if k not in pair)
                links.setdefault(S, set()).add((e[pair[0]], e[pair[1]]))
        best = 0
        for pairs in links.values():
            key = frozenset(pairs)
            val = self.link_cache.get(key)
            if val is None:
                val = biclique_lower_bound(pairs)
                self.link_cache[key] = val
            best = max(best, val)
        return best

    def lower_bound(self, U: int) -> float:
        if U == 0:
            return 0
        cached = self.lb_cache.get(U)
        if cached is not None:
            return cached
        if self.cap == 0:
            lb = math.inf
        else:
            lb = max(-(-bin(U).count("1") // self.cap), self.link_bound(U))
        self.lb_cache[U] = lb
        return lb

    def run(self, incumbent: list[tuple] | None):
        self.best = len(incumbent) if incumbent is not None else math.inf
        self.best_blocks = incumbent
        self.aborted = False
        self.root_lb = self.lower_bound(self.full)
        chosen: list[tuple] = []
        self._solve(self.full, 0, chosen)

    def _solve(self, U: int, depth: int, chosen: list):
        if self.aborted:
            return
        if not self.meter.tick():
            self.aborted = True
            return
        if U == 0:
            if depth < self.best:
                self.best = depth
                self.best_blocks = list(chosen)
            return
        lb = self.lower_bound(U)
        if depth + lb >= self.best:
            return
        fi = (U & -U).bit_length() - 1
        cands = self.blocks_through(fi, U)
        cands.sort(key=lambda c: (-bin(c[0]).count("1"), c[1]))
        for mask, parts in cands:
            chosen.append(parts)
            self._solve(U & ~mask, depth + 1, chosen)
            chosen.pop()
            if self.aborted or depth + lb >= self.best:
                break
        if not self.aborted:
            # exhausted: nothing below best - depth blocks partitions U
            learned = self.best - depth
            if learned > lb:
                self.lb_cache[U] = learned


def _heuristic_partition(H: Hypergraph, budget: Budget) -> Partition:
    candidates = [Partition(H.n, H.r, tuple(Block.from_parts([[v] for v in e])
                                            for e in H.sorted_edges), "exact")]
    if H.r >= 3:
        candidates.append(upper_bound_pipeline(H)[0])
    elif H.r == 2:
        mis = max_independent_set(H, budget)
        candidates.append(star_decomposition(H, mis.vertices))
    return min(candidates, key=lambda p: p.block_count)


def exact_min_partition(
    H: Hypergraph, mode: str = "all_blocks", budget: Budget | None = None
) -> ExactResult:
    """Minimum number of complete r-partite blocks partitioning ``E(H)``.

    The search always branches on the lexicographically least uncovered
    edge and tries every complete block through it that stays inside the
    uncovered edges. A node is cut when ``blocks so far + lower bound`` can
    no longer beat the incumbent. The lower bound is the larger of
    ``ceil(uncovered / largest feasible block)`` and, over every
    (r-2)-set S, the eigenvalue bound for the graph of pairs completing S
    to an uncovered edge (blocks covering edges through S induce complete
    bipartite pieces of that graph).

    In ``nontrivial_only`` mode only blocks with at least two non-singleton
    parts are allowed, and infeasibility is reported as a status.
    """
    if mode not in MODES:
        raise ConfigError(f"unknown mode {mode!r}; expected one of {MODES}")
    budget = budget or DEFAULT_EXACT_BUDGET
    nontrivial = mode == "nontrivial_only"
    if not H.edges:
        return ExactResult(0, Partition(H.n, H.r, (), "exact"), "optimal", 0, 0)

    search = _Search(H, nontrivial, budget)
    incumbent = None
    if not nontrivial:
        seed = _heuristic_partition(H, budget)
        incumbent = [tuple(tuple(sorted(p)) for p in b.parts) for b in seed.blocks]
    search.run(incumbent)

    root_lb = None if math.isinf(search.root_lb) else int(search.root_lb)
    if search.best_blocks is None:
        if search.aborted:
            return ExactResult(None, None, "upper_bound_only", search.meter.nodes, root_lb)
        return ExactResult(None, None, "infeasible", search.meter.nodes, None)
    part = Partition(H.n, H.r, tuple(Block.from_parts(p) for p in search.best_blocks), "exact")
    status = "upper_bound_only" if search.aborted else "optimal"
    lower = part.block_count if status == "optimal" else root_lb
    return ExactResult(part.block_count, part, status, search.meter.nodes, lower)
