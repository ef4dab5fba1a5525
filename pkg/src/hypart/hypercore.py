"""Core data model: uniform hypergraphs, prefixes, complete r-partite blocks
and partitions of an edge set into such blocks.

Vertices are labelled ``1..n`` everywhere. Edges are strictly ascending
tuples. All values are immutable.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import MalformedBlock, MalformedEdge, OutOfRange

Edge = tuple[int, ...]


def canonicalize_edge(vertices: Iterable[int], r: int, n: int | None = None) -> Edge:
    """Return ``vertices`` as a strictly ascending r-tuple.

    >>> canonicalize_edge((3, 1, 2), 3)
    (1, 2, 3)
    """
    edge = tuple(sorted(int(v) for v in vertices))
    if len(edge) != r:
        raise MalformedEdge(f"expected {r} vertices, got {len(edge)}: {edge}")
    if len(set(edge)) != r:
        raise MalformedEdge(f"repeated vertex in {edge}")
    if n is not None and edge and (edge[0] < 1 or edge[-1] > n):
        raise OutOfRange(f"edge {edge} has a vertex outside 1..{n}")
    return edge


@dataclass(frozen=True)
class Hypergraph:
    """An r-uniform hypergraph on vertex set ``1..n``.

    ``edges`` must already be canonical; use :meth:`from_edges` to build one
    from arbitrary vertex lists.
    """

    n: int
    r: int
    edges: frozenset[Edge] = frozenset()

    def __post_init__(self):
        if self.r < 1:
            raise ValueError(f"uniformity must be positive, got {self.r}")
        if self.n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {self.n}")
        object.__setattr__(self, "edges", frozenset(self.edges))
        for e in self.edges:
            if len(e) != self.r or any(a >= b for a, b in zip(e, e[1:])):
                raise MalformedEdge(f"edge {e} is not a strictly ascending {self.r}-tuple")
            if e[0] < 1 or e[-1] > self.n:
                raise OutOfRange(f"edge {e} has a vertex outside 1..{self.n}")

    @classmethod
    def from_edges(cls, n: int, r: int, edges: Iterable[Iterable[int]]) -> "Hypergraph":
        return cls(n, r, frozenset(canonicalize_edge(e, r, n) for e in edges))

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def __contains__(self, edge) -> bool:
        return edge in self.edges

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.sorted_edges)

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, r={self.r}, m={len(self.edges)})"


def _part_key(part: frozenset[int]):
    return (len(part), min(part))


def _check_parts(parts: Sequence[frozenset[int]]) -> None:
    seen: set[int] = set()
    for part in parts:
        if not part:
            raise MalformedBlock("empty part")
        if seen & part:
            raise MalformedBlock(f"parts overlap on {sorted(seen & part)}")
        seen |= part


@dataclass(frozen=True)
class Prefix:
    """The r-1 smallest parts of a block.

    Parts are stored sorted by (size, smallest element); construction always
    canonicalizes, so two prefixes with the same parts compare equal.
    """

    parts: tuple[frozenset[int], ...]

    def __post_init__(self):
        parts = tuple(frozenset(int(v) for v in p) for p in self.parts)
        _check_parts(parts)
        object.__setattr__(self, "parts", tuple(sorted(parts, key=_part_key)))

    @classmethod
    def of(cls, *parts: Iterable[int]) -> "Prefix":
        return cls(tuple(frozenset(p) for p in parts))

    @property
    def product(self) -> int:
        return math.prod(len(p) for p in self.parts)

    @property
    def trivial(self) -> bool:
        return self.product == 1

    @property
    def support(self) -> frozenset[int]:
        return frozenset().union(*self.parts)

    def canonical(self) -> "Prefix":
        return self

    def as_lists(self) -> list[list[int]]:
        return [sorted(p) for p in self.parts]


@dataclass(frozen=True)
class Block:
    """A prefix plus a last part: the complete r-partite hypergraph whose
    edge set is every r-set meeting each part exactly once.

    The last part is kept as given (it need not be the largest); use
    :meth:`from_parts` or :meth:`canonical` for the size-sorted form.
    """

    prefix: Prefix
    last: frozenset[int]

    def __post_init__(self):
        last = frozenset(int(v) for v in self.last)
        object.__setattr__(self, "last", last)
        _check_parts(self.prefix.parts + (last,))

    @classmethod
    def from_parts(cls, parts: Sequence[Iterable[int]]) -> "Block":
        fparts = [frozenset(int(v) for v in p) for p in parts]
        if len(fparts) < 1:
            raise MalformedBlock("a block needs at least one part")
        _check_parts(fparts)
        fparts.sort(key=_part_key)
        return cls(Prefix(tuple(fparts[:-1])), fparts[-1])

    @classmethod
    def of(cls, prefix_parts: Sequence[Iterable[int]], last: Iterable[int]) -> "Block":
        return cls(Prefix(tuple(frozenset(p) for p in prefix_parts)), frozenset(last))

    @property
    def parts(self) -> tuple[frozenset[int], ...]:
        return self.prefix.parts + (self.last,)

    @property
    def r(self) -> int:
        return len(self.parts)

    @property
    def size(self) -> int:
        return math.prod(len(p) for p in self.parts)

    @property
    def trivial(self) -> bool:
        # at most one part larger than a singleton, whichever part is "last"
        return sum(len(p) > 1 for p in self.parts) <= 1

    def canonical(self) -> "Block":
        return Block.from_parts(self.parts)

    def product_set(self) -> Iterator[Edge]:
        for combo in itertools.product(*(sorted(p) for p in self.parts)):
            yield tuple(sorted(combo))

    def as_lists(self) -> list[list[int]]:
        return [sorted(p) for p in self.parts]


@dataclass(frozen=True)
class PrefixSet:
    members: tuple[Prefix, ...]
    allow_duplicates: bool = False

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        if not self.allow_duplicates and len(set(self.members)) != len(self.members):
            raise ValueError("duplicate prefixes in a prefix set not flagged allow_duplicates")

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)


@dataclass(frozen=True)
class Partition:
    """An ordered list of blocks claimed to partition the edges of an
    ``r``-uniform hypergraph on ``n`` vertices.

    Nothing is checked at construction; see :func:`verify_partition`.
    """

    n: int
    r: int
    blocks: tuple[Block, ...] = ()
    source: str = "external"

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    @property
    def trivial_count(self) -> int:
        return sum(b.trivial for b in self.blocks)

    @property
    def nontrivial_count(self) -> int:
        return self.block_count - self.trivial_count

    def stats(self) -> dict[str, int]:
        return {
            "blocks": self.block_count,
            "trivial": self.trivial_count,
            "nontrivial": self.nontrivial_count,
        }


class Violation(NamedTuple):
    kind: str  # overlap | non-edge | uncovered | malformed-block
    witness: object


@dataclass(frozen=True)
class VerificationReport:
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def valid(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def witnesses(self, kind: str) -> list:
        return [v.witness for v in self.violations if v.kind == kind]


def _as_block(b) -> Block:
    return b if isinstance(b, Block) else Block.from_parts(b)


def is_complete_block(H: Hypergraph, b: Block | Sequence[Iterable[int]]) -> bool:
    """True iff every r-set of the block's product lies in ``E(H)``.

    ``b`` may be a :class:`Block` or a bare sequence of parts; overlapping
    parts raise :class:`MalformedBlock`.
    """
    b = _as_block(b)
    if b.r != H.r:
        raise MalformedBlock(f"block has {b.r} parts, hypergraph is {H.r}-uniform")
    return all(e in H.edges for e in b.product_set())


def extension_set(H: Hypergraph, P: Prefix) -> frozenset[int]:
    """Vertices ``v`` outside the prefix such that every r-set in
    ``A_1 x ... x A_{r-1} x {v}`` is an edge of ``H``.

    Any nonempty subset of the result is a valid last part for ``P``.
    """
    if len(P.parts) != H.r - 1:
        raise MalformedBlock(f"prefix has {len(P.parts)} parts, need {H.r - 1}")
    used = P.support
    heads = [tuple(sorted(p)) for p in P.parts]
    combos = list(itertools.product(*heads))
    out = []
    for v in H.vertices:
        if v in used:
            continue
        if all(tuple(sorted(c + (v,))) in H.edges for c in combos):
            out.append(v)
    return frozenset(out)


class CoverageCount(NamedTuple):
    exactly_once: int
    at_least_once: int
    upper_bound_sum: int


def coverage_count(H: Hypergraph, PS: PrefixSet | Iterable[Prefix]) -> CoverageCount:
    """Count edges covered by the blocks ``P x V(H, P)`` for ``P`` in ``PS``.

    Returns the number of edges covered exactly once, at least once, and the
    sum of the per-prefix block sizes ``|V(H,P)| * prod |A_j|``.
    """
    hits: Counter[Edge] = Counter()
    total = 0
    for P in PS:
        ext = extension_set(H, P)
        if not ext:
            continue
        total += len(ext) * P.product
        hits.update(Block(P, ext).product_set())
    once = sum(1 for c in hits.values() if c == 1)
    return CoverageCount(once, len(hits), total)


def prefix_product(P: Prefix) -> tuple[int, bool]:
    prod = P.product
    return prod, prod == 1


def verify_partition(H: Hypergraph, part: Partition) -> VerificationReport:
    """Check that the blocks' product sets are edges of ``H``, pairwise
    disjoint, and together cover ``E(H)``. Every failure is reported with a
    witness; nothing is raised.
    """
    violations: list[Violation] = []
    hits: Counter[Edge] = Counter()
    for i, b in enumerate(part.blocks):
        if b.r != H.r or any(v < 1 or v > H.n for p in b.parts for v in p):
            violations.append(Violation("malformed-block", i))
            continue
        for e in b.product_set():
            hits[e] += 1
            if hits[e] == 1 and e not in H.edges:
                violations.append(Violation("non-edge", e))
    for e in sorted(hits):
        if hits[e] > 1:
            violations.append(Violation("overlap", e))
    for e in H.sorted_edges:
        if e not in hits:
            violations.append(Violation("uncovered", e))
    return VerificationReport(tuple(violations))
