import itertools

import pytest
from hypothesis import given, settings, strategies as st

from hypart import (
    Block,
    Hypergraph,
    MalformedBlock,
    MalformedEdge,
    OutOfRange,
    Partition,
    Prefix,
    PrefixSet,
    canonicalize_edge,
    complete_hypergraph,
    coverage_count,
    extension_set,
    is_complete_block,
    prefix_product,
    verify_partition,
)
from oracles import multiplicities

K4_3 = complete_hypergraph(4, 3)


@st.composite
def hypergraphs(draw, max_n=8, rs=(2, 3, 4)):
    r = draw(st.sampled_from(rs))
    n = draw(st.integers(min_value=0, max_value=max_n))
    slots = list(itertools.combinations(range(1, n + 1), r))
    chosen = draw(st.lists(st.sampled_from(slots), unique=True)) if slots else []
    return Hypergraph(n, r, frozenset(chosen))


@st.composite
def hypergraph_and_prefix(draw):
    H = draw(hypergraphs(max_n=9, rs=(2, 3, 4)).filter(lambda h: h.n >= h.r))
    verts = draw(st.permutations(list(H.vertices)))
    sizes = [draw(st.integers(1, 2)) for _ in range(H.r - 1)]
    if sum(sizes) > H.n - 1:
        sizes = [1] * (H.r - 1)
    parts, at = [], 0
    for k in sizes:
        parts.append(verts[at:at + k])
        at += k
    return H, Prefix.of(*parts)


class TestCanonicalizeEdge:
    def test_sorts(self):
        assert canonicalize_edge((3, 1, 2), 3) == (1, 2, 3)
        assert canonicalize_edge((2, 1), 2) == (1, 2)

    def test_duplicate_vertex(self):
        with pytest.raises(MalformedEdge):
            canonicalize_edge((1, 1, 2), 3)

    def test_wrong_length(self):
        with pytest.raises(MalformedEdge):
            canonicalize_edge((1, 2), 3)

    def test_out_of_range(self):
        with pytest.raises(OutOfRange):
            canonicalize_edge((1, 2, 9), 3, n=5)
        with pytest.raises(OutOfRange):
            canonicalize_edge((0, 2), 2, n=5)

    @given(st.lists(st.integers(1, 50), min_size=3, max_size=3, unique=True))
    def test_idempotent(self, vs):
        once = canonicalize_edge(vs, 3)
        assert canonicalize_edge(once, 3) == once


class TestHypergraph:
    def test_rejects_noncanonical(self):
        with pytest.raises(MalformedEdge):
            Hypergraph(4, 3, frozenset({(2, 1, 3)}))
        with pytest.raises(OutOfRange):
            Hypergraph(3, 2, frozenset({(1, 4)}))

    def test_from_edges_dedups(self):
        H = Hypergraph.from_edges(4, 2, [(2, 1), (1, 2), (3, 4)])
        assert H.sorted_edges == ((1, 2), (3, 4))

    def test_degenerate_n_below_r(self):
        H = complete_hypergraph(2, 3)
        assert len(H) == 0
        assert verify_partition(H, Partition(2, 3)).valid

    def test_iteration_is_lexicographic(self):
        assert list(K4_3) == [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]


class TestPrefixAndBlock:
    def test_prefix_sorted_by_size_then_min(self):
        P = Prefix.of({5, 6}, {3}, {1})
        assert P.parts == (frozenset({1}), frozenset({3}), frozenset({5, 6}))

    def test_prefix_product(self):
        assert prefix_product(Prefix.of({1}, {3})) == (1, True)
        assert prefix_product(Prefix.of({1}, {2, 3})) == (2, False)
        assert prefix_product(Prefix.of({1, 2}, {3, 4, 5})) == (6, False)

    def test_overlap_is_malformed(self):
        with pytest.raises(MalformedBlock):
            Block.from_parts([{1}, {1, 2}])
        with pytest.raises(MalformedBlock):
            Block.of([{1}, {2}], {2, 3})
        with pytest.raises(MalformedBlock):
            Prefix.of({1}, set())

    def test_canonical_block(self):
        b = Block.of([{1}, {3}], {2})
        c = b.canonical()
        assert c.prefix == Prefix.of({1}, {2}) and c.last == {3}
        assert c.canonical() == c
        assert b.trivial and c.trivial

    def test_product_set_size(self):
        b = Block.from_parts([{1, 2}, {3, 4, 5}, {6}])
        members = list(b.product_set())
        assert len(members) == len(set(members)) == b.size == 6

    @given(st.lists(st.integers(1, 3), min_size=2, max_size=4))
    def test_product_set_has_prod_members(self, sizes):
        parts, v = [], 1
        for k in sizes:
            parts.append(set(range(v, v + k)))
            v += k
        b = Block.from_parts(parts)
        assert len(set(b.product_set())) == b.size


class TestIsCompleteBlock:
    def test_k4_3(self):
        assert is_complete_block(K4_3, Block.of([{1}, {3}], {2, 4}))

    def test_missing_member(self):
        H = Hypergraph.from_edges(4, 3, [(1, 2, 3)])
        assert not is_complete_block(H, Block.of([{1}, {2}], {3, 4}))

    def test_overlapping_parts(self):
        with pytest.raises(MalformedBlock):
            is_complete_block(K4_3, [{1}, {1, 2}, {3}])

    def test_wrong_arity(self):
        with pytest.raises(MalformedBlock):
            is_complete_block(K4_3, Block.of([{1}], {2}))


class TestExtensionSet:
    def test_k4_3(self):
        # candidates 2 and 4: triples {1,2,3} and {1,3,4} are both edges
        assert extension_set(K4_3, Prefix.of({1}, {3})) == {2, 4}

    def test_empty_hypergraph(self):
        assert extension_set(Hypergraph(6, 3), Prefix.of({1}, {2, 3})) == frozenset()

    @pytest.mark.parametrize("n,r", [(6, 3), (7, 4), (5, 2)])
    def test_complete(self, n, r):
        H = complete_hypergraph(n, r)
        P = Prefix(tuple(frozenset({j + 1}) for j in range(r - 1)))
        assert extension_set(H, P) == frozenset(range(r, n + 1))

    @settings(max_examples=150, deadline=None)
    @given(hypergraph_and_prefix())
    def test_extension_matches_completeness(self, hp):
        H, P = hp
        ext = extension_set(H, P)
        if ext:
            assert is_complete_block(H, Block(P, ext))
        for v in H.vertices:
            if v in P.support or v in ext:
                continue
            assert not is_complete_block(H, Block(P, {v}))


class TestCoverageCount:
    def test_single_prefix(self):
        assert coverage_count(K4_3, PrefixSet((Prefix.of({1}, {3}),))) == (2, 2, 2)

    def test_two_complementary_prefixes(self):
        # every triple of K_4^(3) contains exactly one of {1,3}, {2,4}
        PS = PrefixSet((Prefix.of({1}, {3}), Prefix.of({2}, {4})))
        assert coverage_count(K4_3, PS) == (4, 4, 4)

    def test_prefixes_touching_no_edges(self):
        H = Hypergraph.from_edges(6, 3, [(4, 5, 6)])
        assert coverage_count(H, PrefixSet((Prefix.of({1}, {2}),))) == (0, 0, 0)

    def test_overlapping_prefixes_counted(self):
        H = complete_hypergraph(5, 3)
        PS = PrefixSet((Prefix.of({1}, {2}), Prefix.of({1}, {3})))
        once, least, total = coverage_count(H, PS)
        # {1,2,3} is produced by both prefixes
        assert (once, least, total) == (4, 5, 6)

    @settings(max_examples=100, deadline=None)
    @given(hypergraph_and_prefix(), st.data())
    def test_inequality_chain(self, hp, data):
        H, P = hp
        others = [P]
        for _ in range(data.draw(st.integers(0, 3))):
            v = data.draw(st.permutations(list(H.vertices)))
            others.append(Prefix(tuple(frozenset({v[j]}) for j in range(H.r - 1))))
        c = coverage_count(H, PrefixSet(tuple(others), allow_duplicates=True))
        assert c.exactly_once <= c.at_least_once <= c.upper_bound_sum


class TestVerifyPartition:
    def test_valid_k4_3(self):
        part = Partition(4, 3, (Block.of([{1}, {3}], {2, 4}), Block.of([{2}, {4}], {1, 3})))
        assert verify_partition(K4_3, part).valid

    def test_uncovered(self):
        part = Partition(4, 3, (Block.of([{1}, {3}], {2, 4}),))
        rep = verify_partition(K4_3, part)
        assert not rep.valid
        assert rep.witnesses("uncovered") == [(1, 2, 4), (2, 3, 4)]

    def test_overlap(self):
        b = Block.of([{1}, {2}], {3})
        rep = verify_partition(Hypergraph.from_edges(3, 3, [(1, 2, 3)]), Partition(3, 3, (b, b)))
        assert rep.kinds() == {"overlap"}

    def test_non_edge(self):
        H = Hypergraph.from_edges(4, 3, [(1, 2, 3)])
        rep = verify_partition(H, Partition(4, 3, (Block.of([{1}, {2}], {3, 4}),)))
        assert rep.witnesses("non-edge") == [(1, 2, 4)]

    def test_malformed(self):
        rep = verify_partition(K4_3, Partition(4, 3, (Block.of([{1}], {2}),)))
        assert rep.witnesses("malformed-block") == [0]
        rep = verify_partition(K4_3, Partition(4, 3, (Block.of([{1}, {2}], {9}),)))
        assert rep.kinds() >= {"malformed-block"}

    def test_empty_partition_of_empty_graph(self):
        assert verify_partition(Hypergraph(5, 3), Partition(5, 3)).valid

    @settings(max_examples=200, deadline=None)
    @given(st.integers(3, 7), st.data())
    def test_agrees_with_brute_multiplicity(self, n, data):
        r = 3
        slots = list(itertools.combinations(range(1, n + 1), r))
        edges = set(data.draw(st.lists(st.sampled_from(slots), unique=True)))
        H = Hypergraph(n, r, frozenset(edges))
        blocks = []
        for _ in range(data.draw(st.integers(0, 4))):
            labels = data.draw(st.lists(st.integers(0, r), min_size=n, max_size=n))
            parts = [{v + 1 for v in range(n) if labels[v] == j} for j in range(r)]
            if all(parts):
                blocks.append(parts)
        part = Partition(n, r, tuple(Block.from_parts(p) for p in blocks))
        hits = multiplicities(blocks)
        expected = all(hits.get(e) == 1 for e in edges) and set(hits) <= edges
        assert verify_partition(H, part).valid == expected
