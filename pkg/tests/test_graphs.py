"""Graph type, constructions, graph6 codecs, isomorphism."""

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hamlab import (
    CapacityError,
    DomainError,
    Graph,
    clique_number,
    complete_graph,
    dense_from_graph6,
    dense_to_graph6,
    disjoint_union,
    from_edges,
    from_graph6,
    graph_stats,
    independent_graph,
    induced_delete,
    is_isomorphic,
    iter_graph6_lines,
    join,
    subgraph_on,
    to_graph6,
)
from conftest import er_graph


def cycle(n):
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n):
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


PETERSEN = from_edges(10, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                           (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
                           (5, 7), (7, 9), (9, 6), (6, 8), (8, 5)])


class TestGraphBasics:
    def test_order_size_degrees(self):
        g = from_edges(4, [(0, 1), (1, 2), (2, 3)])
        assert g.order == 4
        assert g.size == 3
        assert g.degrees() == (1, 2, 2, 1)
        assert g.min_degree() == 1
        assert g.max_degree() == 2

    def test_edges_sorted_no_duplicates(self):
        g = from_edges(3, [(2, 0), (0, 1), (1, 0)])
        assert list(g.edges()) == [(0, 1), (0, 2)]
        assert g.size == 2

    def test_with_without_edge(self):
        g = independent_graph(3)
        h = g.with_edge(0, 2)
        assert h.has_edge(0, 2) and h.has_edge(2, 0)
        assert not g.has_edge(0, 2)  # original untouched
        back = h.without_edge(0, 2)
        assert back.size == 0

    def test_without_edges_batch(self):
        g = complete_graph(4)
        h = g.without_edges([(0, 1), (2, 3)])
        assert h.size == 4
        assert not h.has_edge(0, 1) and not h.has_edge(2, 3)

    def test_bad_vertex_raises(self):
        g = complete_graph(3)
        with pytest.raises(DomainError):
            g.with_edge(0, 3)
        with pytest.raises(DomainError):
            from_edges(2, [(0, 0)])

    def test_complement(self):
        g = cycle(5)
        gc = g.complement()
        assert gc.size == 10 - 5
        assert is_isomorphic(g, gc)  # C5 is self-complementary

    def test_neighbors(self):
        g = from_edges(4, [(0, 2), (0, 3)])
        assert sorted(g.neighbors(0)) == [2, 3]
        assert g.neighbors_mask(0) == (1 << 2) | (1 << 3)

    def test_connectivity_components(self):
        assert cycle(6).is_connected()
        g = disjoint_union(cycle(3), path(2))
        assert not g.is_connected()
        assert len(g.components()) == 2
        assert independent_graph(4).components() and len(
            independent_graph(4).components()) == 4

    def test_cap(self):
        with pytest.raises(CapacityError):
            independent_graph(65)


class TestConstructions:
    def test_complete(self):
        g = complete_graph(5)
        assert g.size == 10
        assert g.degrees() == (4,) * 5

    def test_join_counts(self):
        g = join(complete_graph(2), independent_graph(3))
        # K2 join I3: 1 + 6 cross edges
        assert g.order == 5
        assert g.size == 7
        assert g.min_degree() == 2

    def test_disjoint_union_offsets(self):
        g = disjoint_union(path(2), path(3))
        assert g.order == 5
        assert sorted(g.edges()) == [(0, 1), (2, 3), (3, 4)]

    def test_induced_delete(self):
        g = cycle(5)
        h = induced_delete(g, [2])
        assert h.order == 4
        assert sorted(h.edges()) == [(0, 1), (0, 3), (2, 3)]

    def test_subgraph_on_mask(self):
        g = complete_graph(4)
        h = subgraph_on(g, 0b1011)  # keep 0, 1, 3
        assert h.order == 3
        assert h.size == 3

    def test_graph_stats(self):
        s = graph_stats(PETERSEN)
        assert s.order == 10
        assert s.size == 15
        assert s.min_degree == s.max_degree == 3
        assert s.connected


class TestCliques:
    def test_clique_number_known(self):
        assert clique_number(complete_graph(6)) == 6
        assert clique_number(cycle(5)) == 2
        assert clique_number(PETERSEN) == 2
        assert clique_number(independent_graph(4)) == 1

    def test_clique_number_join(self):
        g = join(complete_graph(3), cycle(5))
        assert clique_number(g) == 5


class TestGraph6:
    def test_known_encodings(self):
        assert to_graph6(complete_graph(2)) == "A_"
        assert to_graph6(complete_graph(4)) == "C~"
        assert to_graph6(independent_graph(5)) == "D??"

    def test_round_trip_small(self):
        for g in (cycle(5), path(7), PETERSEN, complete_graph(1)):
            assert from_graph6(to_graph6(g)).adj == g.adj

    def test_header_boundary(self):
        g62 = independent_graph(62)
        assert to_graph6(g62)[0] == "}"
        g63 = independent_graph(63)
        assert to_graph6(g63).startswith("~??~")
        for g in (g62, g63):
            assert from_graph6(to_graph6(g)).order == g.order

    def test_optional_prefix(self):
        assert from_graph6(">>graph6<<C~").size == 6

    def test_dense_codec_past_bitset_cap(self):
        n = 70
        m = [[1 if abs(i - j) == 1 else 0 for j in range(n)] for i in range(n)]
        line = dense_to_graph6(m)
        assert dense_from_graph6(line) == m
        with pytest.raises(CapacityError):
            from_graph6(line)

    def test_dense_matches_bitset_codec(self):
        g = er_graph(13, 0.5, "codec")
        m = [[1 if g.has_edge(i, j) else 0 for j in range(13)]
             for i in range(13)]
        assert dense_to_graph6(m) == to_graph6(g)

    def test_dense_rejects_bad_matrices(self):
        with pytest.raises(DomainError):
            dense_to_graph6([[0, 1], [1]])
        with pytest.raises(DomainError):
            dense_to_graph6([[1, 0], [0, 0]])  # loop
        with pytest.raises(DomainError):
            dense_to_graph6([[0, 1], [0, 0]])  # asymmetric

    def test_malformed_lines(self):
        with pytest.raises(DomainError):
            from_graph6("")
        with pytest.raises(DomainError):
            from_graph6("C~!")  # byte below the graph6 range
        with pytest.raises(DomainError):
            from_graph6("C")  # missing body
        with pytest.raises(DomainError):
            from_graph6("C~~")  # extra body byte
        with pytest.raises(DomainError):
            from_graph6("D~")  # body too short for order 5
        with pytest.raises(DomainError):
            from_graph6("B~")  # nonzero padding bits

    def test_iter_lines_skips_blanks_numbers_errors(self):
        lines = ["C~", "", "  ", "A_", "C"]
        got = []
        with pytest.raises(DomainError, match="line 5"):
            for g in iter_graph6_lines(lines):
                got.append(g.order)
        assert got == [4, 2]

    @settings(max_examples=60, deadline=None)
    @given(st.integers(min_value=1, max_value=20), st.integers())
    def test_round_trip_property(self, n, seed):
        g = er_graph(n, 0.4, seed)
        h = from_graph6(to_graph6(g))
        assert h.order == g.order and h.adj == g.adj


class TestIsomorphism:
    def test_relabeled_random(self):
        g = er_graph(9, 0.45, "iso")
        perm = list(range(9))
        random.Random(3).shuffle(perm)
        h = from_edges(9, [(perm[u], perm[v]) for u, v in g.edges()])
        assert is_isomorphic(g, h)

    def test_same_degrees_not_isomorphic(self):
        # both 2-regular on 6 vertices
        assert not is_isomorphic(cycle(6), disjoint_union(cycle(3), cycle(3)))

    def test_size_mismatch(self):
        assert not is_isomorphic(complete_graph(4), cycle(4))

    def test_petersen_vs_random_cubic(self):
        prism = from_edges(10, [(i, (i + 1) % 10) for i in range(10)]
                           + [(i, i + 5) for i in range(5)])
        assert not is_isomorphic(PETERSEN, prism)
        assert is_isomorphic(PETERSEN, PETERSEN)

    def test_order_cap(self):
        with pytest.raises(CapacityError):
            is_isomorphic(independent_graph(17), independent_graph(17))

    def test_exhaustive_order_four(self):
        # pair every 4-vertex graph with its reversal relabeling
        for bits in range(64):
            edges = [e for i, e in enumerate(
                itertools.combinations(range(4), 2)) if bits >> i & 1]
            g = from_edges(4, edges)
            h = from_edges(4, [(3 - u, 3 - v) for u, v in edges])
            assert is_isomorphic(g, h)
