"""Spectral radii, Rayleigh quotients, closed-form bounds, edge surgery."""

import math

import numpy as np
import pytest

from hamlab import (
    DomainError,
    PreconditionError,
    adjacency_radius,
    complete_graph,
    disjoint_union,
    feng_yu_bound,
    from_edges,
    hong_bound,
    hong_zhang_rotate,
    independent_graph,
    join,
    kelmans,
    q_radius,
    rayleigh_q,
)
from conftest import er_graph


def cycle(n):
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


class TestRadii:
    def test_complete_graph_exact(self):
        for m in range(2, 20):
            g = complete_graph(m)
            assert adjacency_radius(g).radius == pytest.approx(m - 1, abs=1e-10)
            assert q_radius(g).radius == pytest.approx(2 * (m - 1), abs=1e-10)

    def test_star_and_cycle(self):
        star = join(complete_graph(1), independent_graph(4))
        assert adjacency_radius(star).radius == pytest.approx(2.0, abs=1e-10)
        assert q_radius(star).radius == pytest.approx(5.0, abs=1e-10)
        assert adjacency_radius(cycle(8)).radius == pytest.approx(2.0, abs=1e-9)
        assert q_radius(cycle(8)).radius == pytest.approx(4.0, abs=1e-9)

    def test_path_three(self):
        g = from_edges(3, [(0, 1), (1, 2)])
        assert adjacency_radius(g).radius == pytest.approx(
            math.sqrt(2), abs=1e-10)

    def test_disconnected_takes_max_component(self):
        g = disjoint_union(complete_graph(3), complete_graph(2))
        assert adjacency_radius(g).radius == pytest.approx(2.0, abs=1e-10)
        assert q_radius(g).radius == pytest.approx(4.0, abs=1e-10)

    def test_empty_graph(self):
        assert adjacency_radius(independent_graph(5)).radius == 0.0
        assert q_radius(independent_graph(5)).radius == 0.0

    def test_perron_pair_contract(self):
        pair = adjacency_radius(cycle(7))
        assert pair.vector.max() == pytest.approx(1.0, abs=1e-12)
        assert (pair.vector > 0).all()  # connected graph, Perron positivity
        assert pair.residual < 1e-8
        assert pair.method in ("power", "dense")
        # eigen relation holds at the returned pair
        a = np.array([[1.0 if abs(i - j) in (1, 6) else 0.0
                       for j in range(7)] for i in range(7)])
        assert np.linalg.norm(a @ pair.vector - pair.radius * pair.vector) < 1e-8

    def test_ndarray_input(self):
        a = np.zeros((4, 4))
        for i, j in ((0, 1), (1, 2), (2, 3), (3, 0)):
            a[i, j] = a[j, i] = 1.0
        assert adjacency_radius(a).radius == pytest.approx(2.0, abs=1e-10)

    def test_ndarray_validation(self):
        with pytest.raises(DomainError):
            adjacency_radius(np.zeros((2, 3)))
        bad = np.zeros((3, 3))
        bad[0, 1] = 1.0
        with pytest.raises(DomainError):
            adjacency_radius(bad)  # asymmetric
        loop = np.zeros((3, 3))
        loop[1, 1] = 1.0
        with pytest.raises(DomainError):
            adjacency_radius(loop)
        with pytest.raises(DomainError):
            adjacency_radius(np.zeros((129, 129)))

    def test_matches_dense_eigensolver(self, er):
        for seed in range(6):
            g = er(12, 0.45, seed)
            a = np.array([[1.0 if g.has_edge(i, j) else 0.0
                           for j in range(12)] for i in range(12)])
            assert adjacency_radius(g).radius == pytest.approx(
                float(np.linalg.eigvalsh(a)[-1]), abs=1e-9)
            q = a + np.diag(a.sum(axis=1))
            assert q_radius(g).radius == pytest.approx(
                float(np.linalg.eigvalsh(q)[-1]), abs=1e-9)


class TestRayleigh:
    def test_below_radius(self, er):
        g = er(10, 0.5, "ray")
        x = np.ones(10)
        assert rayleigh_q(g, x) <= q_radius(g).radius + 1e-10

    def test_exact_on_perron_vector(self):
        g = cycle(9)
        pair = q_radius(g)
        assert rayleigh_q(g, pair.vector) == pytest.approx(
            pair.radius, abs=1e-9)

    def test_rejects_bad_vectors(self):
        g = complete_graph(3)
        with pytest.raises(DomainError):
            rayleigh_q(g, [1.0, 2.0])
        with pytest.raises(DomainError):
            rayleigh_q(g, [0.0, 0.0, 0.0])


class TestBounds:
    def test_hong_tight_on_complete(self):
        # K4: n=4, e=6, delta=3 gives exactly the radius 3
        assert hong_bound(4, 6, 3) == pytest.approx(3.0, abs=1e-12)
        for m in range(3, 12):
            g = complete_graph(m)
            b = hong_bound(m, m * (m - 1) // 2, m - 1)
            assert b == pytest.approx(m - 1, abs=1e-9)
            assert adjacency_radius(g).radius <= b + 1e-9

    def test_feng_yu_tight_on_complete(self):
        assert feng_yu_bound(4, 6) == pytest.approx(6.0, abs=1e-12)
        for m in range(3, 12):
            assert feng_yu_bound(m, m * (m - 1) // 2) == pytest.approx(
                2 * (m - 1), abs=1e-9)

    def test_bounds_hold_on_random(self, er):
        for seed in range(20):
            g = er(11, 0.3 + 0.03 * seed, seed)
            lam = adjacency_radius(g).radius
            assert lam <= hong_bound(g.order, g.size, g.min_degree()) + 1e-8
            assert q_radius(g).radius <= feng_yu_bound(g.order, g.size) + 1e-8

    def test_bound_domain(self):
        with pytest.raises(DomainError):
            hong_bound(10, 0, 5)  # negative discriminant
        with pytest.raises(DomainError):
            feng_yu_bound(1, 0)


class TestKelmans:
    def test_preserves_edge_count_never_decreases_radius(self, er):
        for seed in range(10):
            g = er(9, 0.4, f"kel{seed}")
            before = adjacency_radius(g).radius
            h = kelmans(g, 0, 1)
            assert h.size == g.size
            assert adjacency_radius(h).radius >= before - 1e-9

    def test_fixed_point_on_complete(self):
        g = complete_graph(5)
        assert kelmans(g, 2, 4).adj == g.adj

    def test_shift_shape(self):
        g = from_edges(4, [(1, 2), (1, 3)])
        h = kelmans(g, 0, 1)
        # both neighbors of 1 move to 0
        assert sorted(h.edges()) == [(0, 2), (0, 3)]

    def test_rejects_bad_vertices(self):
        g = complete_graph(3)
        with pytest.raises(DomainError):
            kelmans(g, 0, 0)
        with pytest.raises(DomainError):
            kelmans(g, 0, 5)


class TestHongZhangRotation:
    def test_strict_increase(self):
        # star plus pendant path: rotating the path end to the hub
        g = from_edges(6, [(0, 1), (0, 2), (0, 3), (3, 4), (4, 5)])
        f = q_radius(g).vector
        assert f[0] >= f[4]
        h = hong_zhang_rotate(g, 0, 4, [5])
        assert q_radius(h).radius > q_radius(g).radius
        assert h.size == g.size

    def test_precondition_failure(self):
        g = from_edges(6, [(0, 1), (0, 2), (0, 3), (3, 4), (4, 5)])
        # swap roles: f(5) < f(0), so rotating toward 5 must refuse
        with pytest.raises(PreconditionError):
            hong_zhang_rotate(g, 5, 0, [1])

    def test_domain_checks(self):
        g = from_edges(6, [(0, 1), (0, 2), (0, 3), (3, 4), (4, 5)])
        with pytest.raises(DomainError):
            hong_zhang_rotate(g, 0, 4, [])
        with pytest.raises(DomainError):
            hong_zhang_rotate(g, 0, 4, [1])  # 1 not a neighbor of 4
        split = disjoint_union(complete_graph(3), complete_graph(3))
        with pytest.raises(DomainError):
            hong_zhang_rotate(split, 0, 4, [5])
