"""Exact Hamiltonicity deciders.

Two independent engines decide Hamilton cycles: a Held-Karp reachability DP
(orders up to 24) and a pruned degree-ordered backtracking search (any order
up to the bitset cap). The default policy probes with a bounded backtrack
and falls back to the DP, so dense yes-instances resolve in microseconds
while hard instances stay exact.

k-edge-Hamiltonicity ("every linear forest with at most k edges extends to a
Hamilton cycle") is decided by contracting each forced path to a degree-2
gadget vertex and running the plain deciders on the contracted graph. Every
witness cycle found along the way certifies all of its sub-forests, which
cuts the number of targeted searches roughly by a factor of the order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from ._kernels import bt_ham_cycle, dp_ham_cycle
from .errors import CapacityError, DomainError
from .graphs import CAP, Graph, complete_graph, induced_delete, join

DP_CAP = 24
_BT_PROBE = 96  # probe budget per vertex before the DP rescue


# ---------------------------------------------------------------- forests

@dataclass(frozen=True)
class LinearForest:
    """Vertex-disjoint simple paths, each with at least one edge.

    Normal form: every path runs from its smaller endpoint, and paths are
    sorted by first vertex. Use the classmethods, they normalize.
    """

    paths: tuple[tuple[int, ...], ...]

    @classmethod
    def from_paths(cls, paths) -> "LinearForest":
        fixed = []
        seen = set()
        for p in paths:
            p = tuple(p)
            if len(p) < 2:
                raise DomainError("forest path needs at least one edge")
            if len(set(p)) != len(p):
                raise DomainError("forest path repeats a vertex")
            for v in p:
                if v in seen:
                    raise DomainError("forest paths share a vertex")
                seen.add(v)
            if p[-1] < p[0]:
                p = p[::-1]
            fixed.append(p)
        fixed.sort(key=lambda p: p[0])
        return cls(tuple(fixed))

    @classmethod
    def from_edges(cls, edges) -> "LinearForest":
        edges = [tuple(sorted(e)) for e in edges]
        if len(set(edges)) != len(edges):
            raise DomainError("duplicate forest edge")
        nbr: dict[int, list[int]] = {}
        for u, v in edges:
            if u == v:
                raise DomainError("forest edge is a loop")
            nbr.setdefault(u, []).append(v)
            nbr.setdefault(v, []).append(u)
            if len(nbr[u]) > 2 or len(nbr[v]) > 2:
                raise DomainError("forest vertex has degree above two")
        paths = []
        visited = set()
        ends = sorted(v for v, ns in nbr.items() if len(ns) == 1)
        for e in ends:
            if e in visited:
                continue
            path = [e]
            visited.add(e)
            cur = e
            while True:
                nxt = [w for w in nbr[cur] if w not in visited]
                if not nxt:
                    break
                cur = nxt[0]
                path.append(cur)
                visited.add(cur)
            paths.append(path)
        if len(visited) != len(nbr):
            raise DomainError("forest edges contain a cycle")
        return cls.from_paths(paths)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        out = []
        for p in self.paths:
            for i in range(len(p) - 1):
                u, v = p[i], p[i + 1]
                out.append((u, v) if u < v else (v, u))
        return tuple(sorted(out))

    @property
    def edge_count(self) -> int:
        return sum(len(p) - 1 for p in self.paths)

    def vertices(self) -> frozenset[int]:
        return frozenset(v for p in self.paths for v in p)


def _is_linear_forest(edges) -> bool:
    deg: dict[int, int] = {}
    parent: dict[int, int] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
        if deg[u] > 2 or deg[v] > 2:
            return False
        parent.setdefault(u, u)
        parent.setdefault(v, v)
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def _forest_subsets(edges, k):
    """Edge subsets of size 1..k forming a linear forest, DFS over edge rank."""
    chosen: list[tuple[int, int]] = []

    def rec(start):
        for i in range(start, len(edges)):
            chosen.append(edges[i])
            if _is_linear_forest(chosen):
                yield tuple(chosen)
                if len(chosen) < k:
                    yield from rec(i + 1)
            chosen.pop()

    if k >= 1:
        yield from rec(0)


def enumerate_linear_forests(g: Graph, k: int):
    """All linear forests of g with 1..k edges, each exactly once, normalized."""
    if k < 0:
        raise DomainError("k must be nonnegative")
    edges = sorted(g.edges())
    for subset in _forest_subsets(edges, k):
        yield LinearForest.from_edges(subset)


def _check_forest(g: Graph, forest: LinearForest) -> None:
    # forest edges may be non-edges of g: the target cycle lives in the
    # union, so only the vertex range needs checking
    for p in forest.paths:
        for v in p:
            if not 0 <= v < g.order:
                raise DomainError(f"forest vertex {v} outside graph")


# ---------------------------------------------------------------- deciders

def has_hamilton_cycle(g: Graph, engine: str = "auto") -> bool:
    """Exact Hamilton cycle decision.

    engine: "auto" (bounded backtrack probe, DP rescue), "dp" (Held-Karp,
    order <= 24) or "bt" (unbounded backtracking).
    """
    n = g.order
    adj = g.adj
    if engine == "dp":
        if n > DP_CAP:
            raise CapacityError(f"dp engine capped at order {DP_CAP}")
        return bool(dp_ham_cycle(adj, n))
    if engine == "bt":
        r, _ = bt_ham_cycle(adj, n, -1)
        return r == 1
    if engine != "auto":
        raise DomainError(f"unknown engine {engine!r}")
    if n <= DP_CAP:
        r, _ = bt_ham_cycle(adj, n, _BT_PROBE * max(n, 1))
        if r >= 0:
            return r == 1
        return bool(dp_ham_cycle(adj, n))
    r, _ = bt_ham_cycle(adj, n, -1)
    return r == 1


def hamilton_cycle(g: Graph) -> list[int] | None:
    """A Hamilton cycle as a vertex sequence, or None."""
    n = g.order
    adj = g.adj
    r, path = bt_ham_cycle(adj, n, _BT_PROBE * max(n, 1) if n <= DP_CAP else -1)
    if r == 1:
        return path
    if r == 0:
        return None
    if not dp_ham_cycle(adj, n):
        return None
    r, path = bt_ham_cycle(adj, n, -1)
    return path


def _contract_forest(g: Graph, forest: LinearForest):
    """Replace each forced path by a fresh degree-2 vertex joined to its ends.

    A Hamilton cycle of the contracted graph traverses each gadget as
    end-gadget-end, which corresponds exactly to traversing the original
    path; internal path vertices cannot be visited any other way, so cycles
    of the contraction biject with cycles of g through the forest.
    """
    internals = set()
    for p in forest.paths:
        internals.update(p[1:-1])
    kept = [v for v in range(g.order) if v not in internals]
    base = len(kept)
    total = base + len(forest.paths)
    if total > CAP:
        raise CapacityError(f"contracted order {total} exceeds {CAP}")
    pos = {v: i for i, v in enumerate(kept)}
    keepmask = 0
    for v in kept:
        keepmask |= 1 << v
    adj = [0] * total
    for v in kept:
        row = 0
        m = g.adj[v] & keepmask
        while m:
            low = m & -m
            m ^= low
            row |= 1 << pos[low.bit_length() - 1]
        adj[pos[v]] = row
    expansions = []
    for i, p in enumerate(forest.paths):
        a, b = pos[p[0]], pos[p[-1]]
        gi = base + i
        adj[gi] = (1 << a) | (1 << b)
        adj[a] |= 1 << gi
        adj[b] |= 1 << gi
        # a surviving end-to-end edge is harmless: a cycle visiting the
        # gadget already uses both end slots, so it can never also use it,
        # except as the closing edge when the forest spans everything
        expansions.append((p[0], p[-1], tuple(p)))
    h = Graph._raw(total, tuple(adj))
    return h, kept, expansions


def hamilton_cycle_through(g: Graph, forest: LinearForest) -> list[int] | None:
    """A Hamilton cycle of the union of g and the forest that contains
    every forest edge, or None.

    Forest edges need not be present in g; every cycle edge outside the
    forest is an edge of g.
    """
    if g.order < 3:
        raise DomainError("cycle needs at least three vertices")
    _check_forest(g, forest)
    if not forest.paths:
        return hamilton_cycle(g)
    h, kept, expansions = _contract_forest(g, forest)
    cyc = hamilton_cycle(h)
    if cyc is None:
        return None
    base = len(kept)
    out: list[int] = []
    m = len(cyc)
    for i, c in enumerate(cyc):
        if c < base:
            out.append(kept[c])
        else:
            a, b, path = expansions[c - base]
            prev = cyc[i - 1]  # gadget neighbors are always regular vertices
            if kept[prev] == a:
                out.extend(path[1:-1])
            else:
                out.extend(path[-2:0:-1])
    return out


def has_hamilton_cycle_through(g: Graph, forest: LinearForest) -> bool:
    if g.order < 3:
        raise DomainError("cycle needs at least three vertices")
    _check_forest(g, forest)
    if not forest.paths:
        return has_hamilton_cycle(g)
    h, _, _ = _contract_forest(g, forest)
    return has_hamilton_cycle(h)


def has_hamilton_path(g: Graph) -> bool:
    """Spanning path decision via a universal apex vertex."""
    n = g.order
    if n == 0:
        raise DomainError("path needs at least one vertex")
    if n == 1:
        return True
    if n >= CAP:
        raise CapacityError(f"path decision capped at order {CAP - 1}")
    return has_hamilton_cycle(join(g, complete_graph(1)))


def _cycle_edges(cycle: list[int]) -> list[tuple[int, int]]:
    m = len(cycle)
    out = []
    for i in range(m):
        u, v = cycle[i], cycle[(i + 1) % m]
        out.append((u, v) if u < v else (v, u))
    return out


def _certify(certified: set, cycle: list[int], k: int) -> None:
    # every <=k edge subset of one cycle is a linear forest it contains
    edges = _cycle_edges(cycle)
    total = 0
    for size in range(1, k + 1):
        count = 1
        for j in range(size):
            count = count * (len(edges) - j) // (j + 1)
        total += count
    if total > 50_000:
        return
    for size in range(1, k + 1):
        for comb in combinations(edges, size):
            certified.add(frozenset(comb))


def is_k_edge_hamiltonian(g: Graph, k: int) -> bool:
    """Does every linear forest with at most k edges on g's vertex set
    extend to a Hamilton cycle of g plus that forest?

    Forest edges are drawn from the complete graph, not just from g, which
    makes the property monotone under edge addition and stable under the
    degree closure at n + k. k = 0 is plain Hamiltonicity. Candidate
    forests are tried in descending endpoint-degree order, which surfaces
    the hard forests (those inside a dominating clique) first.
    """
    if k < 0:
        raise DomainError("k must be nonnegative")
    if g.order < 3:
        raise DomainError("cycle needs at least three vertices")
    if g.size == g.order * (g.order - 1) // 2:
        # complete: any linear forest closes into a cycle directly
        return True
    first = hamilton_cycle(g)
    if first is None:
        return False
    if k == 0:
        return True
    deg = g.degrees()
    certified: set = set()
    _certify(certified, first, k)
    ranked = sorted(combinations(range(g.order), 2),
                    key=lambda e: (-(deg[e[0]] + deg[e[1]]), e))
    for subset in _forest_subsets(ranked, k):
        key = frozenset(subset)
        if key in certified:
            continue
        cyc = hamilton_cycle_through(g, LinearForest.from_edges(subset))
        if cyc is None:
            return False
        _certify(certified, cyc, k)
    return True


def is_k_hamiltonian(g: Graph, k: int) -> bool:
    """Does every deletion of at most k vertices leave a Hamiltonian graph?

    Requires order - k >= 3 so the property is not vacuous. Deletion sets
    are tried highest degree first; for the extremal families this reaches
    the failing set (inside the dominating clique) immediately.
    """
    if k < 0:
        raise DomainError("k must be nonnegative")
    if g.order - k < 3:
        raise DomainError("order - k must be at least 3")
    if g.size == g.order * (g.order - 1) // 2:
        return True  # deletions leave a smaller complete graph
    by_degree = sorted(range(g.order), key=lambda v: (-g.degree(v), v))
    for size in range(k + 1):
        for drop in combinations(by_degree, size):
            if not has_hamilton_cycle(induced_delete(g, drop)):
                return False
    return True
