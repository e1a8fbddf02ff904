"""Degree-sum closure and the shape diagnostic built on it.

The s-closure repeatedly joins non-adjacent pairs with degree sum at least
s until none remain; the result is independent of the join order. With
s = n + k the closure preserves both k-Hamiltonicity and
k-edge-Hamiltonicity, which turns near-threshold instances into dense
graphs whose maximum clique tells the whole story: if the closed graph is
not complete but carries a clique of order n - delta + k, the clique's
boundary size separates the two extremal shapes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .graphs import Graph, _bits, clique_number, lex_least_max_clique
from .hamiltonicity import is_k_edge_hamiltonian, is_k_hamiltonian


def closure(g: Graph, s: int) -> Graph:
    """Iterated join of non-adjacent pairs with degree sum at least s."""
    if s < 0:
        raise DomainError("closure threshold must be nonnegative")
    n = g.order
    adj = list(g.adj)
    deg = [a.bit_count() for a in adj]
    full = (1 << n) - 1
    stack = [(u, v) for u in range(n) for v in range(u + 1, n)
             if not (adj[u] >> v) & 1]
    while stack:
        u, v = stack.pop()
        if (adj[u] >> v) & 1:
            continue
        if deg[u] + deg[v] >= s:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
            deg[u] += 1
            deg[v] += 1
            for w in (u, v):
                others = full & ~adj[w] & ~(1 << w)
                for t in _bits(others):
                    stack.append((w, t) if w < t else (t, w))
    return Graph._raw(n, tuple(adj))


@dataclass(frozen=True)
class ClosureEquivalence:
    k: int
    k_ham_before: bool
    k_ham_after: bool
    k_edge_ham_before: bool
    k_edge_ham_after: bool

    @property
    def k_ham_agree(self) -> bool:
        return self.k_ham_before == self.k_ham_after

    @property
    def k_edge_ham_agree(self) -> bool:
        return self.k_edge_ham_before == self.k_edge_ham_after

    @property
    def agree(self) -> bool:
        return self.k_ham_agree and self.k_edge_ham_agree


def closure_equiv_check(g: Graph, k: int) -> ClosureEquivalence:
    """Decide both properties on g and on its (n+k)-closure."""
    cl = closure(g, g.order + k)
    kham = is_k_hamiltonian(g, k)
    keh = is_k_edge_hamiltonian(g, k)
    if cl == g:
        # nothing was added, both sides are the same graph
        return ClosureEquivalence(k, kham, kham, keh, keh)
    return ClosureEquivalence(
        k=k,
        k_ham_before=kham,
        k_ham_after=is_k_hamiltonian(cl, k),
        k_edge_ham_before=keh,
        k_edge_ham_after=is_k_edge_hamiltonian(cl, k),
    )


@dataclass(frozen=True)
class ClosureDiagnostic:
    closed: Graph
    clique_order: int
    heavy_set: frozenset[int]  # closed degrees at least (n+k)/2
    clique: frozenset[int]  # lexicographically least maximum clique
    frontier: frozenset[int]  # clique vertices with a neighbor outside
    classification: str  # complete | below-threshold | L-shape | H-shape | intermediate


def classify_closure(g: Graph, k: int, delta: int) -> ClosureDiagnostic:
    """Shape of the (n+k)-closure relative to the order-(n-delta+k) clique bar.

    A frontier of k+1 clique vertices with outside neighbors matches the
    small dominating clique of the L member; a frontier of delta matches
    the H member. Anything else between the bar and completeness is
    reported as intermediate, never asserted impossible.
    """
    n = g.order
    if n == 0:
        raise DomainError("classification needs at least one vertex")
    cl = closure(g, n + k)
    heavy = frozenset(v for v in range(n) if 2 * cl.degree(v) >= n + k)
    if cl.size == n * (n - 1) // 2:
        return ClosureDiagnostic(cl, n, heavy, frozenset(range(n)),
                                 frozenset(), "complete")
    omega = clique_number(cl)
    target = n - delta + k
    if omega < target:
        return ClosureDiagnostic(cl, omega, heavy, frozenset(), frozenset(),
                                 "below-threshold")
    cmask = lex_least_max_clique(cl)
    members = frozenset(_bits(cmask))
    frontier = frozenset(v for v in members if cl.adj[v] & ~cmask)
    s = len(frontier)
    if omega == target and s == k + 1:
        label = "L-shape"
    elif omega == target and s == delta:
        label = "H-shape"
    else:
        label = "intermediate"
    return ClosureDiagnostic(cl, omega, heavy, members, frontier, label)
