"""The two extremal families and their deletion neighborhoods.

For parameters (n, k, delta) with delta >= k+1:

  kind H: a dominating clique Y of order delta joined to the disjoint union
          of a clique Z of order n - 2*delta + k and an independent set X of
          order delta - k.
  kind L: a small dominating clique Y of order k+1 joined to the disjoint
          union of a clique Z of order n - delta - 1 and a clique X of order
          delta - k, with X also joined to Y.

Both have minimum degree delta (attained on X), are not k-Hamiltonian and
not k-edge-Hamiltonian, yet sit right at the spectral thresholds. Vertices
are labeled Y first, then Z, then X, so Y u Z is always a leading clique.

The deletion families remove subsets of the Y u Z edges: tier 1 stays within
the budget floor(delta*(delta-k)/4) for H, floor((k+1)*(delta-k)/4) for L,
and keeps the Q radius at or above 2(n - delta + k - 1); tier 2 crosses the
budget by one and drops below for large n.

Graph objects are built up to 64 vertices; the dense adjacency path extends
the spectral checks to order 128.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .errors import CapacityError, ParameterError
from .graphs import (Graph, _bits, complete_graph, disjoint_union,
                     independent_graph, join)

DENSE_CAP = 128


@dataclass(frozen=True)
class FamilyParams:
    n: int
    k: int
    delta: int

    def __post_init__(self):
        if self.k < 0:
            raise ParameterError("k must be nonnegative")
        if self.delta < self.k + 1:
            raise ParameterError(
                f"delta={self.delta} must be at least k+1={self.k + 1}")
        if self.n < 2 * self.delta - self.k + 1:
            raise ParameterError(
                f"n={self.n} below 2*delta-k+1={2 * self.delta - self.k + 1}")
        if self.n - self.delta - 1 < 1:
            raise ParameterError(
                f"n={self.n} leaves no room for the order-{self.n - self.delta - 1} clique")
        if self.n > DENSE_CAP:
            raise CapacityError(f"n={self.n} exceeds the dense cap {DENSE_CAP}")


@dataclass(frozen=True)
class FamilyInstance:
    params: FamilyParams
    kind: str  # "H" or "L"
    y: frozenset[int]
    z: frozenset[int]
    x: frozenset[int]
    e1: tuple[tuple[int, int], ...]  # the Y u Z clique edges, deletable
    graph: Graph | None  # None when n exceeds the bitset cap

    def graph_minus(self, deleted) -> Graph:
        if self.graph is None:
            raise CapacityError(
                f"order {self.params.n} has no bitset graph, use adjacency_minus")
        return self.graph.without_edges(deleted)

    def adjacency_minus(self, deleted=()) -> np.ndarray:
        """Dense adjacency of the member after deleting Y u Z edges."""
        n = self.params.n
        a = np.zeros((n, n))
        yz = sorted(self.y | self.z)
        for i in yz:
            for j in yz:
                if i != j:
                    a[i, j] = 1.0
        xs = sorted(self.x)
        ys = sorted(self.y)
        for i in xs:
            for j in ys:
                a[i, j] = a[j, i] = 1.0
        if self.kind == "L":
            for i in xs:
                for j in xs:
                    if i != j:
                        a[i, j] = 1.0
        for u, v in deleted:
            a[u, v] = a[v, u] = 0.0
        return a


def _family(p: FamilyParams, kind: str) -> FamilyInstance:
    if kind == "H":
        ysize, zsize = p.delta, p.n - 2 * p.delta + p.k
    elif kind == "L":
        ysize, zsize = p.k + 1, p.n - p.delta - 1
    else:
        raise ParameterError(f"kind must be 'H' or 'L', got {kind!r}")
    xsize = p.delta - p.k
    y = frozenset(range(ysize))
    z = frozenset(range(ysize, ysize + zsize))
    x = frozenset(range(ysize + zsize, p.n))
    e1 = tuple(combinations(range(ysize + zsize), 2))
    graph = None
    if p.n <= 64:
        # both kinds are Y joined over (Z u X); only X's interior differs
        tail = complete_graph(xsize) if kind == "L" else independent_graph(xsize)
        graph = join(complete_graph(ysize),
                     disjoint_union(complete_graph(zsize), tail))
    return FamilyInstance(params=p, kind=kind, y=y, z=z, x=x, e1=e1, graph=graph)


def build_h(p: FamilyParams) -> FamilyInstance:
    """Dominating clique of order delta over a clique and an independent set."""
    return _family(p, "H")


def build_l(p: FamilyParams) -> FamilyInstance:
    """Dominating clique of order k+1 over two cliques, X joined to Y."""
    return _family(p, "L")


def build_family(p: FamilyParams, kind: str) -> FamilyInstance:
    return _family(p, kind)


def edge_count_h(p: FamilyParams, shift: int = 0) -> int:
    """Edge count of the H member at minimum degree delta + shift."""
    d = p.delta + shift
    if d < p.k + 1 or p.n < 2 * d - p.k + 1:
        raise ParameterError(f"shift {shift} leaves invalid parameters")
    return comb(p.n - d + p.k, 2) + d * (d - p.k)


def edge_count_l(p: FamilyParams) -> int:
    return comb(p.n - p.delta + p.k, 2) + comb(p.delta - p.k, 2) \
        + (p.k + 1) * (p.delta - p.k)


def deletion_budget(p: FamilyParams, kind: str) -> int:
    """Largest deletion size that provably keeps the Q radius at the threshold."""
    if kind == "H":
        return (p.delta * (p.delta - p.k)) // 4
    if kind == "L":
        return ((p.k + 1) * (p.delta - p.k)) // 4
    raise ParameterError(f"kind must be 'H' or 'L', got {kind!r}")


def test_vector(inst: FamilyInstance) -> np.ndarray:
    """Indicator of Y u Z, the Rayleigh test vector for the threshold bound."""
    v = np.zeros(inst.params.n)
    for i in inst.y | inst.z:
        v[i] = 1.0
    return v


def sample_deletions(inst: FamilyInstance, tier: int, count: int,
                     seed: int) -> list[tuple[tuple[int, int], ...]]:
    """Seeded deletion sets from the Y u Z clique edges.

    Tier 1 draws a size uniformly from 0..budget, tier 2 uses budget + 1.
    Deterministic per (seed, kind, tier, index) so corpora replay exactly.
    """
    if tier not in (1, 2):
        raise ParameterError("tier must be 1 or 2")
    if count < 0:
        raise ParameterError("count must be nonnegative")
    budget = deletion_budget(inst.params, inst.kind)
    out = []
    for i in range(count):
        rng = random.Random(f"{seed}:{inst.kind}:{tier}:{i}")
        size = rng.randint(0, budget) if tier == 1 else budget + 1
        if size > len(inst.e1):
            raise ParameterError(
                f"deletion size {size} exceeds the {len(inst.e1)} clique edges")
        out.append(tuple(sorted(rng.sample(inst.e1, size))))
    return out


def sample_member(inst: FamilyInstance, tier: int, count: int,
                  seed: int) -> list[Graph]:
    """Seeded members of the tier-1 or tier-2 deletion family as Graphs."""
    return [inst.graph_minus(d)
            for d in sample_deletions(inst, tier, count, seed)]


# ---------------------------------------------------------------- recognition

def _missing_pairs(g: Graph, members: list[int]) -> int:
    miss = 0
    mask = 0
    for v in members:
        mask |= 1 << v
    for v in members:
        miss += len(members) - 1 - (g.adj[v] & mask).bit_count()
    return miss // 2


def _membership(g: Graph, p: FamilyParams, kind: str, budget: int) -> bool:
    """Is g the kind-member minus at most `budget` edges of Y u Z?

    X degrees never change under such deletions, so X is searched among the
    degree-delta vertices grouped by (closed) neighborhood.
    """
    if g.order != p.n:
        return False
    xsize = p.delta - p.k
    degs = g.degrees()
    low = [v for v in range(p.n) if degs[v] == p.delta]
    if len(low) < xsize:
        return False
    groups: dict[int, list[int]] = {}
    for v in low:
        key = g.adj[v] if kind == "H" else g.adj[v] | (1 << v)
        groups.setdefault(key, []).append(v)
    want = p.delta if kind == "H" else p.delta + 1
    ysize = p.delta if kind == "H" else p.k + 1
    for key, members in groups.items():
        if key.bit_count() != want or len(members) < xsize:
            continue
        for xs in combinations(members, xsize):
            xmask = 0
            for v in xs:
                xmask |= 1 << v
            ymask = key & ~xmask
            if ymask.bit_count() != ysize:
                continue
            rest = [v for v in range(p.n)
                    if not (xmask >> v) & 1 and not (ymask >> v) & 1]
            yz = sorted(_bits(ymask)) + rest
            if _missing_pairs(g, yz) <= budget:
                return True
    return False


def recognize(g: Graph, p: FamilyParams, kind: str) -> bool:
    """Exact structural match against the intact family member, any labeling."""
    inst = _family(p, kind)
    if g.order != p.n or g.size != inst.graph.size:
        return False
    if sorted(g.degrees()) != sorted(inst.graph.degrees()):
        return False
    return _membership(g, p, kind, 0)


def in_deletion_family(g: Graph, p: FamilyParams, kind: str) -> bool:
    """Tier-1 test: the intact member minus a within-budget Y u Z edge subset."""
    return _membership(g, p, kind, deletion_budget(p, kind))


def embeds_into_family(g: Graph, p: FamilyParams, kind: str) -> bool:
    """Is g a spanning subgraph of the kind-member, up to relabeling?

    H: some independent set X of order delta - k has |N(X)| <= delta.
    L: some vertex set X of order delta - k has |N(X) - X| <= k + 1.
    Everything else embeds automatically since Y u Z is a clique and Y is
    joined to everything.
    """
    if g.order != p.n:
        return False
    xsize = p.delta - p.k
    cand = [v for v in range(p.n) if g.degree(v) <= p.delta]
    if len(cand) < xsize:
        return False
    limit = p.delta if kind == "H" else p.k + 1

    def rec(start: int, chosen: int, nbhd: int, left: int) -> bool:
        if left == 0:
            outside = nbhd & ~chosen if kind == "L" else nbhd
            return outside.bit_count() <= limit
        for i in range(start, len(cand)):
            v = cand[i]
            vb = 1 << v
            if kind == "H" and g.adj[v] & chosen:
                continue  # X must stay independent
            new_nbhd = nbhd | g.adj[v]
            # future members can absorb at most `left - 1` outside vertices
            outside = (new_nbhd & ~(chosen | vb)) if kind == "L" else new_nbhd
            if outside.bit_count() > limit + (left - 1):
                continue
            if rec(i + 1, chosen | vb, new_nbhd, left - 1):
                return True
        return False

    return rec(0, 0, 0, xsize)
