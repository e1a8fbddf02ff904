"""Small simple graphs as tuples of adjacency bitmasks.

Vertices are 0..n-1 and each row is a Python int whose bit v says whether
the edge is present, so neighborhood algebra is plain integer bit twiddling.
The hard cap is 64 vertices; callers that need larger orders use dense numpy
adjacency matrices instead (see families.adjacency_minus).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from .errors import CapacityError, DomainError

CAP = 64
ISO_CAP = 16


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """Immutable undirected simple graph on at most 64 labeled vertices."""

    __slots__ = ("_n", "_adj")

    def __init__(self, order: int, edges: Iterable[tuple[int, int]] = ()):
        if not 0 <= order <= CAP:
            raise CapacityError(f"order {order} outside 0..{CAP}")
        adj = [0] * order
        for u, v in edges:
            if not (0 <= u < order and 0 <= v < order) or u == v:
                raise DomainError(f"bad edge ({u}, {v}) for order {order}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self._n = order
        self._adj = tuple(adj)

    @classmethod
    def _raw(cls, order: int, adj: tuple[int, ...]) -> "Graph":
        # internal fast path, caller guarantees symmetry and no loops
        g = object.__new__(cls)
        g._n = order
        g._adj = adj
        return g

    @property
    def order(self) -> int:
        return self._n

    @property
    def size(self) -> int:
        return sum(a.bit_count() for a in self._adj) // 2

    @property
    def adj(self) -> tuple[int, ...]:
        return self._adj

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def degrees(self) -> tuple[int, ...]:
        return tuple(a.bit_count() for a in self._adj)

    def neighbors_mask(self, v: int) -> int:
        return self._adj[v]

    def neighbors(self, v: int) -> Iterator[int]:
        return _bits(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self._adj[u] >> v) & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self._n):
            for v in _bits(self._adj[u] >> (u + 1)):
                yield (u, u + 1 + v)

    def with_edge(self, u: int, v: int) -> "Graph":
        if u == v or not (0 <= u < self._n and 0 <= v < self._n):
            raise DomainError(f"bad edge ({u}, {v})")
        adj = list(self._adj)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        return Graph._raw(self._n, tuple(adj))

    def without_edge(self, u: int, v: int) -> "Graph":
        adj = list(self._adj)
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        return Graph._raw(self._n, tuple(adj))

    def without_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = list(self._adj)
        for u, v in edges:
            adj[u] &= ~(1 << v)
            adj[v] &= ~(1 << u)
        return Graph._raw(self._n, tuple(adj))

    def complement(self) -> "Graph":
        full = (1 << self._n) - 1
        adj = tuple((full & ~a & ~(1 << v)) for v, a in enumerate(self._adj))
        return Graph._raw(self._n, adj)

    def min_degree(self) -> int:
        return min((a.bit_count() for a in self._adj), default=0)

    def max_degree(self) -> int:
        return max((a.bit_count() for a in self._adj), default=0)

    def is_connected(self) -> bool:
        n = self._n
        if n == 0:
            return True
        seen = 1
        frontier = 1
        while frontier:
            grow = 0
            for v in _bits(frontier):
                grow |= self._adj[v]
            frontier = grow & ~seen
            seen |= frontier
        return seen == (1 << n) - 1

    def components(self) -> list[int]:
        """Vertex masks of the connected components, ordered by lowest vertex."""
        n = self._n
        left = (1 << n) - 1
        out = []
        while left:
            start = left & -left
            seen = start
            frontier = start
            while frontier:
                grow = 0
                for v in _bits(frontier):
                    grow |= self._adj[v]
                frontier = grow & ~seen
                seen |= frontier
            out.append(seen)
            left &= ~seen
        return out

    def __eq__(self, other) -> bool:
        return (isinstance(other, Graph)
                and self._n == other._n and self._adj == other._adj)

    def __hash__(self) -> int:
        return hash((self._n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(order={self._n}, size={self.size})"


@dataclass(frozen=True)
class GraphStats:
    order: int
    size: int
    degree_sequence: tuple[int, ...]  # non-increasing
    min_degree: int
    max_degree: int
    connected: bool


def graph_stats(g: Graph) -> GraphStats:
    degs = g.degrees()
    return GraphStats(
        order=g.order,
        size=sum(degs) // 2,
        degree_sequence=tuple(sorted(degs, reverse=True)),
        min_degree=min(degs, default=0),
        max_degree=max(degs, default=0),
        connected=g.is_connected(),
    )


def complete_graph(m: int) -> Graph:
    if not 0 <= m <= CAP:
        raise CapacityError(f"order {m} outside 0..{CAP}")
    full = (1 << m) - 1
    return Graph._raw(m, tuple(full & ~(1 << v) for v in range(m)))


def independent_graph(m: int) -> Graph:
    if not 0 <= m <= CAP:
        raise CapacityError(f"order {m} outside 0..{CAP}")
    return Graph._raw(m, (0,) * m)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    n = g.order + h.order
    if n > CAP:
        raise CapacityError(f"union order {n} exceeds {CAP}")
    shift = g.order
    adj = g.adj + tuple(a << shift for a in h.adj)
    return Graph._raw(n, adj)


def join(g: Graph, h: Graph) -> Graph:
    """Disjoint union plus every edge between the two parts, g's vertices first."""
    n = g.order + h.order
    if n > CAP:
        raise CapacityError(f"join order {n} exceeds {CAP}")
    shift = g.order
    gmask = (1 << shift) - 1
    hmask = ((1 << n) - 1) & ~gmask
    adj = tuple(a | hmask for a in g.adj)
    adj += tuple((a << shift) | gmask for a in h.adj)
    return Graph._raw(n, adj)


def induced_delete(g: Graph, drop: Iterable[int]) -> Graph:
    """Induced subgraph after deleting a vertex set, order of survivors kept."""
    dropmask = _mask(drop)
    if dropmask >> g.order:
        raise DomainError("vertex out of range")
    keep = [v for v in range(g.order) if not (dropmask >> v) & 1]
    pos = {v: i for i, v in enumerate(keep)}
    adj = [0] * len(keep)
    for v in keep:
        row = 0
        for w in _bits(g.adj[v] & ~dropmask):
            row |= 1 << pos[w]
        adj[pos[v]] = row
    return Graph._raw(len(keep), tuple(adj))


def subgraph_on(g: Graph, keepmask: int) -> Graph:
    """Induced subgraph on a vertex mask, relabeled in increasing order."""
    full = (1 << g.order) - 1
    return induced_delete(g, _bits(full & ~keepmask))


def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    return Graph(n, edges)


# ---------------------------------------------------------------- cliques

def clique_number(g: Graph) -> int:
    """Maximum clique order, branch and bound with greedy coloring."""
    n = g.order
    if n == 0:
        raise DomainError("clique number needs at least one vertex")
    adj = g.adj
    best = 0

    def color_order(pmask: int) -> list[tuple[int, int]]:
        # greedy coloring, returns (vertex, color) with colors non-decreasing
        order = []
        color = 0
        uncolored = pmask
        while uncolored:
            color += 1
            avail = uncolored
            while avail:
                v = (avail & -avail).bit_length() - 1
                order.append((v, color))
                uncolored &= ~(1 << v)
                avail &= ~adj[v] & ~(1 << v)
        return order

    def expand(rsize: int, pmask: int) -> None:
        nonlocal best
        order = color_order(pmask)
        for v, c in reversed(order):
            if rsize + c <= best:
                return
            sub = pmask & adj[v]
            if sub:
                expand(rsize + 1, sub)
            elif rsize + 1 > best:
                best = rsize + 1
            pmask &= ~(1 << v)

    expand(0, (1 << n) - 1)
    return best


def max_cliques_contains(g: Graph, members: int, size: int) -> bool:
    """Is there a clique of the given size containing every vertex of `members`?"""
    cand = (1 << g.order) - 1
    for v in _bits(members):
        if not (members & g.adj[v]) == (members & ~(1 << v)):
            return False
        cand &= g.adj[v] | (1 << v)
    need = size - members.bit_count()
    if need <= 0:
        return True
    sub = subgraph_on(g, cand & ~members)
    # every candidate is adjacent to all of `members`, so any clique extends it
    return sub.order >= need and clique_number(sub) >= need


def lex_least_max_clique(g: Graph) -> int:
    """Vertex mask of the lexicographically least maximum clique."""
    omega = clique_number(g)
    chosen = 0
    for v in range(g.order):
        if chosen.bit_count() == omega:
            break
        trial = chosen | (1 << v)
        if (chosen & ~g.adj[v]) == 0 and max_cliques_contains(g, trial, omega):
            chosen = trial
    return chosen


# ---------------------------------------------------------------- isomorphism

def _refine(g: Graph, colors: list[int]) -> list[int]:
    n = g.order
    while True:
        keys = []
        for v in range(n):
            nbr = sorted(colors[w] for w in _bits(g.adj[v]))
            keys.append((colors[v], tuple(nbr)))
        ranks = {k: i for i, k in enumerate(sorted(set(keys)))}
        new = [ranks[k] for k in keys]
        if new == colors:
            return colors
        colors = new


def is_isomorphic(g: Graph, h: Graph) -> bool:
    """Exact isomorphism test for orders up to 16."""
    if g.order != h.order or g.size != h.size:
        return False
    n = g.order
    if n > ISO_CAP:
        raise CapacityError(f"isomorphism test capped at order {ISO_CAP}")
    if sorted(g.degrees()) != sorted(h.degrees()):
        return False
    cg = _refine(g, [g.degree(v) for v in range(n)])
    ch = _refine(h, [h.degree(v) for v in range(n)])
    if sorted(cg) != sorted(ch):
        return False

    class_size = {c: cg.count(c) for c in set(cg)}
    order = sorted(range(n), key=lambda v: (class_size[cg[v]], cg[v], v))
    hdom = {c: [v for v in range(n) if ch[v] == c] for c in set(ch)}
    mapping = [-1] * n
    used = 0

    def backtrack(i: int) -> bool:
        nonlocal used
        if i == n:
            return True
        u = order[i]
        for w in hdom[cg[u]]:
            if (used >> w) & 1:
                continue
            ok = True
            for j in range(i):
                p = order[j]
                if g.has_edge(u, p) != h.has_edge(w, mapping[p]):
                    ok = False
                    break
            if ok:
                mapping[u] = w
                used |= 1 << w
                if backtrack(i + 1):
                    return True
                used &= ~(1 << w)
                mapping[u] = -1
        return False

    return backtrack(0)


# ---------------------------------------------------------------- graph6

def _pack_graph6(n: int, rows: tuple[int, ...]) -> str:
    if n <= 62:
        head = chr(n + 63)
    else:
        head = chr(126) + "".join(
            chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    bits = []
    for col in range(1, n):
        colmask = 1 << col
        for row in range(col):
            bits.append(1 if (rows[row] & colmask) else 0)
    out = [head]
    for i in range(0, len(bits), 6):
        group = bits[i:i + 6]
        group += [0] * (6 - len(group))
        val = 0
        for b in group:
            val = (val << 1) | b
        out.append(chr(val + 63))
    return "".join(out)


def to_graph6(g: Graph) -> str:
    """Encode in graph6 format (header: order, body: upper triangle by columns)."""
    return _pack_graph6(g.order, g.adj)


def dense_to_graph6(matrix) -> str:
    """Encode a square 0/1 adjacency matrix (rows of numbers) as graph6.

    Works past the bitset cap, for orders the Graph type cannot hold.
    """
    n = len(matrix)
    rows = []
    for i in range(n):
        row = matrix[i]
        if len(row) != n:
            raise DomainError("adjacency matrix must be square")
        m = 0
        for j in range(n):
            if row[j]:
                m |= 1 << j
        rows.append(m)
    for i in range(n):
        if (rows[i] >> i) & 1:
            raise DomainError(f"loop at vertex {i}")
        for j in range(i):
            if ((rows[i] >> j) & 1) != ((rows[j] >> i) & 1):
                raise DomainError(f"asymmetric entry at ({i}, {j})")
    return _pack_graph6(n, tuple(rows))


def _unpack_graph6(line: str) -> tuple[int, list[int]]:
    s = line.strip()
    if not s:
        raise DomainError("empty graph6 line")
    if s.startswith(">>graph6<<"):
        s = s[10:]
    vals = []
    for ch in s:
        c = ord(ch)
        if not 63 <= c <= 126:
            raise DomainError(f"graph6 byte {c!r} out of range")
        vals.append(c - 63)
    if vals[0] == 63:  # chr(126) - 63
        if len(vals) < 4:
            raise DomainError("truncated graph6 header")
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        body = vals[4:]
    else:
        n = vals[0]
        body = vals[1:]
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise DomainError(
            f"graph6 body length {len(body)} wrong for order {n}")
    adj = [0] * n
    idx = 0
    for col in range(1, n):
        for row in range(col):
            bit = (body[idx // 6] >> (5 - idx % 6)) & 1
            idx += 1
            if bit:
                adj[row] |= 1 << col
                adj[col] |= 1 << row
    # trailing pad bits must be zero
    for j in range(nbits, len(body) * 6):
        if (body[j // 6] >> (5 - j % 6)) & 1:
            raise DomainError("nonzero padding in graph6 body")
    return n, adj


def from_graph6(line: str) -> Graph:
    """Decode one graph6 line. Raises DomainError on malformed input."""
    n, adj = _unpack_graph6(line)
    if n > CAP:
        raise CapacityError(f"graph6 order {n} exceeds {CAP}")
    return Graph._raw(n, tuple(adj))


def dense_from_graph6(line: str) -> list[list[int]]:
    """Decode one graph6 line to a 0/1 adjacency matrix, no order cap."""
    n, adj = _unpack_graph6(line)
    return [[(adj[i] >> j) & 1 for j in range(n)] for i in range(n)]


def iter_graph6_lines(lines: Iterable[str]) -> Iterator[Graph]:
    for i, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            yield from_graph6(line)
        except DomainError as exc:
            raise DomainError(f"line {i}: {exc}") from exc
