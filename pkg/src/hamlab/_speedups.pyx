# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Hamilton cycle kernels.

Semantics match hamlab._speedups_py bit for bit: same search order, same
node accounting, same results. Only the arithmetic is C.
"""

from libc.stdlib cimport calloc, free

BACKEND = "c"

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int _popcount(unsigned long long x) nogil:
    return __builtin_popcountll(x)


def dp_ham_cycle(adj, int n):
    """Held-Karp reachability. Returns 1 if a Hamilton cycle exists, else 0."""
    if n < 3:
        return 0
    if n > 24:
        raise ValueError("dp kernel capped at 24 vertices")
    cdef unsigned long long a[24]
    cdef int i
    for i in range(n):
        a[i] = adj[i]
    cdef unsigned long long full = (<unsigned long long>1 << n) - 1
    cdef size_t half = <size_t>1 << (n - 1)
    cdef unsigned long long *dp = <unsigned long long *>calloc(half, 8)
    if dp == NULL:
        raise MemoryError()
    cdef size_t idx
    cdef unsigned long long b, mask, free_, jb, ext, wb, lasts
    cdef int j
    try:
        dp[0] = 1
        with nogil:
            for idx in range(half):
                b = dp[idx]
                if b == 0:
                    continue
                mask = (<unsigned long long>idx << 1) | 1
                free_ = full & ~mask
                while b:
                    jb = b & (0 - b)
                    b ^= jb
                    j = __builtin_ctzll(jb)
                    ext = a[j] & free_
                    while ext:
                        wb = ext & (0 - ext)
                        ext ^= wb
                        dp[(mask | wb) >> 1] |= wb
        lasts = dp[full >> 1] & a[0] & ~(<unsigned long long>1)
    finally:
        free(dp)
    return 1 if lasts else 0


def bt_ham_cycle(adj, int n, long long budget):
    """Backtracking Hamilton cycle search, see the pure twin for the contract."""
    if n < 3:
        return (0, None)
    cdef unsigned long long a[64]
    cdef int i, v
    for i in range(n):
        a[i] = adj[i]
    cdef unsigned long long full = ((<unsigned long long>1 << (n - 1)) << 1) - 1
    for v in range(n):
        if _popcount(a[v]) < 2:
            return (0, None)
    cdef unsigned long long seen = 1, frontier = 1, grow, m, vb
    while frontier:
        grow = 0
        m = frontier
        while m:
            vb = m & (0 - m)
            m ^= vb
            grow |= a[__builtin_ctzll(vb)]
        frontier = grow & ~seen
        seen |= frontier
    if seen != full:
        return (0, None)

    cdef int start = 0, bestd = 65, d
    for v in range(n):
        d = _popcount(a[v])
        if d < bestd:
            bestd = d
            start = v
    cdef unsigned long long startbit = <unsigned long long>1 << start

    cdef int path[64]
    cdef unsigned long long cand[64]
    path[0] = start
    cand[0] = a[start]
    cdef unsigned long long visited = startbit
    cdef int depth = 0
    cdef long long nodes = 0
    cdef unsigned long long cm, unv, avail, vbit, newvis, rest, ub, seen2, wb
    cdef int pick, pick_score, score, u, found

    while True:
        cm = cand[depth]
        if cm == 0:
            if depth == 0:
                return (0, None)
            visited &= ~(<unsigned long long>1 << path[depth])
            depth -= 1
            continue

        nodes += 1
        if budget >= 0 and nodes > budget:
            return (-1, None)

        unv = full & ~visited
        pick = -1
        pick_score = 99
        m = cm
        while m:
            vb = m & (0 - m)
            m ^= vb
            v = __builtin_ctzll(vb)
            avail = a[v] & ((unv & ~vb) |
                            (<unsigned long long>1 << path[depth]) | startbit)
            score = _popcount(avail)
            if score == 2:
                pick = v
                pick_score = 2
                cm = vb
                break
            if score < pick_score:
                pick = v
                pick_score = score

        vbit = <unsigned long long>1 << pick
        cand[depth] = cm & ~vbit

        newvis = visited | vbit
        if newvis == full:
            if a[pick] & startbit:
                path[depth + 1] = pick
                return (1, [path[i] for i in range(n)])
            continue

        rest = full & ~newvis
        if a[pick] & rest == 0:
            continue
        if a[start] & rest == 0:
            continue
        found = 1
        m = rest
        while m:
            ub = m & (0 - m)
            m ^= ub
            u = __builtin_ctzll(ub)
            avail = a[u] & ((rest & ~ub) | vbit | startbit)
            if _popcount(avail) < 2:
                found = 0
                break
        if not found:
            continue
        seen2 = vbit
        frontier = vbit
        while frontier:
            grow = 0
            m = frontier
            while m:
                wb = m & (0 - m)
                m ^= wb
                grow |= a[__builtin_ctzll(wb)]
            frontier = grow & rest & ~seen2
            seen2 |= frontier
        if (seen2 & rest) != rest:
            continue

        depth += 1
        path[depth] = pick
        visited = newvis
        cand[depth] = a[pick] & rest
