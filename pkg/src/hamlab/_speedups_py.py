"""Pure-Python Hamilton cycle kernels.

Mirrors hamlab._speedups exactly: same search order, same node accounting,
same results for every input. The compiled module is preferred at import
time when present; this one keeps the package fully functional without a
compiler and serves as the reference implementation in tests.

adj is a sequence of n integer bitmasks, n <= 64.
"""

BACKEND = "python"


def dp_ham_cycle(adj, n):
    """Held-Karp reachability. Returns 1 if a Hamilton cycle exists, else 0.

    States are (visited mask containing vertex 0, last vertex); dp[mask >> 1]
    is the bitmask of feasible last vertices. Memory is 8 * 2^(n-1) bytes in
    the compiled twin, a list of ints here, so callers cap n at 24.
    """
    if n < 3:
        return 0
    full = (1 << n) - 1
    half = 1 << (n - 1)
    dp = [0] * half
    dp[0] = 1  # path consisting of vertex 0 alone
    for idx in range(half):
        b = dp[idx]
        if not b:
            continue
        mask = (idx << 1) | 1
        free = full & ~mask
        while b:
            jb = b & -b
            b ^= jb
            j = jb.bit_length() - 1
            ext = adj[j] & free
            while ext:
                wb = ext & -ext
                ext ^= wb
                dp[(mask | wb) >> 1] |= wb
    lasts = dp[full >> 1] & adj[0] & ~1
    return 1 if lasts else 0


def bt_ham_cycle(adj, n, budget):
    """Backtracking search for a Hamilton cycle.

    Returns (1, path) when a cycle is found (path lists the n vertices in
    cycle order starting at the minimum degree vertex), (0, None) when none
    exists, (-1, None) when the node budget is exhausted. budget < 0 means
    unlimited, in which case the search is exact.

    Pruning: every unvisited vertex must keep two usable cycle slots, the
    start vertex must keep a closing edge, the unvisited region must stay
    reachable from the path head, and a vertex down to exactly two usable
    slots forces the next move.
    """
    if n < 3:
        return (0, None)
    full = (1 << n) - 1
    for v in range(n):
        if (adj[v]).bit_count() < 2:
            return (0, None)
    seen = 1
    frontier = 1
    while frontier:
        grow = 0
        m = frontier
        while m:
            vb = m & -m
            m ^= vb
            grow |= adj[vb.bit_length() - 1]
        frontier = grow & ~seen
        seen |= frontier
    if seen != full:
        return (0, None)

    start = 0
    bestd = 65
    for v in range(n):
        d = (adj[v]).bit_count()
        if d < bestd:
            bestd = d
            start = v
    startbit = 1 << start

    path = [0] * n
    cand = [0] * n
    path[0] = start
    cand[0] = adj[start]
    visited = startbit
    depth = 0
    nodes = 0

    while True:
        cm = cand[depth]
        if cm == 0:
            if depth == 0:
                return (0, None)
            visited &= ~(1 << path[depth])
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
            vb = m & -m
            m ^= vb
            v = vb.bit_length() - 1
            avail = adj[v] & ((unv & ~vb) | (1 << path[depth]) | startbit)
            score = avail.bit_count()
            if score == 2:
                pick = v
                pick_score = 2
                cm = vb  # forced move, drop the siblings
                break
            if score < pick_score:
                pick = v
                pick_score = score

        vbit = 1 << pick
        cand[depth] = cm & ~vbit

        newvis = visited | vbit
        if newvis == full:
            if adj[pick] & startbit:
                path[depth + 1] = pick
                return (1, list(path))
            continue

        rest = full & ~newvis
        if adj[pick] & rest == 0:
            continue
        if adj[start] & rest == 0:
            continue
        ok = True
        m = rest
        while m:
            ub = m & -m
            m ^= ub
            u = ub.bit_length() - 1
            avail = adj[u] & ((rest & ~ub) | vbit | startbit)
            if avail.bit_count() < 2:
                ok = False
                break
        if not ok:
            continue
        # unvisited region must be reachable from the new head
        seen2 = vbit
        frontier = vbit
        while frontier:
            grow = 0
            m = frontier
            while m:
                wb = m & -m
                m ^= wb
                grow |= adj[wb.bit_length() - 1]
            frontier = grow & rest & ~seen2
            seen2 |= frontier
        if (seen2 & rest) != rest:
            continue

        depth += 1
        path[depth] = pick
        visited = newvis
        cand[depth] = adj[pick] & rest
