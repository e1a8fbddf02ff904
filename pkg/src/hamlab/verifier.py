"""Statement-by-statement verification over exhaustive and sampled corpora.

Each registered tag pairs a hypothesis with a conclusion and an exception
set, all evaluated with the exact deciders and certified spectral solvers
from the sibling modules. A verification run walks a parameter grid, builds
a corpus per cell (exhaustive complement enumeration at small orders,
seeded samplers elsewhere), and collects every hypothesis-satisfying graph
that escapes both the conclusion and the exceptions.

Reports are deterministic: RNG streams are keyed per (seed, tag, cell,
index), cells are merged in grid order regardless of the thread pool
schedule, and the JSON form is byte-stable apart from the elapsedMs field.

Statements that hold only for large enough orders are never hard-failed at
small orders; their violations are recorded with an empirical threshold
note, and a run counts as passed when the largest grid order is clean.
"""

from __future__ import annotations

import json
import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, inf

from .closure import closure_equiv_check
from .errors import CapacityError, ParameterError, PreconditionError
from .families import (FamilyInstance, FamilyParams, build_family,
                       deletion_budget, edge_count_h, in_deletion_family,
                       recognize, embeds_into_family, sample_deletions)
from .graphs import (Graph, complete_graph, dense_to_graph6, disjoint_union,
                     independent_graph, is_isomorphic, join, to_graph6)
from .hamiltonicity import (has_hamilton_cycle, is_k_edge_hamiltonian,
                            is_k_hamiltonian)
from .spectral import (adjacency_radius, feng_yu_bound, hong_bound,
                       hong_zhang_rotate, kelmans, q_radius)

ENUM_CAP = 10 ** 7

# optional corpus tap: when set, every graph a checker examines is passed
# through it (Graph or dense adjacency array). Installed by audits that
# re-check global invariants over whole corpora. Single-threaded runs only.
GRAPH_SINK = None


def _tap(g):
    if GRAPH_SINK is not None:
        GRAPH_SINK(g)

TAGS = ("thm11", "thm12", "cor13", "dirac-k", "thm21", "thm23", "thm25",
        "thm27", "thm34", "thm35", "thm36", "thm37", "lem41", "lem42",
        "lem42claims", "bound31", "bound32", "kelmans-mono", "lem33")

# these hold for all large enough orders only; a run passes when the
# largest grid order is violation free, smaller orders are just recorded
ASYMPTOTIC = frozenset(
    {"thm21", "thm23", "thm25", "thm27", "thm36", "thm37", "lem42"})


@dataclass(frozen=True)
class Violation:
    graph6: str
    params: FamilyParams | None
    details: str


@dataclass
class VerificationReport:
    theorem: str
    grid: list[FamilyParams]
    corpus_size: int
    violations: list[Violation]
    seed: int
    elapsed_ms: float
    empirical_notes: str
    vacuous_cells: list[FamilyParams] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        if not self.violations:
            return True
        if self.theorem not in ASYMPTOTIC:
            return False
        top = max(p.n for p in self.grid) if self.grid else 0
        return all(v.params is not None and v.params.n < top
                   for v in self.violations)

    @property
    def exit_code(self) -> int:
        if not self.passed:
            return 2
        if self.vacuous_cells:
            return 3
        return 0

    def as_dict(self, with_elapsed: bool = True) -> dict:
        def cell(p):
            return {"n": p.n, "k": p.k, "delta": p.delta}

        out = {
            "theorem": self.theorem,
            "grid": [cell(p) for p in self.grid],
            "corpusSize": self.corpus_size,
            "violations": [
                {"graph6": v.graph6,
                 "params": cell(v.params) if v.params else None,
                 "details": v.details}
                for v in self.violations],
            "seed": self.seed,
        }
        if with_elapsed:
            out["elapsedMs"] = round(self.elapsed_ms, 3)
        out["empiricalNotes"] = self.empirical_notes
        out["vacuousCells"] = [cell(p) for p in self.vacuous_cells]
        return out

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)

    def replay_json(self) -> str:
        """Serialization without the timing field, for replay comparison."""
        return json.dumps(self.as_dict(with_elapsed=False), indent=2)


@dataclass
class _Cell:
    """One grid cell's outcome before merging."""
    corpus: int = 0
    tested: int = 0  # hypothesis-satisfying graphs
    violations: list[Violation] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def vacuous(self) -> bool:
        return self.tested == 0


# ---------------------------------------------------------------- corpora

def enumerate_graphs(n: int, min_edges: int = 0):
    """Every labeled graph on n vertices with at least min_edges edges.

    Enumerates by complement: subsets of missing edges of size up to
    C(n,2) - min_edges, so dense thresholds stay cheap at any order.
    """
    if n < 1:
        raise ParameterError("n must be positive")
    total = comb(n, 2)
    if min_edges < 0 or min_edges > total:
        raise ParameterError(f"min_edges outside 0..{total}")
    miss_max = total - min_edges
    count = sum(comb(total, j) for j in range(miss_max + 1))
    if count > ENUM_CAP:
        raise CapacityError(
            f"enumeration would visit {count} graphs, above {ENUM_CAP}")
    pairs = list(combinations(range(n), 2))
    full = [((1 << n) - 1) ^ (1 << v) for v in range(n)]
    for j in range(miss_max + 1):
        for missing in combinations(pairs, j):
            adj = full.copy()
            for u, v in missing:
                adj[u] ^= 1 << v
                adj[v] ^= 1 << u
            yield Graph._raw(n, tuple(adj))


def _er_graph(n: int, p: float, rng: random.Random) -> Graph:
    adj = [0] * n
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
    return Graph._raw(n, tuple(adj))


def sample_min_degree(n: int, delta: int, target_edges: int, count: int,
                      seed: int) -> list[Graph]:
    """Seeded graphs with minimum degree >= delta, edge count within +-2
    of target_edges.

    Starts from a uniform graph with exactly target_edges edges, adds edges
    at deficient vertices, trims slack edges whose endpoints stay above
    delta, then mixes with degree-preserving double swaps.
    """
    if not 0 <= delta <= n - 1:
        raise ParameterError(f"delta outside 0..{n - 1}")
    total = comb(n, 2)
    floor_edges = (n * delta + 1) // 2
    if not floor_edges <= target_edges <= total:
        raise ParameterError(
            f"target {target_edges} outside feasible {floor_edges}..{total}")
    pairs = list(combinations(range(n), 2))
    out = []
    for i in range(count):
        rng = random.Random(f"{seed}:mindeg:{n}:{delta}:{target_edges}:{i}")
        for _attempt in range(8):
            adj = [0] * n
            for idx in rng.sample(range(total), target_edges):
                u, v = pairs[idx]
                adj[u] |= 1 << v
                adj[v] |= 1 << u

            def deg(v):
                return adj[v].bit_count()

            # repair: connect deficient vertices, preferring each other
            guard = 0
            while True:
                lows = [v for v in range(n) if deg(v) < delta]
                if not lows:
                    break
                guard += 1
                if guard > 4 * n * delta:
                    break
                v = lows[0]
                others = [w for w in lows[1:] if not (adj[v] >> w) & 1]
                if not others:
                    others = [w for w in range(n)
                              if w != v and not (adj[v] >> w) & 1]
                w = rng.choice(others)
                adj[v] |= 1 << w
                adj[w] |= 1 << v
            if any(deg(v) < delta for v in range(n)):
                continue
            # trim back toward the target without breaking the floor
            guard = 0
            while sum(deg(v) for v in range(n)) // 2 > target_edges:
                slack = [(u, v) for u, v in pairs
                         if (adj[u] >> v) & 1 and deg(u) > delta and deg(v) > delta]
                if not slack or guard > 4 * total:
                    break
                guard += 1
                u, v = slack[rng.randrange(len(slack))]
                adj[u] &= ~(1 << v)
                adj[v] &= ~(1 << u)
            e = sum(deg(v) for v in range(n)) // 2
            if abs(e - target_edges) > 2:
                continue
            # mix: double swaps keep every degree, hence the floor
            for _ in range(2 * n):
                u1, v1 = pairs[rng.randrange(total)]
                u2, v2 = pairs[rng.randrange(total)]
                if len({u1, v1, u2, v2}) != 4:
                    continue
                if ((adj[u1] >> v1) & 1 and (adj[u2] >> v2) & 1
                        and not (adj[u1] >> v2) & 1 and not (adj[u2] >> v1) & 1):
                    adj[u1] ^= (1 << v1) | (1 << v2)
                    adj[v1] ^= (1 << u1) | (1 << u2)
                    adj[u2] ^= (1 << v2) | (1 << v1)
                    adj[v2] ^= (1 << u2) | (1 << u1)
            out.append(Graph._raw(n, tuple(adj)))
            break
        else:
            raise ParameterError(
                f"could not reach {target_edges}+-2 edges at delta {delta}")
    return out


def perturb_family(inst: FamilyInstance, ops: int, seed: int,
                   count: int = 1) -> list[Graph]:
    """Seeded random edge toggles on the family graph, keeping the minimum
    degree at or above the family delta. ops bounds the toggles per output.
    """
    if ops < 0:
        raise ParameterError("ops must be nonnegative")
    if inst.graph is None:
        raise CapacityError("perturbation needs the bitset graph")
    p = inst.params
    out = []
    for i in range(count):
        rng = random.Random(
            f"{seed}:perturb:{inst.kind}:{p.n}:{p.k}:{p.delta}:{i}")
        g = inst.graph
        for _ in range(rng.randint(0, ops)):
            for _try in range(20):
                u = rng.randrange(p.n)
                v = rng.randrange(p.n)
                if u == v:
                    continue
                if not g.has_edge(u, v):
                    g = g.with_edge(u, v)
                    break
                if g.degree(u) > p.delta and g.degree(v) > p.delta:
                    g = g.without_edge(u, v)
                    break
        out.append(g)
    return out


# ---------------------------------------------------------------- bounds

def edge_lower_bound_adj(p: FamilyParams) -> Fraction:
    """Least edge count forced by the adjacency threshold via the degree
    form of the spectral bound: (n^2 - (2d-2k+1)n + 2d^2 - 3dk + d + k^2 - k)/2."""
    n, k, d = p.n, p.k, p.delta
    return Fraction(
        n * n - (2 * d - 2 * k + 1) * n
        + 2 * d * d - 3 * d * k + d + k * k - k, 2)


def edge_lower_bound_q(p: FamilyParams) -> Fraction:
    """Least edge count forced by the Q threshold via the edge form of the
    Q bound: (n^2 - (2d-2k+1)n + 2d - 2k)/2."""
    n, k, d = p.n, p.k, p.delta
    return Fraction(n * n - (2 * d - 2 * k + 1) * n + 2 * d - 2 * k, 2)


# ---------------------------------------------------------------- helpers

def _ore_exception(n: int) -> Graph:
    # a single cut vertex over K_1 u K_{n-2}
    return join(complete_graph(1),
                disjoint_union(complete_graph(1), complete_graph(n - 2)))


def _wheel_exception() -> Graph:
    # order five only: two dominating vertices over three isolated ones
    return join(complete_graph(2), independent_graph(3))


def _spread_targets(lo: int, hi: int, count: int, rng: random.Random):
    for _ in range(count):
        yield rng.randint(lo, hi)


def _family_corpus(cell: FamilyParams, spec: dict, seed: int, tag: str):
    """Intact members, tier samples, and perturbations for both kinds.

    Yields (index, graph) in a deterministic order.
    """
    n_pert = spec["samples"]
    n_tier = spec.get("tier_samples", 40)
    ops = spec.get("ops", 3)
    idx = 0
    for kind in ("H", "L"):
        inst = build_family(cell, kind)
        yield idx, inst.graph
        idx += 1
        for tier in (1, 2):
            for dels in sample_deletions(
                    inst, tier, n_tier, seed=_mix(seed, tag, cell, kind)):
                yield idx, inst.graph_minus(dels)
                idx += 1
        for g in perturb_family(inst, ops, _mix(seed, tag, cell, kind),
                                count=n_pert):
            yield idx, g
            idx += 1


def _mix(seed: int, tag: str, cell: FamilyParams, extra: str = "") -> int:
    # stable per (seed, tag, cell, extra) integer sub-seed
    key = f"{seed}:{tag}:{cell.n}:{cell.k}:{cell.delta}:{extra}"
    return random.Random(key).getrandbits(63)


def _viol(g: Graph | None, cell: FamilyParams, details: str,
          graph6: str | None = None) -> Violation:
    return Violation(graph6=graph6 if graph6 is not None else to_graph6(g),
                     params=cell, details=details)


# ---------------------------------------------------------------- checkers

def cell_error(theorem: str, cell: FamilyParams) -> str | None:
    """Why this cell cannot be checked against this statement, or None.

    verify() raises on the first bad cell; the command line uses this to
    filter range-generated grids down to the checkable cells.
    """
    n, k, d = cell.n, cell.k, cell.delta
    if theorem not in _CHECKERS:
        return f"unknown tag {theorem!r}"
    if theorem == "thm11" and n < 3:
        return "order below three"
    if theorem == "thm12":
        if k != 0:
            return "minimum-degree edge threshold uses k=0 cells"
        if not 1 <= d <= (n - 1) // 2:
            return f"delta {d} outside 1..{(n - 1) // 2}"
    if theorem == "cor13":
        if k != 0:
            return "the corollary uses k=0 cells"
        if d < 1 or n < 6 * d:
            return f"needs delta>=1 and n>=6*delta, got ({n},{d})"
    if theorem in ("dirac-k", "thm34") and n - k < 3:
        return "order minus k below three"
    if theorem in ("thm21", "thm23", "thm25", "thm27", "lem41", "lem42",
                   "lem42claims") and d < k + 2:
        return f"needs delta >= k+2, got ({n},{k},{d})"
    if theorem in ("thm35", "thm36"):
        if theorem == "thm35" and n < 6 * d - 5 * k + 5:
            return f"needs n >= 6*delta-5k+5 = {6 * d - 5 * k + 5}, got {n}"
        try:
            thr = edge_count_h(cell, 1)
        except (ParameterError, CapacityError) as exc:
            return str(exc)
        if thr + 1 > comb(n, 2):
            return "no room above the edge threshold"
    if theorem == "thm37" and (k < 1 or d < k + 2):
        return f"needs k>=1 and delta>=k+2, got ({n},{k},{d})"
    return None


def _check_thm11(cell: FamilyParams, spec: dict, seed: int) -> _Cell:
    n = cell.n
    res = _Cell()
    min_edges = comb(n - 1, 2) + 1
    cut = _ore_exception(n)
    wheel = _wheel_exception() if n == 5 else None
    found = {"cut": 0, "wheel": 0}

    def judge(g: Graph):
        res.corpus += 1
        res.tested += 1
        _tap(g)
        if has_hamilton_cycle(g):
            return
        if is_isomorphic(g, cut):
            found["cut"] += 1
            return
        if wheel is not None and is_isomorphic(g, wheel):
            found["wheel"] += 1
            return
        res.violations.append(_viol(
            g, cell, f"e={g.size} >= {min_edges}, not hamiltonian, "
            "not an allowed exception"))

    total = comb(n, 2)
    miss_max = total - min_edges
    count = sum(comb(total, j) for j in range(miss_max + 1))
    if count <= ENUM_CAP:
        for g in enumerate_graphs(n, min_edges):
            judge(g)
        res.notes.append(f"n={n}: exhaustive over {count} graphs, "
                         f"exceptions cut={found['cut']} wheel={found['wheel']}")
    else:
        pairs = list(combinations(range(n), 2))
        full = [((1 << n) - 1) ^ (1 << v) for v in range(n)]
        for i in range(spec["samples"]):
            rng = random.Random(f"{seed}:thm11:{n}:{i}")
            j = rng.randint(0, miss_max)
            adj = full.copy()
            for u, v in rng.sample(pairs, j):
                adj[u] ^= 1 << v
                adj[v] ^= 1 << u
            judge(Graph._raw(n, tuple(adj)))
        res.notes.append(f"n={n}: sampled {spec['samples']} dense graphs, "
                         f"exceptions cut={found['cut']} wheel={found['wheel']}")
    return res


def _erdos_bound(n: int, d: int) -> int:
    h = (n - 1) // 2
    return max(comb(n - d, 2) + d * d, comb(n - h, 2) + h * h)


def _dense_source(cell: FamilyParams, spec: dict, seed: int, tag: str,
                  min_edges: int, delta: int):
    """Exhaustive above an edge threshold when affordable, else seeded
    samples at the right density and degree floor."""
    n = cell.n
    total = comb(n, 2)
    count = sum(comb(total, j) for j in range(total - min_edges + 1))
    if count <= ENUM_CAP:
        return f"exhaustive over {count}", enumerate_graphs(n, min_edges)

    def sampled():
        hi = min(total, min_edges + n)
        for i in range(spec["samples"]):
            rng = random.Random(f"{seed}:{tag}:{n}:{delta}:{i}")
            t = rng.randint(min(min_edges + 2, hi), hi)
            yield sample_min_degree(n, delta, t, 1,
                                    _mix(seed, tag, cell, str(i)))[0]
    return f"{spec['samples']} sampled", sampled()


def _check_thm12(cell: FamilyParams, spec: dict, seed: int) -> _Cell:
    n, d = cell.n, cell.delta
    res = _Cell()
    min_edges = _erdos_bound(n, d) + 1
    label, source = _dense_source(cell, spec, seed, "thm12", min_edges, d)
    for g in source:
        res.corpus += 1
        _tap(g)
        if g.min_degree() < d or g.size < min_edges:
            continue
        res.tested += 1
        if not has_hamilton_cycle(g):
            res.violations.append(_viol(
                g, cell, f"delta(G)={g.min_degree()}>={d}, e={g.size}"
                f">{min_edges - 1}, not hamiltonian"))
    res.notes.append(f"n={n} delta={d}: threshold e>{min_edges - 1}, "
                     f"{label}, {res.tested} met the hypothesis")
    return res


def _check_cor13(cell: FamilyParams, spec: dict, seed: int) -> _Cell:
    n, d = cell.n, cell.delta
    res = _Cell()
    min_edges = edge_count_h(cell)
    extremal = 0
    label, source = _dense_source(cell, spec, seed, "cor13", min_edges, d)
    for g in source:
        res.corpus += 1
        _tap(g)
        if g.min_degree() < d or g.size < min_edges:
            continue
        res.tested += 1
        if has_hamilton_cycle(g):
            continue
        if recognize(g, cell, "H"):
            extremal += 1
            continue
        res.violations.append(_viol(
            g, cell, f"delta(G)>={d}, e={g.size}>={min_edges}, "
            "not hamiltonian, not the extremal member"))
    res.notes.append(f"n={n} delta={d}: e>={min_edges}, {label}, "
                     f"{extremal} extremal members met the hypothesis")
    return res


def _check_dirac_k(cell: FamilyParams, spec: dict, seed: int) -> _Cell:
    n, k = cell.n, cell.k
    res = _Cell()
    need = (n + k + 1) // 2  # least integer degree meeting (n+k)/2
    lo = (n * need + 1) // 2
    hi = min(comb(n, 2), lo + 2 * n)
    rng = random.Random(f"{seed}:dirac-k:{n}:{k}:targets")
    targets = list(_spread_targets(lo, hi, spec["samples"], rng))
    for i, t in enumerate(targets):
        g = sample_min_degree(n, need, t, 1,
                              _mix(seed, "dirac-k", cell, str(i)))[0]
        res.corpus += 1
        _tap(g)
        if g.min_degree() < need:
            continue
        res.tested += 1
        if not is_k_hamiltonian(g, k):
            res.violations.append(_viol(
                g, cell, f"delta(G)={g.min_degree()}>=ceil((n+k)/2)={need}, "
                f"not {k}-hamiltonian"))
    res.notes.append(f"n={n} k={k}: degree floor {need}, "
                     f"{res.tested} samples tested")
    return res


def _check_spectral_family(cell: FamilyParams, spec: dict, seed: int,
                           tag: str) -> _Cell:
    """Shared engine for the four threshold statements.

    tag selects hypothesis (adjacency or Q threshold) and conclusion
    (k-edge-hamiltonian or k-hamiltonian); exceptions are the intact
    members for the adjacency version, the within-budget deletion families
    for the Q version.
    """
    n, k, d = cell.n, cell.k, cell.delta
    res = _Cell()
    adjacency = tag in ("thm21", "thm25")
    edge_version = tag in ("thm21", "thm23")
    thr = n - d + k - 1 if adjacency else 2 * (n - d + k - 1)
    seen = 0
    exceptions = 0
    for _, g in _family_corpus(cell, spec, seed, tag):
        res.corpus += 1
        _tap(g)
        if g.min_degree() < d:
            continue
        rho = (adjacency_radius if adjacency else q_radius)(g).radius
        if rho < thr - 1e-12:
            continue
        res.tested += 1
        seen += 1
        ok = (is_k_edge_hamiltonian(g, k) if edge_version
              else is_k_hamiltonian(g, k))
        if ok:
            continue
        if adjacency:
            exempt = recognize(g, cell, "H") or recognize(g, cell, "L")
        else:
            exempt = (in_deletion_family(g, cell, "H")
                      or in_deletion_family(g, cell, "L"))
        if exempt:
            exceptions += 1
            continue
        res.violations.append(_viol(
            g, cell, f"delta(G)={g.min_degree()}>={d}, "
            f"{'lambda' if adjacency else 'q'}={rho:.6f}>={thr}, "
            f"not {k}-{'edge-' if edge_version else ''}hamiltonian, "
            "outside the exception set"))
    res.notes.append(
        f"n={n} k={k} delta={d}: {seen} met the threshold, "
        f"{exceptions} were exceptions, {len(res.violations)} escaped")
    return res


def _check_thm34(cell: FamilyParams, spec: dict, seed: int) -> _Cell:
    n, k = cell.n, cell.k
    res = _Cell()
    cap = spec.get("exhaustive_max", 6)
    if n <= cap:
        count = 1 << comb(n, 2)
        if count > ENUM_CAP:
            raise CapacityError(f"{count} graphs above {ENUM_CAP}")
        source = enumerate_graphs(n, 0)
        label = f"exhaustive over {count}"
    else:
        def sampled():
            densities = (0.3, 0.5, 0.7)
            for i in range(spec["samples"]):
                rng = random.Random(f"{seed}:thm34:{n}:{k}:{i}")
                yield _er_graph(n, densities[i % len(densities)], rng)
        source = sampled()
        label = f"{spec['samples']} sampled"
    for g in source:
        res.corpus += 1
        res.tested += 1
        _tap(g)
        eq = closure_equiv_check(g, k)
        if not eq.agree:
            res.violations.append(_viol(
                g, cell, f"closure at s=n+k={n + k} changed a verdict: "
                f"kham {eq.k_ham_before}->{eq.k_ham_after}, "
                f"keh {eq.k_edge_ham_before}->{eq.k_edge_ham_after}"))
    res.notes.append(f"n={n} k={k}: {label} graphs")
    return res


def _check_stability(cell: FamilyParams, spec: dict, seed: int,
                     tag: str) -> _Cell:
    n, k, d = cell.n, cell.k, cell.delta
    res = _Cell()
    edge_version = tag == "thm35"
    thr = edge_count_h(cell, 1)  # member at minimum degree delta+1
    hi = min(comb(n, 2), thr + n)
    embedded = 0
    for i in range(spec["samples"]):
        rng = random.Random(f"{seed}:{tag}:{n}:{k}:{d}:{i}")
        t = rng.randint(thr + 1, hi)
        g = sample_min_degree(n, d, t, 1, _mix(seed, tag, cell, str(i)))[0]
        res.corpus += 1
        _tap(g)
        if g.min_degree() < d or g.size <= thr:
            continue
        res.tested += 1
        ok = (is_k_edge_hamiltonian(g, k) if edge_version
              else is_k_hamiltonian(g, k))
        if ok:
            continue
        if embeds_into_family(g, cell, "H") or embeds_into_family(g, cell, "L"):
            embedded += 1
            continue
        res.violations.append(_viol(
            g, cell, f"delta(G)>={d}, e={g.size}>{thr}, not "
            f"{k}-{'edge-' if edge_version else ''}hamiltonian, "
            "embeds into neither family"))
    res.notes.append(f"n={n} k={k} delta={d}: {res.tested} above e>{thr}, "
                     f"{embedded} non-hamiltonian samples embedded")
    return res


def _check_thm37(cell: FamilyParams, spec: dict, seed: int) -> _Cell:
    n, k, d = cell.n, cell.k, cell.delta
    res = _Cell()
    thr = n - d + k - 1
    worst = -inf
    for kind in ("H", "L"):
        inst = build_family(cell, kind)
        e1 = inst.e1
        cap = min(len(e1), max(2 * deletion_budget(cell, kind) + 2, 4))
        for i in range(spec["samples"]):
            rng = random.Random(f"{seed}:thm37:{kind}:{n}:{k}:{d}:{i}")
            size = rng.randint(1, cap)
            g = inst.graph_minus(tuple(rng.sample(e1, size)))
            res.corpus += 1
            _tap(g)
            if g.min_degree() < d:
                continue
            res.tested += 1
            lam = adjacency_radius(g).radius
            worst = max(worst, lam - thr)
            if lam >= thr:
                res.violations.append(_viol(
                    g, cell, f"proper {kind}-subgraph with delta(G)>={d} "
                    f"has lambda={lam:.6f} >= {thr}"))
    res.notes.append(f"n={n} k={k} delta={d}: max lambda-threshold gap "
                     f"{worst:.6f}")
    return res


def _check_lem41(cell: FamilyParams, spec: dict, seed: int) -> _Cell:
    n, k, d = cell.n, cell.k, cell.delta
    res = _Cell()
    thr = 2 * (n - d + k - 1)
    decide_cap = spec.get("decide_cap", 14)
    worst = inf
    for kind in ("H", "L"):
        inst = build_family(cell, kind)
        if n <= decide_cap:
            # non-hamiltonicity of the intact member carries to every
            # member below it, so one decider run covers the whole tier
            if is_k_edge_hamiltonian(inst.graph, k) or \
                    is_k_hamiltonian(inst.graph, k):
                res.violations.append(_viol(
                    inst.graph, cell,
                    f"intact {kind} member is {k}-(edge-)hamiltonian"))
            res.notes.append(f"{kind}: intact member decided at n={n}")
        sub = _mix(seed, "lem41", cell, kind)
        for dels in sample_deletions(inst, 1, spec["samples"], sub):
            res.corpus += 1
            res.tested += 1
            a = inst.adjacency_minus(dels)
            _tap(a)
            q = q_radius(a).radius
            worst = min(worst, q - thr)
            if q < thr - 1e-9:
                res.violations.append(Violation(
                    dense_to_graph6(a.astype(int).tolist()), cell,
                    f"{kind} member minus {len(dels)} edges: "
                    f"q={q:.9f} < {thr}"))
    res.notes.append(f"n={n} k={k} delta={d}: min q-threshold margin "
                     f"{worst:.3e}")
    return res


def _check_lem42(cell: FamilyParams, spec: dict, seed: int) -> _Cell:
    n, k, d = cell.n, cell.k, cell.delta
    res = _Cell()
    thr = 2 * (n - d + k - 1)
    worst = inf
    for kind in ("H", "L"):
        inst = build_family(cell, kind)
        sub = _mix(seed, "lem42", cell, kind)
        for dels in sample_deletions(inst, 2, spec["samples"], sub):
            res.corpus += 1
            res.tested += 1
            a = inst.adjacency_minus(dels)
            _tap(a)
            q = q_radius(a).radius
            worst = min(worst, thr - q)
            if q >= thr:
                res.violations.append(Violation(
                    dense_to_graph6(a.astype(int).tolist()), cell,
                    f"{kind} member minus {len(dels)} edges: "
                    f"q={q:.9f} >= {thr}"))
    res.notes.append(f"n={n} k={k} delta={d}: min threshold-q margin "
                     f"{worst:.6f}")
    return res


def _claims_cell(cell: FamilyParams, samples: int, seed: int) -> _Cell:
    """Per-sample checks of the four eigenvector claims on tier-2 members.

    Claim 1 lower-bounds q, claim 2 upper-bounds the X entries, claim 3
    orders the entries across the degree classes, claim 4 lower-bounds the
    clique entries. Margins (minimum slack per claim) land in the notes;
    the claim 4 note also carries the sharper constant's margin.
    """
    n, k, d = cell.n, cell.k, cell.delta
    if samples < 1:
        raise ParameterError("samples must be positive")
    res = _Cell()
    inst = build_family(cell, "H")
    intact_q = q_radius(inst.adjacency_minus()).radius
    if intact_q <= n - 1:
        raise PreconditionError(
            f"q={intact_q:.4f} not above the maximum degree {n - 1}")
    thr = 2 * (n - d + k - 1)
    ys, zs, xs = sorted(inst.y), sorted(inst.z), sorted(inst.x)
    margins = {1: inf, 2: inf, 3: inf, 4: inf}
    margin4_sharp = inf
    skipped = 0
    # same H-kind tier-2 stream as the q-threshold check at equal seeds
    sub = _mix(seed, "lem42", cell, "H")
    for i, dels in enumerate(sample_deletions(inst, 2, samples, sub)):
        res.corpus += 1
        a = inst.adjacency_minus(dels)
        _tap(a)
        pair = q_radius(a)
        q, f = pair.radius, pair.vector
        deg = a.sum(axis=1)
        z1 = [v for v in zs if deg[v] == n - d + k - 1]
        if not z1:
            skipped += 1
            continue
        res.tested += 1
        y1 = [v for v in ys if deg[v] == n - 1]
        y2 = [v for v in ys if deg[v] <= n - 2]
        z2 = [v for v in zs if deg[v] <= n - d + k - 2]
        bad = []

        m1 = q - (thr - 1)
        margins[1] = min(margins[1], m1)
        if m1 <= 0:
            bad.append(f"claim1 q={q:.6f} <= {thr - 1}")

        # equality is attained when no Y vertex lost an edge, so solver
        # noise needs headroom
        cap_x = d / (q - d)
        m2 = min(cap_x - f[v] for v in xs)
        margins[2] = min(margins[2], m2)
        if m2 < -1e-9:
            bad.append(f"claim2 max f_x={max(f[v] for v in xs):.6f} "
                       f"> {cap_x:.6f}")

        orderings = []
        if y2:
            orderings.append(("y2<z1", max(f[v] for v in y2),
                              min(f[v] for v in z1)))
        if z2:
            orderings.append(("z2<z1", max(f[v] for v in z2),
                              min(f[v] for v in z1)))
        if y1 and y2:
            orderings.append(("y2<y1", max(f[v] for v in y2),
                              min(f[v] for v in y1)))
        if y1:
            orderings.append(("z1<y1", max(f[v] for v in z1),
                              min(f[v] for v in y1)))
        for name, low, high in orderings:
            m3 = high - low
            margins[3] = min(margins[3], m3)
            if m3 <= 0:
                bad.append(f"claim3 {name} fails: {low:.9f} >= {high:.9f}")

        floor = 1 - ((d + 2) * (d - k) + 6) / (2 * (q - n + 2))
        floor_sharp = 1 - ((d - 2) * (d - k) + 6) / (2 * (q - n + 2))
        m4 = min(f[v] for v in ys + zs) - floor
        margins[4] = min(margins[4], m4)
        margin4_sharp = min(margin4_sharp,
                            min(f[v] for v in ys + zs) - floor_sharp)
        if m4 < -1e-9:
            bad.append(f"claim4 min f on the clique "
                       f"{min(f[v] for v in ys + zs):.6f} < {floor:.6f}")

        if bad:
            res.violations.append(Violation(
                dense_to_graph6(a.astype(int).tolist()), cell,
                f"sample {i} ({len(dels)} deletions): " + "; ".join(bad)))
    res.notes.append(
        f"n={n} k={k} delta={d}: margins "
        f"claim1={margins[1]:.6f} claim2={margins[2]:.6f} "
        f"claim3={margins[3]:.9f} claim4={margins[4]:.6f} "
        f"(sharper constant {margin4_sharp:.6f}), skipped={skipped}")
    return res


def _check_lem42claims(cell: FamilyParams, spec: dict, seed: int) -> _Cell:
    return _claims_cell(cell, spec["samples"], seed)


def _bound_corpus(cell: FamilyParams, spec: dict, seed: int, tag: str):
    densities = (0.2, 0.35, 0.5, 0.65, 0.8)
    for i in range(spec["samples"]):
        rng = random.Random(f"{seed}:{tag}:{cell.n}:{i}")
        yield _er_graph(cell.n, densities[i % len(densities)], rng)
    for kind in ("H", "L"):
        inst = build_family(cell, kind)
        yield inst.graph
        for dels in sample_deletions(inst, 1, spec.get("tier_samples", 20),
                                     _mix(seed, tag, cell, kind)):
            yield inst.graph_minus(dels)


def _check_bound31(cell: FamilyParams, spec: dict, seed: int) -> _Cell:
    res = _Cell()
    worst = inf
    for g in _bound_corpus(cell, spec, seed, "bound31"):
        res.corpus += 1
        res.tested += 1
        _tap(g)
        lam = adjacency_radius(g).radius
        cap = hong_bound(g.order, g.size, g.min_degree())
        worst = min(worst, cap - lam)
        if lam > cap + 1e-8:
            res.violations.append(_viol(
                g, cell, f"lambda={lam:.9f} above the degree-edge bound "
                f"{cap:.9f}"))
    m = cell.n
    tight = abs(hong_bound(m, comb(m, 2), m - 1) - (m - 1))
    res.notes.append(f"n={cell.n}: min bound slack {worst:.6f}, "
                     f"complete-graph gap {tight:.2e}")
    return res


def _check_bound32(cell: FamilyParams, spec: dict, seed: int) -> _Cell:
    res = _Cell()
    worst = inf
    for g in _bound_corpus(cell, spec, seed, "bound32"):
        res.corpus += 1
        res.tested += 1
        _tap(g)
        q = q_radius(g).radius
        cap = feng_yu_bound(g.order, g.size)
        worst = min(worst, cap - q)
        if q > cap + 1e-8:
            res.violations.append(_viol(
                g, cell, f"q={q:.9f} above the edge bound {cap:.9f}"))
    m = cell.n
    tight = abs(feng_yu_bound(m, comb(m, 2)) - 2 * (m - 1))
    res.notes.append(f"n={cell.n}: min bound slack {worst:.6f}, "
                     f"complete-graph gap {tight:.2e}")
    return res


def _check_kelmans(cell: FamilyParams, spec: dict, seed: int) -> _Cell:
    res = _Cell()
    n = cell.n
    worst = inf
    densities = (0.3, 0.5, 0.7)
    for i in range(spec["samples"]):
        rng = random.Random(f"{seed}:kelmans-mono:{n}:{i}")
        g = _er_graph(n, densities[i % len(densities)], rng)
        u, v = rng.sample(range(n), 2)
        res.corpus += 1
        res.tested += 1
        _tap(g)
        before = adjacency_radius(g).radius
        shifted = kelmans(g, u, v)
        _tap(shifted)
        after = adjacency_radius(shifted).radius
        worst = min(worst, after - before)
        if after < before - 1e-9:
            res.violations.append(_viol(
                g, cell, f"shift {v}->{u} lowered lambda "
                f"{before:.9f} -> {after:.9f}"))
        if shifted.size != g.size:
            res.violations.append(_viol(
                g, cell, f"shift {v}->{u} changed the edge count"))
    res.notes.append(f"n={n}: min radius change {worst:.3e}")
    return res


def _check_lem33(cell: FamilyParams, spec: dict, seed: int) -> _Cell:
    res = _Cell()
    n = cell.n
    worst = inf
    done = 0
    i = 0
    attempts = 0
    while done < spec["samples"] and attempts < 40 * spec["samples"]:
        attempts += 1
        rng = random.Random(f"{seed}:lem33:{n}:{i}")
        i += 1
        g = _er_graph(n, 0.4 + 0.3 * rng.random(), rng)
        if not g.is_connected():
            continue
        f = q_radius(g).vector
        order = sorted(range(n), key=lambda v: (-f[v], v))
        pick = None
        for u in order:
            for v in order:
                if u == v or f[u] < f[v]:
                    continue
                allowed = g.adj[v] & ~(g.adj[u] | (1 << u))
                if allowed:
                    pick = (u, v, allowed)
                    break
            if pick:
                break
        if pick is None:
            continue
        u, v, allowed = pick
        bits = [b for b in range(n) if (allowed >> b) & 1]
        w = rng.sample(bits, rng.randint(1, len(bits)))
        res.corpus += 1
        res.tested += 1
        done += 1
        _tap(g)
        before = q_radius(g).radius
        rotated = hong_zhang_rotate(g, u, v, w)
        _tap(rotated)
        after = q_radius(rotated).radius
        worst = min(worst, after - before)
        if after <= before - 1e-10:
            res.violations.append(_viol(
                g, cell, f"rotation of {len(w)} edges {v}->{u} gave "
                f"q {before:.9f} -> {after:.9f}, not an increase"))
    res.notes.append(f"n={n}: {done} rotations, min q increase {worst:.3e}")
    return res


_CHECKERS = {
    "thm11": _check_thm11,
    "thm12": _check_thm12,
    "cor13": _check_cor13,
    "dirac-k": _check_dirac_k,
    "thm21": lambda c, s, z: _check_spectral_family(c, s, z, "thm21"),
    "thm23": lambda c, s, z: _check_spectral_family(c, s, z, "thm23"),
    "thm25": lambda c, s, z: _check_spectral_family(c, s, z, "thm25"),
    "thm27": lambda c, s, z: _check_spectral_family(c, s, z, "thm27"),
    "thm34": _check_thm34,
    "thm35": lambda c, s, z: _check_stability(c, s, z, "thm35"),
    "thm36": lambda c, s, z: _check_stability(c, s, z, "thm36"),
    "thm37": _check_thm37,
    "lem41": _check_lem41,
    "lem42": _check_lem42,
    "lem42claims": _check_lem42claims,
    "bound31": _check_bound31,
    "bound32": _check_bound32,
    "kelmans-mono": _check_kelmans,
    "lem33": _check_lem33,
}

_DEFAULT_SAMPLES = {
    "thm11": 2000, "thm12": 500, "cor13": 500, "dirac-k": 200,
    "thm21": 2000, "thm23": 2000, "thm25": 2000, "thm27": 2000,
    "thm34": 500, "thm35": 2000, "thm36": 2000, "thm37": 200,
    "lem41": 200, "lem42": 100, "lem42claims": 100,
    "bound31": 300, "bound32": 300, "kelmans-mono": 300, "lem33": 200,
}


def default_threads() -> int:
    env = os.environ.get("HAMLAB_THREADS")
    if env is not None:
        try:
            t = int(env)
        except ValueError:
            raise ParameterError(f"HAMLAB_THREADS={env!r} is not an integer")
        if t < 1:
            raise ParameterError("HAMLAB_THREADS must be positive")
        return t
    return 1


def verify(theorem: str, grid: list[FamilyParams], corpus_spec: dict | None = None,
           seed: int = 0, threads: int | None = None) -> VerificationReport:
    """Run one registered check over a parameter grid.

    Results merge in grid order whatever the pool schedule, and every RNG
    stream is keyed by (seed, tag, cell, index), so reports replay exactly.
    The HAMLAB_THREADS environment variable overrides the threads argument.
    """
    if theorem not in _CHECKERS:
        raise ParameterError(
            f"unknown tag {theorem!r}, expected one of {', '.join(TAGS)}")
    if not grid:
        raise ParameterError("empty grid")
    for cell in grid:
        msg = cell_error(theorem, cell)
        if msg:
            raise ParameterError(
                f"cell (n={cell.n}, k={cell.k}, delta={cell.delta}): {msg}")
    spec = {"samples": _DEFAULT_SAMPLES[theorem]}
    spec.update(corpus_spec or {})
    env = os.environ.get("HAMLAB_THREADS")
    if env is not None or threads is None:
        threads = default_threads()
    if threads < 1:
        raise ParameterError("threads must be positive")
    checker = _CHECKERS[theorem]
    start = time.perf_counter()
    if threads == 1 or len(grid) == 1:
        cells = [checker(cell, spec, seed) for cell in grid]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            cells = list(pool.map(lambda c: checker(c, spec, seed), grid))
    elapsed = (time.perf_counter() - start) * 1000.0
    violations = []
    notes = []
    vacuous = []
    corpus = 0
    for cell, got in zip(grid, cells):
        corpus += got.corpus
        violations.extend(got.violations)
        notes.extend(got.notes)
        if got.vacuous:
            vacuous.append(cell)
    if theorem in ASYMPTOTIC and violations:
        bad_orders = sorted({v.params.n for v in violations if v.params})
        clean = sorted(x for x in {c.n for c in grid}
                       if x > max(bad_orders))
        if clean:
            notes.append(f"violating orders {bad_orders}, clean from "
                         f"n={clean[0]} on the tested grid")
        else:
            notes.append(f"violating orders {bad_orders}, including the "
                         f"top tested order")
    return VerificationReport(
        theorem=theorem, grid=list(grid), corpus_size=corpus,
        violations=violations, seed=seed, elapsed_ms=elapsed,
        empirical_notes="\n".join(notes), vacuous_cells=vacuous)


def lemma42_claims_check(p: FamilyParams, samples: int,
                         seed: int) -> VerificationReport:
    """Per-sample eigenvector claims on seeded tier-2 members at one cell."""
    return verify("lem42claims", [p], {"samples": samples}, seed=seed)
