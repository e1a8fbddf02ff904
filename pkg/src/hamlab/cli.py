"""Command line front end.

Machine-readable results go to stdout, progress and warnings to stderr.
Exit codes: 0 success, 1 usage or input errors, 2 a verification found
violations, 3 a verification had vacuous cells only.

Every subcommand that reads graphs accepts a file path or "-" for stdin,
one graph6 line per graph. Identical invocations produce identical stdout
apart from the elapsedMs field of verification reports.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from .closure import classify_closure, closure
from .errors import DomainError, HamlabError, ParameterError
from .families import (FamilyParams, build_family, deletion_budget,
                       sample_deletions)
from .graphs import (CAP, dense_from_graph6, dense_to_graph6, from_edges,
                     to_graph6)
from .hamiltonicity import (has_hamilton_cycle, is_k_edge_hamiltonian,
                            is_k_hamiltonian)
from .spectral import adjacency_radius, q_radius
from .verifier import TAGS, cell_error, verify


def _parse_range(text: str) -> range:
    """"A..B" inclusive, or a single integer."""
    lo, sep, hi = text.partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise ParameterError(f"bad range {text!r}, expected N or A..B")
    if b < a:
        raise ParameterError(f"empty range {text!r}")
    return range(a, b + 1)


def _open_source(path: str):
    if path == "-":
        return sys.stdin, False
    try:
        return open(path, "r", encoding="ascii"), True
    except OSError as exc:
        raise ParameterError(f"cannot read {path}: {exc}")


def _iter_matrices(path: str):
    """(line number, dense adjacency) per graph6 line, any order."""
    handle, owned = _open_source(path)
    try:
        for lineno, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                yield lineno, dense_from_graph6(line)
            except DomainError as exc:
                raise DomainError(f"line {lineno}: {exc}")
    finally:
        if owned:
            handle.close()


def _iter_graphs(path: str):
    """(line number, Graph) per graph6 line; orders above 64 are errors."""
    for lineno, rows in _iter_matrices(path):
        n = len(rows)
        if n > CAP:
            raise DomainError(
                f"line {lineno}: order {n} above the decider cap {CAP}")
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)
                 if rows[u][v]]
        yield lineno, from_edges(n, edges)


def _emit(obj: dict) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


# ------------------------------------------------------------ subcommands

def _cmd_gen(args) -> int:
    p = FamilyParams(args.n, args.k, args.delta)
    inst = build_family(p, args.kind)
    lines = []
    sizes = []
    if args.tier == 0:
        deletions = [()]
    else:
        deletions = sample_deletions(inst, args.tier, args.count,
                                     seed=args.seed)
    for dels in deletions:
        if inst.graph is not None:
            g = inst.graph_minus(dels)
            lines.append(to_graph6(g))
            sizes.append(g.size)
        else:
            a = inst.adjacency_minus(dels)
            lines.append(dense_to_graph6(a.astype(int).tolist()))
            sizes.append(int(a.sum()) // 2)
    sidecar = {
        "kind": args.kind,
        "params": {"n": p.n, "k": p.k, "delta": p.delta},
        "tier": args.tier,
        "count": len(lines),
        "seed": args.seed,
        "budget": deletion_budget(p, args.kind),
        "edgeCounts": sizes,
    }
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write("\n".join(lines) + "\n")
        with open(args.out + ".json", "w", encoding="ascii") as fh:
            json.dump(sidecar, fh, indent=2)
            fh.write("\n")
        print(f"wrote {len(lines)} graphs to {args.out}", file=sys.stderr)
    else:
        for line in lines:
            sys.stdout.write(line + "\n")
    return 0


def _cmd_spectra(args) -> int:
    for lineno, rows in _iter_matrices(args.source):
        a = np.array(rows, dtype=float)
        _emit({"line": lineno, "n": len(rows), "e": int(a.sum()) // 2,
               "lambda": round(adjacency_radius(a).radius, 12),
               "q": round(q_radius(a).radius, 12)})
    return 0


def _cmd_check(args) -> int:
    for lineno, g in _iter_graphs(args.source):
        if args.mode == "ham":
            verdict = has_hamilton_cycle(g)
        elif args.mode == "k-ham":
            verdict = is_k_hamiltonian(g, args.k)
        else:
            verdict = is_k_edge_hamiltonian(g, args.k)
        out = {"line": lineno, "n": g.order, "mode": args.mode,
               "verdict": verdict}
        if args.mode != "ham":
            out["k"] = args.k
        _emit(out)
    return 0


def _cmd_closure(args) -> int:
    for lineno, g in _iter_graphs(args.source):
        closed = closure(g, g.order + args.k)
        out = {"line": lineno, "n": g.order, "k": args.k,
               "edges": g.size, "closedEdges": closed.size,
               "complete": closed.size == g.order * (g.order - 1) // 2}
        if args.delta is not None:
            diag = classify_closure(g, args.k, args.delta)
            out["classification"] = diag.classification
            out["cliqueOrder"] = diag.clique_order
        _emit(out)
    return 0


def _cmd_verify(args) -> int:
    grid = []
    skipped = 0
    for n in _parse_range(args.n):
        for k in _parse_range(args.k):
            for delta in _parse_range(args.delta):
                try:
                    cell = FamilyParams(n, k, delta)
                except (ParameterError, HamlabError):
                    skipped += 1
                    continue
                if cell_error(args.theorem, cell):
                    skipped += 1
                    continue
                grid.append(cell)
    if skipped:
        print(f"skipped {skipped} cells outside the statement's hypotheses",
              file=sys.stderr)
    if not grid:
        print("error: no checkable cells in the given ranges",
              file=sys.stderr)
        return 1
    spec = {}
    if args.samples is not None:
        spec["samples"] = args.samples
    report = verify(args.theorem, grid, spec, seed=args.seed,
                    threads=args.threads)
    for line in report.empirical_notes.split("\n"):
        if line:
            print(line, file=sys.stderr)
    text = report.to_json() + "\n"
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(text)
        print(f"report written to {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    if args.csv:
        with open(args.csv, "w", encoding="ascii", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["theorem", "n", "k", "delta", "graph6", "details"])
            for v in report.violations:
                w.writerow([report.theorem,
                            v.params.n if v.params else "",
                            v.params.k if v.params else "",
                            v.params.delta if v.params else "",
                            v.graph6, v.details])
        print(f"violations written to {args.csv}", file=sys.stderr)
    return report.exit_code


def _cmd_convert(args) -> int:
    if args.to == "json":
        for lineno, rows in _iter_matrices(args.source):
            n = len(rows)
            edges = [[u, v] for u in range(n) for v in range(u + 1, n)
                     if rows[u][v]]
            _emit({"n": n, "edges": edges})
        return 0
    handle, owned = _open_source(args.source)
    try:
        for lineno, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
                n = int(obj["n"])
                edges = [(int(u), int(v)) for u, v in obj["edges"]]
            except (ValueError, KeyError, TypeError) as exc:
                raise DomainError(f"line {lineno}: bad graph object: {exc}")
            rows = [[0] * n for _ in range(n)]
            for u, v in edges:
                if not (0 <= u < n and 0 <= v < n) or u == v:
                    raise DomainError(f"line {lineno}: bad edge ({u}, {v})")
                rows[u][v] = rows[v][u] = 1
            sys.stdout.write(dense_to_graph6(rows) + "\n")
    finally:
        if owned:
            handle.close()
    return 0


# ----------------------------------------------------------------- parser

def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="hamlab",
        description="Extremal families, spectral radii, Hamiltonicity "
                    "deciders, and statement verification.")
    sub = top.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="emit family graphs as graph6")
    gen.add_argument("--kind", choices=("H", "L"), required=True)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--k", type=int, required=True)
    gen.add_argument("--delta", type=int, required=True)
    gen.add_argument("--tier", type=int, choices=(0, 1, 2), default=0,
                     help="0 intact, 1 within the deletion budget, "
                          "2 just past it")
    gen.add_argument("--count", type=int, default=1)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", help="write graphs here plus a .json sidecar")
    gen.set_defaults(func=_cmd_gen)

    spectra = sub.add_parser("spectra",
                             help="adjacency and Q spectral radii per line")
    spectra.add_argument("source", nargs="?", default="-",
                         help="graph6 file or - for stdin")
    spectra.set_defaults(func=_cmd_spectra)

    check = sub.add_parser("check", help="exact Hamiltonicity verdicts")
    check.add_argument("source", nargs="?", default="-")
    check.add_argument("--mode", choices=("ham", "k-ham", "k-edge-ham"),
                       default="ham")
    check.add_argument("--k", type=int, default=0)
    check.set_defaults(func=_cmd_check)

    clo = sub.add_parser("closure", help="degree closure at n+k per line")
    clo.add_argument("source", nargs="?", default="-")
    clo.add_argument("--k", type=int, default=0)
    clo.add_argument("--delta", type=int,
                     help="also classify the closed graph's shape")
    clo.set_defaults(func=_cmd_closure)

    ver = sub.add_parser("verify", help="run one statement check on a grid")
    ver.add_argument("--theorem", required=True, choices=TAGS)
    ver.add_argument("--n", required=True, help="order range A..B")
    ver.add_argument("--k", default="0", help="k range A..B")
    ver.add_argument("--delta", default="1..5", help="delta range A..B")
    ver.add_argument("--samples", type=int)
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--threads", type=int,
                     help="cell fan-out; HAMLAB_THREADS overrides")
    ver.add_argument("--out", help="write the JSON report here")
    ver.add_argument("--csv", help="write violations as CSV here")
    ver.set_defaults(func=_cmd_verify)

    conv = sub.add_parser("convert", help="graph6 to JSON and back")
    conv.add_argument("source", nargs="?", default="-")
    conv.add_argument("--to", choices=("json", "graph6"), required=True)
    conv.set_defaults(func=_cmd_convert)
    return top


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except HamlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except BrokenPipeError:
        return 1


if __name__ == "__main__":
    sys.exit(main())
