"""Command-line front end.

Commands: compute, table1, verify, witness, chain, bounds, sets.  All flags
are long-form.  Machine-readable output via --format json or csv; exit codes:
0 success, 1 parse/domain errors, 2 incomplete results (not found / timeout /
failed claim), 3 reference-table mismatch.

DIFFSEQ_WORKERS, when set, overrides --workers.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import __version__, formulas, solver, table1
from .coloring import Coloring, has_k_term, longest_mono_diffseq
from .gapsets import CATALOG, GapSetError, make_set
from .primechain import find_chain, verify_chain
from .witnesses import WITNESSES, named_witness


def _workers(args) -> int:
    env = os.environ.get("DIFFSEQ_WORKERS")
    if env is not None:
        try:
            value = int(env)
        except ValueError:
            raise GapSetError(f"DIFFSEQ_WORKERS must be an integer, got {env!r}")
        if value < 1:
            raise GapSetError(f"DIFFSEQ_WORKERS must be >= 1, got {value}")
        return value
    return args.workers


def _budget(args) -> solver.SearchBudget:
    return solver.SearchBudget(max_nodes=args.max_nodes, max_seconds=args.max_seconds)


def _print_csv(columns, rows, out) -> None:
    writer = csv.DictWriter(out, fieldnames=columns)
    writer.writeheader()
    for row in rows:
        writer.writerow(row)


def cmd_compute(args) -> int:
    S = make_set(args.set)
    result = solver.compute_f(
        S, args.k, args.r, n_max=args.nmax, budget=_budget(args),
        workers=_workers(args), engine=args.engine,
    )
    doc = result.to_json_dict()
    if args.verify and result.status == solver.EXACT:
        doc["verified"] = solver.verify_certificate(result, S, args.k, args.r,
                                                    engine=args.engine)
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    elif args.format == "csv":
        buf = io.StringIO()
        _print_csv(list(doc), [doc], buf)
        print(buf.getvalue(), end="")
    else:
        if result.status == solver.EXACT:
            print(f"f({args.set},{args.k};{args.r}) = {result.value}")
            if result.certificate is not None:
                print(f"certificate [1,{result.value - 1}]: {result.certificate}")
        elif result.status == solver.NOT_FOUND_UP_TO:
            print(f"no value found up to n = {args.nmax} (still feasible)")
        else:
            print(f"budget exhausted; largest n proven feasible: {result.feasible_up_to}")
        print(f"nodes: {result.nodes}  elapsed_ms: {doc['elapsed_ms']}")
    if args.verify and doc.get("verified") is False:
        return 2
    return 0 if result.status == solver.EXACT else 2


def cmd_table1(args) -> int:
    rows = args.rows.split(",") if args.rows else None
    if rows:
        unknown = [label for label in rows if label not in table1.ROW_BY_LABEL]
        if unknown:
            raise GapSetError(f"unknown table rows {unknown}; "
                              f"known: {', '.join(table1.ROW_BY_LABEL)}")
    budget = solver.SearchBudget(max_nodes=args.max_nodes, max_seconds=args.max_seconds)
    hard = solver.SearchBudget(max_nodes=args.hard_max_nodes,
                               max_seconds=args.hard_max_seconds)
    progress = None
    if args.progress:
        progress = lambda cell: print(  # noqa: E731
            f"# {cell.row} k={cell.k}: {cell.computed} ({cell.status})", file=sys.stderr
        )
    results = table1.run_table1(rows=rows, budget=budget, hard_budget=hard,
                                workers=_workers(args), engine=args.engine,
                                progress=progress)
    dicts = [cell.to_dict() for cell in results]
    if args.format == "json":
        print(json.dumps(dicts, indent=2))
    else:
        buf = io.StringIO()
        _print_csv(list(table1.CSV_COLUMNS), dicts, buf)
        print(buf.getvalue(), end="")
    bad = table1.first_mismatch(results)
    if bad is not None:
        print(
            f"mismatch at {table1.cell_citation(bad.row, bad.k)} "
            f"(computed {bad.computed})",
            file=sys.stderr,
        )
        return 3
    return 0


def cmd_verify(args) -> int:
    if args.coloring is not None:
        text = args.coloring
    else:
        with open(args.coloring_file, "r", encoding="utf-8") as fh:
            text = fh.read().strip()
    coloring = Coloring.parse(text, args.r)
    S = make_set(args.set)
    found = has_k_term(coloring, S, args.k)
    length, witness = longest_mono_diffseq(coloring, S)
    doc = {
        "spec": args.set,
        "k": args.k,
        "n": coloring.n,
        "longest": length,
        "has_k_term": found,
        "pass": not found,
    }
    if found:
        doc["witness"] = {"positions": list(witness.positions), "color": witness.color}
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        if found:
            print(f"FAIL: {args.k}-term chain at positions {list(witness.positions)} "
                  f"(color {witness.color})")
        else:
            print(f"no {args.k}-term chain (longest is {length}), pass")
    return 0 if not found else 2


def cmd_witness(args) -> int:
    spec = WITNESSES[args.name]
    params = {}
    for p in spec.params + spec.optional:
        value = getattr(args, p if p != "set_spec" else "set", None)
        if value is not None:
            params["set_spec" if p == "set_spec" else p] = value
    coloring, claim = named_witness(args.name, **params)
    passed = claim.check(coloring)
    header = {
        "name": args.name,
        "params": {k: v for k, v in params.items()},
        "set_spec": claim.set_spec,
        "claim": claim.to_dict() | {"text": claim.describe()},
    }
    if args.format == "json":
        print(json.dumps(header | {"coloring": coloring.to_text(),
                                   "n": coloring.n, "pass": passed}, indent=2))
    else:
        print(json.dumps(header))
        print(coloring.to_text())
        print(f"claim check: {'pass' if passed else 'FAIL'}")
    return 0 if passed else 2


def cmd_chain(args) -> int:
    chain = find_chain(args.t, args.k, args.bound, strategy=args.strategy)
    if chain is None:
        print(f"no chain found up to bound {args.bound}", file=sys.stderr)
        return 2
    ok = verify_chain(chain)
    doc = chain.to_dict() | {"bound": args.bound, "strategy": args.strategy}
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        print(f"chain (t={args.t}): {' '.join(str(p) for p in chain.elements)}")
        print(f"gaps: {list(chain.gaps)}  witnesses: {list(chain.gap_witnesses)}")
        print(f"verification: {'pass' if ok else 'FAIL'}")
    return 0 if ok else 2


def cmd_bounds(args) -> int:
    if args.registry:
        rows = formulas.registry_rows()
        buf = io.StringIO()
        _print_csv(["family", "params", "k-range", "kind", "formula", "citation"],
                   rows, buf)
        print(buf.getvalue(), end="")
        return 0
    S = make_set(args.set)
    bounds = formulas.bounds_for(S, args.k, args.r)
    doc = {
        "spec": args.set,
        "k": args.k,
        "r": args.r,
        "lower": bounds.lower,
        "upper": bounds.upper,
        "exact": bounds.exact,
        "conjectures": [{"formula_id": fid, "value": v} for fid, v in bounds.conjectures],
        "entries": [
            {"formula_id": e.formula_id, "kind": e.kind, "value": v}
            for e, v in bounds.entries
        ],
    }
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        if bounds.lower is None and bounds.upper is None and not bounds.conjectures:
            print("no registered bounds for this set")
        else:
            print(f"lower: {bounds.lower}  upper: {bounds.upper}  exact: {bounds.exact}")
            for entry, value in bounds.entries:
                print(f"  [{entry.kind}] {entry.formula_id}: {value}  ({entry.formula})")
    return 0


def cmd_sets(args) -> int:
    if args.format == "json":
        print(json.dumps([{"spec": spec, "description": desc} for spec, desc in CATALOG],
                         indent=2))
    else:
        for spec, desc in CATALOG:
            print(f"{spec:28s} {desc}")
    return 0


def _add_common(parser, formats=("json", "csv", "text"), default_format="json") -> None:
    parser.add_argument("--format", choices=formats, default=default_format)


def _add_budget(parser) -> None:
    parser.add_argument("--max-nodes", type=int, default=None,
                        help="node budget (default unlimited)")
    parser.add_argument("--max-seconds", type=float, default=None,
                        help="wall-clock budget in seconds (default unlimited)")
    parser.add_argument("--workers", type=int, default=1,
                        help="search workers; DIFFSEQ_WORKERS overrides")
    parser.add_argument("--engine", choices=["auto", "numba", "python"], default="auto")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diffseq",
        description="Exact solver and verification toolkit for monochromatic "
                    "diffsequence thresholds f(S,k;r).",
    )
    parser.add_argument("--version", action="version", version=f"diffseq {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="compute f(S,k;r) exactly")
    p.add_argument("--set", required=True, help="gap set spec (see the sets command)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--nmax", type=int, default=1000,
                   help="largest interval length to try (default 1000)")
    p.add_argument("--verify", action="store_true",
                   help="re-verify the certificate with a fresh search")
    _add_budget(p)
    _add_common(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("table1", help="recompute the bundled reference table")
    p.add_argument("--rows", default=None,
                   help="comma-separated row labels (default: all rows)")
    p.add_argument("--max-nodes", type=int, default=table1.DEFAULT_CELL_BUDGET.max_nodes)
    p.add_argument("--max-seconds", type=float,
                   default=table1.DEFAULT_CELL_BUDGET.max_seconds)
    p.add_argument("--hard-max-nodes", type=int,
                   default=table1.HARD_CELL_BUDGET.max_nodes,
                   help="node budget override for the hardest cell (row T, k=8)")
    p.add_argument("--hard-max-seconds", type=float,
                   default=table1.HARD_CELL_BUDGET.max_seconds,
                   help="time budget override for the hardest cell (row T, k=8)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--engine", choices=["auto", "numba", "python"], default="auto")
    p.add_argument("--progress", action="store_true", help="log each cell to stderr")
    _add_common(p, formats=("csv", "json"), default_format="csv")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("verify", help="check a coloring against a gap set and k")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--coloring", help="coloring string (digits then a-z)")
    group.add_argument("--coloring-file", help="file containing the coloring string")
    p.add_argument("--set", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, default=None,
                   help="color count (default: inferred from the string)")
    _add_common(p, formats=("json", "text"), default_format="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("witness", help="emit a cataloged witness coloring and check it")
    p.add_argument("name", choices=sorted(WITNESSES))
    p.add_argument("--k", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--i", type=int)
    p.add_argument("--set", help="claim set for mod_block (default s_m(m))")
    _add_common(p, formats=("json", "text"), default_format="text")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("chain", help="search for a prime chain with shifted-prime gaps")
    p.add_argument("--t", type=int, required=True, help="odd positive shift")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--strategy", choices=["dfs", "bfs"], default="dfs")
    _add_common(p, formats=("json", "text"), default_format="json")
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("bounds", help="registered bounds for a set, or the full registry")
    p.add_argument("--set")
    p.add_argument("--k", type=int)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--registry", action="store_true",
                   help="dump the whole formula registry as CSV")
    _add_common(p, formats=("json", "text"), default_format="text")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("sets", help="list the gap-set grammar")
    _add_common(p, formats=("json", "text"), default_format="text")
    p.set_defaults(func=cmd_sets)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "bounds" and not args.registry:
        if args.set is None or args.k is None:
            parser.error("bounds requires --set and --k (or --registry)")
    try:
        return args.func(args)
    except (GapSetError, ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
