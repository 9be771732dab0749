"""Command-line front end.

Machine-readable results go to stdout as one JSON object per line
(``json.dumps(..., sort_keys=True)``, so identical runs are byte-identical
except for the ``wall_time_ms`` field); human-oriented notes go to stderr.
Exit codes: 0 success, 1 verification mismatch, 2 usage/input errors, 3
refusal because an instance exceeds the exact-enumeration cap.

The ``DENSEK_THREADS`` environment variable caps the number of worker
threads the grid analyzer may use (default 1); results do not depend on it.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from dataclasses import replace

from . import damks, exact, fkp, ratio, reduction
from .graph import (
    Graph,
    GraphParseError,
    gnp_graph,
    induced_stats,
    parse_edge_list,
    serialize_edge_list,
)

USAGE_ERROR = 2
CAP_ERROR = 3


def _emit(record: dict) -> None:
    sys.stdout.write(json.dumps(record, sort_keys=True) + "\n")


def _note(message: str) -> None:
    sys.stderr.write(message + "\n")


def _load_graph(path: str) -> Graph:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_edge_list(handle.read())


def _result_record(
    rtype: str, problem: str, algorithm: str, k: int, result, params: dict,
    wall_ms: float,
) -> dict:
    return {
        "type": rtype,
        "problem": problem,
        "algorithm": algorithm,
        "k": k,
        "vertices": list(result.vertices),
        "edge_count": result.edge_count,
        "average_degree": result.average_degree,
        "params": params,
        "wall_time_ms": wall_ms,
    }


def _workers_from_env() -> int:
    raw = os.environ.get("DENSEK_THREADS")
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"DENSEK_THREADS must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"DENSEK_THREADS must be >= 1, got {value}")
    return value


def _cmd_solve(args: argparse.Namespace) -> int:
    G = _load_graph(args.graph)
    k = args.k
    params = fkp.FkpParams.for_graph(G, seed=args.seed)
    shared = {"seed": args.seed, "reps": args.reps}
    single = {
        "a1": lambda: fkp.a1_matching(G, k),
        "a2": lambda: fkp.a2_top_degrees(G, k),
        "a3": lambda: fkp.a3_neighborhoods(G, k),
        "a4": lambda: fkp.a4_edge_dense(G, k),
        "a5": lambda: fkp.a5_walks(G, k, params),
        "a6": lambda: damks.a6_damks(G, k, reps=args.reps, seed=args.seed),
    }
    if args.algo == "all":
        results = []
        for name in fkp.ALGO_NAMES:
            if name == "a2" and k < 2:
                _note(f"skipping a2: needs k >= 2, got k={k}")
                continue
            start = time.perf_counter()
            res = single[name]()
            wall = (time.perf_counter() - start) * 1000.0
            results.append(res)
            _emit(_result_record("run", "dks", name, k, res, shared, wall))
        start = time.perf_counter()
        best = fkp.combined_dks(G, k, params, a6_reps=args.reps)
        wall = (time.perf_counter() - start) * 1000.0
        _emit(_result_record("best", "dks", "combined", k, best, shared, wall))
    else:
        start = time.perf_counter()
        res = single[args.algo]()
        wall = (time.perf_counter() - start) * 1000.0
        _emit(_result_record("run", "dks", args.algo, k, res, shared, wall))
        _emit(_result_record("best", "dks", args.algo, k, res, shared, wall))
    return 0


_PROBLEM_KINDS = {
    "dks": exact.ProblemKind.EXACTLY_K,
    "dalks": exact.ProblemKind.AT_LEAST_K,
    "damks": exact.ProblemKind.AT_MOST_K,
}


def _cmd_exact(args: argparse.Namespace) -> int:
    G = _load_graph(args.graph)
    start = time.perf_counter()
    res = exact.exact_solve(G, args.k, _PROBLEM_KINDS[args.problem], cap=args.cap)
    wall = (time.perf_counter() - start) * 1000.0
    _emit(
        _result_record(
            "run", args.problem, "exact", args.k, res, {"cap": args.cap}, wall
        )
    )
    return 0


def _cmd_analyze(args: argparse.Namespace) -> int:
    if args.set in ratio.RATIO_SETS:
        algos = ratio.RATIO_SETS[args.set]
    elif args.set.startswith("custom:"):
        algos = frozenset(
            name for name in args.set[len("custom:"):].split(",") if name
        )
    else:
        raise ValueError(
            f"unknown set {args.set!r}; use fkp5, a6combo or custom:a1,a2,..."
        )
    workers = _workers_from_env()
    start = time.perf_counter()
    grid = ratio.grid_max_min(args.delta, algos, workers=workers)
    wall = (time.perf_counter() - start) * 1000.0
    record = {
        "type": "analysis",
        "set": args.set,
        "delta": grid.delta,
        "algorithms": list(grid.algorithms),
        "max_exponent": grid.max_exponent,
        "argmax": {"g": grid.argmax.g, "K": grid.argmax.K, "d": grid.argmax.d},
        "error_bound": ratio.error_bound(grid.delta),
        "evaluations": grid.evaluations,
        "workers": workers,
        "wall_time_ms": wall,
    }
    _emit(record)
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(
                [
                    "set", "delta", "algorithms", "max_exponent",
                    "g", "K", "d", "error_bound", "evaluations",
                ]
            )
            writer.writerow(
                [
                    args.set, grid.delta, " ".join(grid.algorithms),
                    grid.max_exponent, grid.argmax.g, grid.argmax.K,
                    grid.argmax.d, ratio.error_bound(grid.delta),
                    grid.evaluations,
                ]
            )
        _note(f"wrote {args.csv}")
    return 0


def _cmd_reduce(args: argparse.Namespace) -> int:
    G = _load_graph(args.graph)
    padded, k_prime = reduction.dalks_gadget(G, args.k)
    sys.stdout.write(serialize_edge_list(padded))
    sys.stdout.write(f"# at-least-k target: k' = {k_prime}\n")
    _note(
        f"added a {3 * G.n}-clique: n'={padded.n}, m'={padded.m}, k'={k_prime}"
    )
    return 0


def _cmd_gen(args: argparse.Namespace) -> int:
    if args.n <= 0:
        raise ValueError(f"need a positive vertex count, got {args.n}")
    G = gnp_graph(args.n, args.p, seed=args.seed)
    sys.stdout.write(serialize_edge_list(G))
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    G = _load_graph(args.graph)
    checked = 0
    mismatches = 0
    with open(args.records, "r", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError:
                raise ValueError(f"{args.records}: line {lineno} is not JSON") from None
            if record.get("type") not in ("run", "best") or "vertices" not in record:
                continue
            checked += 1
            actual = induced_stats(G, record["vertices"])
            ok = (
                actual.edge_count == record.get("edge_count")
                and abs(actual.average_degree - record.get("average_degree", -1.0))
                <= 1e-9
            )
            if not ok:
                mismatches += 1
                _note(
                    f"line {lineno}: recorded {record.get('edge_count')} edges / "
                    f"avg {record.get('average_degree')}, recomputed "
                    f"{actual.edge_count} / {actual.average_degree}"
                )
    _emit({"type": "verify", "checked": checked, "mismatches": mismatches})
    return 1 if mismatches else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="densek",
        description="Dense-k-subgraph heuristics, exact baselines and the "
        "approximation-ratio grid analyzer.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run heuristics on an exactly-k instance")
    p.add_argument("graph", help="edge-list file")
    p.add_argument("-k", type=int, required=True, help="subgraph size")
    p.add_argument(
        "--algo", default="all", choices=[*fkp.ALGO_NAMES, "all"],
        help="which algorithm to run (default: all)",
    )
    p.add_argument("--seed", type=int, default=0, help="base random seed")
    p.add_argument(
        "--reps", type=int, default=None,
        help="rounding repetitions for a6 (default: 16n)",
    )
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("exact", help="exhaustive baseline solver")
    p.add_argument("graph", help="edge-list file")
    p.add_argument("-k", type=int, required=True)
    p.add_argument(
        "--problem", default="dks", choices=sorted(_PROBLEM_KINDS),
        help="size constraint: exactly / at-least / at-most k",
    )
    p.add_argument(
        "--cap", type=int, default=exact.DEFAULT_ENUMERATION_CAP,
        help="refuse instances with more vertices than this",
    )
    p.set_defaults(func=_cmd_exact)

    p = sub.add_parser("analyze", help="worst-case ratio-exponent lattice sweep")
    p.add_argument("--delta", type=float, required=True, help="lattice step")
    p.add_argument(
        "--set", default="fkp5",
        help="fkp5 | a6combo | custom:a1,a3,... (default: fkp5)",
    )
    p.add_argument("--csv", default=None, help="also write a one-row CSV summary")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser(
        "reduce", help="pad with a 3n-clique: exactly-k becomes at-least-k'"
    )
    p.add_argument("graph", help="edge-list file")
    p.add_argument("-k", type=int, required=True)
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("gen", help="sample a random graph")
    p.add_argument("--model", default="gnp", choices=["gnp"])
    p.add_argument("-n", type=int, required=True, help="vertex count")
    p.add_argument("-p", type=float, required=True, help="edge probability")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("verify", help="recheck recorded results against a graph")
    p.add_argument("graph", help="edge-list file")
    p.add_argument("records", help="JSON-lines file written by solve/exact")
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except exact.EnumerationCapError as err:
        _note(f"error: {err}")
        return CAP_ERROR
    except (GraphParseError, ValueError, OSError) as err:
        _note(f"error: {err}")
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
