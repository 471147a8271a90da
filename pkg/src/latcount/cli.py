"""Command-line front end.

Exit status: 0 success, 1 invalid input or resource cap, 2 internal
structural violation, 3 ``--check`` mismatch.  In text mode only the count
(and, with ``--trace``, the scaled coefficients and reduction steps) goes to
standard output; everything else goes to standard error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from pathlib import Path
from typing import Dict, List, Optional

from . import oracle
from ._parallel import default_workers
from .counter import Instance, count
from .errors import InputError, ResourceLimitError, StructuralViolation
from .files import InstanceFile, parse_instance
from .matching import (Hypergraph, adjacency_matrix, count_b_matchings, count_perfect_matchings,
                       count_perfect_matchings_uniform, make_hypergraph)
from .partite import count_auto, count_partite, find_stable_set, verify_stable_set
from .report import CountReport

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL, EXIT_MISMATCH = 0, 1, 2, 3

# count --auto switches to the partite path from this stable-set size on
AUTO_MIN_STABLE = 2


class UsageError(InputError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _note(msg: str):
    print(msg, file=sys.stderr)


def _as_instance(parsed: InstanceFile) -> Instance:
    return adjacency_matrix(parsed.value) if parsed.is_hypergraph else parsed.value


def _stable_arg(text: str) -> List[int]:
    try:
        return [int(tok) - 1 for tok in text.replace(" ", "").split(",") if tok]
    except ValueError:
        raise UsageError(f"--stable-set expects comma-separated row indices, got {text!r}") from None


def _run_oracles(parsed: InstanceFile, command: str) -> Dict[str, int]:
    """Oracle counts for the instance; caps turn a run into a skip, not a failure."""
    inst = _as_instance(parsed)
    runs = [("dp", lambda: oracle.count_dp(inst)), ("brute", lambda: oracle.count_bruteforce(inst))]
    if command == "match":
        H = parsed.value
        runs.append(("matching-brute", lambda: oracle.enumerate_matchings_bruteforce(
            make_hypergraph(H.vertex_count, H.edges))))
    checks = {}
    for name, fn in runs:
        try:
            checks[name] = fn().count
        except ResourceLimitError as exc:
            _note(f"check: {name} oracle skipped ({exc})")
    return checks


def _cmd_count(args, parsed):
    inst = _as_instance(parsed)
    if args.auto:
        return count_auto(inst, args.threads, AUTO_MIN_STABLE)
    return count(inst, args.threads)


def _cmd_partite(args, parsed):
    inst = _as_instance(parsed)
    if args.stable_set is not None:
        S = verify_stable_set(inst, _stable_arg(args.stable_set))
    elif not args.auto and parsed.stable_set is not None:
        S = verify_stable_set(inst, parsed.stable_set)
    elif not args.auto and parsed.is_hypergraph and parsed.value.partition:
        S = verify_stable_set(inst, max(parsed.value.partition, key=len))
    else:
        S = find_stable_set(inst)
    return count_partite(inst, S, args.threads)


def _need_hypergraph(parsed, command) -> Hypergraph:
    if not parsed.is_hypergraph:
        raise UsageError(f"'{command}' needs a hypergraph instance ('n'/'edges' fields)")
    return parsed.value


def _cmd_match(args, parsed):
    H = _need_hypergraph(parsed, "match")
    if H.b is not None and any(v != 1 for v in H.b):
        raise UsageError("instance has demands b other than 1; use 'bmatch'")
    H = make_hypergraph(H.vertex_count, H.edges, None, H.partition)
    if args.uniform is not None:
        return count_perfect_matchings_uniform(H, args.uniform, args.threads)
    return count_perfect_matchings(H, args.threads)


def _cmd_bmatch(args, parsed):
    H = _need_hypergraph(parsed, "bmatch")
    if H.b is None:
        H = make_hypergraph(H.vertex_count, H.edges, [1] * H.vertex_count, H.partition)
    return count_b_matchings(H, args.threads)


def _cmd_oracle(args, parsed):
    if args.brute and parsed.is_hypergraph and parsed.value.b is None:
        return oracle.enumerate_matchings_bruteforce(parsed.value)
    inst = _as_instance(parsed)
    return oracle.count_bruteforce(inst) if args.brute else oracle.count_dp(inst)


COMMANDS = {
    "count": _cmd_count,
    "partite": _cmd_partite,
    "match": _cmd_match,
    "bmatch": _cmd_bmatch,
    "oracle": _cmd_oracle,
}


def _emit(rep: CountReport, args):
    if args.format == "json":
        data = rep.to_dict()
        if not args.trace:
            data["coefficients"] = None
            data["trace"] = []
        print(json.dumps(data, sort_keys=True))
        return
    print(rep.count)
    if args.trace and rep.coefficients is not None:
        print("scale " + str(rep.scale))
        print("coefficients " + " ".join(str(c) for c in rep.coefficients))
        for i, v in rep.trace:
            print(f"subtract {v} at multiples of {i}")
        print(f"constant {rep.count * rep.scale} / {rep.scale} = {rep.count}")


def _single(args) -> int:
    parsed = parse_instance(args.input)
    rep = COMMANDS[args.command](args, parsed)
    status = EXIT_OK
    if args.check:
        checks = _run_oracles(parsed, args.command)
        rep.checks = checks
        bad = {k: v for k, v in checks.items() if v != rep.count}
        if bad:
            _note(f"check mismatch: {rep.method} gave {rep.count}, oracles gave {checks}")
            status = EXIT_MISMATCH
    _emit(rep, args)
    return status


def _bench_methods(parsed: InstanceFile):
    inst = _as_instance(parsed)
    out = [("plain", lambda w: count(inst, w)),
           ("partite", lambda w: count_partite(inst, None, w))]
    if parsed.is_hypergraph and (parsed.value.b is None or all(v == 1 for v in parsed.value.b)):
        H = make_hypergraph(parsed.value.vertex_count, parsed.value.edges)
        out.append(("matching", lambda w: count_perfect_matchings(H, w)))
        if H.is_uniform and H.edges:
            ell = len(H.edges[0])
            out.append(("matching-uniform", lambda w: count_perfect_matchings_uniform(H, ell, w)))
    out.append(("dp", lambda w: oracle.count_dp(inst)))
    out.append(("brute", lambda w: oracle.count_bruteforce(inst)))
    return inst, out


def _bench(args) -> int:
    root = Path(args.input)
    files = sorted(root.glob("*.json")) if root.is_dir() else [root]
    if not files:
        raise UsageError(f"no *.json instances under {root}")
    rows = []
    status = EXIT_OK
    for path in files:
        parsed = parse_instance(path)
        inst, methods = _bench_methods(parsed)
        counts = set()
        for name, fn in methods:
            best, rep = None, None
            try:
                for _ in range(args.repeat):
                    t0 = time.perf_counter()
                    rep = fn(args.threads)
                    dt = time.perf_counter() - t0
                    best = dt if best is None else min(best, dt)
            except (ResourceLimitError, InputError) as exc:
                _note(f"{path.name}: {name} skipped ({exc})")
                rows.append({"instance": path.stem, "method": name, "count": None,
                             "n": inst.n, "m": inst.m, "N": inst.N, "d": inst.d,
                             "sweep_terms": None, "seconds": None})
                continue
            counts.add(rep.count)
            rows.append({"instance": path.stem, "method": name, "count": rep.count,
                         "n": inst.n, "m": inst.m, "N": inst.N, "d": inst.d,
                         "sweep_terms": rep.sweep_terms, "seconds": best})
        if len(counts) > 1:
            _note(f"{path.name}: methods disagree: {sorted(counts)}")
            if args.check:
                status = EXIT_MISMATCH
    if args.format == "json":
        print(json.dumps(rows))
    else:
        fields = ["instance", "method", "count", "n", "m", "N", "d", "sweep_terms", "seconds"]
        w = csv.DictWriter(sys.stdout, fieldnames=fields, delimiter="\t", lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: ("" if r[k] is None else (f"{r[k]:.6f}" if k == "seconds" else r[k]))
                        for k in fields})
    if args.plot:
        from .plotting import plot_bench
        _note(f"figure written to {plot_bench(rows, args.plot)}")
    return status


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", default="-",
                        help="instance JSON file ('-' for standard input); a directory for bench")
    common.add_argument("--check", action="store_true",
                        help="also run the reference oracles (when within caps) and fail on mismatch")
    common.add_argument("--threads", type=int, default=None,
                        help="worker processes (default: $LATCOUNT_THREADS or 1)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--trace", action="store_true",
                        help="emit the scaled coefficients and the reduction steps")

    p = _Parser(prog="latcount", description="Exact integer-point counting for {x >= 0 : Ax = y}.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("count", parents=[common], help="group-ring sweep over {0..N-1}^n")
    c.add_argument("--auto", action="store_true",
                   help=f"use the partite path when a stable set of size >= {AUTO_MIN_STABLE} exists")

    pt = sub.add_parser("partite", parents=[common], help="stable-set factorized sweep")
    g = pt.add_mutually_exclusive_group()
    g.add_argument("--stable-set", help="comma-separated 1-based row indices")
    g.add_argument("--auto", action="store_true", help="greedy stable set")

    mt = sub.add_parser("match", parents=[common], help="perfect matchings of a hypergraph")
    mt.add_argument("--uniform", type=int, metavar="L", help="use the L-uniform binomial formula")

    sub.add_parser("bmatch", parents=[common], help="perfect b-matchings of a hypergraph")

    orc = sub.add_parser("oracle", parents=[common], help="reference counters")
    g = orc.add_mutually_exclusive_group()
    g.add_argument("--dp", action="store_true", help="exponential-space DP table (default)")
    g.add_argument("--brute", action="store_true", help="exhaustive enumeration")

    b = sub.add_parser("bench", parents=[common], help="timing table over a directory of instances")
    b.add_argument("--repeat", type=int, default=1, help="best-of-R timing")
    b.add_argument("--plot", metavar="PNG", help="also render a runtime figure to this file")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.threads is None:
        args.threads = default_workers()
    if args.threads < 1:
        _note("latcount: --threads must be at least 1")
        return EXIT_INPUT
    try:
        if args.command == "bench":
            return _bench(args)
        return _single(args)
    except StructuralViolation as exc:
        _note(f"latcount: internal structural violation: {exc}")
        return EXIT_INTERNAL
    except (InputError, ResourceLimitError) as exc:
        _note(f"latcount: {exc}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
