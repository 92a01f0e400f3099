"""Command-line entry point: ``mpgsd gen|solve|exact|bench``."""
from __future__ import annotations

import argparse
import sys
import time

from .aco import AcoParams, solve
from .bench import ALGORITHMS, convergence_trace, normalized_error, run_class, stats_csv
from .construction import greedy_solve
from .exact import exact_optimum
from .graph import IntegrityError, InvalidInstanceError, objective
from .instances import (KINDS, InstanceFormatError, InstanceSpec, generate, read_instance,
                        size_classes, write_instance)

EXIT_USAGE = 2
EXIT_INTEGRITY = 3

# largest class run without --full-scale
DESK_MAX_SUPPLY = 10
DESK_MAX_DEMAND = 200


class UsageError(Exception):
    pass


def parse_classes(text: str | None, full_scale: bool):
    """Parse ``KIND:SxD`` items separated by commas.

    ``KIND`` may be ``tree``, ``general`` or ``all``; ``SxD`` may be ``all``
    for the whole grid.  Omitting the option means ``all:all``.
    """
    max_s = None if full_scale else DESK_MAX_SUPPLY
    max_d = None if full_scale else DESK_MAX_DEMAND
    items = (text or "all:all").split(",")
    out = []
    for item in items:
        item = item.strip()
        kind, sep, size = item.partition(":")
        if not sep:
            raise UsageError(f"class {item!r} is not of the form KIND:SxD")
        kinds = KINDS if kind == "all" else (kind,)
        if kinds[0] not in KINDS:
            raise UsageError(f"unknown kind {kind!r}")
        if size == "all":
            sizes = size_classes(max_s, max_d)
        else:
            try:
                s, d = (int(x) for x in size.lower().split("x"))
            except ValueError:
                raise UsageError(f"bad size {size!r}, expected SxD") from None
            if (max_s is not None and s > max_s) or (max_d is not None and d > max_d):
                raise UsageError(
                    f"class {s}x{d} exceeds the desk-scale limit; pass --full-scale")
            sizes = [(s, d)]
        for k in kinds:
            out.extend((k, s, d) for s, d in sizes)
    return out


def _params(args, correction=False):
    return AcoParams(ants=args.ants, iterations=args.iters, p=args.p, phi=args.phi,
                     q0=args.q0, seed=args.seed, use_correction=correction)


def cmd_gen(args):
    spec = InstanceSpec(args.supply, args.demand, args.kind, args.seed,
                        (args.value_min, args.value_max), args.extra_edges)
    write_instance(generate(spec), args.out)
    return 0


def cmd_solve(args):
    g = read_instance(args.input)
    params = _params(args, correction=args.algo == "aco-c")
    if args.algo == "greedy":
        found = objective(g, greedy_solve(g))
    else:
        found = solve(g, params).best_objective
    if g.optimum is None or g.optimum == 0:
        err = "n/a"
        if g.optimum is not None and found > 0:
            raise IntegrityError(f"found {found} exceeds optimum 0")
    else:
        err = f"{normalized_error(g.optimum, found):.4f}"
    opt = "unknown" if g.optimum is None else g.optimum
    print(f"found={found} optimum={opt} error={err}")
    if args.trace:
        if args.algo == "greedy":
            raise UsageError("--trace needs an ACO algorithm")
        trace = convergence_trace(g, params, runs=args.runs, seed_base=args.seed)
        with open(args.trace, "w", newline="\n") as fh:
            fh.write(trace.to_csv())
    return 0


def cmd_exact(args):
    g = read_instance(args.input)
    res = exact_optimum(g, budget=args.budget)
    if not res.decided:
        print(f"optimum=undecided nodes={res.nodes}")
        return 0
    if g.optimum is not None and res.optimum != g.optimum:
        print(f"optimum={res.optimum} embedded={g.optimum} nodes={res.nodes}")
        return EXIT_INTEGRITY
    print(f"optimum={res.optimum} nodes={res.nodes}")
    return 0


def cmd_bench(args):
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    for a in algos:
        if a not in ALGORITHMS:
            raise UsageError(f"unknown algorithm {a!r}")
    classes = parse_classes(args.classes, args.full_scale)
    params = AcoParams(ants=args.ants, iterations=args.iters, p=args.p, phi=args.phi,
                       q0=args.q0)
    rows = []
    for kind, s, d in classes:
        t0 = time.perf_counter()
        stats = run_class(InstanceSpec(s, d, kind), args.instances, algos, params,
                          seed_base=args.seed_base, workers=args.workers)
        for a in algos:
            rows.append((kind, args.seed_base, stats[a]))
        if args.verbose:
            summary = " ".join(f"{a}={stats[a].avg:.2f}/{stats[a].hits}" for a in algos)
            print(f"{kind} {s}x{d}: {summary} ({time.perf_counter() - t0:.1f}s)",
                  file=sys.stderr)
    text = stats_csv(rows)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
    return 0


def _add_aco_flags(p):
    p.add_argument("--ants", type=int, default=10)
    p.add_argument("--iters", type=int, default=150)
    p.add_argument("--p", type=float, default=0.1)
    p.add_argument("--phi", type=float, default=0.9)
    p.add_argument("--q0", type=float, default=0.1)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="mpgsd",
        description="Maximum partitioning of graphs with supply and demand.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate an instance with a planted optimum")
    p.add_argument("--supply", type=int, required=True)
    p.add_argument("--demand", type=int, required=True)
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--value-min", type=int, default=1)
    p.add_argument("--value-max", type=int, default=10)
    p.add_argument("--extra-edges", type=float, default=0.3)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="solve one instance file")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--algo", choices=ALGORITHMS, required=True)
    _add_aco_flags(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trace", help="write iteration,min,avg,max error CSV (percent)")
    p.add_argument("--runs", type=int, default=1,
                   help="seeded runs aggregated into --trace (seeds seed..seed+runs-1)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("exact", help="exact optimum by branch and bound")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--budget", type=int, default=2_000_000)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser(
        "bench", help="size-class sweep; stdev is the population standard deviation")
    p.add_argument("--classes", help="KIND:SxD[,KIND:SxD...]; default all:all")
    p.add_argument("--instances", type=int, default=40)
    p.add_argument("--algos", default="greedy,aco,aco-c")
    p.add_argument("--seed-base", type=int, default=0)
    p.add_argument("--out", required=True, help="CSV path, or - for stdout")
    p.add_argument("--full-scale", action="store_true",
                   help=f"allow classes beyond {DESK_MAX_SUPPLY}x{DESK_MAX_DEMAND}")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("-v", "--verbose", action="store_true")
    _add_aco_flags(p)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        return args.func(args)
    except IntegrityError as exc:
        print(f"integrity error: {exc}", file=sys.stderr)
        return EXIT_INTEGRITY
    except (UsageError, InstanceFormatError, InvalidInstanceError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
