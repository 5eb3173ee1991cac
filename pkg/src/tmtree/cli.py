"""Command-line entry point.

    tmtree tree    --input vol.raw --dims 64,64,64 --dtype f32 [--negate] --out-store t.txt
    tmtree diagram --input vol.raw --dims 64,64,64 --dtype f32 --out-diagram d.txt
    tmtree verify  --input vol.raw --dims 16,16,16 --dtype f64
    tmtree bench   --input vol.raw --dims 128,128,128 --threads 1,2,4,8 --reps 5 --timing t.csv

Exit status: 0 success, 1 data or contract error, 2 usage error.
"""

from __future__ import annotations

import argparse
import statistics
import sys
from pathlib import Path

import numpy as np

from . import analysis, oracle
from . import io as tio
from .core import ContractError, ScalarField
from .graph import ExplicitGraph
from .synthetic import erdos_renyi
from .tmt import DEFAULT_BACKEND, BACKENDS, run_phases

EXIT_OK, EXIT_DATA, EXIT_USAGE = 0, 1, 2
DEFAULT_VERIFY_LIMIT = 1 << 22


def _dims(text: str) -> tuple[int, int, int]:
    try:
        parts = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad dims {text!r}; expected NX,NY,NZ") from None
    if len(parts) != 3 or min(parts) < 0:
        raise argparse.ArgumentTypeError(f"bad dims {text!r}; expected three non-negative integers")
    return parts


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _int_list(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad list {text!r}") from None
    if not values or min(values) < 1:
        raise argparse.ArgumentTypeError("thread list must be non-empty and positive")
    return values


def _add_volume_args(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--input", type=Path, required=required, help="raw volume file")
    p.add_argument("--dims", type=_dims, required=required, metavar="NX,NY,NZ")
    p.add_argument("--dtype", choices=sorted(tio.DTYPES), default="f32")
    p.add_argument("--negate", action="store_true", help="use -f (split tree)")
    p.add_argument("--downsample", type=_positive, default=1, metavar="K")
    p.add_argument("--backend", choices=sorted(BACKENDS), default=DEFAULT_BACKEND)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tmtree", description="Lock-free triplet merge trees of scalar volumes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tree", help="compute the triplet merge tree")
    _add_volume_args(p)
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--out-store", type=Path)
    p.add_argument("--out-diagram", type=Path)

    p = sub.add_parser("diagram", help="compute the 0-dimensional persistence diagram")
    _add_volume_args(p)
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--out-diagram", type=Path, help="default: stdout")
    p.add_argument("--out-store", type=Path)
    p.add_argument("--min-persistence", type=float, default=None, metavar="EPS")

    p = sub.add_parser("verify", help="compare the parallel result with the serial oracle")
    _add_volume_args(p, required=False)
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--max-voxels", type=int, default=DEFAULT_VERIFY_LIMIT)
    p.add_argument("--random-seed", type=int, help="use a random f64 field on --dims instead of --input")
    p.add_argument("--graph", type=str, metavar="N,P", help="with --random-seed: Erdos-Renyi graph instead of a grid")
    p.add_argument("--corrupt-vertex", type=int, help=argparse.SUPPRESS)

    p = sub.add_parser("bench", help="time the phases over a list of thread counts")
    _add_volume_args(p)
    p.add_argument("--threads", type=_int_list, default=[1], metavar="LIST")
    p.add_argument("--reps", type=_positive, default=5)
    p.add_argument("--timing", type=Path, help="semicolon-separated timing table (default: stdout)")
    return parser


def _load(args) -> tuple[ScalarField, object]:
    if args.input is None or args.dims is None:
        raise tio.UsageError("--input and --dims are required")
    spec = tio.VolumeSpec(args.input, *args.dims, dtype=args.dtype)
    field, g = tio.load_volume(spec, negate=args.negate)
    return tio.downsample_volume(field, g, args.downsample)


def _compute(args, field, g):
    store, stats = run_phases(field, g, args.workers, args.backend)
    return store, stats


def cmd_tree(args) -> int:
    field, g = _load(args)
    store, stats = _compute(args, field, g)
    diagram = analysis.diagram_from_store(store, field) if args.out_diagram else None
    if args.out_store:
        tio.write_store(args.out_store, store)
    if diagram is not None:
        tio.write_diagram(args.out_diagram, diagram)
    print(f"vertices: {store.n}")
    print(f"branches: {analysis.branch_count(store)}")
    print(f"elapsed_total: {stats.elapsed_total:.6f}")
    print(f"elapsed_merge: {stats.elapsed_merge:.6f}")
    print(f"elapsed_repair: {stats.elapsed_repair:.6f}")
    return EXIT_OK


def cmd_diagram(args) -> int:
    field, g = _load(args)
    store, _ = _compute(args, field, g)
    diagram = analysis.diagram_from_store(store, field)
    if args.min_persistence is not None:
        diagram = analysis.filter_by_persistence(diagram, args.min_persistence)
    if args.out_store:
        tio.write_store(args.out_store, store)
    if args.out_diagram:
        tio.write_diagram(args.out_diagram, diagram)
    else:
        sys.stdout.write(analysis.diagram_to_text(diagram))
    return EXIT_OK


def _verify_input(args):
    if args.random_seed is None:
        return _load(args)
    rng = np.random.default_rng(args.random_seed)
    if args.graph:
        n_text, p_text = args.graph.split(",")
        g = erdos_renyi(int(n_text), float(p_text), rng)
    else:
        if args.dims is None:
            raise tio.UsageError("--random-seed needs --dims or --graph")
        from .graph import GridGraph3

        g = GridGraph3(*args.dims)
    values = rng.random(g.n)
    if args.negate:
        values = -values
    return ScalarField(values), g


def cmd_verify(args) -> int:
    field, g = _verify_input(args)
    if field.n > args.max_voxels:
        raise tio.UsageError(f"{field.n} vertices exceed --max-voxels={args.max_voxels}")
    store, _ = _compute(args, field, g)
    if args.corrupt_vertex is not None:
        u = args.corrupt_vertex
        s, v = store[u]
        store.cells[u] = ((s ^ 1) << 32) | v
    reference = oracle.serial_merge_tree(field, g)
    bad = store.first_difference(reference)
    if bad is not None:
        print(f"MISMATCH at vertex {bad}: parallel {store.triplet(bad)} != oracle {reference.triplet(bad)}", file=sys.stderr)
        return EXIT_DATA
    d_par = analysis.diagram_from_store(store, field)
    d_ref = analysis.diagram_from_store(reference, field)
    if d_par != d_ref:
        print("MISMATCH in persistence diagrams", file=sys.stderr)
        return EXIT_DATA
    kind = "graph" if isinstance(g, ExplicitGraph) else "grid"
    print(f"OK: {field.n} vertices ({kind}), {analysis.branch_count(store)} branches, stores and diagrams identical")
    return EXIT_OK


def bench_rows(field, g, threads, reps, backend=None):
    """Average phase times per thread count; ``(rows, per_run_totals)``."""
    rows, totals = [], {}
    for t in threads:
        # untimed warm-up: thread pool start-up and first-touch page faults
        run_phases(field, g, t, backend)
        runs =[run_phases(field, g, t, backend)[1] for _ in range(reps)]
        totals[t] = [r.elapsed_total for r in runs]
        rows.append((
            field.n,
            t,
            statistics.fmean(r.elapsed_total for r in runs),
            statistics.fmean(r.elapsed_merge for r in runs),
            statistics.fmean(r.elapsed_repair for r in runs),
        ))
    return rows, totals


def cmd_bench(args) -> int:
    field, g = _load(args)
    rows, totals = bench_rows(field, g, args.threads, args.reps, args.backend)
    if args.timing:
        tio.write_timing(args.timing, rows)
    else:
        sys.stdout.write(tio.timing_text(rows))
    for t, runs in totals.items():
        mean = statistics.fmean(runs)
        spread = (max(runs) - min(runs)) / mean * 100 if mean > 0 else 0.0
        print(f"threads={t}: mean {mean:.6f}s, max deviation {spread:.1f}% over {len(runs)} runs", file=sys.stderr)
    return EXIT_OK


COMMANDS = {"tree": cmd_tree, "diagram": cmd_diagram, "verify": cmd_verify, "bench": cmd_bench}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except tio.UsageError as exc:
        print(f"tmtree: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ContractError, OSError, ValueError) as exc:
        print(f"tmtree: error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
