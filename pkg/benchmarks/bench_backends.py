"""Compiled kernel vs pure-Python fallback on the same inputs.

    python benchmarks/bench_backends.py [--sizes 16,24,32] [--workers 1,4] [--reps 3]

Prints one semicolon-separated row per (size, backend, workers) with the
mean phase times, and the compiled/python speedup per size.  Both backends
must produce identical stores; the script aborts otherwise.
"""

from __future__ import annotations

import argparse
import statistics
import sys

import numpy as np

from tmtree import GridGraph3, ScalarField
from tmtree.synthetic import random_smooth_field
from tmtree.tmt import BACKENDS, run_phases


def _ints(text):
    return [int(x) for x in text.split(",")]


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", type=_ints, default=[16, 24, 32], help="linear grid extents")
    p.add_argument("--workers", type=_ints, default=[1, 4])
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)

    backends = sorted(BACKENDS)
    print("size;vertices;backend;workers;elapsed_total;elapsed_merge;elapsed_repair;cas_per_edge")
    for size in args.sizes:
        g = GridGraph3(size, size, size)
        f = ScalarField(random_smooth_field(g.shape, np.random.default_rng(args.seed)))
        means, stores = {}, {}
        for name in backends:
            for w in args.workers:
                runs = [run_phases(f, g, w, name) for _ in range(args.reps)]
                stores[name, w] = runs[0][0]
                stats = [s for _, s in runs]
                total = statistics.fmean(s.elapsed_total for s in stats)
                means[name, w] = total
                print(f"{size};{g.n};{name};{w};{total:.6f};"
                      f"{statistics.fmean(s.elapsed_merge for s in stats):.6f};"
                      f"{statistics.fmean(s.elapsed_repair for s in stats):.6f};"
                      f"{stats[0].cas_attempts / max(g.edge_count, 1):.3f}")
        ref = next(iter(stores.values()))
        if any(s != ref for s in stores.values()):
            print(f"size {size}: backends disagree", file=sys.stderr)
            return 1
        if "compiled" in BACKENDS:
            for w in args.workers:
                ratio = means["python", w] / means["compiled", w]
                print(f"# size {size}, workers {w}: compiled is {ratio:.0f}x faster", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
