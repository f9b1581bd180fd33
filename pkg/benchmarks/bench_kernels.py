"""Throughput of the chain kernels: compiled extension vs pure Python.

    python benchmarks/bench_kernels.py [--events N] [--repeat R]
"""

import argparse
import timeit

from tautrig import kernels
from tautrig.events import generate_event, seed_candidates
from tautrig.spatial import N_CELLS, N_PAIR_CELLS


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--events", type=int, default=200)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    inputs = [[t.pt for t in seed_candidates(generate_event(s, 0))] for s in range(args.events)]
    print(f"{args.events} events x 144 candidates, best of {args.repeat}")
    print(f"{'backend':<10} {'kernel':<18} {'us/event':>10} {'speedup':>8}")
    baseline = {}
    for name in ("python", "compiled"):
        if name not in kernels.BACKENDS:
            print(f"{name:<10} (not built)")
            continue
        k = kernels.get(name)
        for label, fn, cells in (
            ("chain_select", k.chain_select, N_CELLS),
            ("pair_chain_select", k.pair_chain_select, N_PAIR_CELLS),
        ):
            t = min(
                timeit.repeat(lambda: [fn(p, cells) for p in inputs], number=1, repeat=args.repeat)
            )
            us = 1e6 * t / args.events
            baseline.setdefault(label, us)
            print(f"{name:<10} {label:<18} {us:>10.1f} {baseline[label] / us:>7.1f}x")


if __name__ == "__main__":
    main()
