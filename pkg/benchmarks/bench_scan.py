"""Compare the compiled and pure-Python scan kernels.

Times find_minimal_windows on synthetic sequences for a few episode
shapes and sequence lengths, running each kernel directly. Run from
the repository root:

    python3 benchmarks/bench_scan.py [--lengths 10000,50000,200000]
"""

import argparse
import random
import time

from epimine import _scan_py
from epimine.episode import canonicalize, transitive_closure
from epimine.scanner import EventSequence, _kernel_tables

try:
    from epimine import _scan_cy
except ImportError:
    _scan_cy = None


def ep(labels, edges=()):
    return transitive_closure(canonicalize(labels, edges))


SHAPES = {
    "serial-3": ep("abc", [(0, 1), (1, 2)]),
    "parallel-3": ep("abc"),
    "diamond-4": ep("abcd", [(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]),
    "chain-2x2": ep("aabb", [(0, 1), (2, 3)]),
}


def bench_kernel(kernel, episode, sequence, window, repeats=3):
    tables = _kernel_tables(episode, sequence)
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = kernel.scan(episode.node_count, *tables, window, False)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--lengths",
        default="10000,50000,200000",
        help="comma-separated sequence lengths",
    )
    parser.add_argument("--window", type=int, default=12)
    parser.add_argument("--alphabet", default="abcdefgh")
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    lengths = [int(x) for x in args.lengths.split(",")]
    if _scan_cy is None:
        print("compiled kernel unavailable; timing the pure kernel only")

    header = f"{'shape':<12} {'L':>8} {'python':>10}"
    if _scan_cy is not None:
        header += f" {'compiled':>10} {'speedup':>8}"
    print(header)
    for n in lengths:
        toks = [rng.choice(args.alphabet) for _ in range(n)]
        seq = EventSequence(toks)
        for name, shape in SHAPES.items():
            t_py, r_py = bench_kernel(_scan_py, shape, seq, args.window)
            line = f"{name:<12} {n:>8} {t_py * 1e3:>9.1f}ms"
            if _scan_cy is not None:
                t_cy, r_cy = bench_kernel(_scan_cy, shape, seq, args.window)
                assert list(r_py[0]) == list(r_cy[0]), "kernels disagree"
                assert list(r_py[1]) == list(r_cy[1]), "kernels disagree"
                line += f" {t_cy * 1e3:>9.1f}ms {t_py / t_cy:>7.1f}x"
            print(line)


if __name__ == "__main__":
    main()
