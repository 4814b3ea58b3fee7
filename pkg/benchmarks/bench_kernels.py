#!/usr/bin/env python3
"""Benchmark the compiled chord-enumeration kernel against the pure one.

Run after an editable install:

    python3 benchmarks/bench_kernels.py [--kmax 400]

Both kernels receive identical integerized cone data; results are checked
for equality before any timing is reported.
"""

import argparse
import time

from anosovlab.chords import _kernels_py, cone_spec, _integerized_edges
from anosovlab.toral import eigen_data, parse_matrix

try:
    from anosovlab.chords import _speedups
except ImportError:
    _speedups = None


def bench(kernel, coeffs, D, kmax, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        counts, _ = kernel.enumerate_box(coeffs, D, 1, 0, 0, kmax, False)
        best = min(best, time.perf_counter() - t0)
    return best, counts[-1]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--kmax", type=int, default=400)
    args = ap.parse_args()

    print("%-12s %-5s %-8s %-12s %-12s %-8s" % (
        "matrix", "sign", "kmax", "python[s]", "cython[s]", "speedup"))
    for mat in ("2 1 1 1", "3 1 2 1", "5 2 2 1"):
        H = eigen_data(parse_matrix(mat))
        for sign in (+1, -1):
            coeffs = _integerized_edges(cone_spec(H, sign))
            t_py, ring_py = bench(_kernels_py, coeffs, H.D, args.kmax)
            if _speedups is None:
                print("%-12s %-+5d %-8d %-12.3f %-12s %-8s" % (
                    mat, sign, args.kmax, t_py, "n/a", "n/a"))
                continue
            t_cy, ring_cy = bench(_speedups, coeffs, H.D, args.kmax)
            assert ring_py == ring_cy, "kernels disagree"
            print("%-12s %-+5d %-8d %-12.3f %-12.4f %-8s" % (
                mat, sign, args.kmax, t_py, t_cy, "%.1fx" % (t_py / t_cy)))


if __name__ == "__main__":
    main()
