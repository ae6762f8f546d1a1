"""Benchmark: compiled search kernel vs the pure-Python fallback.

The effective-class scan is the only hot loop in the package; everything
else is small exact linear algebra.  This script times the identical box
search through both backends and verifies they return the same result.

Usage:
    python benchmarks/bench_search.py [--full]

Without --full the pure backend skips the largest case (the 5^9-candidate
scan on the triple CM square lattice), which takes minutes in pure Python;
the compiled kernel runs it in about a second.
"""

import argparse
import time

import lefdefect.effectivity as eff
from lefdefect.torus import elliptic, product


def cases():
    ei = lambda tag: elliptic(0, 1, label=tag)
    return [
        ("E_i x E_i, box 2", product([ei("E1"), ei("E2")]), 2),
        ("E_i x E_i, box 3", product([ei("E1"), ei("E2")]), 3),
        ("E_i^3, box 1", product([ei("E1"), ei("E2"), ei("E3")]), 1),
        ("E_i^3, box 2", product([ei("E1"), ei("E2"), ei("E3")]), 2),
    ]


def run(torus, box, use_compiled):
    previous = eff.HAVE_COMPILED_KERNELS
    eff.HAVE_COMPILED_KERNELS = use_compiled and eff._kernels is not None
    try:
        started = time.perf_counter()
        result = eff.torus_defect(torus, box=box)
        elapsed = time.perf_counter() - started
    finally:
        eff.HAVE_COMPILED_KERNELS = previous
    return result, elapsed


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--full", action="store_true",
                        help="run the pure backend on the largest case too")
    args = parser.parse_args()

    if eff._kernels is None:
        print("compiled kernel not built; benchmarking the pure backend only")
    header = f"{'case':<20} {'classes':>9} {'compiled':>10} {'pure':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, torus, box in cases():
        compiled_result = compiled_time = None
        if eff._kernels is not None:
            compiled_result, compiled_time = run(torus, box, use_compiled=True)
        big = "E_i^3, box 2" in name
        pure_result = pure_time = None
        if not big or args.full or eff._kernels is None:
            pure_result, pure_time = run(torus, box, use_compiled=False)
        if compiled_result and pure_result:
            assert compiled_result == pure_result, "backends disagree"
        scanned = (compiled_result or pure_result).classes_scanned
        fmt = lambda t: f"{t * 1000:9.1f}ms" if t is not None else "   (skip)"
        speed = (
            f"{pure_time / compiled_time:7.1f}x"
            if compiled_time and pure_time
            else "       -"
        )
        print(f"{name:<20} {scanned:>9} {fmt(compiled_time):>10} {fmt(pure_time):>10} {speed}")


if __name__ == "__main__":
    main()
