"""Timing comparison of the pure and compiled kernel backends.

Run as a script:  python3 benchmarks/bench_kernels.py [--length N]

Generates one quartic-field word and one resonant cubic word with each
merge backend, then takes factor counts with each engine, printing a
table of wall times and the speedups.  Letter sequences and counts are
asserted identical along the way, so this doubles as a long-run
agreement check at sizes the unit tests avoid.
"""

import argparse
import time
from fractions import Fraction

import numpy as np

import cutseq.kernels as kernels
from cutseq.kernels import pure
from cutseq.coding import Direction3, cutting_word_3d
from cutseq.numfield import NumberField


def directions():
    quartic = NumberField((1, 0, -10, 0, 1), (3, Fraction(13, 4)))
    s2 = quartic.from_coords((0, Fraction(-9, 2), 0, Fraction(1, 2)))
    s3 = quartic.from_coords((0, Fraction(11, 2), 0, Fraction(-1, 2)))
    cubic = NumberField((-1, 1, 0, 1), (Fraction(1, 2), 1))
    t = cubic.theta()
    return (("quartic sqrt2/sqrt3", Direction3(1, s2, s3)),
            ("cubic resonant", Direction3(1, t.inverse(), (1 - t).inverse())))


def timed(fn, *args, **kwargs):
    t0 = time.perf_counter()
    result = fn(*args, **kwargs)
    return result, time.perf_counter() - t0


def bench_generation(direction, length):
    rows = {}
    saved = kernels.merge_events
    try:
        kernels.merge_events = pure.merge_events
        word_pure, rows["pure"] = timed(cutting_word_3d, direction,
                                        length=length)
        kernels.merge_events = saved
        word_fast, rows["fast"] = timed(cutting_word_3d, direction,
                                        length=length)
    finally:
        kernels.merge_events = saved
    if kernels.BACKEND == "cython":
        assert word_pure.letters == word_fast.letters, "backends disagree"
    return word_fast, rows


def bench_counts(word, n_max):
    arr = np.frombuffer(word.letters, dtype=np.uint8)
    pure_counts, t_pure = timed(pure.FactorEngine(arr).factor_counts, n_max)
    fast_counts, t_fast = timed(kernels.FactorEngine(arr).factor_counts,
                                n_max)
    assert np.array_equal(pure_counts, fast_counts), "backends disagree"
    return {"pure": t_pure, "fast": t_fast}


def fmt(seconds):
    return "%8.3fs" % seconds


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--length", type=int, default=2000000)
    parser.add_argument("--nmax", type=int, default=120)
    args = parser.parse_args()

    print("backend selected at import: %s" % kernels.BACKEND)
    if kernels.BACKEND != "cython":
        print("(compiled module missing; the fast column repeats pure)")
    print()
    header = "%-22s %-18s %10s %10s %9s" % (
        "word", "stage", "pure", "fast", "speedup")
    print(header)
    print("-" * len(header))
    for name, direction in directions():
        word, gen = bench_generation(direction, args.length)
        print("%-22s %-18s %s %s %8.1fx" % (
            name, "generate %.0e" % args.length,
            fmt(gen["pure"]), fmt(gen["fast"]),
            gen["pure"] / max(gen["fast"], 1e-9)))
        cnt = bench_counts(word, args.nmax)
        print("%-22s %-18s %s %s %8.1fx" % (
            name, "counts n<=%d" % args.nmax,
            fmt(cnt["pure"]), fmt(cnt["fast"]),
            cnt["pure"] / max(cnt["fast"], 1e-9)))
    print()
    print("all outputs verified identical between backends")


if __name__ == "__main__":
    main()
