"""Benchmark the compiled character-distance kernels against pure Python.

Times dl_distance, lcs_length, and scan_distances on a synthetic word
list representative of confusion-set queries (the hot path of corpus
synthesis), and prints a side-by-side table with speedups.

Usage:
    python3 benchmarks/bench_kernels.py [--words N] [--repeats K]
"""

import argparse
import itertools
import random
import statistics
import time

from gectools.kernels import _pure

try:
    from gectools.kernels import _fast
except ImportError:
    _fast = None

SYLLABLES = [
    c + v
    for c in ["b", "c", "d", "f", "g", "l", "m", "n", "p", "r", "s", "t", "v", "z", "ș", "ț"]
    for v in ["a", "e", "i", "o", "u", "ă"]
]


def make_words(n: int, rng: random.Random) -> list[str]:
    words = set()
    for repeat in (2, 3, 4):
        for combo in itertools.product(SYLLABLES, repeat=repeat):
            words.add("".join(combo))
            if len(words) >= n:
                out = sorted(words)
                rng.shuffle(out)
                return out
    raise ValueError(f"cannot build {n} words")


def time_call(fn, repeats: int) -> float:
    samples = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - start)
    return min(samples)


def bench(name: str, make_fn, repeats: int) -> None:
    pure_time = time_call(make_fn(_pure), repeats)
    if _fast is None:
        print(f"{name:<16} python {pure_time * 1000:8.2f} ms   cython unavailable")
        return
    fast_time = time_call(make_fn(_fast), repeats)
    print(
        f"{name:<16} python {pure_time * 1000:8.2f} ms   "
        f"cython {fast_time * 1000:8.2f} ms   {pure_time / fast_time:6.1f}x"
    )


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--words", type=int, default=20_000, help="lexicon size (default 20000)")
    parser.add_argument("--repeats", type=int, default=5, help="timing repeats, best-of (default 5)")
    args = parser.parse_args()

    rng = random.Random(7)
    words = make_words(args.words, rng)
    pairs = [(rng.choice(words), rng.choice(words)) for _ in range(20_000)]
    queries = [rng.choice(words) for _ in range(20)]

    if _fast is not None:
        # sanity: both backends must agree before timing means anything
        for a, b in pairs[:2000]:
            assert _pure.dl_distance(a, b) == _fast.dl_distance(a, b)
            assert _pure.lcs_length(a, b) == _fast.lcs_length(a, b)

    print(f"lexicon {len(words)} words, mean length "
          f"{statistics.mean(len(w) for w in words):.1f}, best of {args.repeats}\n")

    bench(
        "dl_distance",
        lambda mod: lambda: [mod.dl_distance(a, b) for a, b in pairs],
        args.repeats,
    )
    bench(
        "dl (cutoff 2)",
        lambda mod: lambda: [mod.dl_distance(a, b, 2) for a, b in pairs],
        args.repeats,
    )
    bench(
        "lcs_length",
        lambda mod: lambda: [mod.lcs_length(a, b) for a, b in pairs],
        args.repeats,
    )
    bench(
        "scan_distances",
        lambda mod: lambda: [mod.scan_distances(q, words, 2) for q in queries],
        args.repeats,
    )


if __name__ == "__main__":
    main()
