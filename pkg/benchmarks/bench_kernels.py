#!/usr/bin/env python3
"""Benchmark the compiled intersection kernels against the pure-Python fallback.

Two views:
  * micro: raw intersect_sorted / offset_intersect calls on synthetic
    posting lists of increasing size
  * workload: singleton/doubleton queries against an indexed synthetic
    corpus, switching the kernel backend under the same index

Usage: python benchmarks/bench_kernels.py [--repeat N] [--docs N]
"""

import argparse
import random
import time
from array import array

from cooccurnet import kernels
from cooccurnet.corpus import corpus_from_texts
from cooccurnet.engine import CONJUNCTIVE, PHRASE, Term, build_index, doubleton_event, singleton_event


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def make_sorted_array(rng, size, universe):
    return array("q", sorted(rng.sample(range(universe), size)))


def bench_micro(repeat):
    rng = random.Random(12345)
    print("micro kernels (best of %d, seconds per 1000 calls)" % repeat)
    header = f"{'kernel':<18} {'size':>8}"
    for name in kernels.available_backends():
        header += f" {name:>12}"
    if "c" in kernels.available_backends():
        header += f" {'speedup':>9}"
    print(header)
    for size in (100, 1_000, 10_000):
        a = make_sorted_array(rng, size, size * 2)
        b = make_sorted_array(rng, size, size * 2)
        calls = max(1, 100_000 // size)
        scale = 1000 / calls
        for label, runner in (
            ("intersect_sorted", lambda impl: impl.intersect_sorted(a, b)),
            ("offset_intersect", lambda impl: impl.offset_intersect(a, b, 1)),
        ):
            row = f"{label:<18} {size:>8}"
            timings = {}
            for name in kernels.available_backends():
                impl = kernels._BACKENDS[name]
                timings[name] = best_of(
                    lambda: [runner(impl) for _ in range(calls)], repeat
                ) * scale
                row += f" {timings[name]:>12.4f}"
            if "c" in timings and "python" in timings and timings["c"] > 0:
                row += f" {timings['python'] / timings['c']:>8.1f}x"
            print(row)
    print()


def bench_workload(repeat, n_docs):
    rng = random.Random(99)
    vocab = [f"w{i:04d}" for i in range(800)]
    texts = {
        f"d{i:05d}": " ".join(rng.choice(vocab) for _ in range(rng.randint(20, 80)))
        for i in range(n_docs)
    }
    space = build_index(corpus_from_texts(texts))
    singles = [
        Term(tokens=(rng.choice(vocab), rng.choice(vocab)), mode=mode)
        for mode in (CONJUNCTIVE, PHRASE)
        for _ in range(150)
    ]
    pairs = [
        (Term(tokens=(rng.choice(vocab),), mode=CONJUNCTIVE),
         Term(tokens=(rng.choice(vocab),), mode=CONJUNCTIVE))
        for _ in range(150)
    ]
    pairs = [(x, y) for x, y in pairs if x != y]

    def run_queries():
        for term in singles:
            singleton_event(space, term)
        for x, y in pairs:
            doubleton_event(space, x, y)

    print(f"query workload ({n_docs} docs, {len(singles)} singletons, {len(pairs)} doubletons)")
    timings = {}
    for name in kernels.available_backends():
        kernels.use_backend(name)
        timings[name] = best_of(run_queries, repeat)
        print(f"  {name:<8} {timings[name]:.4f}s")
    if "c" in timings and "python" in timings and timings["c"] > 0:
        print(f"  speedup  {timings['python'] / timings['c']:.1f}x")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--docs", type=int, default=3000)
    args = parser.parse_args()
    print("available backends:", ", ".join(kernels.available_backends()))
    print()
    bench_micro(args.repeat)
    default_backend = kernels.BACKEND
    try:
        bench_workload(args.repeat, args.docs)
    finally:
        kernels.use_backend(default_backend)


if __name__ == "__main__":
    main()
