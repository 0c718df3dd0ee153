#!/usr/bin/env python3
"""Benchmark the compiled ranking kernel against the pure-Python fallback.

Two views:
  1. kernel-only: rank_shared_candidates on postings workloads drawn from a
     synthetic vocabulary, at several vocabulary sizes;
  2. pipeline: correct_transcript over a corrupted 2,000-token text, with
     the kernel implementation swapped underneath the candidate generator.

Run:  python3 benchmarks/bench_kernels.py
"""
import random
import string
import time

from asrspell import (CorruptionSpec, PipelineConfig, _pykernels,
                      build_index, correct_transcript, inject_errors,
                      kernels)
from asrspell.candidates import char_bigrams

try:
    from asrspell import _native
except ImportError:
    _native = None

# Skewed letter frequencies so bigram postings sizes look like real text
# rather than uniform noise.
_LETTERS = string.ascii_lowercase
_LETTER_WEIGHTS = [1.0 / (i + 2) for i in range(len(_LETTERS))]


def synth_vocab_corpus(n_words: int, rng: random.Random) -> str:
    words = set()
    while len(words) < n_words:
        length = rng.randint(3, 10)
        words.add("".join(
            rng.choices(_LETTERS, weights=_LETTER_WEIGHTS)[0]
            for _ in range(length)))
    weighted = [w for w in sorted(words) for _ in range(rng.randint(1, 3))]
    rng.shuffle(weighted)
    return " ".join(weighted)


def kernel_workloads(index, rng: random.Random, n: int):
    """(postings arrays, error word) pairs, as the generator builds them."""
    loads = []
    while len(loads) < n:
        word = "".join(
            rng.choices(_LETTERS, weights=_LETTER_WEIGHTS)[0]
            for _ in range(rng.randint(4, 9)))
        arrays = [index._postings[g] for g in char_bigrams(word)
                  if g in index._postings]
        if arrays:
            loads.append(arrays)
    return loads


def time_kernel(impl, loads, uni_counts, n_vocab, repeats: int) -> float:
    start = time.perf_counter()
    for _ in range(repeats):
        for arrays in loads:
            impl.rank_shared_candidates(arrays, uni_counts, n_vocab, -1, 8)
    return (time.perf_counter() - start) / (repeats * len(loads))


def bench_kernel_only():
    print("kernel-only: rank_shared_candidates, 8 best of each workload")
    print(f"{'vocab':>8} {'entries/call':>13} {'python':>12} "
          f"{'native':>12} {'speedup':>8}")
    for n_words in (2000, 10000, 30000):
        rng = random.Random(n_words)
        index = build_index(synth_vocab_corpus(n_words, rng))
        loads = kernel_workloads(index, rng, 60)
        entries = sum(sum(len(a) for a in arrays)
                      for arrays in loads) / len(loads)
        repeats = max(1, 40000 // n_words)
        py = time_kernel(_pykernels, loads, index._uni_counts,
                         len(index._words), repeats)
        row = (f"{len(index._words):>8} {entries:>13.0f} "
               f"{py * 1e6:>10.1f}us")
        if _native is not None:
            nat = time_kernel(_native, loads, index._uni_counts,
                              len(index._words), repeats)
            row += f" {nat * 1e6:>10.1f}us {py / nat:>7.1f}x"
        else:
            row += f" {'not built':>12} {'-':>8}"
        print(row)


def bench_pipeline():
    # Real-word mode generates candidates for every in-vocabulary token,
    # which is the kernel-bound regime.
    print("\npipeline: correct_transcript (real-word mode) on a corrupted "
          "2000-token text")
    rng = random.Random(77)
    corpus = "\n".join(synth_vocab_corpus(4000, rng) for _ in range(3))
    index = build_index(corpus)
    passage = " ".join(corpus.split()[:2000])
    injected = inject_errors(passage, index,
                             CorruptionSpec(nonword_rate=0.05, seed=9))
    config = PipelineConfig(realword_enabled=True)
    print(f"  {len(injected.records)} injected errors, "
          f"{len(index._words)} word vocabulary")

    impls = [("python", _pykernels)]
    if _native is not None:
        impls.append(("native", _native))
    original = kernels.rank_shared_candidates
    timings = {}
    try:
        for name, impl in impls:
            kernels.rank_shared_candidates = impl.rank_shared_candidates
            start = time.perf_counter()
            result = correct_transcript(injected.corrupted_text, index,
                                        config)
            timings[name] = time.perf_counter() - start
            fixed = sum(1 for d in result.decisions
                        if d.chosen is not None and d.chosen != d.error.token)
            print(f"  {name:>7}: {timings[name]:.3f}s "
                  f"({fixed} corrections applied)")
    finally:
        kernels.rank_shared_candidates = original
    if len(timings) == 2:
        print(f"  speedup: {timings['python'] / timings['native']:.1f}x")


if __name__ == "__main__":
    print(f"selected kernel: {kernels.IMPLEMENTATION}\n")
    bench_kernel_only()
    bench_pipeline()
