#!/usr/bin/env python3
"""Uniform random integers that come with their factorization.

Kalai's method draws a decreasing chain N >= s_1 >= ... >= 1, multiplies
the primes it hit and keeps the product r with probability r/N.  Every
r <= N then comes out with the same probability, and we never factor
anything: the primes were collected on the way.
"""

import collections

from randideal import RandomSource, sample_uniform_factored

rng = RandomSource(2024)

print("A few samples below 10^12:")
for _ in range(5):
    r, stats = sample_uniform_factored(10**12, rng)
    shown = " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in r.factors) or "1"
    print(f"  {r.value:>14} = {shown:<30} rounds={stats.rounds:<3} tests={stats.primality_tests}")

N = 12
counts = collections.Counter(sample_uniform_factored(N, rng)[0].value for _ in range(24000))
print(f"\nFrequencies over 24000 draws from [1, {N}] (each should be near 2000):")
print("  " + "  ".join(f"{r}:{counts[r]}" for r in range(1, N + 1)))

print("\nPrimality tests per sample grow like (log2 N)^2:")
for k in (8, 16, 24, 32):
    runs = 300
    tests = sum(sample_uniform_factored(2**k, rng)[1].primality_tests for _ in range(runs)) / runs
    print(f"  N = 2^{k:<2}  mean tests = {tests:7.1f}   tests / k^2 = {tests / k**2:.2f}")
