#!/usr/bin/env python3
"""Uniform random ideals of Q(sqrt(-5)).

The class number is 2, so ideals are not the same thing as elements and
the sampler has to work with prime ideals directly.  We draw many ideals
of norm at most 30 and compare against the full list.
"""

import collections

from randideal import RandomSource, make_field
from randideal.idealcount import enumerate_ideals
from randideal.sampler import derive_params, sample_ideals

K = make_field([5, 0, 1], label="Q(sqrt(-5))")
rng = RandomSource(5)

print("Five random ideals of norm <= 10^4:")
for ideal, trials in sample_ideals(K, 10**4, 5, rng):
    parts = " * ".join(f"P({E.p}, {E.generator})^{E.exponent}" for E in ideal.entries) or "(1)"
    print(f"  norm {ideal.norm.value:>5}  after {trials:>5} trials: {parts}")

N = 30
everything = enumerate_ideals(K, N)
draws = sample_ideals(K, N, 60000, rng)
counts = collections.Counter(ideal.key() for ideal, _ in draws)
expected = len(draws) / len(everything)
print(f"\n{len(everything)} ideals have norm <= {N}; each should appear about {expected:.0f} times in {len(draws)} draws.")
for ideal in everything[:12]:
    print(f"  norm {ideal.norm.value:>2}  seen {counts[ideal.key()]}")
print("  ...")

params = derive_params(K, N)
print(f"\nParameters: modulus={params.modulus}, residues={params.residues}, L={params.L}, alpha={params.alpha}")
print(f"mean trials per sample: {sum(t for _, t in draws) / len(draws):.1f}")
