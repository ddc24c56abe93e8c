#!/usr/bin/env python3
"""Random ideals in a function field.

Over F_3 polynomials are read as base-3 numbers, so the same chain
construction runs on integers and keeps a value when the polynomial it
spells is irreducible.  The field here is y^2 = t over F_3.
"""

import collections

from randideal import RandomSource
from randideal.funcfield import (
    decode,
    encode,
    ff_enumerate_ideals,
    ff_derive_params,
    ff_proportionality_constant,
    ff_sample_ideals,
    ff_split,
    make_function_field,
)
from randideal.ffpoly import Poly, PrimeField

K = make_function_field(3, [[0, 2], [], [1]], label="y^2 - t")
F3 = PrimeField(3)
print("Digit map: t^2 + 2 ->", encode(Poly(F3, [2, 0, 1])), "  and 4 ->", decode(4, 3))
g, h = Poly(F3, [1, 1]), Poly(F3, [2, 1])
print(f"It is not multiplicative: n(g h) = {encode(g * h)} but n(g) n(h) = {encode(g) * encode(h)}")

print("\nSplitting of small primes of F_3[t]:")
for pi in ([0, 1], [1, 1], [2, 1], [1, 0, 1]):
    P = Poly(F3, pi)
    s = ff_split(K, P)
    print(f"  {str(P):<10} {[(Q.e, Q.f) for Q in s.primes_above]}")

for mode in ("encoding-bounded", "exact-degree"):
    params = ff_derive_params(K, 3, mode)
    const, bad = ff_proportionality_constant(params)
    ideals = ff_enumerate_ideals(K, 3, mode)
    draws = ff_sample_ideals(K, 3, mode, 20000, RandomSource(3), params=params)
    counts = collections.Counter(I.key() for I, _ in draws)
    spread = (min(counts.values()), max(counts.values()))
    mean = sum(t for _, t in draws) / len(draws)
    print(f"\n{mode}: {len(ideals)} ideals, exact identity holds: {not bad}")
    print(f"  20000 draws, per-ideal counts between {spread[0]} and {spread[1]}, mean trials {mean:.0f}")
