#!/usr/bin/env python3
"""Counting ideals of a given norm.

D(r), the number of ideals of norm r, is multiplicative.  For a prime
power p^e it is the number of ways to write e = sum c_i f_i over the
residue degrees f_i of the primes above p.  Summing D(r) up to N grows
like a constant times N; for Q(i) that constant is pi/4.
"""

import math

from randideal import count_prime_power, make_field, norm_counts, unrank_solution
from randideal.idealcount import enumerate_ideals

gauss = make_field([1, 0, 1])

print("Exponent tuples with c_1 + c_2 + 2 c_3 = 3 in ranking order:")
n = count_prime_power((1, 1, 2), 3)
print("  " + "  ".join(str(unrank_solution((1, 1, 2), 3, i)) for i in range(n)))

D = norm_counts(gauss, 30)
print("\nD(r) in Q(i) for r = 1..30:")
print("  " + " ".join(str(x) for x in D[1:]))

print("\nIdeals of Q(i) with norm at most 10:")
for ideal in enumerate_ideals(gauss, 10):
    parts = " * ".join(f"({E.p}, {E.generator})^{E.exponent}" for E in ideal.entries) or "(1)"
    print(f"  norm {ideal.norm.value:>2}: {parts}")

print("\nPartial sums sum D(r) / N against pi/4 =", round(math.pi / 4, 5))
D = norm_counts(gauss, 10**5)
total = 0
for N in range(1, 10**5 + 1):
    total += D[N]
    if N in (10, 100, 1000, 10**4, 10**5):
        print(f"  N = {N:>6}: {total / N:.5f}")
