#!/usr/bin/env python3
"""Why the sampler is exact.

For every norm r <= N the probability of generating r, times the
probability of keeping it, equals c * D(r) for a single constant c.
We check this with exact fractions, then show the acceptance
probabilities never leave [0, 1].
"""

from randideal import count_norm, make_field
from randideal.arith import factor_with_spf, smallest_prime_factors
from randideal.sampler import acceptance_probability, candidate_probability, derive_params, proportionality_constant

K = make_field([1, 0, 1])
params = derive_params(K, 100)
spf = smallest_prime_factors(100)

print(f"{'r':<4}{'D(r)':<6}{'P(keep r)':<12}P(generate r) * P(keep r) / D(r)")
for n in (1, 2, 3, 5, 9, 10, 25, 65):
    r = factor_with_spf(n, spf)
    D = count_norm(K, r)
    keep = acceptance_probability(params, r)
    ratio = candidate_probability(params, r) * keep / D if D else "-"
    print(f"{n:<4}{D:<6}{str(keep):<12}{ratio}")

const, bad = proportionality_constant(params)
print(f"\nOver all r <= 100 the constant is {const}; violations: {bad}")

for N in (300, 1000):
    const, bad = proportionality_constant(derive_params(K, N))
    print(f"N = {N}: constant {float(const):.3e}, exact match over every r: {not bad}")
