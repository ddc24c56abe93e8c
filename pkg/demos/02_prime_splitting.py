#!/usr/bin/env python3
"""How rational primes split in a number field.

Factoring the defining polynomial mod p gives the primes above p: each
irreducible factor of degree f with multiplicity e is a prime ideal of
norm p^f.  Dedekind's criterion tells us when this is legitimate; when
it is not, the field file must supply the answer.
"""

from randideal import RandIdealError, make_field, split_prime

gauss = make_field([1, 0, 1], label="Q(i)")
print("Q(i), defined by x^2 + 1:")
for p in (2, 3, 5, 13, 19, 29):
    s = split_prime(gauss, p)
    shape = ", ".join(f"e={P.e} f={P.f} gen={P.generator}" for P in s.primes_above)
    print(f"  p={p:<3} {shape}")
print("  (p = 1 mod 4 splits, p = 3 mod 4 stays inert, 2 ramifies)")

cubic = make_field([-2, 0, 0, 1], label="Q(2^(1/3))")
print(f"\nx^3 - 2 has discriminant {cubic.poly_disc}; irreducibility certified mod {cubic.certificate}.")
for p in (2, 3, 5, 7, 31):
    s = split_prime(cubic, p)
    print(f"  p={p:<3} shape (e, f) = {[(P.e, P.f) for P in s.primes_above]}")

bad = make_field([3, 0, 1], label="x^2+3")
try:
    split_prime(bad, 2)
except RandIdealError as exc:
    print(f"\nx^2 + 3 at p = 2: {exc}")
fixed = make_field([3, 0, 1], overrides={2: [[1, 2, [1, 1, 1]]]})
s = split_prime(fixed, 2)
print(f"with an override, 2 is inert: {[(P.e, P.f) for P in s.primes_above]} (source: {s.source})")
