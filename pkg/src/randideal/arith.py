"""Integer utilities shared by every sampler.

Big integers are plain Python ``int`` and exact rationals are
:class:`fractions.Fraction`.  All randomness flows through an explicit
:class:`RandomSource` so that a run is reproducible from its seed.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

__all__ = [
    "RandIdealError",
    "RandomSource",
    "FactoredInteger",
    "is_probable_prime",
    "uniform_below",
    "bernoulli_exact",
    "binomial_coeff",
    "primes_up_to",
    "smallest_prime_factors",
    "factor_with_spf",
]

MASK64 = (1 << 64) - 1


class RandIdealError(Exception):
    """Domain error raised by the samplers (missing override, bad field, ...)."""


class RandomSource:
    """Deterministic pseudorandom stream seeded by a 64-bit integer.

    Ranges are drawn by rejection on blocks of random bits, so
    ``below(n)`` is exactly uniform for any ``n``.
    """

    def __init__(self, seed: int):
        self.seed = seed & MASK64
        self._rng = random.Random(self.seed)
        self._getrandbits = self._rng.getrandbits

    def below(self, bound: int) -> int:
        if bound < 1:
            raise ValueError("empty range")
        if bound == 1:
            return 0
        k = bound.bit_length()
        r = self._getrandbits(k)
        while r >= bound:
            r = self._getrandbits(k)
        return r

    def bits(self, k: int) -> int:
        return self._getrandbits(k)

    def spawn_seed(self) -> int:
        """Draw a 63-bit seed for a child stream (compiled kernels take int64)."""
        return self._getrandbits(63)

    def __repr__(self):
        return f"RandomSource(seed={self.seed})"


def uniform_below(bound: int, rng: RandomSource) -> int:
    """Uniform integer in ``[0, bound)``."""
    return rng.below(bound)


def bernoulli_exact(prob: Fraction, rng: RandomSource) -> bool:
    """Return True with probability exactly ``prob``."""
    prob = Fraction(prob)
    if prob < 0 or prob > 1:
        raise ValueError("not a probability")
    if prob.numerator == 0:
        return False
    if prob.numerator == prob.denominator:
        return True
    return rng.below(prob.denominator) < prob.numerator


def binomial_coeff(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        raise ValueError(f"binomial_coeff requires 0 <= k <= n, got n={n}, k={k}")
    return math.comb(n, k)


# Trial-division primes, also the deterministic Miller-Rabin witnesses.
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_TRIAL_PRIMES = tuple(p for p in range(2, 1000) if all(p % d for d in range(2, math.isqrt(p) + 1)))
# The first 13 primes are a deterministic witness set below this bound.
_DETERMINISTIC_LIMIT = 3317044064679887385961981


def _mr_witness(n: int, d: int, s: int, a: int) -> bool:
    """True if ``a`` proves ``n`` composite."""
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def is_probable_prime(n: int, rounds: int = 64, rng: RandomSource | None = None) -> bool:
    """Trial division followed by Miller-Rabin.

    Deterministic below 3.3e24; above that ``rounds`` random bases are
    used (error probability at most ``4**-rounds``).
    """
    if n < 2:
        return False
    for p in _TRIAL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    if n < _TRIAL_PRIMES[-1] ** 2:
        return True
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < _DETERMINISTIC_LIMIT:
        return not any(_mr_witness(n, d, s, a) for a in _SMALL_PRIMES)
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    if rng is None:
        rng = RandomSource(n & MASK64)
    for _ in range(rounds):
        a = 2 + rng.below(n - 3)
        if _mr_witness(n, d, s, a):
            return False
    return True


def primes_up_to(n: int) -> list[int]:
    """Sieve of Eratosthenes."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytes(len(range(i * i, n + 1, i)))
    return [i for i, v in enumerate(sieve) if v]


def smallest_prime_factors(n: int) -> list[int]:
    """``spf[k]`` is the least prime dividing ``k`` (``spf[0] = spf[1] = 0``)."""
    spf = list(range(n + 1))
    if n >= 0:
        spf[0] = 0
    if n >= 1:
        spf[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if spf[i] == i:
            for j in range(i * i, n + 1, i):
                if spf[j] == j:
                    spf[j] = i
    return spf


@dataclass(frozen=True)
class FactoredInteger:
    """A positive integer together with its prime factorization.

    ``factors`` holds ``(prime, exponent)`` pairs with strictly
    increasing primes.
    """

    value: int
    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.value < 1:
            raise ValueError("FactoredInteger value must be >= 1")
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError(f"malformed factorization {self.factors}")
            last = p
            prod *= p**e
        if prod != self.value:
            raise ValueError(f"factors {self.factors} do not multiply to {self.value}")

    @classmethod
    def from_primes(cls, primes: Iterable[int]) -> "FactoredInteger":
        """Build from a multiset of primes (any order, with repetition)."""
        counts: dict[int, int] = {}
        value = 1
        for p in primes:
            counts[p] = counts.get(p, 0) + 1
            value *= p
        return cls(value, tuple(sorted(counts.items())))

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def omega_total(self) -> int:
        """Number of prime factors counted with multiplicity."""
        return sum(e for _, e in self.factors)

    def verify(self) -> bool:
        """Re-check primality of every listed prime."""
        return all(is_probable_prime(p) for p, _ in self.factors)

    def __int__(self):
        return self.value


def factor_with_spf(n: int, spf: list[int]) -> FactoredInteger:
    factors = []
    while n > 1:
        p = spf[n]
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        factors.append((p, e))
    return FactoredInteger(math.prod(p**e for p, e in factors), tuple(factors))
