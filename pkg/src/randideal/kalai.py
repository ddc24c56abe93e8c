"""Uniform random factored integers in [1, N] via Kalai's chain method."""

from __future__ import annotations

from dataclasses import dataclass, field

from .arith import FactoredInteger, RandIdealError, RandomSource, bernoulli_exact, is_probable_prime
from fractions import Fraction

__all__ = ["KalaiStats", "kalai_round", "sample_uniform_factored"]

MAX_ROUNDS = 10**7


@dataclass
class KalaiStats:
    rounds: int = 0
    primality_tests: int = 0
    list_lengths: list[int] = field(default_factory=list)


def _chain(N: int, rng: RandomSource):
    """N >= s_1 >= s_2 >= ... >= s_l = 1, each step uniform on [1, s_i]."""
    s = N
    out = []
    while True:
        s = 1 + rng.below(s)
        out.append(s)
        if s == 1:
            return out


def kalai_round(N: int, rng: RandomSource, stats: KalaiStats | None = None):
    """One round: returns ``(candidate or None, tests_used)``."""
    if N < 1:
        raise ValueError("N must be >= 1")
    chain = _chain(N, rng)
    cache: dict[int, bool] = {}
    primes = []
    tests = 0
    for s in chain:
        if s == 1:
            continue
        prime = cache.get(s)
        if prime is None:
            prime = cache[s] = is_probable_prime(s, rng=rng)
            tests += 1
        if prime:
            primes.append(s)
    if stats is not None:
        stats.rounds += 1
        stats.primality_tests += tests
        stats.list_lengths.append(len(chain))
    r = FactoredInteger.from_primes(primes)
    if r.value > N:
        return None, tests
    if bernoulli_exact(Fraction(r.value, N), rng):
        return r, tests
    return None, tests


def sample_uniform_factored(N: int, rng: RandomSource, max_rounds: int = MAX_ROUNDS):
    """Uniform ``r`` in ``[1, N]`` with its factorization, plus run statistics."""
    stats = KalaiStats()
    while stats.rounds < max_rounds:
        r, _ = kalai_round(N, rng, stats)
        if r is not None:
            return r, stats
    raise RandIdealError(f"no acceptance after {max_rounds} rounds (N={N})")
