"""Counting ideals by norm, unranking exponent tuples, and brute-force enumeration.

The number of ideals of norm ``p**e`` is the number of tuples
``(c_1, ..., c_m)`` of nonnegative integers with ``sum c_i f_i = e``,
where ``f_i`` are the residue degrees of the primes above ``p``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .arith import FactoredInteger, RandomSource, primes_up_to, smallest_prime_factors
from .ffpoly import Poly
from .numberfield import NumberFieldDesc, PrimeIdeal, PrimeSplitting, split_prime

__all__ = [
    "IdealEntry",
    "IdealFactorization",
    "count_prime_power",
    "count_norm",
    "unrank_solution",
    "solution_table",
    "norm_counts",
    "enumerate_ideals",
    "ideal_from_exponents",
]


@lru_cache(maxsize=4096)
def solution_table(degrees: tuple[int, ...], e: int) -> tuple[tuple[int, ...], ...]:
    """Suffix counts: ``T[j][s]`` tuples ``(c_j, ..., c_m)`` with ``sum c_i f_i = s``."""
    m = len(degrees)
    rows = [None] * (m + 1)
    rows[m] = tuple(1 if s == 0 else 0 for s in range(e + 1))
    for j in range(m - 1, -1, -1):
        f = degrees[j]
        nxt = rows[j + 1]
        row = list(nxt)
        for s in range(f, e + 1):
            row[s] += row[s - f]
        rows[j] = tuple(row)
    return tuple(rows)


def _degrees(split) -> tuple[int, ...]:
    if isinstance(split, (PrimeSplitting,)):
        return split.residue_degrees
    if hasattr(split, "residue_degrees"):
        return tuple(split.residue_degrees)
    return tuple(split)


def count_prime_power(split, e: int) -> int:
    """Number of ideals of norm ``p**e`` (``split`` may also be a tuple of residue degrees)."""
    if e < 0:
        raise ValueError("e must be >= 0")
    return solution_table(_degrees(split), e)[0][e]


def unrank_solution(split, e: int, index: int) -> tuple[int, ...]:
    """The ``index``-th exponent tuple in lexicographic order (``c_1`` ascending first)."""
    degrees = _degrees(split)
    table = solution_table(degrees, e)
    total = table[0][e]
    if not 0 <= index < total:
        raise IndexError(f"index {index} out of range for {total} solutions")
    out = []
    s = e
    for j, f in enumerate(degrees):
        nxt = table[j + 1]
        c = 0
        while True:
            cnt = nxt[s - c * f]
            if index < cnt:
                break
            index -= cnt
            c += 1
        out.append(c)
        s -= c * f
    return tuple(out)


def count_norm(K: NumberFieldDesc, r: FactoredInteger, rng: RandomSource | None = None) -> int:
    """D(r), the number of ideals of norm ``r``."""
    D = 1
    for p, e in r.factors:
        D *= count_prime_power(split_prime(K, p, rng), e)
        if D == 0:
            return 0
    return D


def norm_counts(K: NumberFieldDesc, bound: int) -> list[int]:
    """``D(r)`` for every ``0 <= r <= bound`` (entry 0 is unused), by a multiplicative sieve."""
    spf = smallest_prime_factors(bound)
    D = [0] * (bound + 1)
    if bound >= 1:
        D[1] = 1
    for n in range(2, bound + 1):
        p = spf[n]
        m, e = n, 0
        while m % p == 0:
            m //= p
            e += 1
        D[n] = D[m] * count_prime_power(split_prime(K, p), e) if D[m] else 0
    return D


@dataclass(frozen=True)
class IdealEntry:
    p: int
    generator: Poly
    e: int
    f: int
    exponent: int


@dataclass(frozen=True)
class IdealFactorization:
    """An ideal as a product of prime ideals with exponents, plus its norm."""

    entries: tuple[IdealEntry, ...]
    norm: FactoredInteger
    field: object = field(default=None, compare=False, hash=False, repr=False)

    def key(self) -> tuple:
        return tuple((E.p, E.generator.coeffs, E.exponent) for E in self.entries)

    def recomputed_norm(self) -> int:
        out = 1
        for E in self.entries:
            out *= E.p ** (E.f * E.exponent)
        return out

    def to_dict(self) -> dict:
        return {
            "norm": str(self.norm.value),
            "ideal": [
                {"p": str(E.p), "gen": E.generator.to_list(), "e": E.e, "f": E.f, "exp": E.exponent}
                for E in self.entries
            ],
        }


def ideal_from_exponents(K, parts: list[tuple[PrimeSplitting, tuple[int, ...]]], norm: FactoredInteger):
    entries = []
    for split, cs in parts:
        for P, c in zip(split.primes_above, cs):
            if c:
                entries.append(IdealEntry(P.p, P.generator, P.e, P.f, c))
    return IdealFactorization(tuple(entries), norm, K)


def enumerate_ideals(K: NumberFieldDesc, bound: int) -> list[IdealFactorization]:
    """Every ideal of norm ``<= bound`` exactly once, unit ideal included."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    primes: list[PrimeIdeal] = []
    for p in primes_up_to(bound):
        for P in split_prime(K, p).primes_above:
            if P.norm <= bound:
                primes.append(P)
    out = []

    def walk(start: int, norm: int, entries: list):
        out.append(_build(K, entries, norm))
        for i in range(start, len(primes)):
            P = primes[i]
            if norm * P.p > bound:
                break  # every later prime ideal has norm >= its p >= P.p
            n = norm * P.norm
            if n > bound:
                continue
            c = 1
            while n <= bound:
                entries.append(IdealEntry(P.p, P.generator, P.e, P.f, c))
                walk(i + 1, n, entries)
                entries.pop()
                n *= P.norm
                c += 1

    walk(0, 1, [])
    return out


def _build(K, entries, norm) -> IdealFactorization:
    exps: dict[int, int] = {}
    for E in entries:
        exps[E.p] = exps.get(E.p, 0) + E.f * E.exponent
    return IdealFactorization(tuple(entries), FactoredInteger(norm, tuple(sorted(exps.items()))), K)
