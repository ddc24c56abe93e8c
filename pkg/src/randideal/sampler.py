"""Random norms weighted by D(r), and uniformly random factored ideals.

A candidate ``r`` is built from one decreasing chain per odd residue
class modulo ``modulus`` (retaining the prime terms) plus geometric
powers of the primes ``p <= modulus``.  Each prime ``p > modulus`` then
occurs exactly ``e`` times with probability
``(modulus/(p - pbar + 1))**e * (1 - modulus/(p - pbar + 1))``.  The
candidate is kept with probability

    M(r) * psi(r) * D(r) / (modulus**Omega_mod(r) * N),

which makes the output probability of ``r`` proportional to ``D(r)``.
Picking one of the ``D(r)`` ideals of that norm uniformly then gives a
uniform ideal of norm at most ``N``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .arith import (
    FactoredInteger,
    RandIdealError,
    RandomSource,
    bernoulli_exact,
    binomial_coeff,
    factor_with_spf,
    is_probable_prime,
    primes_up_to,
    smallest_prime_factors,
)
from .idealcount import (
    IdealFactorization,
    count_norm,
    count_prime_power,
    ideal_from_exponents,
    norm_counts,
    unrank_solution,
)
from .numberfield import NumberFieldDesc, split_prime

__all__ = [
    "SamplerParams",
    "CandidateTrace",
    "SmallBoundWarning",
    "derive_params",
    "generate_candidate",
    "candidate_probability",
    "psi",
    "acceptance_probability",
    "sample_norm",
    "sample_norms",
    "sample_ideal",
    "sample_ideals",
    "norm_to_ideal",
    "proportionality_constant",
]

MAX_TRIALS = 10**8
MAX_CHAIN_STEPS = 10**6
# The compiled engine tabulates the acceptance probability of every r <= N.
COMPILED_MAX_BOUND = 1 << 17


class SmallBoundWarning(RuntimeWarning):
    """The field degree is not small compared with log2(N)."""


@dataclass(frozen=True, eq=False)
class SamplerParams:
    field: NumberFieldDesc
    N: int
    modulus: int
    residues: tuple[int, ...]
    L: int
    alpha: Fraction
    small_primes: tuple[int, ...]
    caps: dict[int, int]

    @property
    def degree(self) -> int:
        return self.field.degree

    @cached_property
    def covered_product(self) -> Fraction:
        """prod over primes modulus < p <= N of (1 - modulus/(p - pbar + 1))."""
        m = self.modulus
        out = Fraction(1)
        for p in primes_up_to(self.N):
            if p > m:
                out *= 1 - Fraction(m, p - p % m + 1)
        return out

    @cached_property
    def _table(self):
        from ._engine import build_nf_table

        return build_nf_table(self)


@dataclass(frozen=True)
class CandidateTrace:
    chains: dict[int, tuple[int, ...]]
    small_exponents: dict[int, int]
    candidate: FactoredInteger


def derive_params(K: NumberFieldDesc, N: int) -> SamplerParams:
    if N < 1:
        raise ValueError("N must be >= 1")
    d = K.degree
    m = d if d % 2 == 0 else 2 * d
    residues = tuple(range(1, m, 2))
    L = N.bit_length() - 1
    alpha = Fraction(1, binomial_coeff(d + L - 1, L))
    small = tuple(primes_up_to(m))
    caps = {b: max(0, (N - b) // m) for b in residues}
    if N < 2**d or d >= N.bit_length():
        warnings.warn(f"degree {d} is not small relative to log2(N) for N={N}", SmallBoundWarning, stacklevel=2)
    return SamplerParams(K, N, m, residues, L, alpha, small, caps)


def _draw_chain(j: int, m: int, b: int, rng: RandomSource) -> list[int]:
    """Chain over {1} u {m+b, 2m+b, ..., j*m+b}: 1 w.p. 1/(jm+1), each other value w.p. m/(jm+1)."""
    out = []
    steps = 0
    while j > 0:
        u = rng.below(j * m + 1)
        j = (u + m - 1) // m
        s = j * m + b if j else 1
        out.append(s)
        steps += 1
        if steps > MAX_CHAIN_STEPS:
            raise RandIdealError("chain did not terminate")
    if not out:
        out.append(1)
    return out


def generate_candidate(params: SamplerParams, rng: RandomSource) -> CandidateTrace:
    m = params.modulus
    chains = {}
    retained = []
    cache: dict[int, bool] = {}
    for b in params.residues:
        chain = _draw_chain(params.caps[b], m, b, rng)
        chains[b] = tuple(chain)
        for s in chain:
            if s == 1:
                continue
            prime = cache.get(s)
            if prime is None:
                prime = cache[s] = is_probable_prime(s, rng=rng)
            if prime:
                retained.append(s)
    small = {}
    for p in params.small_primes:
        e = 0
        step = Fraction(p - 1, p)
        while bernoulli_exact(step, rng):
            e += 1
        small[p] = e
        retained.extend([p] * e)
    return CandidateTrace(chains, small, FactoredInteger.from_primes(retained))


def psi(r: FactoredInteger, modulus: int, residues) -> int:
    """Replace each prime factor p > modulus by p - (p mod modulus) + 1."""
    out = 1
    for p, e in r.factors:
        if p <= modulus:
            out *= p**e
        else:
            pbar = p % modulus
            if pbar not in residues:
                raise RandIdealError(f"prime {p} lies in an uncovered residue class mod {modulus}")
            out *= (p - pbar + 1) ** e
    return out


def _split_small_large(params: SamplerParams, r: FactoredInteger):
    m = params.modulus
    small = {p: e for p, e in r.factors if p <= m}
    large = [(p, e) for p, e in r.factors if p > m]
    return small, large


def candidate_probability(params: SamplerParams, r: FactoredInteger) -> Fraction:
    """Exact probability that :func:`generate_candidate` produces ``r``."""
    if r.value > params.N:
        raise ValueError(f"r={r.value} exceeds N={params.N}")
    m = params.modulus
    small, large = _split_small_large(params, r)
    prob = Fraction(1)
    for p in params.small_primes:
        v = small.get(p, 0)
        prob *= Fraction(p - 1, p) ** v / p
    for p, e in large:
        pbar = p % m
        if pbar not in params.residues:
            raise RandIdealError(f"prime {p} lies in an uncovered residue class mod {m}")
        x = Fraction(m, p - pbar + 1)
        # the (1 - x) factor for p is already inside covered_product
        prob *= x**e
    return prob * params.covered_product


def _acceptance_parts(params: SamplerParams, r: FactoredInteger, D: int) -> Fraction:
    m = params.modulus
    small, large = _split_small_large(params, r)
    M = params.alpha ** len(params.small_primes)
    for p, v in small.items():
        M /= (p - 1) ** v
    omega = sum(e for _, e in large)
    return M * Fraction(psi(r, m, params.residues) * D, m**omega * params.N)


def acceptance_probability(params: SamplerParams, r: FactoredInteger) -> Fraction:
    """M(r) psi(r) D(r) / (modulus**Omega_mod(r) N); exactly 0 when D(r) = 0."""
    if r.value > params.N:
        raise ValueError(f"r={r.value} exceeds N={params.N}")
    D = count_norm(params.field, r)
    if D == 0:
        return Fraction(0)
    return _acceptance_parts(params, r, D)


def proportionality_constant(params: SamplerParams) -> tuple[Fraction | None, list[int]]:
    """Check candidate_probability * acceptance_probability / D(r) is constant over r <= N.

    Returns the common value (or None if there is none) and a list of
    offending ``r`` values.
    """
    spf = smallest_prime_factors(params.N)
    const = None
    bad = []
    for n in range(1, params.N + 1):
        r = factor_with_spf(n, spf)
        D = count_norm(params.field, r)
        if D == 0:
            continue
        c = candidate_probability(params, r) * acceptance_probability(params, r) / D
        if const is None:
            const = c
        elif c != const:
            bad.append(n)
    return (const if not bad else None), bad


def _choose_engine(params, engine: str) -> str:
    if engine == "auto":
        if params.N > COMPILED_MAX_BOUND:
            return "python"
        try:
            import numba  # noqa: F401
        except ImportError:  # pragma: no cover
            return "python"
        return "compiled" if params._table.fits else "python"
    if engine not in ("python", "compiled"):
        raise ValueError(f"unknown engine {engine!r}")
    return engine


def sample_norm(params: SamplerParams, rng: RandomSource, engine: str = "python", max_trials: int = MAX_TRIALS):
    """One norm ``r <= N`` drawn with probability D(r)/sum D; returns ``(r, trials)``."""
    return sample_norms(params, 1, rng, engine=engine, max_trials=max_trials)[0]


def sample_norms(params: SamplerParams, count: int, rng: RandomSource, engine: str = "auto", max_trials: int = MAX_TRIALS):
    engine = _choose_engine(params, engine)
    if engine == "compiled":
        from ._engine import nf_sample_compiled

        return nf_sample_compiled(params, count, rng, max_trials)
    out = []
    accept_cache: dict[int, Fraction] = {}
    for _ in range(count):
        trials = 0
        while True:
            trials += 1
            if trials > max_trials:
                raise RandIdealError(f"no acceptance after {max_trials} trials (N={params.N})")
            r = generate_candidate(params, rng).candidate
            if r.value > params.N:
                continue
            acc = accept_cache.get(r.value)
            if acc is None:
                acc = accept_cache[r.value] = acceptance_probability(params, r)
            if acc and bernoulli_exact(acc, rng):
                out.append((r, trials))
                break
    return out


def norm_to_ideal(K: NumberFieldDesc, r: FactoredInteger, rng: RandomSource) -> IdealFactorization:
    """A uniformly random ideal of norm exactly ``r`` (requires D(r) > 0)."""
    parts = []
    for p, e in r.factors:
        split = split_prime(K, p)
        total = count_prime_power(split, e)
        if total == 0:
            raise RandIdealError(f"no ideal of norm {p}^{e}")
        parts.append((split, unrank_solution(split, e, rng.below(total))))
    return ideal_from_exponents(K, parts, r)


def sample_ideal(K: NumberFieldDesc, N: int, rng: RandomSource, engine: str = "python", params: SamplerParams | None = None):
    """Uniform random ideal of norm ``<= N`` with its factorization; returns ``(ideal, trials)``."""
    return sample_ideals(K, N, 1, rng, engine=engine, params=params)[0]


def sample_ideals(K: NumberFieldDesc, N: int, count: int, rng: RandomSource, engine: str = "auto", params: SamplerParams | None = None):
    params = params or derive_params(K, N)
    out = []
    for r, trials in sample_norms(params, count, rng, engine=engine):
        ideal = norm_to_ideal(K, r, rng)
        out.append((ideal, trials))
    return out
