"""Random factored ideals in function fields over F_q (q prime).

A polynomial ``g`` in ``F_q[t]`` is identified with the integer whose
base-``q`` digits are its coefficients (``encode``/``decode``).  The
sampler runs the same chain construction as the number-field sampler on
these integers, retaining a chain value ``s`` when ``decode(s)`` is
irreducible.  Because the digit map is not multiplicative, a candidate is
the *multiset* of retained irreducibles; its norm is their polynomial
product, while psi, Omega and the size test use the integers.

Two supports are offered:

``encoding-bounded``
    multisets with ``prod s < q**(N+1)`` (cheap; a proper subset of
    all norms of degree ``<= N``), constant ``q**(N+1)``;
``exact-degree``
    every monic norm of degree ``<= N``, constant ``(2q)**N``.
"""

from __future__ import annotations

import itertools
import json
import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .arith import RandIdealError, RandomSource, bernoulli_exact, binomial_coeff, is_probable_prime
from .ffpoly import ExtensionField, Poly, PolyRing, PrimeField, factor_over_residue_field, is_irreducible, poly_gcd
from .idealcount import count_prime_power, unrank_solution

__all__ = [
    "encode",
    "decode",
    "FunctionFieldDesc",
    "FFPrimeIdeal",
    "FFSplitting",
    "FactoredPoly",
    "FFIdealEntry",
    "FFIdealFactorization",
    "FFSamplerParams",
    "FFCandidateTrace",
    "MODES",
    "make_function_field",
    "load_function_field",
    "function_field_from_dict",
    "ff_split",
    "ff_count_norm",
    "ff_derive_params",
    "ff_generate_candidate",
    "ff_candidate_probability",
    "ff_acceptance_probability",
    "ff_support",
    "ff_proportionality_constant",
    "ff_sample_norm",
    "ff_sample_norms",
    "ff_norm_to_ideal",
    "ff_sample_ideal",
    "ff_sample_ideals",
    "ff_enumerate_ideals",
    "monic_irreducibles",
]

MODES = ("encoding-bounded", "exact-degree")
MAX_TRIALS = 10**8
MAX_CHAIN_STEPS = 10**6
COMPILED_MAX_LIMIT = 1 << 16


def encode(g: Poly) -> int:
    """The integer with base-q digits equal to the coefficients of ``g``."""
    q = g.field.q
    n = 0
    for c in reversed(g.coeffs):
        n = n * q + c
    return n


def decode(n: int, q: int) -> Poly:
    if n < 0:
        raise ValueError("decode requires n >= 0")
    digits = []
    while n:
        n, c = divmod(n, q)
        digits.append(c)
    return Poly(PrimeField(q), digits, _raw=True)


@dataclass(frozen=True)
class FFPrimeIdeal:
    pi: Poly
    generator: Poly  # over the residue field F_q[t]/(pi)
    e: int
    f: int

    @property
    def norm_degree(self) -> int:
        return self.f * self.pi.degree


@dataclass(frozen=True)
class FFSplitting:
    pi: Poly
    primes_above: tuple[FFPrimeIdeal, ...]
    source: str = "computed"

    @property
    def residue_degrees(self) -> tuple[int, ...]:
        return tuple(P.f for P in self.primes_above)

    def to_override(self) -> list:
        return [[P.e, P.f, P.generator.to_list()] for P in self.primes_above]


@dataclass(frozen=True)
class FactoredPoly:
    """A monic polynomial with its factorization into monic irreducibles."""

    value: Poly
    factors: tuple[tuple[Poly, int], ...]

    @classmethod
    def from_irreducibles(cls, polys: Iterable[Poly], q: int) -> "FactoredPoly":
        counts: dict[Poly, int] = {}
        value = Poly(PrimeField(q), (1,))
        for g in polys:
            counts[g] = counts.get(g, 0) + 1
            value = value * g
        return cls(value, tuple(sorted(counts.items(), key=lambda kv: kv[0].sort_key())))

    @property
    def degree(self) -> int:
        return self.value.degree


@dataclass(eq=False)
class FunctionFieldDesc:
    q: int
    d: int
    defining_poly: tuple[Poly, ...]
    overrides: dict
    label: str = ""
    _cache: dict = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def degree(self) -> int:
        return self.d

    def __repr__(self):
        return f"FunctionFieldDesc({self.label or 'q=%d' % self.q}, d={self.d})"


def _parse_ff_override(K_q: int, d: int, pi: Poly, data) -> FFSplitting:
    if isinstance(data, FFSplitting):
        data = data.to_override()
    E = ExtensionField(pi)
    primes = []
    for e, f, gen in data:
        g = Poly(E, [E.normalize([int(x) for x in c]) for c in gen])
        if int(e) < 1 or int(f) < 1 or g.degree != int(f) or not g.is_monic():
            raise ValueError(f"override for pi={pi}: bad prime data {e, f, gen}")
        primes.append(FFPrimeIdeal(pi, g, int(e), int(f)))
    if sum(P.e * P.f for P in primes) != d:
        raise ValueError(f"override for pi={pi}: sum of e*f must equal the degree {d}")
    primes.sort(key=lambda P: P.generator.sort_key())
    return FFSplitting(pi, tuple(primes), "override")


def make_function_field(q: int, coeffs: Sequence, overrides: Mapping | None = None, label: str = "") -> FunctionFieldDesc:
    """``coeffs[i]`` is the coefficient of ``y**i``, itself a coefficient list in ``t``."""
    if not is_probable_prime(q):
        raise ValueError("q must be prime")
    Fq = PrimeField(q)
    polys = [c if isinstance(c, Poly) else Poly(Fq, [int(x) for x in c]) for c in coeffs]
    while polys and polys[-1].is_zero():
        polys.pop()
    d = len(polys) - 1
    if d < 1:
        raise ValueError("defining polynomial must have degree >= 1 in y")
    if not polys[-1].is_one():
        raise ValueError("defining polynomial must be monic in y")
    parsed = {}
    for key, data in (overrides or {}).items():
        pi = key if isinstance(key, Poly) else decode(int(key), q)
        if not pi.is_monic() or not is_irreducible(pi):
            raise ValueError(f"override key {key} is not a monic irreducible")
        parsed[pi] = _parse_ff_override(q, d, pi, data)
    return FunctionFieldDesc(q, d, tuple(polys), parsed, label)


def function_field_from_dict(data: Mapping) -> FunctionFieldDesc:
    return make_function_field(
        int(data["q"]), data["poly"], overrides=data.get("overrides") or {}, label=str(data.get("label", ""))
    )


def load_function_field(path) -> FunctionFieldDesc:
    with open(Path(path)) as fh:
        return function_field_from_dict(json.load(fh))


def _ff_dedekind_ok(K: FunctionFieldDesc, pi: Poly, E: ExtensionField, factors) -> bool:
    if all(m == 1 for _, m in factors):
        return True
    R = PolyRing(K.q)
    one = Poly(R, (R.one,))
    g, h = one, one
    for phi, m in factors:
        lift = Poly(R, phi.coeffs)
        g = g * lift
        for _ in range(m - 1):
            h = h * lift
    F = Poly(R, K.defining_poly)
    diff = g * h - F
    quo = []
    for c in diff.coeffs:
        qq, rr = divmod(c, pi)
        if not rr.is_zero():
            raise AssertionError("lift does not reduce to the factorization")
        quo.append(qq)
    Gbar = Poly(E, [E.normalize(c) for c in quo])
    common = poly_gcd(Poly(E, [E.normalize(c) for c in g.coeffs]), Poly(E, [E.normalize(c) for c in h.coeffs]))
    if Gbar.is_zero():
        return common.is_one()
    return poly_gcd(Gbar, common).is_one()


def ff_split(K: FunctionFieldDesc, pi: Poly, rng: RandomSource | None = None) -> FFSplitting:
    """Decomposition of the prime ``pi`` of F_q[t] in the integral closure."""
    pi = pi.monic()
    hit = K._cache.get(pi)
    if hit is not None:
        return hit
    with K._lock:
        hit = K._cache.get(pi)
        if hit is not None:
            return hit
        if pi in K.overrides:
            result = K.overrides[pi]
        else:
            factors = factor_over_residue_field(K.defining_poly, pi, rng or RandomSource(encode(pi)))
            E = factors[0][0].field
            if not _ff_dedekind_ok(K, pi, E, factors):
                raise RandIdealError(f"splitting unavailable for pi={pi}; supply override")
            primes = tuple(FFPrimeIdeal(pi, g, m, g.degree) for g, m in factors)
            result = FFSplitting(pi, primes, "computed")
        K._cache[pi] = result
        return result


def ff_count_norm(K: FunctionFieldDesc, g: FactoredPoly) -> int:
    """Number of ideals of norm ``g``; non-monic ``g`` counts 0."""
    if not g.value.is_monic():
        return 0
    D = 1
    for pi, e in g.factors:
        if not pi.is_monic():
            return 0
        D *= count_prime_power(ff_split(K, pi), e)
        if D == 0:
            return 0
    return D


# -- sampler ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FFSamplerParams:
    field: FunctionFieldDesc
    q: int
    d: int
    N: int
    modulus: int
    residues: tuple[int, ...]
    L: int
    alpha: Fraction
    mode: str
    limit: int
    caps: dict[int, int]
    small_ints: tuple[int, ...]
    constant: int

    def irreducible(self, s: int) -> bool:
        cache = self._irr
        v = cache.get(s)
        if v is None:
            v = cache[s] = is_irreducible(decode(s, self.q))
        return v

    @cached_property
    def _irr(self) -> dict:
        return {}

    @cached_property
    def covered_product(self) -> Fraction:
        """prod over irreducible encodings d < s < q**(N+1) of (1 - d/(s - sbar + 1))."""
        out = Fraction(1)
        d = self.d
        for s in range(d + 1, self.limit):
            if self.irreducible(s):
                out *= 1 - Fraction(d, s - _residue(s, d) + 1)
        return out

    @cached_property
    def _table(self):
        from ._engine_ff import build_ff_table

        return build_ff_table(self)


def _residue(s: int, d: int) -> int:
    """Class label of ``s`` in {1, ..., d}."""
    b = s % d
    return b if b else d


def ff_derive_params(K: FunctionFieldDesc, N: int, mode: str = "encoding-bounded") -> FFSamplerParams:
    if N < 1:
        raise ValueError("N must be >= 1")
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    q, d = K.q, K.d
    limit = q ** (N + 1)
    L = (limit - 1).bit_length() - 1
    alpha = Fraction(1, binomial_coeff(d + L - 1, L))
    residues = tuple(range(1, d + 1))
    caps = {b: max(0, (limit - 1 - b) // d) for b in residues}
    small = tuple(p for p in range(2, d + 1) if is_irreducible(decode(p, q)))
    constant = limit if mode == "encoding-bounded" else (2 * q) ** N
    return FFSamplerParams(K, q, d, N, d, residues, L, alpha, mode, limit, caps, small, constant)


@dataclass(frozen=True)
class FFCandidateTrace:
    chains: dict[int, tuple[int, ...]]
    small_exponents: dict[int, int]
    multiset: tuple[int, ...]  # encodings of the retained irreducibles, sorted

    @property
    def bookkeeping(self) -> int:
        return math.prod(self.multiset)


def ff_generate_candidate(params: FFSamplerParams, rng: RandomSource) -> FFCandidateTrace:
    d = params.d
    chains = {}
    retained = []
    for b in params.residues:
        j = params.caps[b]
        chain = []
        steps = 0
        while j > 0:
            u = rng.below(j * d + 1)
            j = (u + d - 1) // d
            s = j * d + b if j else 1
            chain.append(s)
            if j and params.irreducible(s):
                retained.append(s)
            steps += 1
            if steps > MAX_CHAIN_STEPS:
                raise RandIdealError("chain did not terminate")
        chains[b] = tuple(chain) or (1,)
    small = {}
    for p in params.small_ints:
        e = 0
        step = Fraction(p - 1, p)
        while bernoulli_exact(step, rng):
            e += 1
        small[p] = e
        retained.extend([p] * e)
    return FFCandidateTrace(chains, small, tuple(sorted(retained)))


def _as_multiset(ms) -> tuple[int, ...]:
    return tuple(sorted(encode(x) if isinstance(x, Poly) else int(x) for x in ms))


def _in_support(params: FFSamplerParams, ms: tuple[int, ...]) -> bool:
    if params.mode == "encoding-bounded":
        return math.prod(ms) < params.limit
    return sum(decode(s, params.q).degree for s in ms) <= params.N


def ff_candidate_probability(params: FFSamplerParams, multiset) -> Fraction:
    """Exact probability that :func:`ff_generate_candidate` retains exactly ``multiset``."""
    ms = _as_multiset(multiset)
    counts: dict[int, int] = {}
    for s in ms:
        if not (1 < s < params.limit) or not params.irreducible(s):
            raise ValueError(f"{s} is not the encoding of an irreducible below q^(N+1)")
        counts[s] = counts.get(s, 0) + 1
    d = params.d
    prob = Fraction(1)
    for p in params.small_ints:
        prob *= Fraction(p - 1, p) ** counts.get(p, 0) / p
    for s, e in counts.items():
        if s > d:
            prob *= Fraction(d, s - _residue(s, d) + 1) ** e
    return prob * params.covered_product


def ff_acceptance_probability(params: FFSamplerParams, multiset) -> Fraction:
    """M psi D / (d**Omega_d * C) with C the mode's constant; 0 when D = 0."""
    ms = _as_multiset(multiset)
    if not _in_support(params, ms):
        raise ValueError("multiset lies outside the sampler's support")
    polys = [decode(s, params.q) for s in ms]
    if any(not g.is_monic() for g in polys):
        return Fraction(0)
    D = ff_count_norm(params.field, FactoredPoly.from_irreducibles(polys, params.q))
    if D == 0:
        return Fraction(0)
    return _ff_acceptance_parts(params, ms, D)


def _ff_acceptance_parts(params: FFSamplerParams, ms: tuple[int, ...], D: int) -> Fraction:
    d = params.d
    M = params.alpha ** len(params.small_ints)
    psi = 1
    omega = 0
    for s in ms:
        if s <= d:
            M /= s - 1
            psi *= s
        else:
            psi *= s - _residue(s, d) + 1
            omega += 1
    return M * Fraction(psi * D, d**omega * params.constant)


def monic_irreducibles(q: int, max_degree: int) -> list[Poly]:
    """All monic irreducibles of degree 1..max_degree, by exhaustive test."""
    Fq = PrimeField(q)
    out = []
    for n in range(1, max_degree + 1):
        for low in range(q**n):
            g = decode(low + q**n, q)
            if is_irreducible(g):
                out.append(g)
    return out


def ff_support(params: FFSamplerParams) -> list[tuple[int, ...]]:
    """Every multiset of monic irreducible encodings in the mode's support (desk scale)."""
    irr = [encode(g) for g in monic_irreducibles(params.q, params.N)]
    irr.sort()
    degs = {s: decode(s, params.q).degree for s in irr}
    out = []
    enc = params.mode == "encoding-bounded"

    def walk(start, prod, deg, acc):
        out.append(tuple(acc))
        for i in range(start, len(irr)):
            s = irr[i]
            if enc:
                if prod * s >= params.limit:
                    break
            elif deg + degs[s] > params.N:
                continue
            acc.append(s)
            walk(i, prod * s, deg + degs[s], acc)
            acc.pop()

    walk(0, 1, 0, [])
    return out


def ff_proportionality_constant(params: FFSamplerParams):
    """Check candidate * acceptance / D is one constant over the support (and acceptance <= 1)."""
    const = None
    bad = []
    for ms in ff_support(params):
        g = FactoredPoly.from_irreducibles([decode(s, params.q) for s in ms], params.q)
        D = ff_count_norm(params.field, g)
        if D == 0:
            continue
        acc = ff_acceptance_probability(params, ms)
        if acc > 1:
            bad.append(ms)
            continue
        c = ff_candidate_probability(params, ms) * acc / D
        if const is None:
            const = c
        elif c != const:
            bad.append(ms)
    return (const if not bad else None), bad


def _choose_engine(params: FFSamplerParams, engine: str) -> str:
    if engine == "auto":
        if params.limit > COMPILED_MAX_LIMIT:
            return "python"
        return "compiled" if params._table.fits else "python"
    if engine not in ("python", "compiled"):
        raise ValueError(f"unknown engine {engine!r}")
    return engine


def ff_sample_norm(params: FFSamplerParams, rng: RandomSource, engine: str = "python", max_trials: int = MAX_TRIALS):
    """One norm drawn with probability proportional to D(g); returns ``(FactoredPoly, trials)``."""
    return ff_sample_norms(params, 1, rng, engine=engine, max_trials=max_trials)[0]


def ff_sample_norms(params: FFSamplerParams, count: int, rng: RandomSource, engine: str = "auto", max_trials: int = MAX_TRIALS):
    engine = _choose_engine(params, engine)
    if engine == "compiled":
        from ._engine_ff import ff_sample_compiled

        return ff_sample_compiled(params, count, rng, max_trials)
    out = []
    cache: dict[tuple, Fraction] = {}
    for _ in range(count):
        trials = 0
        while True:
            trials += 1
            if trials > max_trials:
                raise RandIdealError(f"no acceptance after {max_trials} trials (N={params.N})")
            ms = ff_generate_candidate(params, rng).multiset
            if not _in_support(params, ms):
                continue
            acc = cache.get(ms)
            if acc is None:
                acc = cache[ms] = ff_acceptance_probability(params, ms)
            if acc and bernoulli_exact(acc, rng):
                polys = [decode(s, params.q) for s in ms]
                out.append((FactoredPoly.from_irreducibles(polys, params.q), trials))
                break
    return out


@dataclass(frozen=True)
class FFIdealEntry:
    pi: Poly
    generator: Poly
    e: int
    f: int
    exponent: int


@dataclass(frozen=True)
class FFIdealFactorization:
    entries: tuple[FFIdealEntry, ...]
    norm: FactoredPoly
    field: object = field(default=None, compare=False, hash=False, repr=False)

    def key(self) -> tuple:
        return tuple((E.pi.coeffs, E.generator.to_list().__repr__(), E.exponent) for E in self.entries)

    def recomputed_norm(self) -> Poly:
        Fq = self.norm.value.field
        out = Poly(Fq, (1,))
        for E in self.entries:
            out = out * E.pi ** (E.f * E.exponent)
        return out

    def to_dict(self) -> dict:
        return {
            "norm": self.norm.value.to_list(),
            "norm_factors": [[g.to_list(), e] for g, e in self.norm.factors],
            "ideal": [
                {"pi": E.pi.to_list(), "gen": E.generator.to_list(), "e": E.e, "f": E.f, "exp": E.exponent}
                for E in self.entries
            ],
        }


def ff_norm_to_ideal(K: FunctionFieldDesc, g: FactoredPoly, rng: RandomSource) -> FFIdealFactorization:
    entries = []
    for pi, e in g.factors:
        split = ff_split(K, pi)
        total = count_prime_power(split, e)
        if total == 0:
            raise RandIdealError(f"no ideal of norm ({pi})^{e}")
        cs = unrank_solution(split, e, rng.below(total))
        for P, c in zip(split.primes_above, cs):
            if c:
                entries.append(FFIdealEntry(pi, P.generator, P.e, P.f, c))
    return FFIdealFactorization(tuple(entries), g, K)


def ff_sample_ideal(K: FunctionFieldDesc, N: int, mode: str, rng: RandomSource, engine: str = "python"):
    return ff_sample_ideals(K, N, mode, 1, rng, engine=engine)[0]


def ff_sample_ideals(K, N: int, mode: str, count: int, rng: RandomSource, engine: str = "auto", params=None):
    params = params or ff_derive_params(K, N, mode)
    return [(ff_norm_to_ideal(K, g, rng), t) for g, t in ff_sample_norms(params, count, rng, engine=engine)]


def ff_enumerate_ideals(K: FunctionFieldDesc, N: int, mode: str = "exact-degree") -> list[FFIdealFactorization]:
    """Every ideal whose norm lies in the mode's support, exactly once."""
    params = ff_derive_params(K, N, mode)
    out = []
    for ms in ff_support(params):
        polys = [decode(s, params.q) for s in ms]
        g = FactoredPoly.from_irreducibles(polys, params.q)
        per_prime = []
        for pi, e in g.factors:
            split = ff_split(K, pi)
            total = count_prime_power(split, e)
            per_prime.append([(split, unrank_solution(split, e, i)) for i in range(total)])
        for combo in itertools.product(*per_prime):
            entries = []
            for split, cs in combo:
                for P, c in zip(split.primes_above, cs):
                    if c:
                        entries.append(FFIdealEntry(split.pi, P.generator, P.e, P.f, c))
            out.append(FFIdealFactorization(tuple(entries), g, K))
    return out
