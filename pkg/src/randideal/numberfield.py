"""Number fields given by a monic integer polynomial, and how rational primes split.

The splitting of ``p`` is read off from the factorization of the defining
polynomial modulo ``p``.  That reading is only valid when ``p`` does not
divide the index of ``Z[theta]`` in the ring of integers, which the
Dedekind criterion certifies.  Primes that fail the criterion must be
supplied as overrides.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Sequence

from .arith import RandIdealError, RandomSource, is_probable_prime, primes_up_to
from .ffpoly import Poly, PrimeField, factor_poly, is_irreducible, poly_gcd

__all__ = [
    "PrimeIdeal",
    "PrimeSplitting",
    "NumberFieldDesc",
    "make_field",
    "split_prime",
    "poly_discriminant",
    "load_field",
    "field_from_dict",
    "field_to_dict",
]


@dataclass(frozen=True)
class PrimeIdeal:
    """A prime above ``p``: generator mod p, ramification ``e``, residue degree ``f``."""

    p: int
    generator: Poly
    e: int
    f: int

    @property
    def norm(self) -> int:
        return self.p**self.f


@dataclass(frozen=True)
class PrimeSplitting:
    p: int
    primes_above: tuple[PrimeIdeal, ...]
    source: str = "computed"

    @property
    def residue_degrees(self) -> tuple[int, ...]:
        return tuple(P.f for P in self.primes_above)

    @property
    def num_primes_above(self) -> int:
        return len(self.primes_above)

    def to_override(self) -> list:
        return [[P.e, P.f, P.generator.to_list()] for P in self.primes_above]


# -- integer polynomial helpers (lowest degree first) ---------------------

def _int_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _det(matrix: list[list[int]]) -> int:
    """Bareiss fraction-free determinant."""
    M = [row[:] for row in matrix]
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def _resultant(a: Sequence[int], b: Sequence[int]) -> int:
    m, n = len(a) - 1, len(b) - 1
    if n == 0:
        return b[0] ** m
    if m == 0:
        return a[0] ** n
    size = m + n
    rows = []
    ha, hb = list(reversed(a)), list(reversed(b))
    for i in range(n):
        rows.append([0] * i + ha + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + hb + [0] * (size - n - 1 - i))
    return _det(rows)


def poly_discriminant(coeffs: Sequence[int]) -> int:
    """Discriminant of a monic integer polynomial, via Res(f, f')."""
    d = len(coeffs) - 1
    if d == 1:
        return 1
    deriv = [i * c for i, c in enumerate(coeffs)][1:]
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return sign * _resultant(coeffs, deriv)


# -- field descriptor ------------------------------------------------------

@dataclass(eq=False)
class NumberFieldDesc:
    degree: int
    defining_poly: tuple[int, ...]
    poly_disc: int
    overrides: dict[int, PrimeSplitting]
    label: str = ""
    trusted: bool = False
    certificate: int | None = None
    _cache: dict = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def reduce_mod(self, p: int) -> Poly:
        return Poly(PrimeField(p), self.defining_poly)

    def __repr__(self):
        return f"NumberFieldDesc({self.label or list(self.defining_poly)}, d={self.degree})"


def _parse_override(p: int, data, degree: int) -> PrimeSplitting:
    if isinstance(data, PrimeSplitting):
        data = data.to_override()
    Fp = PrimeField(p)
    primes = []
    for e, f, gen in data:
        e, f = int(e), int(f)
        g = Poly(Fp, [int(c) for c in gen])
        if e < 1 or f < 1:
            raise ValueError(f"override for p={p}: e and f must be >= 1")
        if g.degree != f or not g.is_monic() or not is_irreducible(g):
            raise ValueError(f"override for p={p}: generator {g} must be monic irreducible of degree {f}")
        primes.append(PrimeIdeal(p, g, e, f))
    if sum(P.e * P.f for P in primes) != degree:
        raise ValueError(f"override for p={p}: sum of e*f must equal the degree {degree}")
    if len({P.generator for P in primes}) != len(primes):
        raise ValueError(f"override for p={p}: generators must be distinct")
    primes.sort(key=lambda P: P.generator.sort_key())
    return PrimeSplitting(p, tuple(primes), "override")


def make_field(
    coeffs: Sequence[int],
    overrides: Mapping | None = None,
    trusted: bool = False,
    label: str = "",
) -> NumberFieldDesc:
    """Validate a defining polynomial and build the field descriptor."""
    coeffs = [int(c) for c in coeffs]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    d = len(coeffs) - 1
    if d < 1:
        raise ValueError("defining polynomial must have degree >= 1")
    if coeffs[-1] != 1:
        raise ValueError("defining polynomial must be monic")
    disc = poly_discriminant(coeffs)
    if disc == 0:
        raise RandIdealError("defining polynomial is not squarefree")
    certificate = None
    for p in primes_up_to(229):  # the first 50 primes
        if disc % p == 0:
            continue
        if is_irreducible(Poly(PrimeField(p), coeffs)):
            certificate = p
            break
    if certificate is None and not trusted:
        raise RandIdealError("irreducibility unverified")
    parsed = {}
    for p, data in (overrides or {}).items():
        p = int(p)
        if not is_probable_prime(p):
            raise ValueError(f"override key {p} is not prime")
        parsed[p] = _parse_override(p, data, d)
    return NumberFieldDesc(d, tuple(coeffs), disc, parsed, label, trusted, certificate)


def _dedekind_ok(coeffs: Sequence[int], p: int, factors: list[tuple[Poly, int]]) -> bool:
    """Dedekind criterion: True iff p does not divide [O_K : Z[theta]]."""
    if all(m == 1 for _, m in factors):
        return True
    Fp = PrimeField(p)
    g = [1]
    h = [1]
    for phi, m in factors:
        lift = list(phi.coeffs)
        g = _int_mul(g, lift)
        for _ in range(m - 1):
            h = _int_mul(h, lift)
    gh = _int_mul(g, h)
    diff = [x - (coeffs[i] if i < len(coeffs) else 0) for i, x in enumerate(gh)]
    assert all(c % p == 0 for c in diff)
    F = Poly(Fp, [c // p for c in diff])
    common = poly_gcd(Poly(Fp, g), Poly(Fp, h))
    return poly_gcd(F, common).is_one() if not F.is_zero() else common.is_one()


def _compute_split(K: NumberFieldDesc, p: int, rng: RandomSource) -> PrimeSplitting:
    factors = factor_poly(K.reduce_mod(p), rng)
    if not _dedekind_ok(K.defining_poly, p, factors):
        raise RandIdealError(f"splitting unavailable for index divisor p={p}; supply override")
    primes = tuple(PrimeIdeal(p, g, m, g.degree) for g, m in factors)
    return PrimeSplitting(p, primes, "computed")


def split_prime(K: NumberFieldDesc, p: int, rng: RandomSource | None = None) -> PrimeSplitting:
    """How ``p`` splits in ``K``; overrides win, results are cached per field."""
    hit = K._cache.get(p)
    if hit is not None:
        return hit
    with K._lock:
        hit = K._cache.get(p)
        if hit is not None:
            return hit
        if p in K.overrides:
            result = K.overrides[p]
        else:
            if not is_probable_prime(p):
                raise ValueError(f"{p} is not prime")
            result = _compute_split(K, p, rng or RandomSource(p))
        K._cache[p] = result
        return result


# -- file format -------------------------------------------------------------

def field_from_dict(data: Mapping) -> NumberFieldDesc:
    return make_field(
        [int(c) for c in data["poly"]],
        overrides={int(k): v for k, v in (data.get("overrides") or {}).items()},
        trusted=bool(data.get("trusted", False)),
        label=str(data.get("label", "")),
    )


def field_to_dict(K: NumberFieldDesc) -> dict:
    return {
        "label": K.label,
        "poly": [str(c) for c in K.defining_poly],
        "trusted": K.trusted,
        "overrides": {str(p): s.to_override() for p, s in sorted(K.overrides.items())},
    }


def load_field(path) -> NumberFieldDesc:
    with open(Path(path)) as fh:
        return field_from_dict(json.load(fh))
