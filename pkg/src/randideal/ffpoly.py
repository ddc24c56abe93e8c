"""Polynomials over prime fields F_q and over residue fields F_q[t]/(pi).

A :class:`Poly` carries the coefficient domain it lives over.  Three
domains are provided:

* :class:`PrimeField` -- ``F_q``, elements are ints in ``[0, q)``;
* :class:`ExtensionField` -- ``F_q[t]/(pi)`` with ``pi`` irreducible,
  elements are reduced :class:`Poly` values over the prime field;
* :class:`PolyRing` -- the ring ``F_q[t]`` itself, used only for ring
  arithmetic (no division) when lifting residue-field data.

Factorization follows the usual three stages: squarefree decomposition,
distinct-degree splitting, then Cantor-Zassenhaus equal-degree splitting.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .arith import RandIdealError, RandomSource

__all__ = [
    "PrimeField",
    "ExtensionField",
    "PolyRing",
    "Poly",
    "poly_gcd",
    "poly_arith",
    "squarefree_decomposition",
    "distinct_degree_factorization",
    "equal_degree_factorization",
    "factor_poly",
    "is_irreducible",
    "factor_over_residue_field",
]


def _prime_divisors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class PrimeField:
    q: int

    @property
    def order(self) -> int:
        return self.q

    @property
    def char(self) -> int:
        return self.q

    zero = 0
    one = 1

    def normalize(self, c) -> int:
        return int(c) % self.q

    def is_zero(self, c) -> bool:
        return c == 0

    def add(self, a, b):
        return (a + b) % self.q

    def sub(self, a, b):
        return (a - b) % self.q

    def neg(self, a):
        return -a % self.q

    def mul(self, a, b):
        return a * b % self.q

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_%d" % self.q)
        return pow(a, -1, self.q)

    def pth_root(self, a):
        return a

    def random(self, rng: RandomSource):
        return rng.below(self.q)

    def key(self, a):
        return a


class ExtensionField:
    """The residue field ``F_q[t]/(pi)``; ``pi`` must be irreducible."""

    def __init__(self, modulus: "Poly", check: bool = True):
        if not isinstance(modulus.field, PrimeField):
            raise TypeError("modulus must be a polynomial over a prime field")
        modulus = modulus.monic()
        if check and not is_irreducible(modulus):
            raise RandIdealError(f"residue modulus {modulus} is reducible")
        self.base = modulus.field
        self.modulus = modulus
        self.k = modulus.degree
        self.zero = Poly(self.base, ())
        self.one = Poly(self.base, (1,))

    @property
    def order(self) -> int:
        return self.base.q**self.k

    @property
    def char(self) -> int:
        return self.base.q

    def __eq__(self, other):
        return isinstance(other, ExtensionField) and self.modulus == other.modulus

    def __hash__(self):
        return hash(("ext", self.modulus))

    def __repr__(self):
        return f"ExtensionField({self.modulus})"

    def normalize(self, c) -> "Poly":
        if isinstance(c, Poly):
            if c.field != self.base:
                raise ValueError("coefficient over the wrong base field")
            p = c
        elif isinstance(c, int):
            p = Poly(self.base, (c,))
        else:
            p = Poly(self.base, c)
        return p % self.modulus if p.degree >= self.k else p

    def is_zero(self, c) -> bool:
        return not c.coeffs

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return (a * b) % self.modulus

    def inv(self, a):
        if not a.coeffs:
            raise ZeroDivisionError("inverse of zero in residue field")
        # extended Euclid on (a, modulus)
        r0, r1 = self.modulus, a
        s0, s1 = self.zero, self.one
        while r1.coeffs:
            quo, rem = divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, s0 - quo * s1
        c = self.base.inv(r0.coeffs[0])
        return (s0.scale(c)) % self.modulus

    def pow(self, a, e: int):
        return a.powmod(e, self.modulus)

    def pth_root(self, a):
        return self.pow(a, self.order // self.char)

    def random(self, rng: RandomSource):
        return Poly(self.base, [rng.below(self.base.q) for _ in range(self.k)])

    def key(self, a):
        return a.coeffs


class PolyRing:
    """``F_q[t]`` as a coefficient ring (ring operations only)."""

    def __init__(self, q: int):
        self.base = PrimeField(q)
        self.zero = Poly(self.base, ())
        self.one = Poly(self.base, (1,))

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.base == other.base

    def __hash__(self):
        return hash(("ring", self.base.q))

    def normalize(self, c):
        if isinstance(c, Poly):
            return c
        if isinstance(c, int):
            return Poly(self.base, (c,))
        return Poly(self.base, c)

    def is_zero(self, c):
        return not c.coeffs

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def key(self, a):
        return a.coeffs


class Poly:
    """Immutable univariate polynomial, coefficients lowest degree first.

    Trailing zeros are stripped, so ``degree`` is canonical; the zero
    polynomial has degree -1.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs: Iterable = (), _raw: bool = False):
        if not _raw:
            coeffs = [field.normalize(c) for c in coeffs]
            is_zero = field.is_zero
            while coeffs and is_zero(coeffs[-1]):
                coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)

    # -- constructors -------------------------------------------------
    @classmethod
    def x(cls, field) -> "Poly":
        return cls(field, (field.zero, field.one), _raw=True)

    @classmethod
    def const(cls, field, c) -> "Poly":
        return cls(field, (c,))

    # -- basic properties ---------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == self.field.one

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs and self.field == other.field

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({list(self._plain())})"

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if self.field.is_zero(c):
                continue
            cs = str(c) if isinstance(c, int) else f"({c})"
            mon = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if i and cs in ("1", "(1)"):
                terms.append(mon)
            else:
                terms.append(cs + ("*" + mon if mon else ""))
        return " + ".join(reversed(terms)) or "0"

    def _plain(self):
        for c in self.coeffs:
            yield c if isinstance(c, int) else list(c._plain())

    def to_list(self) -> list:
        """Coefficients as nested lists of ints (JSON friendly)."""
        return list(self._plain())

    def sort_key(self):
        return (self.degree, tuple(self.field.key(c) for c in self.coeffs))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def _check(self, other):
        if not isinstance(other, Poly):
            raise TypeError("expected Poly")
        if other.field != self.field:
            raise ValueError("mismatched characteristic or coefficient field")

    # -- ring operations ----------------------------------------------
    def __add__(self, other):
        self._check(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Poly(F, _strip(F, out), _raw=True)

    def __neg__(self):
        F = self.field
        return Poly(F, [F.neg(c) for c in self.coeffs], _raw=True)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(F, (), _raw=True)
        if isinstance(F, PrimeField):
            q = F.q
            out = [0] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        out[i + j] += x * y
            return Poly(F, _strip(F, [c % q for c in out]), _raw=True)
        out = [F.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if F.is_zero(x):
                continue
            for j, y in enumerate(b):
                out[i + j] = F.add(out[i + j], F.mul(x, y))
        return Poly(F, _strip(F, out), _raw=True)

    def scale(self, c) -> "Poly":
        F = self.field
        return Poly(F, _strip(F, [F.mul(c, x) for x in self.coeffs]), _raw=True)

    def __divmod__(self, other):
        self._check(other)
        if not other.coeffs:
            raise ZeroDivisionError("division by the zero polynomial")
        F = self.field
        n, m = len(self.coeffs), len(other.coeffs)
        if n < m:
            return Poly(F, (), _raw=True), self
        b = other.coeffs
        inv_lc = F.inv(b[-1])
        rem = list(self.coeffs)
        quo = [F.zero] * (n - m + 1)
        if isinstance(F, PrimeField):
            q = F.q
            for k in range(n - m, -1, -1):
                c = rem[k + m - 1] * inv_lc % q
                quo[k] = c
                if c:
                    for j in range(m):
                        rem[k + j] = (rem[k + j] - c * b[j]) % q
        else:
            for k in range(n - m, -1, -1):
                c = F.mul(rem[k + m - 1], inv_lc)
                quo[k] = c
                if not F.is_zero(c):
                    for j in range(m):
                        rem[k + j] = F.sub(rem[k + j], F.mul(c, b[j]))
        rem = rem[: m - 1]
        return Poly(F, _strip(F, quo), _raw=True), Poly(F, _strip(F, rem), _raw=True)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        if self.coeffs[-1] == self.field.one:
            return self
        return self.scale(self.field.inv(self.coeffs[-1]))

    def derivative(self) -> "Poly":
        F = self.field
        out = []
        for i, c in enumerate(self.coeffs[1:], start=1):
            acc = F.zero
            for _ in range(i % F.char):
                acc = F.add(acc, c)
            out.append(acc)
        return Poly(F, _strip(F, out), _raw=True)

    def powmod(self, e: int, mod: "Poly") -> "Poly":
        if e < 0:
            raise ValueError("negative exponent")
        result = Poly(self.field, (self.field.one,), _raw=True) % mod
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            e >>= 1
            if e:
                base = (base * base) % mod
        return result

    def __pow__(self, e: int):
        result = Poly(self.field, (self.field.one,), _raw=True)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __call__(self, x):
        F = self.field
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc


def _strip(F, coeffs: list) -> list:
    while coeffs and F.is_zero(coeffs[-1]):
        coeffs.pop()
    return coeffs


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; gcd(0, 0) is the zero polynomial."""
    a._check(b)
    while b.coeffs:
        a, b = b, a % b
    return a.monic()


def poly_arith(a: Poly, b, op: str) -> Poly:
    """Dispatch helper: ``op`` is one of add, mul, mod, gcd, powmod.

    For ``powmod`` pass ``b = (exponent, modulus)``.
    """
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "mod":
        return a % b
    if op == "gcd":
        return poly_gcd(a, b)
    if op == "powmod":
        e, m = b
        return a.powmod(e, m)
    raise ValueError(f"unknown op {op!r}")


def _frobenius_power(f: Poly, n: int) -> Poly:
    """x^(Q^n) mod f, Q the field order."""
    Q = f.field.order
    h = Poly.x(f.field) % f
    for _ in range(n):
        h = h.powmod(Q, f)
    return h


def is_irreducible(f: Poly) -> bool:
    """Rabin's deterministic irreducibility test; constants are not irreducible."""
    n = f.degree
    if n < 1:
        return False
    f = f.monic()
    if n == 1:
        return True
    F = f.field
    Q = F.order
    x = Poly.x(F) % f
    # cache x^(Q^i) for the exponents we need
    needed = sorted({n // r for r in _prime_divisors(n)} | {n})
    h, done = x, 0
    powers = {}
    for k in needed:
        for _ in range(k - done):
            h = h.powmod(Q, f)
        done = k
        powers[k] = h
    if powers[n] != x:
        return False
    for r in _prime_divisors(n):
        if not poly_gcd(powers[n // r] - x, f).is_one():
            return False
    return True


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Pairs ``(g, i)`` with ``f = lc * prod g**i`` and each ``g`` squarefree, monic."""
    F = f.field
    p = F.char
    f = f.monic()
    out: list[tuple[Poly, int]] = []
    if f.degree < 1:
        return out
    c = poly_gcd(f, f.derivative())
    w = f // c
    i = 1
    while not w.is_one():
        y = poly_gcd(w, c)
        fac = w // y
        if not fac.is_one():
            out.append((fac, i))
        w = y
        c = c // y
        i += 1
    if not c.is_one():
        # c is a p-th power: c(x) = sum a_j x^(jp)
        root = Poly(F, [F.pth_root(a) for a in c.coeffs[::p]])
        for g, j in squarefree_decomposition(root):
            out.append((g, j * p))
    return out


def distinct_degree_factorization(f: Poly) -> list[tuple[Poly, int]]:
    """Split a monic squarefree ``f`` into products of irreducibles of equal degree."""
    F = f.field
    Q = F.order
    out = []
    x = Poly.x(F)
    h = x % f if f.degree >= 1 else x
    i = 0
    while f.degree >= 2 * (i + 1):
        i += 1
        h = h.powmod(Q, f)
        g = poly_gcd(h - x, f)
        if not g.is_one():
            out.append((g, i))
            f = f // g
            h = h % f
    if f.degree >= 1:
        out.append((f, f.degree))
    return out


def equal_degree_factorization(f: Poly, deg: int, rng: RandomSource) -> list[Poly]:
    """Cantor-Zassenhaus splitting of a monic product of irreducibles of degree ``deg``."""
    if f.degree == deg:
        return [f]
    F = f.field
    Q = F.order
    n = f.degree
    attempts = 64 * n
    while attempts > 0:
        attempts -= 1
        a = Poly(F, [F.random(rng) for _ in range(n)])
        if a.degree < 1:
            continue
        if F.char == 2:
            # trace map a + a^2 + a^4 + ... over GF(2)
            t = a
            b = a
            for _ in range((Q**deg).bit_length() - 2):
                b = (b * b) % f
                t = t + b
        else:
            t = a.powmod((Q**deg - 1) // 2, f) - Poly(F, (F.one,))
        g = poly_gcd(t, f)
        if 0 < g.degree < n:
            return equal_degree_factorization(g, deg, rng) + equal_degree_factorization(f // g, deg, rng)
    raise RandIdealError(f"equal-degree splitting failed after {64 * n} attempts")


def factor_poly(f: Poly, rng: RandomSource) -> list[tuple[Poly, int]]:
    """Monic irreducible factors with multiplicity, sorted canonically."""
    if f.degree < 1:
        raise ValueError("nothing to factor")
    out = []
    for g, mult in squarefree_decomposition(f):
        for h, deg in distinct_degree_factorization(g):
            for irr in equal_degree_factorization(h, deg, rng):
                out.append((irr, mult))
    out.sort(key=lambda pair: pair[0].sort_key())
    return out


def factor_over_residue_field(
    coeffs: Sequence[Poly], pi: Poly, rng: RandomSource
) -> list[tuple[Poly, int]]:
    """Factor ``sum coeffs[i] y^i`` over ``F_q[t]/(pi)``.

    Each coefficient is a polynomial in ``t`` over the prime field; the
    result polynomials have coefficients in the residue field.
    """
    E = ExtensionField(pi)
    F = Poly(E, [E.normalize(c) for c in coeffs])
    if not F.is_monic():
        raise ValueError("polynomial must be monic in the outer variable")
    return factor_poly(F, rng)
