import itertools

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from randideal.arith import RandIdealError, RandomSource
from randideal.ffpoly import (
    ExtensionField,
    Poly,
    PrimeField,
    factor_over_residue_field,
    factor_poly,
    is_irreducible,
    poly_arith,
    poly_gcd,
    squarefree_decomposition,
)

F2, F3, F5, F7 = (PrimeField(q) for q in (2, 3, 5, 7))


def P(F, *coeffs):
    return Poly(F, coeffs)


def expand(factors, F):
    out = Poly(F, (1,))
    for g, m in factors:
        out = out * g**m
    return out


def mobius_count(q, n):
    return sum(sympy.mobius(d) * q ** (n // d) for d in sympy.divisors(n)) // n


class TestArith:
    def test_gcd_example(self):
        assert poly_arith(P(F5, 1, 0, 1), P(F5, 2, 1), "gcd") == P(F5, 2, 1)

    def test_frobenius_square(self):
        assert poly_arith(P(F2, 1, 1), P(F2, 1, 1), "mul") == P(F2, 1, 0, 1)

    def test_mod_example(self):
        assert poly_arith(P(F3, 0, 0, 0, 1), P(F3, 1, 0, 1), "mod") == P(F3, 0, 2)

    def test_powmod_and_add(self):
        assert poly_arith(P(F3, 0, 1), (3, P(F3, 1, 0, 1)), "powmod") == P(F3, 0, 2)
        assert poly_arith(P(F3, 1, 2), P(F3, 2, 1), "add") == Poly(F3, ())

    def test_gcd_is_monic(self):
        g = poly_gcd(P(F7, 3, 3), P(F7, 1, 0, 6))
        assert g.is_monic() and g == P(F7, 1, 1)

    def test_zero_degree(self):
        assert Poly(F5, (0, 0, 0)).degree == -1
        assert P(F5, 4).degree == 0

    def test_mismatched_characteristic(self):
        with pytest.raises(ValueError):
            P(F3, 1, 1) + P(F5, 1, 1)

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            P(F3, 1, 1) % Poly(F3, ())

    def test_unknown_op(self):
        with pytest.raises(ValueError):
            poly_arith(P(F3, 1), P(F3, 1), "xor")

    @given(st.lists(st.integers(0, 6), max_size=9), st.lists(st.integers(0, 6), min_size=1, max_size=6))
    def test_division_identity(self, a, b):
        a, b = Poly(F7, a), Poly(F7, b)
        if b.is_zero():
            return
        quo, rem = divmod(a, b)
        assert quo * b + rem == a and rem.degree < b.degree

    @given(st.lists(st.integers(0, 4), max_size=7), st.integers(0, 4))
    def test_evaluation_is_ring_map(self, a, x):
        f = Poly(F5, a)
        assert (f * f)(x) == f(x) * f(x) % 5


class TestFactor:
    def test_split_example(self):
        assert factor_poly(P(F5, 1, 0, 1), RandomSource(0)) == [(P(F5, 2, 1), 1), (P(F5, 3, 1), 1)]

    def test_square_example(self):
        assert factor_poly(P(F3, 1, 2, 1), RandomSource(0)) == [(P(F3, 1, 1), 2)]

    def test_irreducible_example(self):
        assert factor_poly(P(F3, 1, 0, 1), RandomSource(0)) == [(P(F3, 1, 0, 1), 1)]

    def test_constant(self):
        with pytest.raises(ValueError, match="nothing to factor"):
            factor_poly(P(F3, 2), RandomSource(0))

    def test_pth_power(self):
        # x^6 + 1 = (x^2 + 1)^3 over F_3
        assert factor_poly(P(F3, 1, 0, 0, 0, 0, 0, 1), RandomSource(1)) == [(P(F3, 1, 0, 1), 3)]

    def test_squarefree_decomposition(self):
        f = P(F5, 1, 1) ** 3 * P(F5, 2, 1) * P(F5, 0, 1) ** 5
        dec = squarefree_decomposition(f)
        assert expand(dec, F5) == f
        assert sorted(m for _, m in dec) == [1, 3, 5]

    def test_refactor_corpus(self):
        """Multiplying out the factorization reproduces the input exactly."""
        rng = RandomSource(20240601)
        seen = 0
        for i in range(10**4):
            F = (F2, F3, F5, F7)[i % 4]
            deg = 1 + rng.below(8)
            f = Poly(F, [rng.below(F.q) for _ in range(deg)] + [1 + rng.below(F.q - 1)])
            fac = factor_poly(f, rng)
            assert expand(fac, F).scale(f.lc) == f
            gs = [g for g, _ in fac]
            assert all(g.is_monic() for g in gs) and len(set(gs)) == len(gs)
            assert gs == sorted(gs, key=lambda g: g.sort_key())
            single = len(fac) == 1 and fac[0][1] == 1
            assert is_irreducible(f) == single
            seen += 1
        assert seen == 10**4

    @pytest.mark.filterwarnings("ignore::DeprecationWarning")
    @settings(max_examples=200, deadline=None)
    @given(st.sampled_from([2, 3, 5, 7]), st.lists(st.integers(0, 6), min_size=2, max_size=9), st.integers(0, 2**32))
    def test_against_sympy(self, q, coeffs, seed):
        F = PrimeField(q)
        f = Poly(F, coeffs)
        if f.degree < 1:
            return
        x = sympy.symbols("x")
        sp = sympy.Poly(list(reversed(f.coeffs)), x, modulus=q)
        _, sp_fac = sympy.factor_list(sp.as_expr(), x, modulus=q)
        ours = sorted((g.degree, m) for g, m in factor_poly(f, RandomSource(seed)))
        theirs = sorted((sympy.degree(g, x), m) for g, m in sp_fac)
        assert ours == theirs

    def test_deterministic_per_seed(self):
        f = P(F7, *range(1, 9), 1)
        assert factor_poly(f, RandomSource(5)) == factor_poly(f, RandomSource(5))


class TestIrreducible:
    @pytest.mark.parametrize(
        "F,coeffs,expected",
        [(F3, (1, 1), True), (F2, (1, 0, 1), False), (F3, (1, 0, 1), True), (F3, (2,), False), (F3, (), False)],
    )
    def test_examples(self, F, coeffs, expected):
        assert is_irreducible(Poly(F, coeffs)) is expected

    @pytest.mark.parametrize("q", [2, 3])
    @pytest.mark.parametrize("n", range(1, 7))
    def test_mobius_count(self, q, n):
        F = PrimeField(q)
        count = sum(is_irreducible(Poly(F, list(low) + [1])) for low in itertools.product(range(q), repeat=n))
        assert count == mobius_count(q, n)

    def test_non_monic_input(self):
        assert is_irreducible(P(F3, 2, 0, 2))


class TestResidueField:
    t = P(F3, 0, 1)

    def _yt(self):
        # y^2 - t as coefficient list in y
        return [P(F3, 0, 2), Poly(F3, ()), P(F3, 1)]

    def test_ramified(self):
        fac = factor_over_residue_field(self._yt(), self.t, RandomSource(0))
        assert [(g.degree, m) for g, m in fac] == [(1, 2)]

    def test_split(self):
        fac = factor_over_residue_field(self._yt(), P(F3, 2, 1), RandomSource(0))
        assert [(g.degree, m) for g, m in fac] == [(1, 1), (1, 1)]
        roots = sorted(g.coeffs[0].coeffs[0] for g, _ in fac)
        assert roots == [1, 2]

    def test_inert(self):
        fac = factor_over_residue_field(self._yt(), P(F3, 1, 1), RandomSource(0))
        assert [(g.degree, m) for g, m in fac] == [(2, 1)]

    def test_reducible_modulus(self):
        with pytest.raises(RandIdealError):
            factor_over_residue_field(self._yt(), P(F3, 0, 0, 1), RandomSource(0))

    def test_not_monic(self):
        with pytest.raises(ValueError):
            factor_over_residue_field([P(F3, 1), P(F3, 2)], P(F3, 1, 1), RandomSource(0))

    @pytest.mark.parametrize("F,mod", [(F2, (1, 1, 1)), (F3, (1, 0, 1))])
    def test_extension_field_axioms(self, F, mod):
        E = ExtensionField(Poly(F, mod))
        elems = [E.normalize(list(c)) for c in itertools.product(range(F.q), repeat=2)]
        assert E.order == F.q**2 and len(set(elems)) == E.order
        for a in elems:
            if not E.is_zero(a):
                assert E.mul(a, E.inv(a)) == E.one
            assert E.pow(a, E.order) == a

    def test_factor_over_f9(self):
        # x^2 + 1 over F_3 is irreducible but splits over F_9
        E = ExtensionField(P(F3, 1, 0, 1))
        f = Poly(E, [1, 0, 1])
        fac = factor_poly(f, RandomSource(3))
        assert [(g.degree, m) for g, m in fac] == [(1, 1), (1, 1)]
        assert expand(fac, E) == f
        assert all(is_irreducible(g) for g, _ in fac)

    def test_factor_over_f4_char2(self):
        E = ExtensionField(P(F2, 1, 1, 1))
        # x^4 + x splits into linear factors over F_4
        f = Poly(E, [0, 1, 0, 0, 1])
        fac = factor_poly(f, RandomSource(11))
        assert [(g.degree, m) for g, m in fac] == [(1, 1)] * 4
        assert expand(fac, E) == f
