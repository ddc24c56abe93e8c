import collections
import itertools

import pytest
from hypothesis import given, strategies as st

from randideal.arith import RandIdealError, RandomSource
from randideal.ffpoly import Poly, PrimeField, factor_poly, poly_gcd
from randideal.funcfield import (
    FactoredPoly,
    decode,
    encode,
    ff_acceptance_probability,
    ff_candidate_probability,
    ff_count_norm,
    ff_derive_params,
    ff_enumerate_ideals,
    ff_generate_candidate,
    ff_proportionality_constant,
    ff_sample_ideals,
    ff_sample_norms,
    ff_split,
    ff_support,
    make_function_field,
    monic_irreducibles,
)

from conftest import chisquare_counts

F3 = PrimeField(3)


def T(*coeffs):
    return Poly(F3, coeffs)


def factored(g):
    if g.degree == 0:
        return FactoredPoly(g, ())
    fac = factor_poly(g, RandomSource(encode(g)))
    return FactoredPoly(g, tuple(fac))


def monic_of_degree(q, n):
    for low in itertools.product(range(q), repeat=n):
        yield Poly(PrimeField(q), list(low) + [1])


@pytest.fixture(scope="module")
def elliptic():
    # y^2 = t^3 + 2t + 1 over F_3
    return make_function_field(3, [[2, 1, 0, 2], [], [1]], label="elliptic")


@pytest.fixture(scope="module")
def rational_d1():
    return make_function_field(3, [[], [1]], label="F_3[t]")


class TestDigits:
    def test_examples(self):
        assert encode(T(2, 0, 1)) == 11
        assert decode(4, 3) == T(1, 1)
        assert decode(0, 3).is_zero()

    @given(st.sampled_from([2, 3, 5, 7]), st.integers(0, 10**12))
    def test_bijection(self, q, n):
        assert encode(decode(n, q)) == n

    def test_round_trip_random(self):
        rng = RandomSource(1)
        for _ in range(10**4):
            q = (2, 3, 5, 7)[rng.below(4)]
            g = Poly(PrimeField(q), [rng.below(q) for _ in range(rng.below(12))])
            assert decode(encode(g), q) == g

    def test_not_multiplicative(self):
        g, h = T(1, 1), T(2, 1)
        assert encode(g * h) != encode(g) * encode(h)

    def test_negative(self):
        with pytest.raises(ValueError):
            decode(-1, 3)


class TestSplit:
    def test_examples(self, ff_sqrt_t):
        assert [(P.e, P.f) for P in ff_split(ff_sqrt_t, T(0, 1)).primes_above] == [(2, 1)]
        assert [(P.e, P.f) for P in ff_split(ff_sqrt_t, T(2, 1)).primes_above] == [(1, 1), (1, 1)]
        assert [(P.e, P.f) for P in ff_split(ff_sqrt_t, T(1, 1)).primes_above] == [(1, 2)]

    @pytest.mark.parametrize("which", ["sqrt_t", "elliptic"])
    def test_sum_ef(self, ff_sqrt_t, elliptic, which):
        K = ff_sqrt_t if which == "sqrt_t" else elliptic
        for pi in monic_irreducibles(3, 5):
            s = ff_split(K, pi)
            assert sum(P.e * P.f for P in s.primes_above) == K.d

    def test_index_divisor_error(self):
        # y^2 - t^3: t divides the index
        K = make_function_field(3, [[0, 0, 0, 2], [], [1]])
        with pytest.raises(RandIdealError, match="supply override"):
            ff_split(K, T(0, 1))

    def test_override(self):
        K = make_function_field(3, [[0, 0, 0, 2], [], [1]], overrides={"3": [[2, 1, [[0], [1]]]]})
        s = ff_split(K, T(0, 1))
        assert s.source == "override" and [(P.e, P.f) for P in s.primes_above] == [(2, 1)]

    @pytest.mark.parametrize("bad", [dict(q=4, coeffs=[[1], [1]]), dict(q=3, coeffs=[[1], [2]]), dict(q=3, coeffs=[[1]])])
    def test_bad_fields(self, bad):
        with pytest.raises(ValueError):
            make_function_field(bad["q"], bad["coeffs"])


class TestCount:
    def test_examples(self, ff_sqrt_t):
        assert ff_count_norm(ff_sqrt_t, factored(T(1))) == 1
        assert ff_count_norm(ff_sqrt_t, factored(T(0, 0, 1))) == 1
        assert ff_count_norm(ff_sqrt_t, factored(T(2, 1) * T(2, 1))) == 3

    def test_non_monic_counts_zero(self, ff_sqrt_t):
        assert ff_count_norm(ff_sqrt_t, FactoredPoly(T(0, 2), ((T(0, 2), 1),))) == 0

    def test_multiplicative(self, elliptic):
        rng = RandomSource(2)
        polys = [g for n in range(1, 4) for g in monic_of_degree(3, n)]
        for _ in range(300):
            g, h = polys[rng.below(len(polys))], polys[rng.below(len(polys))]
            if g.degree < 1 or h.degree < 1:
                continue
            if not poly_gcd(g, h).is_one():
                continue
            assert ff_count_norm(elliptic, factored(g * h)) == ff_count_norm(elliptic, factored(g)) * ff_count_norm(
                elliptic, factored(h)
            )

    def test_degree_law(self, ff_sqrt_t, elliptic):
        for K in (ff_sqrt_t, elliptic):
            ratios = []
            for n in range(2, 7):
                a_n = sum(ff_count_norm(K, factored(g)) for g in monic_of_degree(3, n))
                ratios.append(a_n / 3**n)
            assert max(ratios) < 1.5 * min(ratios)
        # genus zero: ideals of F_3[y] of norm degree n are the 3^n monic polynomials
        assert all(sum(ff_count_norm(ff_sqrt_t, factored(g)) for g in monic_of_degree(3, n)) == 3**n for n in range(1, 6))


class TestSampler:
    def test_params(self, ff_sqrt_t):
        P = ff_derive_params(ff_sqrt_t, 4, "exact-degree")
        assert P.modulus == 2 and P.residues == (1, 2) and P.limit == 3**5
        assert P.L == (3**5 - 1).bit_length() - 1 and P.constant == 6**4
        assert P.small_ints == ()  # decode(2) is a constant, not irreducible
        assert ff_derive_params(ff_sqrt_t, 4).constant == 3**5

    def test_bad_mode(self, ff_sqrt_t):
        with pytest.raises(ValueError):
            ff_derive_params(ff_sqrt_t, 4, "fast")

    @pytest.mark.parametrize("mode", ["encoding-bounded", "exact-degree"])
    @pytest.mark.parametrize("N", [1, 2, 3, 4])
    def test_proportionality(self, ff_sqrt_t, elliptic, mode, N):
        for K in (ff_sqrt_t, elliptic):
            const, bad = ff_proportionality_constant(ff_derive_params(K, N, mode))
            assert bad == [] and const > 0

    def test_supports(self, ff_sqrt_t):
        enc = set(ff_support(ff_derive_params(ff_sqrt_t, 3, "encoding-bounded")))
        exact = set(ff_support(ff_derive_params(ff_sqrt_t, 3, "exact-degree")))
        assert enc < exact
        assert len(exact) == sum(3**n for n in range(4))

    def test_acceptance_at_most_one(self, elliptic):
        for mode in ("encoding-bounded", "exact-degree"):
            P = ff_derive_params(elliptic, 4, mode)
            for ms in ff_support(P):
                assert 0 <= ff_acceptance_probability(P, ms) <= 1

    def test_outside_support(self, ff_sqrt_t):
        P = ff_derive_params(ff_sqrt_t, 2, "exact-degree")
        with pytest.raises(ValueError):
            ff_acceptance_probability(P, [encode(T(1, 0, 0, 1))])

    def test_candidate_monte_carlo(self, ff_sqrt_t):
        P = ff_derive_params(ff_sqrt_t, 2, "encoding-bounded")
        rng = RandomSource(12)
        n = 4 * 10**4
        keys = []
        support = set(ff_support(P))
        for _ in range(n):
            ms = ff_generate_candidate(P, rng).multiset
            keys.append(ms if ms in support else "other")
        exp = {ms: ff_candidate_probability(P, ms) for ms in support}
        exp["other"] = 1 - sum(exp.values())
        assert chisquare_counts(keys, exp) > 1e-3

    def test_d1_uniform_python(self, rational_d1):
        for mode in ("encoding-bounded", "exact-degree"):
            P = ff_derive_params(rational_d1, 2, mode)
            out = ff_sample_norms(P, 3000, RandomSource(1), engine="python")
            support = {FactoredPoly.from_irreducibles([decode(s, 3) for s in ms], 3).value for ms in ff_support(P)}
            assert chisquare_counts([g.value for g, _ in out], {g: 1 for g in support}) > 1e-3

    @pytest.mark.parametrize("mode", ["encoding-bounded", "exact-degree"])
    def test_d1_uniform_n4(self, rational_d1, mode):
        P = ff_derive_params(rational_d1, 4, mode)
        out = ff_sample_norms(P, 10**5, RandomSource(4), engine="compiled")
        support = ff_support(P)
        if mode == "exact-degree":
            assert len(support) == 121
        exp = {FactoredPoly.from_irreducibles([decode(s, 3) for s in ms], 3).value: 1 for ms in support}
        assert chisquare_counts([g.value for g, _ in out], exp) > 1e-3

    @pytest.mark.parametrize("mode", ["encoding-bounded", "exact-degree"])
    def test_ideals_uniform(self, ff_sqrt_t, mode):
        ideals = ff_enumerate_ideals(ff_sqrt_t, 3, mode)
        keys = [I.key() for I, _ in ff_sample_ideals(ff_sqrt_t, 3, mode, 3 * 10**4, RandomSource(3))]
        assert chisquare_counts(keys, {I.key(): 1 for I in ideals}) > 1e-3

    def test_engines_agree_in_law(self, elliptic):
        P = ff_derive_params(elliptic, 2, "encoding-bounded")
        for engine, n in (("python", 2000), ("compiled", 2 * 10**4)):
            out = ff_sample_norms(P, n, RandomSource(8), engine=engine)
            exp = collections.Counter()
            for ms in ff_support(P):
                g = FactoredPoly.from_irreducibles([decode(s, 3) for s in ms], 3)
                exp[g.value] += ff_count_norm(elliptic, g)
            exp = {k: v for k, v in exp.items() if v}
            assert chisquare_counts([g.value for g, _ in out], exp) > 1e-3

    @pytest.mark.parametrize("engine", ["python", "compiled"])
    def test_outputs_and_determinism(self, ff_sqrt_t, engine):
        a = ff_sample_ideals(ff_sqrt_t, 3, "exact-degree", 30, RandomSource(5), engine=engine)
        b = ff_sample_ideals(ff_sqrt_t, 3, "exact-degree", 30, RandomSource(5), engine=engine)
        assert [I.key() for I, _ in a] == [I.key() for I, _ in b]
        for I, trials in a:
            assert I.recomputed_norm() == I.norm.value and I.norm.degree <= 3 and trials >= 1
            assert I.norm.value.is_monic()

    def test_encoding_mode_degree_bound(self, elliptic):
        for g, _ in ff_sample_norms(ff_derive_params(elliptic, 3), 500, RandomSource(6)):
            assert g.degree <= 3
