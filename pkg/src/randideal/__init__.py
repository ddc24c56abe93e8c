"""Uniformly random factored ideals of number fields and function fields.

Quick start::

    from randideal import RandomSource, make_field, sample_ideal
    K = make_field([1, 0, 1], label="Q(i)")
    ideal, trials = sample_ideal(K, 100, RandomSource(7))
"""

from .arith import (
    FactoredInteger,
    RandIdealError,
    RandomSource,
    bernoulli_exact,
    binomial_coeff,
    is_probable_prime,
    uniform_below,
)
from .funcfield import (
    FunctionFieldDesc,
    encode,
    decode,
    ff_count_norm,
    ff_derive_params,
    ff_enumerate_ideals,
    ff_sample_ideal,
    ff_sample_ideals,
    ff_sample_norm,
    ff_split,
    load_function_field,
    make_function_field,
)
from .idealcount import (
    IdealFactorization,
    count_norm,
    count_prime_power,
    enumerate_ideals,
    norm_counts,
    unrank_solution,
)
from .kalai import kalai_round, sample_uniform_factored
from .numberfield import NumberFieldDesc, PrimeSplitting, load_field, make_field, split_prime
from .sampler import (
    SamplerParams,
    acceptance_probability,
    candidate_probability,
    derive_params,
    generate_candidate,
    psi,
    sample_ideal,
    sample_ideals,
    sample_norm,
    sample_norms,
)

__version__ = "0.1.0"
