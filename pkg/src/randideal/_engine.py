"""Glue between the exact samplers and the compiled kernels.

The compiled path tabulates the exact acceptance probability of every
possible accepted outcome, so it is restricted to desk-scale bounds where
that table is small and every numerator/denominator fits in int64.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arith import RandIdealError, factor_with_spf, primes_up_to, smallest_prime_factors

INT64_SAFE = 1 << 62


@dataclass
class NFTable:
    is_prime: np.ndarray
    acc_num: np.ndarray
    acc_den: np.ndarray
    spf: list
    fits: bool


def build_nf_table(params) -> NFTable:
    from .idealcount import norm_counts
    from .sampler import _acceptance_parts

    N = params.N
    is_prime = np.zeros(N + 1, np.uint8)
    for p in primes_up_to(N):
        is_prime[p] = 1
    spf = smallest_prime_factors(N)
    D = norm_counts(params.field, N)
    num = np.zeros(N + 1, np.int64)
    den = np.ones(N + 1, np.int64)
    fits = True
    for n in range(1, N + 1):
        if D[n] == 0:
            continue
        acc = _acceptance_parts(params, factor_with_spf(n, spf), D[n])
        if acc.denominator >= INT64_SAFE:
            fits = False
            break
        num[n] = acc.numerator
        den[n] = acc.denominator
    return NFTable(is_prime, num, den, spf, fits)


def _nf_arrays(params):
    residues = np.array(params.residues, np.int64)
    caps = np.array([params.caps[b] for b in params.residues], np.int64)
    small = np.array(params.small_primes, np.int64)
    return residues, caps, small


def nf_sample_compiled(params, count, rng, max_trials):
    from ._kernels import nf_sample

    table = params._table
    if not table.fits:
        raise RandIdealError("acceptance table does not fit in int64; use engine='python'")
    residues, caps, small = _nf_arrays(params)
    rs, ts, done = nf_sample(
        rng.spawn_seed(), count, params.modulus, residues, caps, small,
        table.is_prime, params.N, table.acc_num, table.acc_den, max_trials,
    )
    if done < count:
        raise RandIdealError(f"no acceptance after {max_trials} trials (N={params.N})")
    return [(factor_with_spf(int(r), table.spf), int(t)) for r, t in zip(rs, ts)]


def nf_candidates_compiled(params, count, rng) -> np.ndarray:
    from ._kernels import nf_candidates

    residues, caps, small = _nf_arrays(params)
    return nf_candidates(
        rng.spawn_seed(), count, params.modulus, residues, caps, small, params._table.is_prime, params.N
    )
