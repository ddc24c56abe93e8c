"""Compiled-path tables for the function-field sampler."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._engine import INT64_SAFE
from .arith import RandIdealError


@dataclass
class FFTable:
    cls: np.ndarray
    deg: np.ndarray
    digits: np.ndarray
    acc_num: np.ndarray
    acc_den: np.ndarray
    norms: dict
    fits: bool


def build_ff_table(params) -> FFTable:
    from .funcfield import FactoredPoly, _ff_acceptance_parts, decode, encode, ff_count_norm, ff_support

    q, N, limit = params.q, params.N, params.limit
    cls = np.zeros(limit, np.uint8)
    deg = np.zeros(limit, np.int64)
    digits = np.zeros((limit, N + 1), np.int64)
    for s in range(1, limit):
        g = decode(s, q)
        deg[s] = g.degree
        digits[s, : len(g.coeffs)] = g.coeffs
        if g.degree >= 1 and params.irreducible(s):
            cls[s] = 1 if g.is_monic() else 2
    acc_num = np.zeros(limit, np.int64)
    acc_den = np.ones(limit, np.int64)
    norms = {}
    fits = True
    for ms in ff_support(params):
        g = FactoredPoly.from_irreducibles([decode(s, q) for s in ms], q)
        D = ff_count_norm(params.field, g)
        if D == 0:
            continue
        acc = _ff_acceptance_parts(params, ms, D)
        if acc.denominator >= INT64_SAFE:
            fits = False
            break
        key = encode(g.value)
        acc_num[key] = acc.numerator
        acc_den[key] = acc.denominator
        norms[key] = g
    return FFTable(cls, deg, digits, acc_num, acc_den, norms, fits)


def ff_sample_compiled(params, count, rng, max_trials):
    from ._kernels import ff_sample

    t = params._table
    if not t.fits:
        raise RandIdealError("acceptance table does not fit in int64; use engine='python'")
    caps = np.array([params.caps[b] for b in params.residues], np.int64)
    small = np.array(params.small_ints, np.int64)
    keys, trials, done = ff_sample(
        rng.spawn_seed(), count, params.d, caps, small, t.cls, t.deg, t.digits,
        params.q, params.N, params.limit, params.mode == "encoding-bounded",
        t.acc_num, t.acc_den, max_trials,
    )
    if done < count:
        raise RandIdealError(f"no acceptance after {max_trials} trials (N={params.N})")
    return [(t.norms[int(k)], int(n)) for k, n in zip(keys, trials)]
