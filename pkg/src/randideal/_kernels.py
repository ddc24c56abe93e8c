"""numba kernels for batched rejection sampling.

Bounded draws use numba's ``random.randrange``, which rejects on bit
blocks exactly like CPython, so every Bernoulli trial here is exact.
A trial stops drawing as soon as it is certain to be rejected.
"""

import random

import numpy as np
from numba import njit


@njit(cache=True)
def nf_sample(seed, count, m, residues, caps, small_primes, is_prime, N, acc_num, acc_den, max_trials):
    random.seed(seed)
    out_r = np.zeros(count, np.int64)
    out_t = np.zeros(count, np.int64)
    for i in range(count):
        t = 0
        while True:
            t += 1
            if t > max_trials:
                return out_r, out_t, i
            r = 1
            ok = True
            for li in range(residues.size):
                b = residues[li]
                j = caps[li]
                while j > 0:
                    u = random.randrange(j * m + 1)
                    if u == 0:
                        break
                    j = (u + m - 1) // m
                    s = j * m + b
                    if is_prime[s]:
                        r *= s
                        if r > N:
                            ok = False
                            break
                if not ok:
                    break
            if not ok:
                continue
            for k in range(small_primes.size):
                p = small_primes[k]
                while random.randrange(p) < p - 1:
                    r *= p
                    if r > N:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                continue
            num = acc_num[r]
            if num == 0:
                continue
            if random.randrange(acc_den[r]) < num:
                out_r[i] = r
                out_t[i] = t
                break
    return out_r, out_t, count


@njit(cache=True)
def nf_candidates(seed, count, m, residues, caps, small_primes, is_prime, N):
    """Raw candidates (no acceptance step); values above N are reported as N + 1."""
    random.seed(seed)
    out = np.zeros(count, np.int64)
    for i in range(count):
        r = 1
        for li in range(residues.size):
            b = residues[li]
            j = caps[li]
            while j > 0:
                u = random.randrange(j * m + 1)
                if u == 0:
                    break
                j = (u + m - 1) // m
                s = j * m + b
                if is_prime[s]:
                    r = min(r * s, N + 1)
        for k in range(small_primes.size):
            p = small_primes[k]
            while random.randrange(p) < p - 1:
                r = min(r * p, N + 1)
        out[i] = r
    return out


@njit(cache=True)
def ff_sample(seed, count, d, caps, small_ints, cls, deg, digits, q, N, limit, enc_mode, acc_num, acc_den, max_trials):
    """Function-field analogue; the accepted key is the encoding of the norm polynomial.

    ``cls[s]``: 0 if decode(s) is not irreducible, 1 if monic irreducible,
    2 if irreducible but not monic (forces D = 0).  ``limit = q**(N+1)``.
    """
    random.seed(seed)
    out_k = np.zeros(count, np.int64)
    out_t = np.zeros(count, np.int64)
    G = np.zeros(N + 1, np.int64)
    H = np.zeros(N + 1, np.int64)
    for i in range(count):
        t = 0
        while True:
            t += 1
            if t > max_trials:
                return out_k, out_t, i
            G[:] = 0
            G[0] = 1
            dg = 0
            r = 1
            ok = True
            for bi in range(d):
                b = bi + 1
                j = caps[bi]
                while j > 0:
                    u = random.randrange(j * d + 1)
                    if u == 0:
                        break
                    j = (u + d - 1) // d
                    s = j * d + b
                    c = cls[s]
                    if c == 0:
                        continue
                    if c == 2 or dg + deg[s] > N:
                        ok = False
                        break
                    if enc_mode:
                        r *= s
                        if r >= limit:
                            ok = False
                            break
                    ds = deg[s]
                    H[:] = 0
                    for a in range(dg + 1):
                        ga = G[a]
                        if ga:
                            for e in range(ds + 1):
                                H[a + e] = (H[a + e] + ga * digits[s, e]) % q
                    G[:] = H
                    dg += ds
                if not ok:
                    break
            if not ok:
                continue
            for k in range(small_ints.size):
                p = small_ints[k]
                while random.randrange(p) < p - 1:
                    c = cls[p]
                    if c == 2 or dg + deg[p] > N:
                        ok = False
                        break
                    if enc_mode:
                        r *= p
                        if r >= limit:
                            ok = False
                            break
                    ds = deg[p]
                    H[:] = 0
                    for a in range(dg + 1):
                        ga = G[a]
                        if ga:
                            for e in range(ds + 1):
                                H[a + e] = (H[a + e] + ga * digits[p, e]) % q
                    G[:] = H
                    dg += ds
                if not ok:
                    break
            if not ok:
                continue
            key = 0
            for a in range(dg, -1, -1):
                key = key * q + G[a]
            num = acc_num[key]
            if num == 0:
                continue
            if random.randrange(acc_den[key]) < num:
                out_k[i] = key
                out_t[i] = t
                break
    return out_k, out_t, count
