"""Independent reference implementations for cross-checking.

Everything here is deliberately written against different algorithms than
the package: factorization-based arithmetic functions instead of segmented
sieves, dense matrix transforms instead of butterflies, direct exponential
sums instead of product formulas, and plain Python loops for the sum
objects.  Slow is fine; agreeing by construction is not allowed.
"""

from __future__ import annotations

import math

import numpy as np


# ---------------------------------------------------------------------------
# arithmetic functions via smallest-prime-factor factorization


def spf_table(limit: int) -> np.ndarray:
    """spf[n] = smallest prime factor of n (spf[0] = spf[1] = 0)."""
    spf = np.zeros(limit, dtype=np.int64)
    if limit > 2:
        spf[2::2] = 2
    for p in range(3, int(limit**0.5) + 1, 2):
        if spf[p] == 0:
            sl = spf[p * p : limit : p]
            sl[sl == 0] = p
    # remaining zeros above 1 are primes
    rest = np.arange(limit, dtype=np.int64)
    primes_left = (spf == 0) & (rest >= 2)
    spf[primes_left] = rest[primes_left]
    return spf


def factor_counts(limit: int):
    """(omega_distinct, omega_total, squarefree flag, prime_power_base) per n.

    Vectorized repeated division by the smallest prime factor; the number
    of rounds is bounded by log2(limit).
    """
    spf = spf_table(limit)
    n = np.arange(limit, dtype=np.int64)
    rem = n.copy()
    rem[:2] = 1
    omega_total = np.zeros(limit, dtype=np.int64)
    squarefree = np.ones(limit, dtype=bool)
    squarefree[0] = False
    omega_distinct = np.zeros(limit, dtype=np.int64)
    while True:
        active = rem > 1
        if not active.any():
            break
        p = np.where(active, spf[rem], 0)
        omega_distinct += active
        # strip the full power of p, counting multiplicity
        mult = np.zeros(limit, dtype=np.int64)
        while True:
            div = active & (rem % np.where(p > 0, p, 2) == 0) & (p > 0)
            if not div.any():
                break
            rem[div] //= p[div]
            mult[div] += 1
            active = div
        squarefree &= mult <= 1
        omega_total += mult
    return omega_distinct, omega_total, squarefree


def moebius_values(limit: int) -> np.ndarray:
    distinct, total, squarefree = factor_counts(limit)
    out = np.zeros(limit, dtype=np.int64)
    out[squarefree] = np.where(distinct[squarefree] % 2 == 0, 1, -1)
    out[1] = 1
    out[0] = 0
    return out


def liouville_values(limit: int) -> np.ndarray:
    _, total, _ = factor_counts(limit)
    out = np.where(total % 2 == 0, 1, -1).astype(np.int64)
    out[0] = 0
    return out


def von_mangoldt_values(limit: int) -> np.ndarray:
    """log p on prime powers, via direct enumeration of p^k <= limit."""
    out = np.zeros(limit, dtype=np.float64)
    spf = spf_table(limit)
    primes = np.nonzero((spf == np.arange(limit)) & (np.arange(limit) >= 2))[0]
    for p in primes:
        v = int(p)
        while v < limit:
            out[v] = math.log(p)
            v *= int(p)
    return out


def mertens(values: np.ndarray, x: int) -> int:
    return int(values[1 : x + 1].sum())


# ---------------------------------------------------------------------------
# dense transforms


def sign_matrix(lam: int) -> np.ndarray:
    """H[A, x] = (-1)^popcount(A & x), the full character table."""
    idx = np.arange(1 << lam, dtype=np.uint64)
    parity = np.bitwise_count(idx[:, None] & idx[None, :]) & 1
    return (1 - 2 * parity.astype(np.int64)).astype(np.int64)


def naive_fwht(values: np.ndarray) -> np.ndarray:
    """O(4^lam) direct correlation table."""
    lam = int(np.log2(len(values)))
    h = sign_matrix(lam)
    if np.issubdtype(values.dtype, np.integer):
        return h @ values.astype(np.int64)
    return h.astype(np.float64) @ values


def dft_coefficients(samples: np.ndarray) -> np.ndarray:
    """c_k with samples[x] = sum_k c_k e(+kx/n), by direct exponential sum."""
    n = len(samples)
    x = np.arange(n)
    e = np.exp(-2j * np.pi * np.outer(np.arange(n), x) / n)
    return (e @ samples.astype(np.complex128)) / n


def walsh_samples(lam: int, bits: int) -> np.ndarray:
    """w_A sampled by per-bit sign products (no shared kernel code)."""
    x = np.arange(1 << lam, dtype=np.int64)
    out = np.ones(1 << lam, dtype=np.int64)
    for j in range(lam):
        if (bits >> j) & 1:
            out *= 1 - 2 * ((x >> j) & 1)
    return out


# ---------------------------------------------------------------------------
# sum objects, plain loops


def naive_type1(s_bits: int, mu: int, nu: int) -> float:
    total = 0.0
    for m in range(1 << mu, 1 << (mu + 1)):
        inner = 0
        for n in range(1 << nu, 1 << (nu + 1)):
            inner += 1 if ((m * n) & s_bits).bit_count() % 2 == 0 else -1
        total += abs(inner)
    return float(total)


def naive_bilinear(s_bits: int, mu: int, nu: int, beta=None) -> float:
    total = 0.0
    for m in range(1 << mu, 1 << (mu + 1)):
        inner = 0.0
        for i, n in enumerate(range(1 << nu, 1 << (nu + 1))):
            w = 1 if ((m * n) & s_bits).bit_count() % 2 == 0 else -1
            inner += w * (1.0 if beta is None else beta[i])
        total += abs(inner)
    return float(total)


def naive_quadform(s_bits: int, mu: int, nu: int, rho: int, k_shift: int):
    """sum over n ~ N, |l| < L of |sum over m ~ M of w_S(mn) w_S(m(n+l 2^K))|."""
    big_l = 1 << rho
    total = 0.0
    clipped = 0
    for n in range(1 << nu, 1 << (nu + 1)):
        for ell in range(-big_l + 1, big_l):
            shifted = n + ell * (1 << k_shift)
            if shifted <= 0:
                clipped += 1 << mu
                continue
            inner = 0
            for m in range(1 << mu, 1 << (mu + 1)):
                w1 = 1 if ((m * shifted) & s_bits).bit_count() % 2 == 0 else -1
                w2 = 1 if ((m * n) & s_bits).bit_count() % 2 == 0 else -1
                inner += w1 * w2
            total += abs(inner)
    return float(total), clipped


def naive_carry_rate(mu: int, nu: int, rho: int, epsilon: float, k_shift: int):
    """(union rate, low rate): digit disagreement of m*(n + l 2^K) vs m*n
    above position floor(K + mu + rho + eps*rho) or below position K, over
    all triples with l != 0."""
    tau = k_shift + mu + rho + epsilon * rho
    first_bad = math.floor(tau) + 1
    low_mask = (1 << k_shift) - 1
    bad = 0
    low_bad = 0
    count = 0
    for m in range(1 << mu, 1 << (mu + 1)):
        for n in range(1 << nu, 1 << (nu + 1)):
            for ell in range(-(1 << rho) + 1, 1 << rho):
                if ell == 0:
                    continue
                shifted = n + ell * (1 << k_shift)
                count += 1
                diff = (m * shifted) ^ (m * n)
                high = (diff >> first_bad) != 0
                lowm = (diff & low_mask) != 0
                if high or lowm:
                    bad += 1
                if lowm:
                    low_bad += 1
    return bad / count, low_bad / count
