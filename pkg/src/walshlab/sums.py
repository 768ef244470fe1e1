"""Exact desk-scale evaluation of the correlation and bilinear-sum objects.

Ranges are dyadic throughout: m ~ M means M <= m < 2M with M = 2^mu.  A
product m*n with m ~ 2^mu, n ~ 2^nu needs mu+nu+2 bits, so Walsh masks here
live in that extended ambient width and are read at absolute bit positions.
Every quantity is computed exactly and compared against its predicted bound;
the implied constants are measured, never assumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product as iter_product

import numpy as np

from .fwht import max_correlation
from .lemmas import CheckReport, _ratio
from .sieve import ArithmeticSequence, sequence
from .walsh import magnitude_row, sup_norm, walsh_signs, walsh_table, WalshMask

CARRY_BRACKET = 8.0   # measured rates stay below 0.53 * 2^(-eps*rho) on the grid
SPLIT_BRACKET = 8.0   # measured L1 truncation error stays below 2.1 * 2^(-H)
FREQ_BRACKET = 4.0


@dataclass(frozen=True)
class BilinearConfig:
    """Ranges, mask, coefficients, and shift structure for the sum objects.

    s_bits is read in the lam+2 = mu+nu+2 bit ambient width.  L = 2^rho
    shifts of scale 2^K must stay inside the inner range (L * 2^K < N).
    K is admissible when it is 0 or mu-rho <= K < lam-mu-rho (half-open).
    Coefficient tables alpha (length M) and beta (length N) are bounded by
    1 in absolute value; None means all-ones.
    """

    s_bits: int
    mu: int
    nu: int
    rho: int = 1
    k_shift: int = 0
    epsilon: float = 0.5
    beta: np.ndarray | None = None
    alpha: np.ndarray | None = None

    def __post_init__(self):
        if not 1 <= self.mu <= self.nu:
            raise ValueError(f"need 1 <= mu <= nu, got mu={self.mu}, nu={self.nu}")
        if self.rho < 0:
            raise ValueError(f"rho must be nonnegative, got {self.rho}")
        if not 0 <= self.s_bits < (1 << self.lam_prime):
            raise ValueError(
                f"mask {self.s_bits:#x} needs more than {self.lam_prime} bits"
            )
        if self.k_shift != 0 and not (
            self.mu - self.rho <= self.k_shift < self.lam - self.mu - self.rho
        ):
            raise ValueError(
                f"shift scale K={self.k_shift} is not admissible: need K=0 or "
                f"{self.mu - self.rho} <= K < {self.lam - self.mu - self.rho}"
            )
        if self.shift_count << self.k_shift >= self.n_count:
            raise ValueError(
                f"shift span L*2^K = {self.shift_count << self.k_shift} "
                f"must stay below N = {self.n_count}"
            )
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        for name, table, count in (("alpha", self.alpha, self.m_count),
                                   ("beta", self.beta, self.n_count)):
            if table is None:
                continue
            if len(table) != count:
                raise ValueError(f"{name} must have length {count}")
            if np.abs(np.asarray(table, dtype=np.float64)).max() > 1.0 + 1e-12:
                raise ValueError(f"{name} entries must satisfy |.| <= 1")

    @property
    def lam(self) -> int:
        return self.mu + self.nu

    @property
    def lam_prime(self) -> int:
        """Bits needed to index any product mn < 4MN."""
        return self.mu + self.nu + 2

    @property
    def m_count(self) -> int:
        return 1 << self.mu

    @property
    def n_count(self) -> int:
        return 1 << self.nu

    @property
    def shift_count(self) -> int:
        return 1 << self.rho

    @property
    def advisories(self) -> list[str]:
        """Regime flags that are recorded, not enforced."""
        notes = []
        if self.rho >= self.mu / 100.0:
            notes.append("shift count is large relative to the inner regime (rho >= mu/100)")
        if (self.epsilon * self.rho) % 1.0 != 0.0:
            notes.append("eps*rho is not an integer; the digit window rounds up")
        return notes

    def beta_table(self) -> np.ndarray:
        if self.beta is None:
            return np.ones(self.n_count, dtype=np.float64)
        return np.asarray(self.beta, dtype=np.float64)

    def alpha_table(self) -> np.ndarray:
        if self.alpha is None:
            return np.ones(self.m_count, dtype=np.float64)
        return np.asarray(self.alpha, dtype=np.float64)


_COEFF_ROLES = {"alpha": 1, "beta": 2}


def coefficient_table(kind: str, count: int, seed: int, role: str) -> np.ndarray | None:
    """Generator for alpha/beta tables: all-ones or seeded signs."""
    if kind == "ones":
        return None
    if kind == "random":
        rng = np.random.default_rng([seed, _COEFF_ROLES[role], count])
        return (rng.integers(0, 2, size=count) * 2 - 1).astype(np.float64)
    raise ValueError(f"unknown coefficient kind {kind!r}")


def _ranges(config: BilinearConfig):
    m = np.arange(config.m_count, 2 * config.m_count, dtype=np.int64)
    n = np.arange(config.n_count, 2 * config.n_count, dtype=np.int64)
    return m, n


# ---------------------------------------------------------------------------
# sum objects


def bilinear_sum(config: BilinearConfig) -> float:
    """sum over m ~ M of |sum over n ~ N of beta_n w_S(m n)|.

    The outer coefficients enter the estimate only through |alpha| <= 1, so
    the dominating absolute form is the computed quantity.
    """
    m, n = _ranges(config)
    beta = config.beta_table()
    total = 0.0
    for mv in m:
        signs = walsh_signs(config.s_bits, mv * n)
        total += abs(float(np.dot(beta, signs.astype(np.float64))))
    return total


def bilinear_signed(config: BilinearConfig) -> float:
    """|sum_m alpha_m sum_n beta_n w_S(mn)| with concrete alpha.

    Exploration variant; bounds in reports always use bilinear_sum.
    """
    m, n = _ranges(config)
    alpha, beta = config.alpha_table(), config.beta_table()
    total = 0.0
    for i, mv in enumerate(m):
        signs = walsh_signs(config.s_bits, mv * n)
        total += alpha[i] * float(np.dot(beta, signs.astype(np.float64)))
    return abs(total)


def type1_sum(s_bits: int, mu: int, nu: int) -> float:
    """sum over m ~ M of |sum over n ~ N of w_S(mn)| (all-ones inner table)."""
    return bilinear_sum(BilinearConfig(s_bits=s_bits, mu=mu, nu=nu))


@dataclass(frozen=True)
class QuadFormResult:
    value: float
    clipped_terms: int
    prefactor: float  # the M*N/L factor, reported alongside, never multiplied in
    config: BilinearConfig


def shifted_quadratic_form(config: BilinearConfig) -> QuadFormResult:
    """sum over n ~ N, |l| < L of |sum over m ~ M of w_S(mn) w_S(m(n+l*2^K))|.

    The l = 0 diagonal contributes exactly N*M.  Shifted arguments are
    always positive under the L*2^K < N precondition; a nonpositive one
    (unreachable through validated configs) would be skipped and counted in
    clipped_terms.  The M*N/L prefactor of the enclosing estimate is
    reported separately, never multiplied in.
    """
    m, n = _ranges(config)
    big_l = config.shift_count
    step = 1 << config.k_shift
    total = 0.0
    clipped = 0
    for nv in n:
        base = walsh_signs(config.s_bits, nv * m).astype(np.float64)
        for ell in range(-big_l + 1, big_l):
            shifted = nv + ell * step
            if shifted <= 0:
                clipped += len(m)
                continue
            other = walsh_signs(config.s_bits, shifted * m).astype(np.float64)
            total += abs(float(np.dot(base, other)))
    prefactor = config.m_count * config.n_count / big_l
    return QuadFormResult(total, clipped, prefactor, config)


@dataclass(frozen=True)
class CarryResult:
    rate: float
    low_rate: float            # digit changes strictly below position K
    bad_count: int
    low_count: int
    total: int
    first_checked_bit: int     # smallest position counted as the high window


def carry_truncation_rate(config: BilinearConfig) -> CarryResult:
    """Fraction of (m, n, l) triples, l != 0, where the digits of m*n and
    m*(n + l*2^K) differ above the carry window or below the shift scale.

    Adding l*2^K changes digits from position K upward; carries normally die
    out within about mu+rho positions, so differences above
    K + mu + rho + eps*rho are the rare carry-propagation events being
    rated.  Differences below K are impossible and counted separately as a
    sanity channel (always zero).
    """
    m, n = _ranges(config)
    tau = config.k_shift + config.mu + config.rho + config.epsilon * config.rho
    first_bad = math.floor(tau) + 1
    low_mask = (1 << config.k_shift) - 1
    step = 1 << config.k_shift
    big_l = config.shift_count
    bad = 0
    low = 0
    total = 0
    mn = np.outer(m, n)
    for ell in range(-big_l + 1, big_l):
        if ell == 0:
            continue
        shifted = np.outer(m, n + ell * step)
        diff = np.bitwise_xor(mn, shifted)
        high_moved = (diff >> first_bad) != 0
        low_moved = (diff & low_mask) != 0
        bad += int((high_moved | low_moved).sum())
        low += int(low_moved.sum())
        total += diff.size
    if total == 0:
        return CarryResult(0.0, 0.0, 0, 0, 0, first_bad)
    return CarryResult(bad / total, low / total, bad, low, total, first_bad)


@dataclass(frozen=True)
class FrequencyTestResult:
    value: float
    bound: float        # N * M^2 * lam^2 * sup|coefficients|
    threshold: float
    vacuous: bool


def frequency_test_count(
    s_bits: int, lam: int, mu: int, threshold: float | None = None
) -> FrequencyTestResult:
    """N * sum over m ~ M, k < 2^lam of |w^_S(k)| [dist(km/2^lam) < thr].

    dist is the distance to the nearest integer.  N is the complementary
    dyadic scale 2^(lam-mu); thr defaults to lam^2/N.  A threshold >= 1/2
    makes the indicator vacuous (dist never exceeds 1/2) and the sum
    collapses to N * M * l1-norm.
    """
    if lam > 16:
        raise ValueError(f"frequency streaming is capped at lam <= 16, got {lam}")
    n_scale = 1 << (lam - mu)
    thr = (lam * lam) / n_scale if threshold is None else float(threshold)
    mask = WalshMask(s_bits, lam)
    ks = np.arange(1 << lam, dtype=np.int64)
    mags = magnitude_row(lam, s_bits, ks)
    ms = np.arange(1 << mu, 1 << (mu + 1), dtype=np.int64)
    vacuous = thr >= 0.5
    total = 0.0
    for mv in ms:
        if vacuous:
            total += float(mags.sum())
            continue
        r = (ks * mv) & ((1 << lam) - 1)
        dist = np.minimum(r, (1 << lam) - r) / float(1 << lam)
        total += float(mags[dist < thr].sum())
    value = n_scale * total
    bound = n_scale * float(1 << mu) ** 2 * lam * lam * sup_norm(mask)
    return FrequencyTestResult(value, bound, thr, vacuous)


# ---------------------------------------------------------------------------
# spectral split of a mask into low and high halves


@dataclass(frozen=True)
class SplitConfig:
    """Split S into S1 (positions below lam-2mu) and S2 (the rest); the S2
    factor product is truncated to its 2^H dominant modes per factor."""

    s_bits: int
    lam: int
    mu: int
    h_param: int
    s2_cap: int = 8
    regime_constant: float = 1.0

    def __post_init__(self):
        if not 0 <= self.s_bits < (1 << self.lam):
            raise ValueError(f"mask {self.s_bits:#x} out of range for lam={self.lam}")
        if self.lam > 16:
            raise ValueError(f"split evaluation is capped at lam <= 16, got {self.lam}")
        if self.h_param < 1:
            raise ValueError("h_param must be >= 1")
        if self.s2_weight > self.s2_cap:
            raise ValueError(
                f"|S2| = {self.s2_weight} exceeds the cap {self.s2_cap}"
            )
        if self.h_param * self.s2_weight > 20:
            raise ValueError("truncated frequency set would exceed 2^20 tuples")

    @property
    def split_position(self) -> int:
        return max(self.lam - 2 * self.mu, 0)

    @property
    def s1_bits(self) -> int:
        return self.s_bits & ((1 << self.split_position) - 1)

    @property
    def s2_bits(self) -> int:
        return self.s_bits & ~((1 << self.split_position) - 1)

    @property
    def s2_weight(self) -> int:
        return self.s2_bits.bit_count()

    @property
    def advisories(self) -> list[str]:
        if self.s2_weight >= self.regime_constant * self.h_param:
            return ["high-half weight is not small next to H (|S2| >= C*H)"]
        return []


@dataclass(frozen=True)
class SplitResult:
    frequencies: np.ndarray    # int64, sorted, mod 2^lam
    coefficients: np.ndarray   # complex, aligned with frequencies
    l1_error: float            # mean |truncation - w_{S2}| over x < 2^lam
    size_cap: int              # 2^(H |S2|)
    config: SplitConfig


def _square_wave_modes(h_param: int) -> list[tuple[int, complex]]:
    """The 2^H largest square-wave Fourier modes, in the fixed order
    1, -1, 3, -3, ...  The mode at odd r carries coefficient -2i/(pi r)."""
    modes = []
    r = 1
    while len(modes) < (1 << h_param):
        for signed in (r, -r):
            if len(modes) == (1 << h_param):
                break
            modes.append((signed, -2j / (math.pi * signed)))
        r += 2
    return modes


def spectral_split(config: SplitConfig) -> SplitResult:
    """Truncate each square-wave factor of the high half to 2^H modes and
    multiply out, returning the product frequency set and its exact mean
    absolute error against w_{S2}."""
    lam = config.lam
    n = 1 << lam
    positions = [j for j in range(lam) if (config.s2_bits >> j) & 1]
    modes = _square_wave_modes(config.h_param)
    merged: dict[int, complex] = {}
    if not positions:
        merged[0] = 1.0 + 0.0j
    else:
        for combo in iter_product(modes, repeat=len(positions)):
            freq = 0
            coef = 1.0 + 0.0j
            for (r, c), j in zip(combo, positions):
                freq = (freq + (r << (lam - j - 1))) % n
                coef *= c
            merged[freq] = merged.get(freq, 0.0 + 0.0j) + coef
    freqs = np.array(sorted(merged), dtype=np.int64)
    coeffs = np.array([merged[int(f)] for f in freqs], dtype=np.complex128)
    w = walsh_table(WalshMask(config.s2_bits, lam)).astype(np.float64)
    err = 0.0
    chunk = 1 << 12
    for lo in range(0, n, chunk):
        xs = np.arange(lo, min(lo + chunk, n), dtype=np.float64)
        phases = np.exp((2j * np.pi / n) * np.outer(xs, freqs.astype(np.float64)))
        vals = phases @ coeffs
        err += float(np.abs(vals - w[lo : lo + len(xs)]).sum())
    return SplitResult(
        freqs, coeffs, err / n, 1 << (config.h_param * config.s2_weight), config
    )


# ---------------------------------------------------------------------------
# correlation scans and report builders


def correlation_report(seq: ArithmeticSequence) -> CheckReport:
    """Max |correlation| of a sign table against 2^(lam - lam^(1/10)).

    Records the argmax mask, its weight, and the empirical exponent
    log2 |value| / lam (None for an identically-zero table).
    """
    mask, value = max_correlation(seq)
    lam = seq.lam
    rhs = 2.0 ** (lam - lam**0.1)
    lhs = float(abs(value))
    exponent = math.log2(lhs) / lam if value else None
    params = {
        "lambda": lam,
        "kind": seq.kind,
        "mask": mask.bits,
        "weight": mask.weight,
        "value": int(value),
        "exponent": exponent,
    }
    return CheckReport("THM1", params, lhs, rhs, _ratio(lhs, rhs), None, lhs < rhs)


def theorem_scan(
    kind: str, lambdas, max_mem_gib: float | None = None
) -> list[CheckReport]:
    """Correlation scan over a lam range for a sieved sign table."""
    if kind not in ("moebius", "liouville"):
        raise ValueError(f"theorem_scan supports moebius and liouville, got {kind!r}")
    return [
        correlation_report(sequence(kind, lam, max_mem_gib=max_mem_gib))
        for lam in lambdas
    ]


def cauchy_schwarz_chain(config: BilinearConfig) -> CheckReport:
    """(bilinear sum)^2 against (MN/L) * (2L-1) * quadratic form.

    The testable shape of the range-splitting step: squaring the outer sum
    and shift-averaging the inner variable dominates the bilinear sum by the
    shifted quadratic form times MN/L.
    """
    bil = bilinear_sum(config)
    quad = shifted_quadratic_form(config)
    lhs = bil * bil
    rhs = quad.prefactor * (2 * config.shift_count - 1) * quad.value
    params = {
        "lambda": config.lam,
        "mask": config.s_bits,
        "mu": config.mu,
        "nu": config.nu,
        "rho": config.rho,
        "k_shift": config.k_shift,
        "bilinear": bil,
        "quadform": quad.value,
        "prefactor": quad.prefactor,
        "clipped_terms": quad.clipped_terms,
        "advisories": config.advisories,
    }
    fitted = _ratio(lhs, rhs)
    return CheckReport("BILIN", params, lhs, rhs, fitted, fitted,
                       lhs <= rhs * (1.0 + 1e-12))


def quadform_report(config: BilinearConfig) -> CheckReport:
    """Quadratic form against its trivial bound (2L-1) * N * M."""
    quad = shifted_quadratic_form(config)
    rhs = (2 * config.shift_count - 1) * config.n_count * config.m_count
    params = {
        "lambda": config.lam,
        "mask": config.s_bits,
        "mu": config.mu,
        "nu": config.nu,
        "rho": config.rho,
        "k_shift": config.k_shift,
        "prefactor": quad.prefactor,
        "clipped_terms": quad.clipped_terms,
        "advisories": config.advisories,
    }
    return CheckReport("QUAD", params, quad.value, float(rhs),
                       _ratio(quad.value, rhs), None,
                       quad.value <= rhs + 1e-9)


def type1_report(s_bits: int, mu: int, nu: int) -> CheckReport:
    """Type-I sum against its trivial bound M * N."""
    value = type1_sum(s_bits, mu, nu)
    rhs = float((1 << mu) * (1 << nu))
    params = {"lambda": mu + nu, "mask": s_bits, "mu": mu, "nu": nu}
    return CheckReport("TYPE1", params, value, rhs, _ratio(value, rhs), None,
                       value <= rhs + 1e-9)


def carry_report(config: BilinearConfig, bracket: float = CARRY_BRACKET) -> CheckReport:
    """Measured carry-escape rate against bracket * 2^(-eps*rho)."""
    res = carry_truncation_rate(config)
    scale = 2.0 ** (-config.epsilon * config.rho)
    rhs = bracket * scale
    params = {
        "lambda": config.lam,
        "mask": config.s_bits,
        "mu": config.mu,
        "nu": config.nu,
        "rho": config.rho,
        "k_shift": config.k_shift,
        "epsilon": config.epsilon,
        "low_rate": res.low_rate,
        "bad_count": res.bad_count,
        "total": res.total,
        "first_checked_bit": res.first_checked_bit,
        "advisories": config.advisories,
    }
    fitted = res.rate / scale
    passed = res.rate <= rhs and res.low_rate == 0.0
    return CheckReport("CARRY", params, res.rate, rhs, _ratio(res.rate, rhs),
                       fitted, passed)


def split_report(config: SplitConfig, bracket: float = SPLIT_BRACKET) -> CheckReport:
    """Truncation L1 error against bracket * 2^(-H), with the size cap."""
    res = spectral_split(config)
    scale = 2.0 ** (-config.h_param)
    rhs = bracket * scale
    params = {
        "lambda": config.lam,
        "mask": config.s_bits,
        "mu": config.mu,
        "h_param": config.h_param,
        "s1_bits": config.s1_bits,
        "s2_bits": config.s2_bits,
        "set_size": int(len(res.frequencies)),
        "size_cap": res.size_cap,
        "advisories": config.advisories,
    }
    fitted = res.l1_error / scale
    passed = res.l1_error <= rhs and len(res.frequencies) <= res.size_cap
    return CheckReport("SPLIT", params, res.l1_error, rhs,
                       _ratio(res.l1_error, rhs), fitted, passed)


def frequency_report(
    s_bits: int, lam: int, mu: int, threshold: float | None = None,
    bracket: float = FREQ_BRACKET,
) -> CheckReport:
    """Weighted near-integer frequency count against its spectral bound."""
    res = frequency_test_count(s_bits, lam, mu, threshold)
    rhs = bracket * res.bound
    params = {
        "lambda": lam,
        "mask": s_bits,
        "mu": mu,
        "threshold": res.threshold,
        "vacuous": res.vacuous,
        "spectral_bound": res.bound,
    }
    fitted = _ratio(res.value, res.bound)
    return CheckReport("SPECTRUM", params, res.value, rhs,
                       _ratio(res.value, rhs), fitted, res.value <= rhs + 1e-9)
