"""Walsh functions and their trigonometric Fourier coefficients.

w_A(x) = prod_{j in A} (1 - 2 x_j) over the binary digits x_j of x, i.e. the
parity character (-1)^{popcount(A & x)}.  Its coefficient against the
additive character e(kx/2^lam) is an exact product of lam binomial factors,
one per bit, with magnitude prod |cos| over bits outside A times prod |sin|
over bits inside A.  Everything here evaluates those products on demand;
nothing stores a dense complex spectrum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

CHUNK = 1 << 16


@dataclass(frozen=True)
class WalshMask:
    """A subset of bit positions {0, ..., lam-1} packed as an integer."""

    bits: int
    lam: int

    def __post_init__(self):
        if not 0 <= self.bits < (1 << self.lam):
            raise ValueError(
                f"mask bits {self.bits:#x} out of range for lam={self.lam}"
            )

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def members(self) -> tuple[int, ...]:
        return tuple(j for j in range(self.lam) if (self.bits >> j) & 1)


@dataclass(frozen=True)
class TrigCoefficient:
    k: int
    value: complex
    magnitude: float


# ---------------------------------------------------------------------------
# frequency selectors for streamed accumulation


@dataclass(frozen=True)
class FullRange:
    """All frequencies k in [0, 2^lam)."""


@dataclass(frozen=True)
class ResidueClass:
    """Frequencies k = a (mod 2^r)."""

    a: int
    r: int


@dataclass(frozen=True)
class Interval:
    """Frequencies in the half-open interval [lo, hi)."""

    lo: int
    hi: int


def _selector_count(lam: int, selector) -> int:
    if isinstance(selector, FullRange):
        return 1 << lam
    if isinstance(selector, ResidueClass):
        if selector.r < 0 or selector.r >= lam:
            raise ValueError(f"residue modulus exponent r={selector.r} must satisfy 0 <= r < lam")
        if not 0 <= selector.a < (1 << selector.r):
            raise ValueError(f"residue a={selector.a} must lie below 2^{selector.r}")
        return 1 << (lam - selector.r)
    if isinstance(selector, Interval):
        if not 0 <= selector.lo < selector.hi <= (1 << lam):
            raise ValueError(
                f"interval [{selector.lo}, {selector.hi}) is empty or out of range"
            )
        return selector.hi - selector.lo
    raise ValueError(f"unknown frequency selector {selector!r}")


def _selector_chunks(lam: int, selector, chunk: int = CHUNK):
    """Yield int64 arrays of the selected frequencies, in increasing order."""
    _selector_count(lam, selector)
    if isinstance(selector, FullRange):
        lo, hi, step = 0, 1 << lam, 1
    elif isinstance(selector, ResidueClass):
        lo, hi, step = selector.a, 1 << lam, 1 << selector.r
    else:
        lo, hi, step = selector.lo, selector.hi, 1
    span = chunk * step
    for start in range(lo, hi, span):
        yield np.arange(start, min(hi, start + span), step, dtype=np.int64)


# ---------------------------------------------------------------------------
# scalar operations


def step_h(x: float) -> int:
    """The 1-periodic square wave: +1 on [0, 1/2), -1 on [1/2, 1)."""
    return 1 if (x % 1.0) < 0.5 else -1


def walsh_eval(mask: WalshMask, x: int) -> int:
    """w_A(x) for an integer point 0 <= x < 2^lam."""
    if not 0 <= x < (1 << mask.lam):
        raise ValueError(f"x={x} out of range for lam={mask.lam}")
    return -1 if (mask.bits & x).bit_count() & 1 else 1


def trig_coefficient(mask: WalshMask, k: int) -> TrigCoefficient:
    """Exact product-formula coefficient of w_A against e(kx/2^lam).

    The magnitude is computed from the |cos|/|sin| factor product rather than
    from the complex value; both use exactly reduced dyadic angles
    pi * (k mod 2^(lam-j)) / 2^(lam-j) so no argument error accumulates.
    """
    k = int(k) % (1 << mask.lam)
    ks = np.array([k], dtype=np.int64)
    value = coefficient_values(mask.lam, mask.bits, ks)[0]
    magnitude = magnitude_row(mask.lam, mask.bits, ks)[0]
    return TrigCoefficient(k, complex(value), float(magnitude))


# ---------------------------------------------------------------------------
# vectorized kernels


def _angles(lam: int, j: int, ks: np.ndarray) -> np.ndarray:
    mod = 1 << (lam - j)
    return np.pi * ((ks & (mod - 1)) / mod)


def magnitude_row(lam: int, bits: int, ks: np.ndarray) -> np.ndarray:
    """|coefficient| for one mask at many frequencies."""
    ks = np.asarray(ks, dtype=np.int64)
    acc = np.ones(ks.shape, dtype=np.float64)
    for j in range(lam):
        ang = _angles(lam, j, ks)
        acc *= np.abs(np.sin(ang)) if (bits >> j) & 1 else np.abs(np.cos(ang))
    return acc


def coefficient_values(lam: int, bits: int, ks: np.ndarray) -> np.ndarray:
    """Complex coefficients for one mask at many frequencies.

    Convention: w_A(x) = sum_k c_k e(+kx / 2^lam), so c_k carries the
    analysis sign e(-k 2^(j-lam)) per bit factor.
    """
    ks = np.asarray(ks, dtype=np.int64)
    acc = np.ones(ks.shape, dtype=np.complex128)
    for j in range(lam):
        mod = 1 << (lam - j)
        z = np.exp(-2j * np.pi * ((ks & (mod - 1)) / mod))
        acc *= (1 - z) / 2 if (bits >> j) & 1 else (1 + z) / 2
    return acc


def walsh_table(mask: WalshMask) -> np.ndarray:
    """All 2^lam sample values of w_A as int8."""
    xs = np.arange(1 << mask.lam, dtype=np.int64)
    return walsh_signs(mask.bits, xs)


def walsh_signs(bits: int, args: np.ndarray) -> np.ndarray:
    """Parity character of masked bits, for arbitrary nonnegative integers.

    Positions above the mask's top bit never contribute, so arguments wider
    than the mask's ambient bit-length are fine.
    """
    args = np.asarray(args)
    parity = np.bitwise_count(np.bitwise_and(args, np.int64(bits))) & 1
    return (1 - 2 * parity.astype(np.int8)).astype(np.int8)


# ---------------------------------------------------------------------------
# streamed norms


def l1_accumulate(mask: WalshMask, selector=FullRange()) -> float:
    """Sum of coefficient magnitudes over the selected frequencies."""
    total = 0.0
    for ks in _selector_chunks(mask.lam, selector):
        total += float(magnitude_row(mask.lam, mask.bits, ks).sum())
    return total


def sup_norm(mask: WalshMask, selector=FullRange()) -> float:
    """Largest coefficient magnitude over the selected frequencies."""
    best = 0.0
    for ks in _selector_chunks(mask.lam, selector):
        best = max(best, float(magnitude_row(mask.lam, mask.bits, ks).max()))
    return best


# ---------------------------------------------------------------------------
# exhaustive mask sweeps (product tree over shared factor prefixes)


def _factor_tables(lam: int, ks: np.ndarray):
    cos_t, sin_t = [], []
    for j in range(lam):
        ang = _angles(lam, j, ks)
        cos_t.append(np.abs(np.cos(ang)))
        sin_t.append(np.abs(np.sin(ang)))
    return cos_t, sin_t


def mask_sweep(lam: int, selector, reduce_fn) -> np.ndarray:
    """Apply reduce_fn to every mask's magnitude row, sharing prefix products.

    Evaluates all 2^lam masks over the selected frequencies in
    O(2^(lam+1)) vector multiplies instead of 2^lam independent rows.  The
    factor order matches magnitude_row exactly, so results are bit-identical
    to the per-mask path.
    """
    out = None
    for ks in _selector_chunks(lam, selector, chunk=1 << max(lam, 10)):
        cos_t, sin_t = _factor_tables(lam, ks)
        part = np.empty(1 << lam, dtype=np.float64)

        def rec(j: int, vec: np.ndarray, bits: int):
            if j == lam:
                part[bits] = reduce_fn(vec)
                return
            rec(j + 1, vec * cos_t[j], bits)
            rec(j + 1, vec * sin_t[j], bits | (1 << j))

        rec(0, np.ones(len(ks), dtype=np.float64), 0)
        out = part if out is None else reduce_chunks(out, part, reduce_fn)
    return out


def reduce_chunks(a: np.ndarray, b: np.ndarray, reduce_fn) -> np.ndarray:
    # chunked selectors only ever combine by the same associative statistic
    if reduce_fn is np.sum:
        return a + b
    if reduce_fn is np.max:
        return np.maximum(a, b)
    raise ValueError("chunk-spanning sweeps support np.sum and np.max only")


def all_mask_l1(lam: int, selector=None) -> np.ndarray:
    """l1 norm of the coefficient table for every mask at once."""
    return mask_sweep(lam, selector or FullRange(), np.sum)


def all_mask_sup(lam: int, selector=None) -> np.ndarray:
    """Sup norm of the coefficient table for every mask at once."""
    return mask_sweep(lam, selector or FullRange(), np.max)
