"""Fast Walsh-Hadamard transform and correlation search.

The transform sends a length-2^lam table f to all 2^lam unnormalized
correlations sum_x f(x) * (-1)^popcount(A & x) in O(lam * 2^lam) additions.
Integer tables stay exact: inputs are widened to int64 and a predicted
overflow raises before any work happens.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .limits import ResourceLimitError, require_table_bytes
from .sieve import ArithmeticSequence
from .walsh import WalshMask

DEFAULT_BLOCK = 1 << 14


@dataclass(frozen=True)
class Spectrum:
    """Dense table of correlations (raw) or coefficients (normalized),
    indexed by mask bits."""

    lam: int
    normalized: bool
    entries: np.ndarray

    def peak(self) -> tuple[WalshMask, float]:
        """Mask with the largest |entry|; ties break to the smallest mask."""
        idx = int(np.argmax(np.abs(self.entries)))
        return WalshMask(idx, self.lam), self.entries[idx]


def _butterfly_stage(view: np.ndarray, h: int) -> None:
    v = view.reshape(-1, 2, h)
    s = v[:, 0, :] + v[:, 1, :]
    d = v[:, 0, :] - v[:, 1, :]
    v[:, 0, :] = s
    v[:, 1, :] = d


def fwht_in_place(buffer: np.ndarray, block: int = DEFAULT_BLOCK) -> np.ndarray:
    """In-place Walsh-Hadamard butterfly over a power-of-two buffer.

    Stages with span <= block run to completion inside each contiguous block
    before the next block is touched (the low stages are where the locality
    is); the remaining stages sweep the full array.  Stage order does not
    affect the result, only the memory access pattern.
    """
    n = len(buffer)
    if n == 0 or n & (n - 1):
        raise ValueError(f"buffer length {n} is not a power of two")
    if buffer.dtype == np.int64:
        peak = int(np.abs(buffer).max()) if n else 0
        if peak and float(peak) * float(n) >= 2.0**63:
            raise ResourceLimitError(
                f"transform output can reach {peak} * 2^{n.bit_length() - 1}, "
                "which overflows 64-bit accumulators"
            )
    elif buffer.dtype != np.float64:
        raise TypeError(
            f"transform needs an int64 or float64 buffer, got {buffer.dtype}"
        )
    b = min(block, n)
    if b & (b - 1):
        raise ValueError(f"block size {block} is not a power of two")
    for lo in range(0, n, b):
        seg = buffer[lo : lo + b]
        h = 1
        while 2 * h <= b:
            _butterfly_stage(seg, h)
            h *= 2
    h = b
    while 2 * h <= n:
        _butterfly_stage(buffer, h)
        h *= 2
    return buffer


def spectrum(seq: ArithmeticSequence, normalized: bool = False) -> Spectrum:
    """Correlation table of a sequence against every Walsh function."""
    require_table_bytes(seq.lam, 8, what="transform buffer")
    if np.issubdtype(seq.values.dtype, np.integer):
        buf = seq.values.astype(np.int64)
    else:
        buf = seq.values.astype(np.float64)
    fwht_in_place(buf)
    if normalized:
        return Spectrum(seq.lam, True, buf / float(1 << seq.lam))
    return Spectrum(seq.lam, False, buf)


def max_correlation(seq: ArithmeticSequence) -> tuple[WalshMask, int]:
    """Argmax mask and signed value of the raw correlation table.

    Only defined for sign tables (entries in {-1, 0, 1}), where the raw
    transform is exact integer arithmetic.
    """
    vals = seq.values
    if not np.issubdtype(vals.dtype, np.integer):
        rounded = np.rint(vals)
        if not np.array_equal(rounded, vals):
            raise ValueError("max_correlation needs an integer-valued sequence")
        vals = rounded.astype(np.int64)
    if vals.size and int(np.abs(vals).max()) > 1:
        raise ValueError("max_correlation needs entries in {-1, 0, 1}")
    mask, value = spectrum(
        ArithmeticSequence(seq.lam, seq.kind, vals), normalized=False
    ).peak()
    return mask, int(value)
