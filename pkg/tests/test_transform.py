import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from walshlab import (
    ResourceLimitError,
    WalshMask,
    custom_sequence,
    fwht_in_place,
    max_correlation,
    sequence,
    spectrum,
    walsh_table,
)


def test_delta_transforms_to_all_ones():
    buf = np.array([1, 0, 0, 0], dtype=np.int64)
    fwht_in_place(buf)
    assert np.array_equal(buf, [1, 1, 1, 1])


def test_constant_transforms_to_point_mass():
    buf = np.ones(8, dtype=np.int64)
    fwht_in_place(buf)
    assert buf[0] == 8 and not buf[1:].any()


def test_character_input_gives_point_mass():
    lam, bits = 8, 0b1011_0010
    buf = walsh_table(WalshMask(bits, lam)).astype(np.int64)
    fwht_in_place(buf)
    assert buf[bits] == 1 << lam
    buf[bits] = 0
    assert not buf.any()


def test_moebius_dc_entry_is_mertens():
    buf = sequence("moebius", 3).values.astype(np.int64)
    assert np.array_equal(buf, [0, 1, -1, -1, 0, -1, 1, -1])
    fwht_in_place(buf)
    assert buf[0] == -2  # M(7)


@pytest.mark.parametrize("lam", [1, 2, 3, 4, 5, 6])
def test_matches_naive_matmul_on_random_integers(lam, rng):
    for _ in range(8):
        vals = rng.integers(-3, 4, size=1 << lam).astype(np.int64)
        buf = vals.copy()
        fwht_in_place(buf)
        assert np.array_equal(buf, oracles.naive_fwht(vals))


def test_matches_naive_on_floats(rng):
    vals = rng.normal(size=1 << 9)
    buf = vals.copy()
    fwht_in_place(buf)
    np.testing.assert_allclose(buf, oracles.naive_fwht(vals), atol=1e-9, rtol=0)


def test_involution_and_parseval_lambda_16(rng):
    lam = 16
    vals = (rng.integers(0, 2, size=1 << lam) * 2 - 1).astype(np.int64)
    buf = vals.copy()
    fwht_in_place(buf)
    assert int((buf.astype(object) ** 2).sum()) == (1 << lam) * int(
        (vals.astype(object) ** 2).sum()
    )
    fwht_in_place(buf)
    assert np.array_equal(buf, vals << lam)


def test_block_size_invariance():
    vals = sequence("moebius", 12).values.astype(np.int64)
    a = vals.copy()
    fwht_in_place(a)
    b = vals.copy()
    fwht_in_place(b, block=4)
    c = vals.copy()
    fwht_in_place(c, block=1 << 20)
    assert np.array_equal(a, b) and np.array_equal(a, c)


def test_rejects_non_power_of_two():
    with pytest.raises(ValueError):
        fwht_in_place(np.zeros(6, dtype=np.int64))


def test_rejects_narrow_dtype():
    with pytest.raises(TypeError):
        fwht_in_place(np.zeros(8, dtype=np.int8))


def test_overflow_precheck():
    buf = np.full(1 << 4, 1 << 60, dtype=np.int64)
    with pytest.raises(ResourceLimitError):
        fwht_in_place(buf)


def test_spectrum_normalized_indicator():
    lam, bits = 6, 0b10110
    seq = custom_sequence(lam, walsh_table(WalshMask(bits, lam)).astype(np.float64))
    spec = spectrum(seq, normalized=True)
    assert spec.normalized
    assert spec.entries[bits] == pytest.approx(1.0)
    assert np.abs(np.delete(spec.entries, bits)).max() < 1e-12


def test_spectrum_raw_constant():
    seq = custom_sequence(3, np.ones(8))
    spec = spectrum(seq, normalized=False)
    assert spec.entries[0] == 8 and not np.asarray(spec.entries[1:]).any()


def test_max_correlation_small_moebius():
    mask, value = max_correlation(sequence("moebius", 2))
    assert (mask.bits, value) == (0b10, 3)


def test_max_correlation_zero_sequence_tie_break():
    mask, value = max_correlation(custom_sequence(4, np.zeros(16)))
    assert (mask.bits, value) == (0, 0)


def test_max_correlation_character_input():
    lam, bits = 9, 0b1_0010_0110
    seq = custom_sequence(lam, walsh_table(WalshMask(bits, lam)).astype(np.float64))
    mask, value = max_correlation(seq)
    assert (mask.bits, value) == (bits, 1 << lam)


def test_max_correlation_rejects_wide_values():
    with pytest.raises(ValueError):
        max_correlation(custom_sequence(3, np.array([0, 1, 2, 0, 0, 1, 0, 1.0])))
    with pytest.raises(ValueError):
        max_correlation(custom_sequence(2, np.array([0.5, 0, 0, 0])))


@given(st.integers(0, (1 << 10) - 1))
def test_spot_consistency_with_walsh_eval(bits):
    seq = sequence("liouville", 10)
    spec = spectrum(seq, normalized=False)
    direct = int(
        np.dot(
            seq.values.astype(np.int64),
            walsh_table(WalshMask(bits, 10)).astype(np.int64),
        )
    )
    assert spec.entries[bits] == direct
