import numpy as np
import pytest

from polarstack.crc24 import CRC24, crc_attach, crc_check
from oracles import crc24_oracle


def test_spec_constants():
    assert CRC24.degree == 24
    assert CRC24.poly_bits == 0x800063
    assert CRC24.init == 0


def test_zero_info_zero_parity():
    out = crc_attach(np.zeros(40, dtype=np.uint8))
    assert out.shape == (64,)
    assert not out.any()
    assert crc_check(out)


def test_single_bit_against_long_division():
    out = crc_attach(np.array([1], dtype=np.uint8))
    assert np.array_equal(out[1:], crc24_oracle([1]))


def test_random_info_against_long_division():
    rng = np.random.default_rng(5)
    for length in (1, 7, 100, 488):
        info = rng.integers(0, 2, length).astype(np.uint8)
        out = crc_attach(info)
        assert np.array_equal(out[:length], info)
        assert np.array_equal(out[length:], crc24_oracle(info.tolist()))
        assert crc_check(out)


def test_single_and_double_flip_detection():
    rng = np.random.default_rng(6)
    K = 512
    for _ in range(1000):
        word = crc_attach(rng.integers(0, 2, K - 24).astype(np.uint8))
        i = rng.integers(0, K)
        word[i] ^= 1
        assert not crc_check(word)
        word[i] ^= 1
    # sampled double flips
    word = crc_attach(rng.integers(0, 2, K - 24).astype(np.uint8))
    for _ in range(2000):
        i, j = rng.choice(K, size=2, replace=False)
        word[i] ^= 1
        word[j] ^= 1
        assert not crc_check(word)
        word[i] ^= 1
        word[j] ^= 1


def test_all_single_flips_exhaustive():
    rng = np.random.default_rng(7)
    word = crc_attach(rng.integers(0, 2, 488).astype(np.uint8))
    for i in range(word.size):
        word[i] ^= 1
        assert not crc_check(word)
        word[i] ^= 1
    assert crc_check(word)


def test_parity_linearity():
    rng = np.random.default_rng(8)
    for _ in range(50):
        a = rng.integers(0, 2, 100).astype(np.uint8)
        b = rng.integers(0, 2, 100).astype(np.uint8)
        pa = crc_attach(a)[100:]
        pb = crc_attach(b)[100:]
        pab = crc_attach(a ^ b)[100:]
        assert np.array_equal(pab, pa ^ pb)


def test_length_errors():
    with pytest.raises(ValueError):
        crc_attach(np.zeros(0, dtype=np.uint8))
    with pytest.raises(ValueError):
        crc_check(np.zeros(24, dtype=np.uint8))
    assert crc_check(np.zeros(25, dtype=np.uint8))  # zero divisible by g
