"""CRC-24 attach/check for CRC-aided path selection.

Generator polynomial D^24 + D^23 + D^6 + D^5 + D + 1, MSB-first bit order,
all-zero initial register, no reflection, no final XOR.
"""

from dataclasses import dataclass

import numpy as np

from ._kernels import _crc_rem


@dataclass(frozen=True)
class CrcSpec:
    degree: int = 24
    poly_bits: int = 0x800063   # D^23 + D^6 + D^5 + D + 1 (leading D^24 implicit)
    init: int = 0


CRC24 = CrcSpec()


def crc_attach(info, spec=CRC24):
    """Append the CRC parity bits: returns info || parity (length + degree)."""
    info = np.asarray(info, dtype=np.uint8)
    if info.ndim != 1 or info.size < 1:
        raise ValueError("info must be a nonempty 1-D bit vector")
    if np.any(info > 1):
        raise ValueError("info must contain only bits")
    reg = _crc_rem(info, spec.poly_bits, spec.degree, spec.degree)
    parity = np.array([(reg >> (spec.degree - 1 - j)) & 1
                       for j in range(spec.degree)], dtype=np.uint8)
    return np.concatenate([info, parity])


def crc_check(bits, spec=CRC24):
    """True iff the bit vector is divisible by the generator polynomial."""
    bits = np.asarray(bits, dtype=np.uint8)
    if bits.ndim != 1 or bits.size < spec.degree + 1:
        raise ValueError(f"need at least {spec.degree + 1} bits to check")
    return _crc_rem(bits, spec.poly_bits, spec.degree, 0) == 0
