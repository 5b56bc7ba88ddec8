import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from polarstack.channel import transmit
from polarstack.construct import design_code, encode, gamma_to_sigma_sq
from polarstack.crc24 import crc_attach
from polarstack.crc24 import CRC24


def make_block(code, gamma_db, rng, crc=True):
    """One random (u, x, obs) triple at the given operating point."""
    payload_len = code.K - CRC24.degree if crc else code.K
    payload = rng.integers(0, 2, payload_len).astype(np.uint8)
    info = crc_attach(payload) if crc else payload
    u = np.zeros(code.N, dtype=np.uint8)
    u[code.unfrozen_indices] = info
    x = encode(u, code)
    obs = transmit(x, gamma_to_sigma_sq(gamma_db, code.rate), rng)
    return u, x, obs


@pytest.fixture(scope="session")
def small_code():
    code, _ = design_code(64, 32, 2.0)
    return code
