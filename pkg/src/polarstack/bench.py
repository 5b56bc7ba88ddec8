"""Benchmark the numba kernels against the pure-Python fallback.

Run as ``python -m polarstack.bench``.  The parent process times the
compiled kernels, then re-runs the same workload in a subprocess with
``POLARSTACK_NO_NUMBA=1`` and prints the comparison.  The fallback workload
is scaled down: interpreted decoding is orders of magnitude slower.
"""

import json
import os
import subprocess
import sys
import time

import numpy as np


def _workload(n_blocks):
    from ._accel import USE_NUMBA
    from .channel import NoiseSource, transmit
    from .construct import design_code, encode, gamma_to_sigma_sq
    from .crc24 import crc_attach
    from .decoders import elscs_decode, sc_decode

    N, K, gamma = 256, 128, 2.5
    code, _ = design_code(N, K, gamma)
    sigma_sq = gamma_to_sigma_sq(gamma, K / N)
    payload_len = K - 24

    def one_block(blk):
        rng = NoiseSource(12345, blk).rng()
        payload = rng.integers(0, 2, payload_len).astype(np.uint8)
        u = np.zeros(N, dtype=np.uint8)
        u[code.unfrozen_indices] = crc_attach(payload)
        return transmit(encode(u, code), sigma_sq, rng)

    # warm-up triggers JIT compilation; excluded from timing
    obs = one_block(0)
    sc_decode(obs, code)
    elscs_decode(obs, code, 4, 16, 12.0, 200)

    t0 = time.perf_counter()
    for blk in range(n_blocks):
        obs = one_block(blk)
        sc_decode(obs, code)
    t_sc = time.perf_counter() - t0

    t0 = time.perf_counter()
    for blk in range(n_blocks):
        obs = one_block(blk)
        elscs_decode(obs, code, 4, 16, 12.0, 200)
    t_elscs = time.perf_counter() - t0

    return {"numba": USE_NUMBA, "blocks": n_blocks,
            "sc_ms": 1e3 * t_sc / n_blocks,
            "elscs_ms": 1e3 * t_elscs / n_blocks}


def main():
    if "--child" in sys.argv:
        print(json.dumps(_workload(n_blocks=20)))
        return 0

    fast = _workload(n_blocks=500)
    print(f"numba={fast['numba']}: SC {fast['sc_ms']:.3f} ms/block, "
          f"ELSCS(L=4) {fast['elscs_ms']:.3f} ms/block "
          f"({fast['blocks']} blocks)")

    env = dict(os.environ, POLARSTACK_NO_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-m", "polarstack.bench", "--child"],
        env=env, capture_output=True, text=True, check=True)
    slow = json.loads(out.stdout.strip().splitlines()[-1])
    print(f"numba={slow['numba']}: SC {slow['sc_ms']:.3f} ms/block, "
          f"ELSCS(L=4) {slow['elscs_ms']:.3f} ms/block "
          f"({slow['blocks']} blocks)")
    print(f"speedup: SC {slow['sc_ms'] / fast['sc_ms']:.0f}x, "
          f"ELSCS {slow['elscs_ms'] / fast['elscs_ms']:.0f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
