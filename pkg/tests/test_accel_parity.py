"""The pure-Python fallback (POLARSTACK_NO_NUMBA=1) must produce bit-identical
results to the compiled kernels."""

import json
import os
import subprocess
import sys
import textwrap

import numpy as np

from polarstack._accel import USE_NUMBA
from polarstack.channel import NoiseSource, transmit
from polarstack.construct import design_code, gamma_to_sigma_sq
from polarstack.decoders import elscs_decode, sc_decode, scs_decode
from conftest import make_block

_CHILD = textwrap.dedent("""
    import json
    import numpy as np
    from polarstack._accel import USE_NUMBA
    from polarstack.construct import design_code, gamma_to_sigma_sq
    from polarstack.channel import NoiseSource, transmit
    from polarstack.crc24 import crc_attach
    from polarstack.construct import encode
    from polarstack.decoders import elscs_decode, sc_decode, scs_decode

    code, _ = design_code(32, 16, 2.0)
    rows = []
    for blk in range(6):
        rng = NoiseSource(2024, blk).rng()
        payload = rng.integers(0, 2, 16).astype(np.uint8)
        u = np.zeros(32, dtype=np.uint8)
        u[code.unfrozen_indices] = payload
        x = encode(u, code)
        obs = transmit(x, gamma_to_sigma_sq(1.0, 0.5), rng)
        for out in (sc_decode(obs, code, crc=False),
                    scs_decode(obs, code, 8, 40, crc=False),
                    elscs_decode(obs, code, 2, 8, 6.0, 40, crc=False)):
            rows.append({
                "dec": out.decisions.tolist(),
                "metric": out.metric.hex(),
                "success": out.success,
                "clk": out.report.clk_total,
                "ops": out.report.llr_level_ops,
                "stages": out.report.stages,
            })
    print(json.dumps({"numba": USE_NUMBA, "rows": rows}))
""")


def _run_child(disable_numba):
    env = dict(os.environ)
    env["POLARSTACK_NO_NUMBA"] = "1" if disable_numba else "0"
    out = subprocess.run([sys.executable, "-c", _CHILD], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def test_fallback_matches_numba_exactly():
    fast = _run_child(disable_numba=False)
    slow = _run_child(disable_numba=True)
    assert fast["numba"] is True
    assert slow["numba"] is False
    assert fast["rows"] == slow["rows"]


def test_numba_enabled_by_default():
    assert USE_NUMBA
