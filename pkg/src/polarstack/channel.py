"""BPSK over the binary-input AWGN channel, with reproducible per-block
noise streams."""

from dataclasses import dataclass

import numpy as np

from .llr import ChannelObservation


@dataclass(frozen=True)
class NoiseSource:
    """Counter-based RNG stream: the same (seed, stream_id) always yields the
    same draws, independent of scheduling, so multi-worker runs replay."""

    seed: int
    stream_id: int = 0

    def rng(self):
        return np.random.default_rng(
            np.random.SeedSequence(entropy=self.seed,
                                   spawn_key=(self.stream_id,)))


def transmit(x, sigma_sq, noise):
    """Send codeword bits through BPSK + AWGN; returns the channel LLRs.

    Symbols are 1 - 2x; the LLR of each received sample y is 2y/sigma^2.
    `noise` may be a NoiseSource or an already-instantiated numpy Generator
    (the harness reuses one generator per block for payload and noise).
    """
    if sigma_sq <= 0:
        raise ValueError("sigma_sq must be positive")
    x = np.asarray(x, dtype=np.uint8)
    rng = noise.rng() if isinstance(noise, NoiseSource) else noise
    symbols = 1.0 - 2.0 * x.astype(np.float64)
    y = symbols + rng.normal(0.0, np.sqrt(sigma_sq), x.shape[0])
    return ChannelObservation(llr0=2.0 * y / sigma_sq)
