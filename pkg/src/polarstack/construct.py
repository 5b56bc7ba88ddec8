"""Polar code construction: Gaussian-approximation density evolution,
frozen-set selection, and the transform encoder.

Reliabilities are tracked as the mean decision LLR of each synthesized
subchannel under the all-zero-codeword convention.  The density-evolution
transfer function phi follows the standard convention phi(0) = 1,
strictly decreasing to 0, with the 1/sqrt(4*pi*x) Gaussian normalization.
"""

import csv
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.special import erfc


@dataclass(frozen=True, eq=False)
class CodeConfig:
    """Static definition of one polar code."""

    N: int                    # block length, power of two
    n: int                    # log2(N)
    K: int                    # unfrozen bits (payload + any CRC)
    frozen_mask: np.ndarray   # bool[N], True = frozen (transmitted as 0)
    design_gamma_db: float    # Eb/N0 used for the construction
    rate: float               # K / N

    def __post_init__(self):
        if self.N != 1 << self.n or self.n < 1:
            raise ValueError(f"N={self.N} must equal 2**n with n >= 1")
        if not 0 < self.K < self.N:
            raise ValueError(f"K={self.K} out of range for N={self.N}")
        if int((~self.frozen_mask).sum()) != self.K:
            raise ValueError("frozen_mask must leave exactly K bits unfrozen")

    @property
    def unfrozen_indices(self):
        return np.flatnonzero(~self.frozen_mask)


@dataclass(frozen=True, eq=False)
class ReliabilityTable:
    """Per-bit mean decision LLR and error probability from the GA recursion."""

    mean_llr: np.ndarray   # float64[N], >= 0, all-zero codeword convention
    perr: np.ndarray       # float64[N], in [0, 0.5]
    sigma_sq: float


def gamma_to_sigma_sq(gamma_db, rate):
    """Noise variance of the BPSK BI-AWGN channel at Eb/N0 = gamma_db."""
    if not 0.0 < rate < 1.0:
        raise ValueError(f"rate must lie in (0, 1), got {rate}")
    if not math.isfinite(gamma_db):
        raise ValueError("gamma_db must be finite")
    return 1.0 / (2.0 * rate * 10.0 ** (gamma_db / 10.0))


def ga_phi(x):
    """Density-evolution transfer function phi(x) = E[1 - tanh(U/2)],
    U ~ N(x, 2x); strictly decreasing, phi(0) = 1.

    Evaluated by adaptive quadrature over a +-10 sigma window of the
    variance-4x Gaussian weight.  Underflows cleanly to 0 for very large x.
    """
    if x < 0:
        raise ValueError("ga_phi requires x >= 0")
    if x == 0.0:
        return 1.0
    half_window = 10.0 * math.sqrt(4.0 * x)
    inv_norm = 1.0 / math.sqrt(4.0 * math.pi * x)

    def integrand(u):
        # 1 - tanh(u/2) = 2 / (1 + e^u), written to avoid overflow
        if u > 0:
            t = 2.0 * math.exp(-u) / (1.0 + math.exp(-u))
        else:
            t = 2.0 / (1.0 + math.exp(u))
        return t * math.exp(-((u - x) ** 2) / (4.0 * x))

    val, _ = quad(integrand, x - half_window, x + half_window,
                  epsabs=1e-14, epsrel=1e-11, limit=200)
    return max(inv_norm * val, 0.0)


_PHI_INV_XMAX = 8192.0


def ga_phi_inv(y):
    """Inverse of ga_phi by bisection; y in (0, 1]."""
    if not 0.0 < y <= 1.0:
        raise ValueError("ga_phi_inv requires y in (0, 1]")
    if y == 1.0:
        return 0.0
    lo, hi = 0.0, 1.0
    while ga_phi(hi) > y:
        hi *= 2.0
        if hi >= _PHI_INV_XMAX:
            # phi underflows to 0 before here; treat as unresolvable tail
            return math.inf
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo <= 1e-12 * max(mid, 1e-3):
            break
        fmid = ga_phi(mid)
        if fmid > y:
            lo = mid
        else:
            hi = mid
        if abs(fmid - y) <= 1e-9 and hi - lo <= 1e-6 * max(mid, 1e-3):
            break
    return 0.5 * (lo + hi)


def perr_from_mean(mean):
    """Error probability Q(sqrt(mean/2)) of a subchannel with mean LLR `mean`."""
    if mean < 0:
        raise ValueError("mean must be >= 0")
    if math.isinf(mean):
        return 0.0
    return 0.5 * erfc(math.sqrt(mean) / 2.0)


_ga_cache = {}


def ga_reliability(N, sigma_sq):
    """Mean LLRs m_N^(i) of all N synthesized subchannels.

    Recursion from m_1 = 2/sigma^2: the check branch maps m to
    phi_inv(1 - (1 - phi(m))^2), the repetition branch doubles m.
    Results are cached per (N, sigma_sq).
    """
    if N < 1 or N & (N - 1):
        raise ValueError(f"N={N} must be a power of two")
    if sigma_sq <= 0:
        raise ValueError("sigma_sq must be positive")
    key = (N, float(sigma_sq))
    if key in _ga_cache:
        return _ga_cache[key]

    means = np.array([2.0 / sigma_sq])
    while len(means) < N:
        new = np.empty(2 * len(means))
        for j, m in enumerate(means):
            if math.isinf(m):
                new[2 * j] = math.inf
            else:
                p = ga_phi(m)
                # 1 - (1 - p)^2 expanded to avoid cancellation for tiny p
                arg = p * (2.0 - p)
                new[2 * j] = math.inf if arg <= 0.0 else ga_phi_inv(arg)
            new[2 * j + 1] = 2.0 * m
        means = new

    perr = np.array([perr_from_mean(m) for m in means])
    table = ReliabilityTable(mean_llr=means, perr=perr, sigma_sq=float(sigma_sq))
    _ga_cache[key] = table
    return table


def select_frozen(table, K):
    """Frozen mask keeping the K most reliable bits unfrozen.

    Ties in mean LLR break toward the lower index being unfrozen.
    """
    N = len(table.mean_llr)
    if not 0 < K < N:
        raise ValueError(f"K={K} out of range for N={N}")
    # primary key: mean descending; secondary: index ascending
    order = np.lexsort((np.arange(N), -table.mean_llr))
    frozen = np.ones(N, dtype=bool)
    frozen[order[:K]] = False
    return frozen


def design_code(N, K, design_gamma_db):
    """Construct a CodeConfig (and its ReliabilityTable) for rate K/N."""
    rate = K / N
    sigma_sq = gamma_to_sigma_sq(design_gamma_db, rate)
    table = ga_reliability(N, sigma_sq)
    frozen = select_frozen(table, K)
    cfg = CodeConfig(N=N, n=int(math.log2(N)), K=K, frozen_mask=frozen,
                     design_gamma_db=float(design_gamma_db), rate=rate)
    return cfg, table


_perm_cache = {}


def bit_reversal_permutation(n):
    """Index permutation reversing the n-bit binary representation."""
    perm = _perm_cache.get(n)
    if perm is None:
        N = 1 << n
        idx = np.arange(N)
        perm = np.zeros(N, dtype=np.int64)
        for b in range(n):
            perm |= ((idx >> b) & 1) << (n - 1 - b)
        _perm_cache[n] = perm
    return perm


def polar_transform(u):
    """Raw transform u -> u @ G_N over GF(2) with bit-reversal ordering,
    as the in-place XOR butterfly; O(N log N) bit operations."""
    u = np.asarray(u, dtype=np.uint8)
    N = u.shape[0]
    if N < 1 or N & (N - 1):
        raise ValueError("length must be a power of two")
    x = u[bit_reversal_permutation(int(math.log2(N)))].copy()
    size = N
    while size > 1:
        blocks = x.reshape(-1, size)
        blocks[:, : size // 2] ^= blocks[:, size // 2:]
        size //= 2
    return x


def encode(u, config):
    """Encode a source word: validates the frozen positions, then applies
    the polar transform."""
    u = np.asarray(u, dtype=np.uint8)
    if u.shape != (config.N,):
        raise ValueError(f"u must have shape ({config.N},)")
    if np.any(u[config.frozen_mask] != 0):
        raise ValueError("frozen positions of u must be zero")
    return polar_transform(u)


def export_reliability_csv(table, path):
    """Write the reliability table as CSV (index, mean_llr, perr)."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["index", "mean_llr", "perr"])
        for i, (m, p) in enumerate(zip(table.mean_llr, table.perr)):
            w.writerow([i, f"{m:.12g}", f"{p:.12g}"])
