"""Per-path LLR engine: decision-LLR recursion, partial-sum bookkeeping and
path-metric updates for one decoding hypothesis.

A :class:`DecodePath` owns the per-path workspaces described in
:mod:`polarstack._kernels`: ``llr_mem`` holds the binary-tree node outputs
(depth d at flat offset ``2**d - 1``, the channel stage is the shared
observation), ``psum_mem`` the pending partial-sum bit of every internal
node.  Splitting a path copies the whole workspace, O(N).
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K


def _bp_mode(name):
    try:
        return {"exact": K.BP_EXACT, "minsum": K.BP_MINSUM}[name]
    except KeyError:
        raise ValueError(f"unknown boxplus mode {name!r}") from None


def _pm_mode(name):
    try:
        return {"exact": K.PM_EXACT, "approx": K.PM_APPROX}[name]
    except KeyError:
        raise ValueError(f"unknown metric mode {name!r}") from None


@dataclass(eq=False)
class ChannelObservation:
    """Channel LLR vector (natural-log units) of one received block."""

    llr0: np.ndarray

    def __post_init__(self):
        self.llr0 = np.asarray(self.llr0, dtype=np.float64)
        if self.llr0.ndim != 1:
            raise ValueError("llr0 must be 1-D")
        if not np.all(np.isfinite(self.llr0)):
            raise ValueError("llr0 must be finite")

    def __len__(self):
        return self.llr0.shape[0]


@dataclass(eq=False)
class DecodePath:
    """One partial decoding hypothesis."""

    n: int
    llr_mem: np.ndarray
    psum_mem: np.ndarray
    decisions: np.ndarray
    length: int = 0
    metric: float = 0.0
    reserved: bool = False
    last_llr: float = math.nan
    _buf: np.ndarray = field(repr=False, default=None)
    _buf2: np.ndarray = field(repr=False, default=None)

    @classmethod
    def fresh(cls, N):
        n = int(math.log2(N))
        if 1 << n != N:
            raise ValueError(f"N={N} must be a power of two")
        return cls(
            n=n,
            llr_mem=np.zeros(max(N - 1, 1)),
            psum_mem=np.zeros(max(N - 1, 1), dtype=np.uint8),
            decisions=np.zeros(N, dtype=np.uint8),
            _buf=np.zeros(max(N // 2, 1), dtype=np.uint8),
            _buf2=np.zeros(max(N // 2, 1), dtype=np.uint8),
        )

    @property
    def N(self):
        return 1 << self.n

    def copy(self):
        return DecodePath(
            n=self.n,
            llr_mem=self.llr_mem.copy(),
            psum_mem=self.psum_mem.copy(),
            decisions=self.decisions.copy(),
            length=self.length,
            metric=self.metric,
            reserved=self.reserved,
            last_llr=self.last_llr,
            _buf=self._buf.copy(),
            _buf2=self._buf2.copy(),
        )


def stages_required(phase, N):
    """Number of recursion levels recomputed to decide bit `phase` (0-based)."""
    n = int(math.log2(N))
    if not 0 <= phase < N:
        raise ValueError(f"phase {phase} out of range for N={N}")
    return K._stages_required(phase, n) if n > 0 else 0


def boxplus(a, b, mode="exact"):
    """Check-node LLR combine; exact ln((1+e^(a+b))/(e^a+e^b)) or min-sum."""
    return K._boxplus(float(a), float(b), _bp_mode(mode))


def update_metric(pm, L, u, mode="exact"):
    """Path-metric update for deciding bit u against decision LLR L."""
    if u not in (0, 1):
        raise ValueError("u must be 0 or 1")
    return K._metric_update(float(pm), float(L), int(u), _pm_mode(mode))


def compute_llr(path, obs, phase, boxplus_mode="exact"):
    """Decision LLR for the next bit; refreshes exactly the activated stages.

    Requires path.length == phase; llr_mem is updated in place, the levels
    outside the activated set are untouched.
    """
    if path.length != phase:
        raise ValueError(f"path has length {path.length}, expected {phase}")
    L = K._refresh(path.llr_mem, path.psum_mem, obs.llr0, phase, path.n,
                   _bp_mode(boxplus_mode))
    path.last_llr = float(L)
    return float(L)


def advance(path, u, L, metric_mode="exact"):
    """Child path extended by decision bit u with decision LLR L."""
    child = path.copy()
    child.metric = K._metric_update(child.metric, float(L), int(u),
                                    _pm_mode(metric_mode))
    child.decisions[path.length] = u
    K._record(child.psum_mem, path.length, child.n, int(u), child._buf,
              child._buf2)
    child.length = path.length + 1
    child.last_llr = float(L)
    child.reserved = False
    return child
