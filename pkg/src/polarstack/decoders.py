"""Polar decoders: successive cancellation (SC), its list variant (SCL),
the classic stack variant (SCS), and the list-aided stack decoders
(LSCS / ELSCS) with LLR-threshold path extension (LTPE).

Common rules shared by the stack decoders:

* Candidate store ``A`` is ordered by metric; pops return the max-metric,
  earliest-inserted path.  Capacity ``D`` covers ``|A| + |B|``; overflow
  evicts the min-metric element (the incoming candidate is discarded when
  it is itself the minimum).
* LTPE: at an unfrozen bit with ``|L| > delta`` only the sign-favored child
  survives; as the last extension of a stage it is *reserved* (placed in
  ``B``) and extends next stage without competing in the sort.  Frozen bits
  bypass LTPE (single u=0 child, never reserved).
* Search width ``Q``: each length may be extended at most Q times; when the
  quota of length i fills, every stored path of length <= i is deleted.
* A popped full-length path that passes CRC terminates the decode; CRC
  failures are discarded (counted against the quota at length N) and the
  search continues.  If the search exhausts, the best full-length path seen
  is emitted with success=False.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .crc24 import CRC24, crc_check
from .llr import DecodePath, _bp_mode, _pm_mode, advance


@dataclass(frozen=True)
class ComplexityReport:
    """Abstract-model cost counters of one decode."""

    clk_total: int         # sum over stages of the max per-path level cost
    llr_level_ops: int     # sum over stages and paths of level costs
    llr_element_ops: int   # node-level LLR combine count (auxiliary)
    stages: int            # extension stages performed
    max_depth: int         # peak |A| + |B| (list occupancy for SC/SCL)
    avg_depth: float       # depth_sum / stages
    depth_sum: int         # per-stage depth samples, summed


@dataclass(eq=False)
class DecodeOutcome:
    decisions: np.ndarray   # uint8[N], frozen positions zero
    info: np.ndarray        # extracted payload bits (CRC stripped when used)
    crc_ok: bool
    success: bool
    report: ComplexityReport
    metric: float


# ---------------------------------------------------------------------------
# LTPE rule and CRC-aided selection

def ltpe_extend(path, L_val, delta, frozen=False, metric_mode="exact"):
    """Extend one bit under the LLR-threshold rule.

    Returns one child (reserved) when |L_val| exceeds the threshold at an
    unfrozen bit, otherwise both children, the sign-favored one first.
    Frozen bits yield the single u=0 child, never reserved.
    """
    if not delta > 0:
        raise ValueError("delta must be positive")
    if frozen:
        return [advance(path, 0, L_val, metric_mode)]
    fav = 0 if L_val >= 0 else 1
    if abs(L_val) > delta:
        child = advance(path, fav, L_val, metric_mode)
        child.reserved = True
        return [child]
    return [advance(path, fav, L_val, metric_mode),
            advance(path, 1 - fav, L_val, metric_mode)]


def ca_select(full_paths, config, crc=True):
    """Pick the max-metric CRC-passing path; fall back to the overall best.

    Returns (path, success); (None, False) on empty input.  Ties keep the
    earlier path in the sequence.
    """
    best = None
    best_pass = None
    for p in full_paths:
        if p.length != config.N:
            raise ValueError("ca_select requires full-length paths")
        if best is None or p.metric > best.metric:
            best = p
        if crc:
            bits = p.decisions[config.unfrozen_indices]
            if crc_check(bits) and (best_pass is None
                                    or p.metric > best_pass.metric):
                best_pass = p
    if best is None:
        return None, False
    if not crc:
        return best, True
    if best_pass is not None:
        return best_pass, True
    return best, False


# ---------------------------------------------------------------------------
# PathStack: object-level candidate store mirroring the in-kernel semantics

class PathStack:
    """Ordered candidate store A plus reserved list B, capacity D in total.

    Mirrors the array-based store inside the decoder kernels: ascending
    metric with older entries popped first among ties, min-metric eviction
    on overflow, purge-by-length for the search-width rule.
    """

    def __init__(self, capacity):
        if capacity < 2:
            raise ValueError("capacity must be >= 2")
        self.capacity = capacity
        self._entries = []          # (metric, -order, path), ascending
        self.reserved = []          # list of reserved paths (B)
        self._order = 0

    def __len__(self):
        return len(self._entries) + len(self.reserved)

    @property
    def store_size(self):
        return len(self._entries)

    @property
    def top(self):
        return self._entries[-1][2]

    def push(self, path):
        """Insert into A under the capacity cap; returns False if discarded."""
        cap = self.capacity - len(self.reserved)
        if len(self._entries) >= cap:
            if not self._entries or path.metric <= self._entries[0][0]:
                return False
            self._entries.pop(0)
        key = (path.metric, -self._order)
        lo, hi = 0, len(self._entries)
        while lo < hi:
            mid = (lo + hi) // 2
            if self._entries[mid][:2] > key:
                hi = mid
            else:
                lo = mid + 1
        self._entries.insert(lo, (path.metric, -self._order, path))
        self._order += 1
        return True

    def pop(self):
        """Remove and return the max-metric (earliest-inserted on tie) path."""
        return self._entries.pop()[2]

    def reserve(self, path):
        """Place a path in B, evicting from A if the capacity binds."""
        path.reserved = True
        self.reserved.append(path)
        while len(self) > self.capacity and self._entries:
            self._entries.pop(0)

    def take_reserved(self):
        out = self.reserved
        self.reserved = []
        return out

    def purge(self, max_len):
        """Drop every stored path with length <= max_len (A and B)."""
        self._entries = [e for e in self._entries if e[2].length > max_len]
        self.reserved = [p for p in self.reserved if p.length > max_len]


# ---------------------------------------------------------------------------
# workspaces

class _ListWorkspace:
    def __init__(self, N, list_size):
        rows = 2 * list_size
        w = max(N - 1, 1)
        self.trees = np.zeros((rows, w))
        self.pends = np.zeros((rows, w), dtype=np.uint8)
        self.decs = np.zeros((rows, N), dtype=np.uint8)
        self.pms = np.zeros(rows)
        self.buf = np.zeros(max(N // 2, 1), dtype=np.uint8)
        self.buf2 = np.zeros(max(N // 2, 1), dtype=np.uint8)
        self.out_dec = np.zeros(N, dtype=np.uint8)
        self.stats = np.zeros(K.STATS_LEN)
        self.key = (N, list_size)


class _StackWorkspace:
    def __init__(self, N, D, list_size):
        slots = D + 2 * list_size + 4
        w = max(N - 1, 1)
        self.trees = np.zeros((slots, w))
        self.pends = np.zeros((slots, w), dtype=np.uint8)
        self.decs = np.zeros((slots, N), dtype=np.uint8)
        self.pms = np.zeros(slots)
        self.lens = np.zeros(slots, dtype=np.int64)
        self.ems = np.zeros(D + 2)
        self.els = np.zeros(D + 2, dtype=np.int64)
        self.eslots = np.zeros(D + 2, dtype=np.int64)
        self.eords = np.zeros(D + 2, dtype=np.int64)
        self.qcnt = np.zeros(N + 1, dtype=np.int64)
        self.buf = np.zeros(max(N // 2, 1), dtype=np.uint8)
        self.buf2 = np.zeros(max(N // 2, 1), dtype=np.uint8)
        self.out_dec = np.zeros(N, dtype=np.uint8)
        self.fail_dec = np.zeros(N, dtype=np.uint8)
        self.stats = np.zeros(K.STATS_LEN)
        self.key = (N, D, list_size)


# ---------------------------------------------------------------------------
# shared wrapper plumbing

def _check_obs(obs, config):
    if len(obs) != config.N:
        raise ValueError(f"observation length {len(obs)} != N={config.N}")


def _frozen_u8(config):
    return config.frozen_mask.astype(np.uint8)


def _info_idx(config):
    return config.unfrozen_indices.astype(np.int64)


def _payload(decisions, config, crc):
    bits = decisions[config.unfrozen_indices]
    return bits[: config.K - CRC24.degree] if crc else bits


def _report(stats):
    stages = int(stats[K.S_STAGES])
    depth_sum = int(stats[K.S_DEPSUM])
    return ComplexityReport(
        clk_total=int(stats[K.S_CLK]),
        llr_level_ops=int(stats[K.S_LOPS]),
        llr_element_ops=int(stats[K.S_EOPS]),
        stages=stages,
        max_depth=int(stats[K.S_MAXDEP]),
        avg_depth=depth_sum / stages if stages else 0.0,
        depth_sum=depth_sum,
    )


def _validate_crc_capacity(config, crc):
    if crc and config.K <= CRC24.degree:
        raise ValueError(f"K={config.K} leaves no payload after CRC-24")


def _stack_outcome(ws, config, crc):
    status = ws.stats[K.S_STATUS]
    if status == -3.0:
        raise RuntimeError("path slot pool exhausted (internal error)")
    decisions = ws.out_dec.copy()
    crc_ok = bool(ws.stats[K.S_CRCOK])
    success = bool(status == 1.0)
    return DecodeOutcome(
        decisions=decisions,
        info=_payload(decisions, config, crc),
        crc_ok=crc_ok,
        success=success,
        report=_report(ws.stats),
        metric=float(ws.stats[K.S_METRIC]),
    )


# ---------------------------------------------------------------------------
# decoders

def sc_decode(obs, config, *, boxplus="exact", metric="exact", crc=True,
              workspace=None):
    """Successive cancellation: greedy hard decisions, frozen bits forced 0."""
    _check_obs(obs, config)
    _validate_crc_capacity(config, crc)
    N = config.N
    tree = np.zeros(max(N - 1, 1))
    pend = np.zeros(max(N - 1, 1), dtype=np.uint8)
    dec = np.zeros(N, dtype=np.uint8)
    buf = np.zeros(max(N // 2, 1), dtype=np.uint8)
    buf2 = np.zeros(max(N // 2, 1), dtype=np.uint8)
    stats = np.zeros(K.STATS_LEN)
    K._sc_core(obs.llr0, _frozen_u8(config), config.n, _bp_mode(boxplus),
               _pm_mode(metric), tree, pend, dec, buf, buf2, stats)
    crc_ok = bool(crc_check(dec[config.unfrozen_indices])) if crc else True
    return DecodeOutcome(
        decisions=dec,
        info=_payload(dec, config, crc),
        crc_ok=crc_ok,
        success=crc_ok,
        report=_report(stats),
        metric=float(stats[K.S_METRIC]),
    )


def scl_decode(obs, config, list_size, *, boxplus="exact", metric="exact",
               crc=True, workspace=None):
    """Successive cancellation list: breadth-list_size beam with CRC-aided
    selection at full length."""
    _check_obs(obs, config)
    _validate_crc_capacity(config, crc)
    if list_size < 1:
        raise ValueError("list_size must be >= 1")
    ws = workspace
    if ws is None or ws.key != (config.N, list_size):
        ws = _ListWorkspace(config.N, list_size)
    K._scl_core(obs.llr0, _frozen_u8(config), config.n, list_size,
                _bp_mode(boxplus), _pm_mode(metric),
                1 if crc else 0, _info_idx(config), CRC24.poly_bits,
                CRC24.degree, ws.trees, ws.pends, ws.decs, ws.pms,
                ws.buf, ws.buf2, ws.out_dec, ws.stats)
    decisions = ws.out_dec.copy()
    return DecodeOutcome(
        decisions=decisions,
        info=_payload(decisions, config, crc),
        crc_ok=bool(ws.stats[K.S_CRCOK]),
        success=bool(ws.stats[K.S_STATUS] == 1.0),
        report=_report(ws.stats),
        metric=float(ws.stats[K.S_METRIC]),
    )


def scs_decode(obs, config, Q, D=1000, *, delta=math.inf, boxplus="exact",
               metric="exact", crc=True, workspace=None):
    """Classic stack search: pop the best path, extend one bit, push children.

    delta=inf disables LTPE (the default, matching the plain SCS baseline).
    """
    _check_obs(obs, config)
    _validate_crc_capacity(config, crc)
    if Q < 1:
        raise ValueError("Q must be >= 1")
    if D < 2:
        raise ValueError("D must be >= 2")
    if not delta > 0:
        raise ValueError("delta must be positive")
    ws = workspace
    if ws is None or ws.key != (config.N, D, 1):
        ws = _StackWorkspace(config.N, D, 1)
    K._scs_core(obs.llr0, _frozen_u8(config), config.n, Q, D, float(delta),
                _bp_mode(boxplus), _pm_mode(metric),
                1 if crc else 0, _info_idx(config), CRC24.poly_bits,
                CRC24.degree, ws.trees, ws.pends, ws.decs, ws.pms, ws.lens,
                ws.ems, ws.els, ws.eslots, ws.eords, ws.qcnt,
                ws.buf, ws.buf2, ws.out_dec, ws.fail_dec, ws.stats)
    return _stack_outcome(ws, config, crc)


def _staged_decode(obs, config, list_size, Q, delta, D, two_bit, boxplus,
                   metric, crc, workspace):
    _check_obs(obs, config)
    _validate_crc_capacity(config, crc)
    if not 1 <= list_size <= Q:
        raise ValueError("need 1 <= list_size <= Q")
    if D < max(2, list_size):
        raise ValueError("D must be >= max(2, list_size)")
    if not delta > 0:
        raise ValueError("delta must be positive")
    ws = workspace
    if ws is None or ws.key != (config.N, D, list_size):
        ws = _StackWorkspace(config.N, D, list_size)
    K._staged_core(obs.llr0, _frozen_u8(config), config.n, list_size, Q, D,
                   float(delta), _bp_mode(boxplus), _pm_mode(metric),
                   1 if crc else 0, _info_idx(config), CRC24.poly_bits,
                   CRC24.degree, two_bit,
                   ws.trees, ws.pends, ws.decs, ws.pms, ws.lens,
                   ws.ems, ws.els, ws.eslots, ws.eords, ws.qcnt,
                   ws.buf, ws.buf2, ws.out_dec, ws.fail_dec, ws.stats)
    return _stack_outcome(ws, config, crc)


def lscs_decode(obs, config, list_size, Q, delta, D, *, boxplus="exact",
                metric="exact", crc=True, workspace=None):
    """List-aided stack decoding: up to list_size paths (reserved ones first,
    then the best of the store) each extend one bit per stage."""
    return _staged_decode(obs, config, list_size, Q, delta, D, 0, boxplus,
                          metric, crc, workspace)


def elscs_decode(obs, config, list_size, Q, delta, D, *, boxplus="exact",
                 metric="exact", crc=True, workspace=None):
    """Enhanced list-aided stack decoding: each selected path extends two
    sequential bits per stage; after the first extension the higher-metric
    child continues immediately, sorting happens only at stage end."""
    return _staged_decode(obs, config, list_size, Q, delta, D, 1, boxplus,
                          metric, crc, workspace)


DECODERS = {
    "sc": sc_decode,
    "scl": scl_decode,
    "scs": scs_decode,
    "lscs": lscs_decode,
    "elscs": elscs_decode,
}
