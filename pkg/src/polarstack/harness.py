"""Monte Carlo driver: per-cell BLER / complexity simulation, normalized
complexity metrics, and CSV emission.

A *cell* is one (decoder, parameters, gamma) combination.  Blocks are
generated from per-block RNG streams keyed by (seed, block index), so every
cell at the same gamma sees the same payloads and noise: comparisons across
decoders are paired, and any scheduling or early-stop pattern replays
exactly.

Normalization: mean time complexity is divided by the plain-SCS (Q=16,
delta=inf) cell of the same gamma, mean computational complexity by the
SCL(16) cell.  When a run lacks the baseline cell the result is reported
unnormalized (NaN) and flagged.
"""

import csv
import math
import time
from dataclasses import dataclass, replace

import numpy as np

from .channel import NoiseSource, transmit
from .construct import design_code, encode, gamma_to_sigma_sq
from .crc24 import CRC24, crc_attach
from .decoders import (DECODERS, ComplexityReport, _ListWorkspace,
                       _StackWorkspace, elscs_decode, lscs_decode, sc_decode,
                       scl_decode, scs_decode)
from .llr import stages_required

CSV_HEADER = ("decoder,L,Q,delta,D,gamma_db,blocks,errors,bler,mean_clk,"
              "mean_ops,eta_t,eta_c,max_depth,avg_depth,seed")


def _phase_of(p):
    return p.length if hasattr(p, "length") else int(p)


def stage_time_cost(selected_paths, N, algo):
    """Clock cost of one extension stage (max over the parallel paths).

    For the two-bit decoder the max runs over the even-phase extensions and
    one clock is added for the odd-phase ones.
    """
    phases = [_phase_of(p) for p in selected_paths]
    if not phases:
        raise ValueError("selection must be nonempty")
    if algo == "lscs":
        return max(stages_required(p, N) for p in phases)
    if algo == "elscs":
        evens = [p if p % 2 == 0 else p + 1 for p in phases]
        evens = [e for e in evens if e < N]
        base = max((stages_required(e, N) for e in evens), default=0)
        return base + 1
    raise ValueError(f"unknown algo {algo!r}")


def stage_comp_cost(selected_paths, N, algo):
    """LLR level-operation cost of one extension stage (sum over paths,
    and over both extensions for the two-bit decoder)."""
    phases = [_phase_of(p) for p in selected_paths]
    if not phases:
        raise ValueError("selection must be nonempty")
    if algo == "lscs":
        return sum(stages_required(p, N) for p in phases)
    if algo == "elscs":
        total = 0
        for p in phases:
            total += stages_required(p, N)
            if p + 1 < N:
                total += stages_required(p + 1, N)
        return total
    raise ValueError(f"unknown algo {algo!r}")


@dataclass(frozen=True)
class CellSpec:
    """One decoder configuration of the experiment grid."""

    decoder: str
    list_size: int = 1
    search_width: int = 16
    delta: float = math.inf
    stack_depth: int = 1000

    def __post_init__(self):
        if self.decoder not in DECODERS:
            raise ValueError(f"unknown decoder {self.decoder!r}")


@dataclass(frozen=True)
class RunConfig:
    cells: tuple
    block_len: int = 1024
    rate: float = 0.5
    crc: bool = True
    gammas: tuple = (2.0,)
    blocks: int = 1000
    max_errors: int = 200
    seed: int = 1
    boxplus: str = "exact"
    metric: str = "exact"


@dataclass
class SimResult:
    decoder: str
    list_size: int
    search_width: int
    delta: float
    stack_depth: int
    gamma_db: float
    blocks: int
    block_errors: int
    bler: float
    mean_clk: float
    mean_ops: float
    mean_element_ops: float
    eta_t: float
    eta_c: float
    max_depth: int
    avg_depth: float
    seed: int
    normalized: bool


def _make_workspace(cell, N):
    if cell.decoder == "scl":
        return _ListWorkspace(N, cell.list_size)
    if cell.decoder == "scs":
        return _StackWorkspace(N, cell.stack_depth, 1)
    if cell.decoder in ("lscs", "elscs"):
        return _StackWorkspace(N, cell.stack_depth, cell.list_size)
    return None


def _decode(cell, obs, code, run, ws):
    kw = dict(boxplus=run.boxplus, metric=run.metric, crc=run.crc,
              workspace=ws)
    if cell.decoder == "sc":
        return sc_decode(obs, code, **kw)
    if cell.decoder == "scl":
        return scl_decode(obs, code, cell.list_size, **kw)
    if cell.decoder == "scs":
        return scs_decode(obs, code, cell.search_width, cell.stack_depth,
                          delta=cell.delta, **kw)
    if cell.decoder == "lscs":
        return lscs_decode(obs, code, cell.list_size, cell.search_width,
                           cell.delta, cell.stack_depth, **kw)
    return elscs_decode(obs, code, cell.list_size, cell.search_width,
                        cell.delta, cell.stack_depth, **kw)


def run_cell(cell, gamma_db, run, verbose=False):
    """Simulate one cell; returns an unnormalized SimResult."""
    N = run.block_len
    K = round(N * run.rate)
    code, _ = design_code(N, K, gamma_db)
    sigma_sq = gamma_to_sigma_sq(gamma_db, run.rate)
    payload_len = K - CRC24.degree if run.crc else K
    if payload_len < 1:
        raise ValueError("no payload bits left after CRC")
    ws = _make_workspace(cell, N)
    unfrozen = code.unfrozen_indices

    errors = 0
    blocks_run = 0
    clk_sum = 0
    ops_sum = 0
    eops_sum = 0
    depth_sum = 0
    stage_sum = 0
    max_depth = 0
    t0 = time.perf_counter()
    for blk in range(run.blocks):
        rng = NoiseSource(run.seed, blk).rng()
        payload = rng.integers(0, 2, payload_len).astype(np.uint8)
        info = crc_attach(payload) if run.crc else payload
        u = np.zeros(N, dtype=np.uint8)
        u[unfrozen] = info
        x = encode(u, code)
        obs = transmit(x, sigma_sq, rng)
        out = _decode(cell, obs, code, run, ws)
        blocks_run += 1
        if (not out.success) or not np.array_equal(out.decisions, u):
            errors += 1
        rep = out.report
        clk_sum += rep.clk_total
        ops_sum += rep.llr_level_ops
        eops_sum += rep.llr_element_ops
        depth_sum += rep.depth_sum
        stage_sum += rep.stages
        if rep.max_depth > max_depth:
            max_depth = rep.max_depth
        if errors >= run.max_errors:
            break
    dt = time.perf_counter() - t0
    res = SimResult(
        decoder=cell.decoder,
        list_size=cell.list_size,
        search_width=cell.search_width,
        delta=cell.delta,
        stack_depth=cell.stack_depth,
        gamma_db=gamma_db,
        blocks=blocks_run,
        block_errors=errors,
        bler=errors / blocks_run,
        mean_clk=clk_sum / blocks_run,
        mean_ops=ops_sum / blocks_run,
        mean_element_ops=eops_sum / blocks_run,
        eta_t=math.nan,
        eta_c=math.nan,
        max_depth=max_depth,
        avg_depth=depth_sum / stage_sum if stage_sum else 0.0,
        seed=run.seed,
        normalized=False,
    )
    if verbose:
        print(f"  {cell.decoder:5s} L={cell.list_size:<2d} "
              f"Q={cell.search_width:<3d} delta={cell.delta:<6g} "
              f"gamma={gamma_db:g} dB: {blocks_run} blocks, "
              f"{errors} errors, BLER={res.bler:.3e} ({dt:.1f}s)")
    return res


def _is_time_baseline(r):
    return (r.decoder == "scs" and r.search_width == 16
            and math.isinf(r.delta))


def _is_comp_baseline(r):
    return r.decoder == "scl" and r.list_size == 16


def normalize_results(results):
    """Fill eta_t / eta_c against the baseline cells of the same gamma."""
    t_base = {}
    c_base = {}
    for r in results:
        if _is_time_baseline(r):
            t_base[r.gamma_db] = r.mean_clk
        if _is_comp_baseline(r):
            c_base[r.gamma_db] = r.mean_ops
    out = []
    for r in results:
        tb = t_base.get(r.gamma_db)
        cb = c_base.get(r.gamma_db)
        eta_t = r.mean_clk / tb if tb else math.nan
        eta_c = r.mean_ops / cb if cb else math.nan
        out.append(replace(r, eta_t=eta_t, eta_c=eta_c,
                           normalized=tb is not None and cb is not None))
    return out


def run_trials(run, verbose=False):
    """Run the whole grid; returns normalized SimResults, one per cell x gamma."""
    if run.blocks < 1:
        raise ValueError("blocks must be >= 1")
    results = []
    for gamma in run.gammas:
        if verbose:
            print(f"gamma = {gamma:g} dB")
        for cell in run.cells:
            results.append(run_cell(cell, gamma, run, verbose=verbose))
    return normalize_results(results)


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def emit_csv(results, path):
    """Write one row per cell with the fixed header; errors on empty input."""
    results = list(results)
    if not results:
        raise ValueError("no results to write")
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_HEADER.split(","))
        for r in results:
            w.writerow([
                r.decoder, r.list_size, r.search_width, _fmt(r.delta),
                r.stack_depth, _fmt(r.gamma_db), r.blocks, r.block_errors,
                _fmt(r.bler), _fmt(r.mean_clk), _fmt(r.mean_ops),
                _fmt(r.eta_t), _fmt(r.eta_c), r.max_depth, _fmt(r.avg_depth),
                r.seed,
            ])
