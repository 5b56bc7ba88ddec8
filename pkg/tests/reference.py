"""Object-level reference decoders built from the public path engine
(DecodePath / PathStack / ltpe_extend), used to cross-check the array
kernels trace-for-trace on small codes."""

import math
from dataclasses import dataclass

import numpy as np

from polarstack.crc24 import crc_check
from polarstack.decoders import PathStack, ltpe_extend
from polarstack.llr import DecodePath, advance, compute_llr, stages_required


@dataclass
class RefTrace:
    decisions: np.ndarray
    metric: float
    success: bool
    clk: int
    lops: int
    stages: int
    max_depth: int
    depth_sum: int
    survivors: list  # per-stage data for inspection


def _crc_ok(path, code):
    return crc_check(path.decisions[code.unfrozen_indices])


def ref_scs(obs, code, Q, D, delta=math.inf, crc=True):
    N = code.N
    stack = PathStack(D)
    stack.push(DecodePath.fresh(N))
    qcnt = np.zeros(N + 1, dtype=int)
    reserved = None
    best_fail = None
    clk = lops = stages = 0
    depth_sum = 0
    max_depth = 1
    success = False
    winner = None

    while True:
        if reserved is not None:
            cur, reserved = reserved, None
        elif stack.store_size:
            cur = stack.pop()
        else:
            break
        l = cur.length
        if l == N:
            if (not crc) or _crc_ok(cur, code):
                winner, success = cur, True
                break
            qcnt[N] += 1
            if best_fail is None or cur.metric > best_fail.metric:
                best_fail = cur
            if qcnt[N] >= Q:
                break
            continue
        if qcnt[l] >= Q:
            continue
        qcnt[l] += 1
        s = stages_required(l, N)
        stages += 1
        clk += s
        lops += s
        L = compute_llr(cur, obs, l)
        children = ltpe_extend(cur, L, delta, frozen=bool(code.frozen_mask[l]))
        if len(children) == 1 and children[0].reserved:
            reserved = children[0]
        else:
            for ch in children:
                stack.push(ch)
        if qcnt[l] >= Q:
            stack.purge(l)
        dep = stack.store_size + (1 if reserved is not None else 0)
        depth_sum += dep
        max_depth = max(max_depth, dep)
        if stages > Q * N + N:
            break

    if winner is None:
        winner = best_fail
    dec = winner.decisions.copy() if winner is not None else np.zeros(N, np.uint8)
    pm = winner.metric if winner is not None else -math.inf
    return RefTrace(dec, pm, success, clk, lops, stages, max_depth,
                    depth_sum, [])


def ref_staged(obs, code, list_size, Q, delta, D, crc=True, two_bit=False):
    """Reference LSCS (two_bit=False) / ELSCS (two_bit=True)."""
    N = code.N
    frozen = code.frozen_mask
    stack = PathStack(D)
    stack.push(DecodePath.fresh(N))
    qcnt = np.zeros(N + 1, dtype=int)
    best_fail = None
    clk = lops = stages = 0
    depth_sum = 0
    max_depth = 1
    success = False
    winner = None
    survivors = []
    done = False

    while not done:
        sel = []
        hard_stop = False
        pending = stack.take_reserved()
        while pending or (len(sel) < list_size and stack.store_size):
            cur = pending.pop(0) if pending else stack.pop()
            if cur.length == N:
                if (not crc) or _crc_ok(cur, code):
                    winner, success, done = cur, True, True
                    break
                qcnt[N] += 1
                if best_fail is None or cur.metric > best_fail.metric:
                    best_fail = cur
                if qcnt[N] >= Q:
                    hard_stop = True
                    break
            else:
                sel.append(cur)
                if not pending and len(sel) >= list_size:
                    break
        if done or hard_stop:
            break
        if not sel:
            break
        survivors.append(sorted((p.length, p.metric) for p in sel))

        even_max = 0
        odd_seen = False
        stage_sum = 0
        any_ext = False
        for cur in sel:
            n_ext = 2 if two_bit else 1
            for ext in range(n_ext):
                l = cur.length
                if qcnt[l] >= Q:
                    cur = None
                    break
                qcnt[l] += 1
                any_ext = True
                s = stages_required(l, N)
                stage_sum += s
                if l % 2 == 0:
                    even_max = max(even_max, s)
                else:
                    odd_seen = True
                L = compute_llr(cur, obs, l)
                final_ext = ext == n_ext - 1
                if frozen[l]:
                    cur = advance(cur, 0, L)
                    if final_ext or cur.length == N:
                        stack.push(cur)
                elif final_ext:
                    children = ltpe_extend(cur, L, delta)
                    if children[0].reserved:
                        stack.reserve(children[0])
                    else:
                        for ch in children:
                            stack.push(ch)
                    cur = children[0]
                else:
                    # first extension of a two-bit stage: the sign-favored
                    # (= higher metric) child continues immediately, the
                    # sibling is stored unless the threshold prunes it
                    fav = 0 if L >= 0 else 1
                    sib = (advance(cur, 1 - fav, L)
                           if abs(L) <= delta else None)
                    cur = advance(cur, fav, L)
                    if cur.length == N:
                        stack.push(cur)
                    if sib is not None:
                        stack.push(sib)
                if qcnt[l] >= Q and l < N:
                    stack.purge(l)
                if cur.length >= N and not final_ext:
                    break

        if any_ext:
            clk += (even_max + (1 if odd_seen else 0)) if two_bit else \
                max(even_max, 1 if odd_seen else 0)
            lops += stage_sum
            stages += 1
            dep = len(stack)
            depth_sum += dep
            max_depth = max(max_depth, dep)
        if stages > Q * N + N:
            break

    if winner is None:
        winner = best_fail
    dec = winner.decisions.copy() if winner is not None else np.zeros(N, np.uint8)
    pm = winner.metric if winner is not None else -math.inf
    return RefTrace(dec, pm, success, clk, lops, stages, max_depth,
                    depth_sum, survivors)


def ref_scl(obs, code, list_size, crc=True):
    """Reference breadth-first list decoder; records per-phase survivors."""
    N = code.N
    paths = [DecodePath.fresh(N)]
    survivors = []
    for p in range(N):
        Ls = [compute_llr(path, obs, p) for path in paths]
        if code.frozen_mask[p]:
            paths = [advance(path, 0, L) for path, L in zip(paths, Ls)]
        else:
            children = []
            for path, L in zip(paths, Ls):
                children.append(advance(path, 0, L))
                children.append(advance(path, 1, L))
            if len(children) > list_size:
                metrics = np.array([c.metric for c in children])
                keep = np.argsort(-metrics, kind="mergesort")[:list_size]
                mask = np.zeros(len(children), dtype=bool)
                mask[keep] = True
                children = [c for c, k in zip(children, mask) if k]
            paths = children
        survivors.append(sorted(p_.metric for p_ in paths))

    best_pass = None
    best = None
    for path in paths:
        if best is None or path.metric > best.metric:
            best = path
        if crc and _crc_ok(path, code) and (best_pass is None or
                                            path.metric > best_pass.metric):
            best_pass = path
    if not crc:
        return RefTrace(best.decisions.copy(), best.metric, True, 0, 0, N,
                        len(paths), 0, survivors)
    if best_pass is not None:
        return RefTrace(best_pass.decisions.copy(), best_pass.metric, True,
                        0, 0, N, len(paths), 0, survivors)
    return RefTrace(best.decisions.copy(), best.metric, False, 0, 0, N,
                    len(paths), 0, survivors)
