"""Hot decoding kernels.

Everything here is nopython-numba-compilable plain Python (see
:mod:`polarstack._accel`); the public modules wrap these kernels with
friendlier types.

Per-path decoder state
----------------------
``tree``  float64[N-1]   latest output LLR of each binary-tree node.  The
                         node at depth ``d`` (root = depth 0), index ``j``
                         within the depth, lives at flat index
                         ``2**d - 1 + j``.  Depth ``n`` (the leaves) is the
                         channel LLR vector, shared across paths and passed
                         separately.
``pend``  uint8[N-1]     pending decision bit of each node, i.e. the bit the
                         node decided at its most recent even phase.  Same
                         flat layout as ``tree``.
``dec``   uint8[N]       decided source bits so far.

At source phase ``p`` (0-based) the nodes at depths ``ctz(p)..0`` (all of
them for ``p = 0``) each evaluate one LLR combine: a check combine (boxplus)
when the node's own phase ``p >> d`` is even, a sign-flip add using ``pend``
when odd.  One depth = one clock in the abstract time model, so the clock
cost of phase ``p`` is ``stages_required(p, n)`` and the element count is
``2**stages - 1``.

Stack decoder storage
---------------------
The candidate store is a sorted array of (metric, length, slot, order)
entries, ascending by metric with older entries nearer the pop end, so the
pop end always yields the max-metric, earliest-inserted path.  Slots index
into preallocated per-path state pools; a free list recycles them.
"""

import math

import numpy as np

from ._accel import njit

# boxplus / metric update modes
BP_EXACT = 0
BP_MINSUM = 1
PM_EXACT = 0
PM_APPROX = 1

# stats vector layout shared by all decoder cores
S_STATUS = 0    # 1 ok, 0 fell back to best CRC-failing path, -1 no full path,
                # -2 stage safety cap hit, -3 slot pool exhausted (bug)
S_METRIC = 1
S_CLK = 2
S_LOPS = 3      # level ops: one per activated recursion depth per path
S_EOPS = 4      # element ops: one per node combine
S_STAGES = 5
S_MAXDEP = 6
S_DEPSUM = 7
S_CRCOK = 8
STATS_LEN = 9


# ---------------------------------------------------------------------------
# scalar primitives

@njit(cache=True)
def _ctz(p):
    t = 0
    while p & 1 == 0:
        p >>= 1
        t += 1
    return t


@njit(cache=True)
def _stages_required(p, n):
    """Recursion depths activated when computing the decision LLR of phase p."""
    if p == 0:
        return n
    return _ctz(p) + 1


@njit(cache=True)
def _softplus(x):
    if x > 0.0:
        return x + math.log1p(math.exp(-x))
    return math.log1p(math.exp(x))


@njit(cache=True)
def _boxplus(a, b, mode):
    neg = (a < 0.0) != (b < 0.0)
    m = min(abs(a), abs(b))
    s = -m if neg else m
    if mode == BP_MINSUM:
        return s
    return s + math.log1p(math.exp(-abs(a + b))) - math.log1p(math.exp(-abs(a - b)))


@njit(cache=True)
def _favored_bit(L):
    return 0 if L >= 0.0 else 1


@njit(cache=True)
def _metric_update(pm, L, u, mode):
    if mode == PM_APPROX:
        if u == _favored_bit(L):
            return pm
        return pm - abs(L)
    z = L if u == 0 else -L
    return pm - _softplus(-z)


# ---------------------------------------------------------------------------
# per-path tree ops

@njit(cache=True)
def _refresh(tree, pend, llr0, p, n, bp_mode):
    """Recompute the activated depths for phase p; return the decision LLR."""
    if n == 0:
        return llr0[0]
    dmax = n - 1 if p == 0 else _ctz(p)
    for d in range(dmax, -1, -1):
        q = p >> d
        base = (1 << d) - 1
        cbase = (1 << (d + 1)) - 1
        width = 1 << d
        g_node = (q & 1) == 1
        for j in range(width):
            if d == n - 1:
                a = llr0[2 * j]
                b = llr0[2 * j + 1]
            else:
                a = tree[cbase + 2 * j]
                b = tree[cbase + 2 * j + 1]
            if g_node:
                if pend[base + j] == 1:
                    tree[base + j] = b - a
                else:
                    tree[base + j] = b + a
            else:
                tree[base + j] = _boxplus(a, b, bp_mode)
    return tree[0]


@njit(cache=True)
def _record(pend, p, n, u, buf, buf2):
    """Fold decision bit u of phase p into the pending partial sums."""
    if n == 0:
        return
    if p & 1 == 0:
        pend[0] = u
        return
    buf[0] = u
    width = 1
    d = 0
    q = p
    while True:
        base = (1 << d) - 1
        if q & 1 == 0:
            for j in range(width):
                pend[base + j] = buf[j]
            return
        if d == n - 1:
            return
        for j in range(width - 1, -1, -1):
            v = pend[base + j] ^ buf[j]
            w = buf[j]
            buf2[2 * j] = v
            buf2[2 * j + 1] = w
        for j in range(2 * width):
            buf[j] = buf2[j]
        width <<= 1
        d += 1
        q >>= 1


# ---------------------------------------------------------------------------
# CRC

@njit(cache=True)
def _crc_rem(bits, poly, degree, pad_zeros):
    """MSB-first polynomial remainder of bits (optionally shifted by D^pad)."""
    mask = (1 << degree) - 1
    top = degree - 1
    reg = 0
    for i in range(bits.shape[0]):
        carry = (reg >> top) & 1
        reg = ((reg << 1) | int(bits[i])) & mask
        if carry == 1:
            reg ^= poly
    for _ in range(pad_zeros):
        carry = (reg >> top) & 1
        reg = (reg << 1) & mask
        if carry == 1:
            reg ^= poly
    return reg


@njit(cache=True)
def _crc_ok_at(dec, info_idx, poly, degree):
    mask = (1 << degree) - 1
    top = degree - 1
    reg = 0
    for i in range(info_idx.shape[0]):
        carry = (reg >> top) & 1
        reg = ((reg << 1) | int(dec[info_idx[i]])) & mask
        if carry == 1:
            reg ^= poly
    return reg == 0


# ---------------------------------------------------------------------------
# sorted candidate store (ascending metric; pop end = max metric)

@njit(cache=True)
def _ss_insert(ems, els, eslots, eords, cnt, m, ln, slot, order):
    """Insert keeping ascending (metric, -order); returns new count."""
    lo = 0
    hi = cnt
    while lo < hi:
        mid = (lo + hi) >> 1
        # does the entry at mid go after the new one?
        if ems[mid] > m or (ems[mid] == m and eords[mid] < order):
            hi = mid
        else:
            lo = mid + 1
    for i in range(cnt, lo, -1):
        ems[i] = ems[i - 1]
        els[i] = els[i - 1]
        eslots[i] = eslots[i - 1]
        eords[i] = eords[i - 1]
    ems[lo] = m
    els[lo] = ln
    eslots[lo] = slot
    eords[lo] = order
    return cnt + 1


@njit(cache=True)
def _ss_drop_at(ems, els, eslots, eords, cnt, pos):
    for i in range(pos, cnt - 1):
        ems[i] = ems[i + 1]
        els[i] = els[i + 1]
        eslots[i] = eslots[i + 1]
        eords[i] = eords[i + 1]
    return cnt - 1


@njit(cache=True)
def _ss_purge(ems, els, eslots, eords, cnt, kill_len, free_stack, free_top):
    """Remove entries with length <= kill_len; free their slots."""
    w = 0
    for r in range(cnt):
        if els[r] > kill_len:
            if w != r:
                ems[w] = ems[r]
                els[w] = els[r]
                eslots[w] = eslots[r]
                eords[w] = eords[r]
            w += 1
        else:
            free_stack[free_top] = eslots[r]
            free_top += 1
    return w, free_top


@njit(cache=True)
def _push_capped(ems, els, eslots, eords, cnt, cap, m, ln, slot, order,
                 free_stack, free_top):
    """Insert under a capacity cap: evict the min-metric entry, or discard the
    candidate itself when it is the minimum (ties discard the candidate)."""
    if cnt >= cap:
        if cnt == 0 or m <= ems[0]:
            free_stack[free_top] = slot
            return cnt, free_top + 1
        free_stack[free_top] = eslots[0]
        free_top += 1
        cnt = _ss_drop_at(ems, els, eslots, eords, cnt, 0)
    cnt = _ss_insert(ems, els, eslots, eords, cnt, m, ln, slot, order)
    return cnt, free_top


# ---------------------------------------------------------------------------
# decoder cores

@njit(cache=True)
def _sc_core(llr0, frozen, n, bp_mode, pm_mode, tree, pend, dec, buf, buf2, stats):
    N = 1 << n
    pm = 0.0
    clk = 0
    lops = 0
    eops = 0
    for p in range(N):
        s = _stages_required(p, n)
        clk += s
        lops += s
        eops += (1 << s) - 1
        L = _refresh(tree, pend, llr0, p, n, bp_mode)
        if frozen[p] == 1:
            u = 0
        else:
            u = _favored_bit(L)
        pm = _metric_update(pm, L, u, pm_mode)
        dec[p] = u
        _record(pend, p, n, u, buf, buf2)
    stats[S_STATUS] = 1.0
    stats[S_METRIC] = pm
    stats[S_CLK] = clk
    stats[S_LOPS] = lops
    stats[S_EOPS] = eops
    stats[S_STAGES] = N
    stats[S_MAXDEP] = 1.0
    stats[S_DEPSUM] = N


@njit(cache=True)
def _scl_core(llr0, frozen, n, list_size, bp_mode, pm_mode,
              crc_on, info_idx, poly, degree,
              trees, pends, decs, pms, buf, buf2, out_dec, stats):
    N = 1 << n
    nrows = trees.shape[0]

    free_rows = np.empty(nrows, dtype=np.int64)
    for i in range(nrows):
        free_rows[i] = nrows - 1 - i
    ftop = nrows

    cur = np.empty(list_size, dtype=np.int64)
    nxt = np.empty(list_size, dtype=np.int64)
    Ls = np.empty(list_size, dtype=np.float64)
    cm = np.empty(2 * list_size, dtype=np.float64)
    keep = np.zeros(2 * list_size, dtype=np.uint8)

    ftop -= 1
    root = free_rows[ftop]
    pms[root] = 0.0
    cur[0] = root
    m = 1

    clk = 0
    lops = 0
    eops = 0
    occ_sum = 0
    maxocc = 1

    for p in range(N):
        s = _stages_required(p, n)
        clk += s
        lops += m * s
        eops += m * ((1 << s) - 1)
        for i in range(m):
            Ls[i] = _refresh(trees[cur[i]], pends[cur[i]], llr0, p, n, bp_mode)
        if frozen[p] == 1:
            for i in range(m):
                r = cur[i]
                pms[r] = _metric_update(pms[r], Ls[i], 0, pm_mode)
                decs[r, p] = 0
                _record(pends[r], p, n, 0, buf, buf2)
        else:
            nch = 2 * m
            for i in range(m):
                cm[2 * i] = _metric_update(pms[cur[i]], Ls[i], 0, pm_mode)
                cm[2 * i + 1] = _metric_update(pms[cur[i]], Ls[i], 1, pm_mode)
            if nch <= list_size:
                for j in range(nch):
                    keep[j] = 1
            else:
                for j in range(nch):
                    keep[j] = 0
                order = np.argsort(-cm[:nch], kind="mergesort")
                for t in range(list_size):
                    keep[order[t]] = 1
            # materialize surviving children, reusing parent rows
            w = 0
            for i in range(m):
                r = cur[i]
                k0 = keep[2 * i] == 1
                k1 = keep[2 * i + 1] == 1
                if k0 and k1:
                    ftop -= 1
                    r1 = free_rows[ftop]
                    trees[r1, :] = trees[r, :]
                    pends[r1, :] = pends[r, :]
                    decs[r1, :] = decs[r, :]
                    pms[r1] = cm[2 * i + 1]
                    decs[r1, p] = 1
                    _record(pends[r1], p, n, 1, buf, buf2)
                    pms[r] = cm[2 * i]
                    decs[r, p] = 0
                    _record(pends[r], p, n, 0, buf, buf2)
                    nxt[w] = r
                    w += 1
                    nxt[w] = r1
                    w += 1
                elif k0:
                    pms[r] = cm[2 * i]
                    decs[r, p] = 0
                    _record(pends[r], p, n, 0, buf, buf2)
                    nxt[w] = r
                    w += 1
                elif k1:
                    pms[r] = cm[2 * i + 1]
                    decs[r, p] = 1
                    _record(pends[r], p, n, 1, buf, buf2)
                    nxt[w] = r
                    w += 1
                else:
                    free_rows[ftop] = r
                    ftop += 1
            m = w
            for i in range(m):
                cur[i] = nxt[i]
            if m > maxocc:
                maxocc = m
        occ_sum += m

    # CRC-aided selection: best passing path, else best overall
    best_any = -1
    best_any_pm = -np.inf
    best_pass = -1
    best_pass_pm = -np.inf
    for i in range(m):
        r = cur[i]
        if pms[r] > best_any_pm:
            best_any_pm = pms[r]
            best_any = r
        if crc_on == 1:
            if _crc_ok_at(decs[r], info_idx, poly, degree) and pms[r] > best_pass_pm:
                best_pass_pm = pms[r]
                best_pass = r
    if crc_on == 0:
        chosen = best_any
        crc_ok = 1.0
        status = 1.0
    elif best_pass >= 0:
        chosen = best_pass
        crc_ok = 1.0
        status = 1.0
    else:
        chosen = best_any
        crc_ok = 0.0
        status = 0.0
    out_dec[:] = decs[chosen]
    stats[S_STATUS] = status
    stats[S_METRIC] = pms[chosen]
    stats[S_CLK] = clk
    stats[S_LOPS] = lops
    stats[S_EOPS] = eops
    stats[S_STAGES] = N
    stats[S_MAXDEP] = maxocc
    stats[S_DEPSUM] = occ_sum
    stats[S_CRCOK] = crc_ok


@njit(cache=True)
def _scs_core(llr0, frozen, n, Q, D, delta, bp_mode, pm_mode,
              crc_on, info_idx, poly, degree,
              trees, pends, decs, pms, lens,
              ems, els, eslots, eords, qcnt,
              buf, buf2, out_dec, fail_dec, stats):
    N = 1 << n
    nslots = trees.shape[0]

    free_stack = np.empty(nslots, dtype=np.int64)
    for i in range(nslots):
        free_stack[i] = nslots - 1 - i
    ftop = nslots
    for i in range(N + 1):
        qcnt[i] = 0

    ftop -= 1
    root = free_stack[ftop]
    pms[root] = 0.0
    lens[root] = 0
    cnt = _ss_insert(ems, els, eslots, eords, 0, 0.0, 0, root, 0)
    order = 1

    reserved = -1
    best_fail_pm = -np.inf
    fail_seen = False
    clk = 0
    lops = 0
    eops = 0
    stages = 0
    depsum = 0.0
    maxdep = 1
    status = -1.0
    metric = 0.0
    crc_ok = 0.0
    stage_cap = Q * N + N

    while True:
        if reserved >= 0:
            curp = reserved
            reserved = -1
        elif cnt > 0:
            cnt -= 1
            curp = eslots[cnt]
        else:
            break
        l = lens[curp]
        if l == N:
            if crc_on == 0 or _crc_ok_at(decs[curp], info_idx, poly, degree):
                out_dec[:] = decs[curp]
                metric = pms[curp]
                status = 1.0
                crc_ok = 1.0
                break
            qcnt[N] += 1
            if pms[curp] > best_fail_pm:
                best_fail_pm = pms[curp]
                fail_dec[:] = decs[curp]
                fail_seen = True
            free_stack[ftop] = curp
            ftop += 1
            if qcnt[N] >= Q:
                break
            continue
        if qcnt[l] >= Q:
            # search width exhausted at this length; the path is dead
            free_stack[ftop] = curp
            ftop += 1
            continue

        qcnt[l] += 1
        s = _stages_required(l, n)
        stages += 1
        clk += s
        lops += s
        eops += (1 << s) - 1
        L = _refresh(trees[curp], pends[curp], llr0, l, n, bp_mode)

        if frozen[l] == 1:
            pms[curp] = _metric_update(pms[curp], L, 0, pm_mode)
            decs[curp, l] = 0
            _record(pends[curp], l, n, 0, buf, buf2)
            lens[curp] = l + 1
            cnt, ftop = _push_capped(ems, els, eslots, eords, cnt, D,
                                     pms[curp], l + 1, curp, order,
                                     free_stack, ftop)
            order += 1
        else:
            fav = _favored_bit(L)
            if abs(L) > delta:
                pms[curp] = _metric_update(pms[curp], L, fav, pm_mode)
                decs[curp, l] = fav
                _record(pends[curp], l, n, fav, buf, buf2)
                lens[curp] = l + 1
                reserved = curp
            else:
                ftop -= 1
                sib = free_stack[ftop]
                trees[sib, :] = trees[curp, :]
                pends[sib, :] = pends[curp, :]
                decs[sib, :] = decs[curp, :]
                pms[sib] = _metric_update(pms[curp], L, 1 - fav, pm_mode)
                decs[sib, l] = 1 - fav
                _record(pends[sib], l, n, 1 - fav, buf, buf2)
                lens[sib] = l + 1

                pms[curp] = _metric_update(pms[curp], L, fav, pm_mode)
                decs[curp, l] = fav
                _record(pends[curp], l, n, fav, buf, buf2)
                lens[curp] = l + 1

                cnt, ftop = _push_capped(ems, els, eslots, eords, cnt, D,
                                         pms[curp], l + 1, curp, order,
                                         free_stack, ftop)
                order += 1
                cnt, ftop = _push_capped(ems, els, eslots, eords, cnt, D,
                                         pms[sib], l + 1, sib, order,
                                         free_stack, ftop)
                order += 1

        if qcnt[l] >= Q:
            cnt, ftop = _ss_purge(ems, els, eslots, eords, cnt, l,
                                  free_stack, ftop)

        dep = cnt + (1 if reserved >= 0 else 0)
        depsum += dep
        if dep > maxdep:
            maxdep = dep
        if stages > stage_cap:
            status = -2.0
            break

    if status == 1.0:
        pass
    elif fail_seen:
        out_dec[:] = fail_dec
        metric = best_fail_pm
        if status == -1.0:
            status = 0.0
    else:
        out_dec[:] = 0
        metric = -np.inf

    stats[S_STATUS] = status
    stats[S_METRIC] = metric
    stats[S_CLK] = clk
    stats[S_LOPS] = lops
    stats[S_EOPS] = eops
    stats[S_STAGES] = stages
    stats[S_MAXDEP] = maxdep
    stats[S_DEPSUM] = depsum
    stats[S_CRCOK] = crc_ok


@njit(cache=True)
def _staged_core(llr0, frozen, n, list_size, Q, D, delta, bp_mode, pm_mode,
                 crc_on, info_idx, poly, degree, two_bit,
                 trees, pends, decs, pms, lens,
                 ems, els, eslots, eords, qcnt,
                 buf, buf2, out_dec, fail_dec, stats):
    """Shared core of the list-aided stack decoders.

    two_bit = 0: each selected path extends one bit per stage.
    two_bit = 1: each selected path extends two sequential bits; after the
    first extension the higher-metric child continues immediately and the
    other child (when within the LLR threshold) goes to the candidate store.
    Reservation (bypassing the next sorting stage) only ever applies to the
    surviving child of a stage's final extension.
    """
    N = 1 << n
    nslots = trees.shape[0]

    free_stack = np.empty(nslots, dtype=np.int64)
    for i in range(nslots):
        free_stack[i] = nslots - 1 - i
    ftop = nslots
    for i in range(N + 1):
        qcnt[i] = 0

    bslots = np.empty(list_size, dtype=np.int64)
    bnext = np.empty(list_size, dtype=np.int64)
    sel = np.empty(list_size, dtype=np.int64)
    bcnt = 0

    ftop -= 1
    root = free_stack[ftop]
    pms[root] = 0.0
    lens[root] = 0
    cnt = _ss_insert(ems, els, eslots, eords, 0, 0.0, 0, root, 0)
    order = 1

    best_fail_pm = -np.inf
    fail_seen = False
    clk = 0
    lops = 0
    eops = 0
    stages = 0
    depsum = 0.0
    maxdep = 1
    status = -1.0
    metric = 0.0
    crc_ok = 0.0
    done = False
    stage_cap = Q * N + N

    while not done:
        # --- selection: all reserved paths first, then the best of the store
        scnt = 0
        hard_stop = False
        for bi in range(bcnt):
            slot = bslots[bi]
            if lens[slot] == N:
                if crc_on == 0 or _crc_ok_at(decs[slot], info_idx, poly, degree):
                    out_dec[:] = decs[slot]
                    metric = pms[slot]
                    status = 1.0
                    crc_ok = 1.0
                    done = True
                    break
                qcnt[N] += 1
                if pms[slot] > best_fail_pm:
                    best_fail_pm = pms[slot]
                    fail_dec[:] = decs[slot]
                    fail_seen = True
                free_stack[ftop] = slot
                ftop += 1
                if qcnt[N] >= Q:
                    hard_stop = True
                    break
            else:
                sel[scnt] = slot
                scnt += 1
        bcnt = 0
        if done or hard_stop:
            break
        while scnt < list_size and cnt > 0:
            cnt -= 1
            slot = eslots[cnt]
            if lens[slot] == N:
                if crc_on == 0 or _crc_ok_at(decs[slot], info_idx, poly, degree):
                    out_dec[:] = decs[slot]
                    metric = pms[slot]
                    status = 1.0
                    crc_ok = 1.0
                    done = True
                    break
                qcnt[N] += 1
                if pms[slot] > best_fail_pm:
                    best_fail_pm = pms[slot]
                    fail_dec[:] = decs[slot]
                    fail_seen = True
                free_stack[ftop] = slot
                ftop += 1
                if qcnt[N] >= Q:
                    hard_stop = True
                    break
            else:
                sel[scnt] = slot
                scnt += 1
        if done or hard_stop:
            break
        if scnt == 0:
            break

        # --- extend the selection
        bn = 0
        even_max = 0
        odd_seen = False
        stage_sum = 0
        any_ext = False
        for si in range(scnt):
            curp = sel[si]
            n_ext = 2 if two_bit == 1 else 1
            for ext in range(n_ext):
                l = lens[curp]
                if qcnt[l] >= Q:
                    # quota exhausted while this path was in flight
                    free_stack[ftop] = curp
                    ftop += 1
                    break
                qcnt[l] += 1
                any_ext = True
                s = _stages_required(l, n)
                stage_sum += s
                eops += (1 << s) - 1
                if l & 1 == 0:
                    if s > even_max:
                        even_max = s
                else:
                    odd_seen = True
                L = _refresh(trees[curp], pends[curp], llr0, l, n, bp_mode)
                final_ext = ext == n_ext - 1

                if frozen[l] == 1:
                    pms[curp] = _metric_update(pms[curp], L, 0, pm_mode)
                    decs[curp, l] = 0
                    _record(pends[curp], l, n, 0, buf, buf2)
                    lens[curp] = l + 1
                    if final_ext or lens[curp] == N:
                        cnt, ftop = _push_capped(ems, els, eslots, eords, cnt,
                                                 D - bn, pms[curp], l + 1,
                                                 curp, order, free_stack, ftop)
                        order += 1
                else:
                    fav = _favored_bit(L)
                    prune_sib = abs(L) > delta
                    if final_ext and prune_sib:
                        # reserved survivor: skips the next sorting stage
                        pms[curp] = _metric_update(pms[curp], L, fav, pm_mode)
                        decs[curp, l] = fav
                        _record(pends[curp], l, n, fav, buf, buf2)
                        lens[curp] = l + 1
                        bnext[bn] = curp
                        bn += 1
                        while cnt + bn > D and cnt > 0:
                            free_stack[ftop] = eslots[0]
                            ftop += 1
                            cnt = _ss_drop_at(ems, els, eslots, eords, cnt, 0)
                    else:
                        sib = -1
                        if not prune_sib:
                            ftop -= 1
                            sib = free_stack[ftop]
                            trees[sib, :] = trees[curp, :]
                            pends[sib, :] = pends[curp, :]
                            decs[sib, :] = decs[curp, :]
                            pms[sib] = _metric_update(pms[curp], L, 1 - fav,
                                                      pm_mode)
                            decs[sib, l] = 1 - fav
                            _record(pends[sib], l, n, 1 - fav, buf, buf2)
                            lens[sib] = l + 1
                        pms[curp] = _metric_update(pms[curp], L, fav, pm_mode)
                        decs[curp, l] = fav
                        _record(pends[curp], l, n, fav, buf, buf2)
                        lens[curp] = l + 1
                        if final_ext or lens[curp] == N:
                            cnt, ftop = _push_capped(ems, els, eslots, eords,
                                                     cnt, D - bn, pms[curp],
                                                     l + 1, curp, order,
                                                     free_stack, ftop)
                            order += 1
                        if sib >= 0:
                            cnt, ftop = _push_capped(ems, els, eslots, eords,
                                                     cnt, D - bn, pms[sib],
                                                     l + 1, sib, order,
                                                     free_stack, ftop)
                            order += 1
                if qcnt[l] >= Q and l < N:
                    cnt, ftop = _ss_purge(ems, els, eslots, eords, cnt, l,
                                          free_stack, ftop)
                    w = 0
                    for bi in range(bn):
                        if lens[bnext[bi]] > l:
                            bnext[w] = bnext[bi]
                            w += 1
                        else:
                            free_stack[ftop] = bnext[bi]
                            ftop += 1
                    bn = w
                if lens[curp] >= N and not final_ext:
                    break

        if any_ext:
            if two_bit == 1:
                clk += even_max + (1 if odd_seen else 0)
            else:
                clk += max(even_max, 1 if odd_seen else 0)
            lops += stage_sum
            stages += 1
            dep = cnt + bn
            depsum += dep
            if dep > maxdep:
                maxdep = dep
        for bi in range(bn):
            bslots[bi] = bnext[bi]
        bcnt = bn
        if stages > stage_cap:
            status = -2.0
            break

    if status == 1.0:
        pass
    elif fail_seen:
        out_dec[:] = fail_dec
        metric = best_fail_pm
        if status == -1.0:
            status = 0.0
    else:
        out_dec[:] = 0
        metric = -np.inf

    stats[S_STATUS] = status
    stats[S_METRIC] = metric
    stats[S_CLK] = clk
    stats[S_LOPS] = lops
    stats[S_EOPS] = eops
    stats[S_STAGES] = stages
    stats[S_MAXDEP] = maxdep
    stats[S_DEPSUM] = depsum
    stats[S_CRCOK] = crc_ok
