"""Bitset search kernel.

One depth-first routine drives every exact computation; it runs either
JIT-compiled (numba) or as plain Python over numpy scalars with identical
semantics.  All board points are flat indices packed into uint64 words.

Modes:
  0  maximize placement size (branch and bound)
  1  count placements of exactly ``target`` points
  2  count placements of every size (no pruning)
  3  find the first placement of ``target`` points in index order

The routine explores one task: all placements whose smallest index is
``first``.  Partitioning a run over ``first`` values keeps tasks independent,
so results combine by max (mode 0), sum (modes 1, 2) or first-hit (mode 3).

Shared state:
  ctrl[0]  best size found by any task (mode 0; benign cross-task hint)
  ctrl[1]  nonzero requests a stop; the kernel then returns -1

Return value: mode 0 the best size seen in this task, mode 3 one if the
witness was written, otherwise zero; -1 always signals a stop request.
"""

from __future__ import annotations

import numpy as np

U0 = np.uint64(0)
U1 = np.uint64(1)
M1 = np.uint64(0x5555555555555555)
M2 = np.uint64(0x3333333333333333)
M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
M7 = np.uint64(0x7F)
S1 = np.uint64(1)
S2 = np.uint64(2)
S4 = np.uint64(4)
S8 = np.uint64(8)
S16 = np.uint64(16)
S32 = np.uint64(32)

STOP_CHECK_INTERVAL = 4096


def dfs_task(mode, target, first, excl, future, cos_mask, cos_cap, class_ptr,
             upper, ctrl, counts, witness, stats):
    """Search all placements {first < i1 < i2 < ...} on one board.

    excl[i, j]    bitmask of points collinear with both i and j
    future[p]     bitmask of indices greater than p
    cos_mask/cos_cap/class_ptr   up to a few parallel classes of lines,
                  flattened; each class partitions the board and caps the
                  placement size, giving the bounding function
    upper         proven global bound; mode 0 stops once it is attained
    counts        per-size placement counts (modes 1 and 2)
    witness       [0] = size, [1:] = chosen indices (modes 0 and 3)
    stats         [0] += nodes visited, [1] += subtrees pruned
    """

    def popcnt(v):
        v = v - ((v >> S1) & M1)
        v = (v & M2) + ((v >> S2) & M2)
        v = (v + (v >> S4)) & M4
        v = v + (v >> S8)
        v = v + (v >> S16)
        v = v + (v >> S32)
        return np.int64(v & M7)

    N = excl.shape[0]
    W = excl.shape[2]
    K = class_ptr.shape[0] - 1

    rem = np.zeros((N + 2, W), np.uint64)
    child = np.zeros(W, np.uint64)
    chosen = np.zeros(N + 2, np.int64)
    cmask = np.zeros(W, np.uint64)

    nodes = np.int64(1)
    pruned = np.int64(0)
    best = np.int64(1)
    tick = 0

    chosen[0] = first
    cmask[first >> 6] |= U1 << np.uint64(first & 63)
    for w in range(W):
        rem[1, w] = future[first, w]

    if mode == 0:
        witness[0] = 1
        witness[1] = first
        if ctrl[0] < 1:
            ctrl[0] = 1
    elif mode == 2:
        counts[1] += 1
    elif target == 1:
        if mode == 1:
            counts[1] += 1
        else:
            witness[0] = 1
            witness[1] = first
        stats[0] += nodes
        return np.int64(1)

    k = 1
    while k >= 1:
        # pop the lowest remaining candidate at this level
        p = np.int64(-1)
        for w in range(W):
            wv = rem[k, w]
            if wv != U0:
                rem[k, w] = wv & (wv - U1)
                lsb = wv & ~(wv - U1)
                p = np.int64(w << 6) + popcnt(lsb - U1)
                break
        if p < 0:
            k -= 1
            if k >= 1:
                b = chosen[k]
                cmask[b >> 6] &= ~(U1 << np.uint64(b & 63))
            continue

        nodes += 1
        s = np.int64(k + 1)

        tick += 1
        if tick >= STOP_CHECK_INTERVAL:
            tick = 0
            if ctrl[1] != 0:
                stats[0] += nodes
                stats[1] += pruned
                return np.int64(-1)

        if mode == 2:
            counts[s] += 1
        elif mode == 0:
            if s > best:
                best = s
                witness[0] = s
                for t in range(k):
                    witness[1 + t] = chosen[t]
                witness[1 + k] = p
                if s > ctrl[0]:
                    ctrl[0] = s
                if s >= upper:
                    stats[0] += nodes
                    stats[1] += pruned
                    return best
        elif mode == 1:
            if s == target:
                counts[target] += 1
                continue
        else:
            if s == target:
                witness[0] = s
                for t in range(k):
                    witness[1 + t] = chosen[t]
                witness[1 + k] = p
                stats[0] += nodes
                stats[1] += pruned
                return np.int64(1)

        # candidates compatible with everything chosen so far plus p
        cnt = np.int64(0)
        for w in range(W):
            cw = rem[k, w] & future[p, w]
            for t in range(k):
                cw &= ~excl[chosen[t], p, w]
            child[w] = cw
            cnt += popcnt(cw)

        if cnt == 0:
            continue

        if mode == 0:
            g = ctrl[0]
            if best > g:
                g = best
            if s + cnt <= g:
                pruned += 1
                continue
        elif mode != 2:
            if s + cnt < target:
                pruned += 1
                continue

        if K > 0 and mode != 2:
            pw = p >> 6
            pbit = U1 << np.uint64(p & 63)
            cb = np.int64(N + 1)
            for c in range(K):
                tot = np.int64(0)
                for ci in range(class_ptr[c], class_ptr[c + 1]):
                    used = np.int64(0)
                    avail = np.int64(0)
                    for w in range(W):
                        mw = cos_mask[ci, w]
                        cm = cmask[w]
                        if w == pw:
                            cm |= pbit
                        used += popcnt(cm & mw)
                        avail += popcnt(child[w] & mw)
                    room = cos_cap[ci] - used
                    if room > 0:
                        if avail < room:
                            tot += avail
                        else:
                            tot += room
                if tot < cb:
                    cb = tot
            if mode == 0:
                g = ctrl[0]
                if best > g:
                    g = best
                if s + cb <= g:
                    pruned += 1
                    continue
            else:
                if s + cb < target:
                    pruned += 1
                    continue

        chosen[k] = p
        cmask[p >> 6] |= U1 << np.uint64(p & 63)
        for w in range(W):
            rem[k + 1, w] = child[w]
        k += 1

    stats[0] += nodes
    stats[1] += pruned
    if mode == 0:
        return best
    return np.int64(0)
