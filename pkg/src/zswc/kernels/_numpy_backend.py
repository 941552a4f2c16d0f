"""Pure-numpy fallback: the same searches over boolean arrays, no JIT.

Candidate enumeration mirrors the numba backend exactly, so results and node
counts are identical; only the per-node set arithmetic differs (np.roll on
boolean vectors instead of word shifts).
"""

import numpy as np


def prepare(n, weights):
    xs = np.arange(n, dtype=np.int64)
    products = (xs[:, None] * weights[None, :]) % n
    masks = np.zeros((n, n), dtype=bool)
    masks[np.repeat(xs, len(weights)), products.ravel()] = True
    mults = [np.flatnonzero(masks[x]) for x in range(n)]
    return (n, mults, masks)


def _dav_step(src, x, mults, masks):
    out = src | masks[x]
    for d in mults[x]:
        out |= np.roll(src, d)
    return out


def _window_step(src, x, mults):
    out = np.zeros(len(src), dtype=bool)
    for d in mults[x]:
        out |= np.roll(src, d)
    return out


def run(tables, kind_code, first_vals, prefix, max_len, stop_flag, node_budget):
    n, mults, masks = tables
    consecutive = kind_code == 1
    best_seq = np.zeros(max_len, dtype=np.int64)
    if consecutive:
        wins = [[] for _ in range(max_len + 1)]
    else:
        reach = np.zeros((max_len + 1, n), dtype=bool)
    choice = np.zeros(max_len, dtype=np.int64)
    cand = np.zeros(max_len, dtype=np.int64)

    def extend(depth, x):
        # build the state for depth+1; None when a zero-sum appears
        if consecutive:
            new = []
            for w in wins[depth]:
                nw = _window_step(w, x, mults)
                if nw[0]:
                    return None
                new.append(nw)
            opened = masks[x].copy()
            if opened[0]:
                return None
            new.append(opened)
            return new
        nr = _dav_step(reach[depth], x, mults, masks)
        return None if nr[0] else nr

    plen = len(prefix)
    for t in range(plen):
        state = extend(t, prefix[t])
        if state is None:
            return -1, best_seq, 0, 0
        if consecutive:
            wins[t + 1] = state
        else:
            reach[t + 1] = state
        choice[t] = prefix[t]
        best_seq[t] = prefix[t]

    best_depth = plen
    nodes = 0
    status = 0
    depth = plen
    if plen > 0:
        cand[plen] = 1 if consecutive else prefix[plen - 1]
    while depth >= plen:
        if depth == 0:
            if cand[0] >= len(first_vals):
                break
            x = int(first_vals[cand[0]])
            cand[0] += 1
        else:
            if cand[depth] >= n:
                depth -= 1
                continue
            x = int(cand[depth])
            cand[depth] += 1
        nodes += 1
        if stop_flag[0] != 0:
            status = 3
            break
        if node_budget > 0 and nodes > node_budget:
            status = 2
            break
        state = extend(depth, x)
        if state is None:
            continue
        if consecutive:
            wins[depth + 1] = state
        else:
            reach[depth + 1] = state
        choice[depth] = x
        depth += 1
        if depth > best_depth:
            best_depth = depth
            best_seq[:depth] = choice[:depth]
        if depth == max_len:
            status = 1
            stop_flag[0] = 1
            break
        cand[depth] = 1 if consecutive else x
    return best_depth, best_seq, nodes, status


def blocks(tables, values, kind_code):
    n, mults, masks = tables
    if kind_code == 0:
        reach = np.zeros(n, dtype=bool)
        for x in values:
            reach = _dav_step(reach, x, mults, masks)
            if reach[0]:
                return False
        return True
    wins = []
    for x in values:
        wins = [_window_step(w, x, mults) for w in wins]
        wins.append(masks[x].copy())
        if any(w[0] for w in wins):
            return False
    return True


def batch_consecutive_blocks(tables, seqs):
    out = np.zeros(seqs.shape[0], dtype=np.uint8)
    for i in range(seqs.shape[0]):
        out[i] = 1 if blocks(tables, seqs[i], 1) else 0
    return out


def _minkowski(src, vals, n):
    out = np.zeros(n, dtype=bool)
    for d in vals:
        out |= np.roll(src, d)
    return out


def coverage(n, square_values, unit_values, arity, augment):
    base = np.zeros(n, dtype=bool)
    base[square_values] = True
    rows = np.sort((unit_values[:, None] * square_values[None, :]) % n, axis=1)
    out = np.full(arity - 1, -1, dtype=np.int64)
    for i2, y2 in enumerate(unit_values):
        p2 = _minkowski(base, rows[i2], n)
        if augment:
            p2 |= base
        for i3, y3 in enumerate(unit_values):
            p3 = _minkowski(p2, rows[i3], n)
            if augment:
                p3 |= p2
            if arity == 3:
                if not p3.all():
                    out[0], out[1] = y2, y3
                    return out
            else:
                for i4, y4 in enumerate(unit_values):
                    p4 = _minkowski(p3, rows[i4], n)
                    if augment:
                        p4 |= p3
                    if not p4.all():
                        out[0], out[1], out[2] = y2, y3, y4
                        return out
    return out
