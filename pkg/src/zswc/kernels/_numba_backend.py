"""numba implementation: bit-vector states as uint64 words, JIT-compiled DFS.

A set S over Z_n lives in ceil(n/64) words (bit v of word v>>6 marks v in S).
The Minkowski step S (+) {d} is a rotation of the n-bit field by d, done with
word shifts. All kernels release the GIL so searches can fan out over threads.
"""

import numpy as np
from numba import njit

_U0 = np.uint64(0)
_U1 = np.uint64(1)


def prepare(n, weights):
    """Tables: per-term multiple lists and their bit masks, plus field geometry."""
    nwords = (n + 63) // 64
    tail = np.uint64(((1 << (((n - 1) & 63) + 1)) - 1))
    xs = np.arange(n, dtype=np.int64)
    products = (xs[:, None] * weights[None, :]) % n
    bits = np.zeros((n, nwords * 64), dtype=np.uint8)
    bits[np.repeat(xs, len(weights)), products.ravel()] = 1
    masks = np.packbits(bits, axis=1, bitorder="little").view(np.uint64)
    mult_len = bits.sum(axis=1).astype(np.int64)
    max_m = int(mult_len.max())
    mult_vals = np.zeros((n, max_m), dtype=np.int64)
    for x in range(n):
        vals = np.flatnonzero(bits[x])
        mult_vals[x, : len(vals)] = vals
    return (n, nwords, tail, mult_vals, mult_len, np.ascontiguousarray(masks))


@njit(cache=True, nogil=True, inline="always")
def _or_shift(dst, src, d, n, nwords, tail):
    # dst |= (src rotated by d within the n-bit field); src must fit the field
    if d == 0:
        for j in range(nwords):
            dst[j] |= src[j]
        return
    q = d >> 6
    r = d & 63
    if r == 0:
        for j in range(nwords - 1, q - 1, -1):
            dst[j] |= src[j - q]
    else:
        r64 = np.uint64(r)
        c64 = np.uint64(64 - r)
        for j in range(nwords - 1, q, -1):
            dst[j] |= (src[j - q] << r64) | (src[j - q - 1] >> c64)
        dst[q] |= src[0] << r64
    e = n - d
    qe = e >> 6
    re = e & 63
    if re == 0:
        for j in range(nwords - qe):
            dst[j] |= src[j + qe]
    else:
        re64 = np.uint64(re)
        ce64 = np.uint64(64 - re)
        for j in range(nwords - qe - 1):
            dst[j] |= (src[j + qe] >> re64) | (src[j + qe + 1] << ce64)
        dst[nwords - qe - 1] |= src[nwords - 1] >> re64
    dst[nwords - 1] &= tail


@njit(cache=True, nogil=True, inline="always")
def _dav_step(dst, src, x, mult_vals, mult_len, masks, n, nwords, tail):
    # dst = src | A*x | (src (+) A*x); True when 0 becomes reachable
    for j in range(nwords):
        dst[j] = src[j] | masks[x, j]
    for j in range(mult_len[x]):
        _or_shift(dst, src, mult_vals[x, j], n, nwords, tail)
    return dst[0] & _U1 != _U0


@njit(cache=True, nogil=True, inline="always")
def _window_step(dst, src, x, mult_vals, mult_len, n, nwords, tail):
    # dst = src (+) A*x (every window term takes a coefficient)
    for j in range(nwords):
        dst[j] = _U0
    for j in range(mult_len[x]):
        _or_shift(dst, src, mult_vals[x, j], n, nwords, tail)
    return dst[0] & _U1 != _U0


@njit(cache=True, nogil=True)
def _dav_run(
    n, nwords, tail, mult_vals, mult_len, masks,
    first_vals, prefix, max_len, stop_flag, node_budget,
):
    reach = np.zeros((max_len + 1, nwords), dtype=np.uint64)
    choice = np.zeros(max_len, dtype=np.int64)
    cand = np.zeros(max_len, dtype=np.int64)
    best_seq = np.zeros(max_len, dtype=np.int64)
    plen = len(prefix)
    for t in range(plen):
        x = prefix[t]
        if _dav_step(reach[t + 1], reach[t], x, mult_vals, mult_len, masks, n, nwords, tail):
            return -1, best_seq, 0, 0
        choice[t] = x
        best_seq[t] = x
    best_depth = plen
    nodes = 0
    status = 0
    depth = plen
    if plen > 0:
        cand[plen] = prefix[plen - 1]
    while depth >= plen:
        if depth == 0:
            if cand[0] >= len(first_vals):
                break
            x = first_vals[cand[0]]
            cand[0] += 1
        else:
            if cand[depth] >= n:
                depth -= 1
                continue
            x = cand[depth]
            cand[depth] += 1
        nodes += 1
        if stop_flag[0] != 0:
            status = 3
            break
        if node_budget > 0 and nodes > node_budget:
            status = 2
            break
        if _dav_step(reach[depth + 1], reach[depth], x, mult_vals, mult_len, masks,
                     n, nwords, tail):
            continue
        choice[depth] = x
        depth += 1
        if depth > best_depth:
            best_depth = depth
            for i in range(depth):
                best_seq[i] = choice[i]
        if depth == max_len:
            status = 1
            stop_flag[0] = 1
            break
        cand[depth] = x
    return best_depth, best_seq, nodes, status


@njit(cache=True, nogil=True)
def _consec_run(
    n, nwords, tail, mult_vals, mult_len, masks,
    first_vals, prefix, max_len, stop_flag, node_budget,
):
    wins = np.zeros((max_len + 1, max_len, nwords), dtype=np.uint64)
    choice = np.zeros(max_len, dtype=np.int64)
    cand = np.zeros(max_len, dtype=np.int64)
    best_seq = np.zeros(max_len, dtype=np.int64)
    plen = len(prefix)
    for t in range(plen):
        x = prefix[t]
        dead = False
        for s in range(t):
            if _window_step(wins[t + 1, s], wins[t, s], x, mult_vals, mult_len,
                            n, nwords, tail):
                dead = True
                break
        if not dead:
            for j in range(nwords):
                wins[t + 1, t, j] = masks[x, j]
            if wins[t + 1, t, 0] & _U1 != _U0:
                dead = True
        if dead:
            return -1, best_seq, 0, 0
        choice[t] = x
        best_seq[t] = x
    best_depth = plen
    nodes = 0
    status = 0
    depth = plen
    if plen > 0:
        cand[plen] = 1
    while depth >= plen:
        if depth == 0:
            if cand[0] >= len(first_vals):
                break
            x = first_vals[cand[0]]
            cand[0] += 1
        else:
            if cand[depth] >= n:
                depth -= 1
                continue
            x = cand[depth]
            cand[depth] += 1
        nodes += 1
        if stop_flag[0] != 0:
            status = 3
            break
        if node_budget > 0 and nodes > node_budget:
            status = 2
            break
        dead = False
        for s in range(depth):
            if _window_step(wins[depth + 1, s], wins[depth, s], x, mult_vals, mult_len,
                            n, nwords, tail):
                dead = True
                break
        if not dead:
            for j in range(nwords):
                wins[depth + 1, depth, j] = masks[x, j]
            if wins[depth + 1, depth, 0] & _U1 != _U0:
                dead = True
        if dead:
            continue
        choice[depth] = x
        depth += 1
        if depth > best_depth:
            best_depth = depth
            for i in range(depth):
                best_seq[i] = choice[i]
        if depth == max_len:
            status = 1
            stop_flag[0] = 1
            break
        cand[depth] = 1
    return best_depth, best_seq, nodes, status


def run(tables, kind_code, first_vals, prefix, max_len, stop_flag, node_budget):
    n, nwords, tail, mult_vals, mult_len, masks = tables
    core = _dav_run if kind_code == 0 else _consec_run
    return core(
        n, nwords, tail, mult_vals, mult_len, masks,
        first_vals, prefix, max_len, stop_flag, node_budget,
    )


@njit(cache=True, nogil=True)
def _dav_blocks(n, nwords, tail, mult_vals, mult_len, masks, values):
    cur = np.zeros(nwords, dtype=np.uint64)
    new = np.zeros(nwords, dtype=np.uint64)
    for t in range(len(values)):
        if _dav_step(new, cur, values[t], mult_vals, mult_len, masks, n, nwords, tail):
            return False
        cur, new = new, cur
    return True


@njit(cache=True, nogil=True)
def _consec_blocks(n, nwords, tail, mult_vals, mult_len, masks, values):
    length = len(values)
    wins = np.zeros((length, nwords), dtype=np.uint64)
    tmp = np.zeros(nwords, dtype=np.uint64)
    for e in range(length):
        x = values[e]
        for s in range(e):
            if _window_step(tmp, wins[s], x, mult_vals, mult_len, n, nwords, tail):
                return False
            for j in range(nwords):
                wins[s, j] = tmp[j]
        for j in range(nwords):
            wins[e, j] = masks[x, j]
        if wins[e, 0] & _U1 != _U0:
            return False
    return True


def blocks(tables, values, kind_code):
    n, nwords, tail, mult_vals, mult_len, masks = tables
    core = _dav_blocks if kind_code == 0 else _consec_blocks
    return core(n, nwords, tail, mult_vals, mult_len, masks, values)


@njit(cache=True, nogil=True)
def _batch_consec(n, nwords, tail, mult_vals, mult_len, masks, seqs, out):
    for i in range(seqs.shape[0]):
        out[i] = 1 if _consec_blocks(
            n, nwords, tail, mult_vals, mult_len, masks, seqs[i]
        ) else 0


def batch_consecutive_blocks(tables, seqs):
    n, nwords, tail, mult_vals, mult_len, masks = tables
    out = np.zeros(seqs.shape[0], dtype=np.uint8)
    _batch_consec(n, nwords, tail, mult_vals, mult_len, masks, seqs, out)
    return out


@njit(cache=True, nogil=True)
def _is_full(mask, nwords, tail):
    for j in range(nwords - 1):
        if mask[j] != ~_U0:
            return False
    return mask[nwords - 1] == tail


@njit(cache=True, nogil=True)
def _coverage(n, nwords, tail, base, rows, units_, arity, augment):
    out = np.full(arity - 1, np.int64(-1))
    nu = rows.shape[0]
    m = rows.shape[1]
    p2 = np.zeros(nwords, dtype=np.uint64)
    p3 = np.zeros(nwords, dtype=np.uint64)
    p4 = np.zeros(nwords, dtype=np.uint64)
    for i2 in range(nu):
        for j in range(nwords):
            p2[j] = base[j] if augment else _U0
        for k in range(m):
            _or_shift(p2, base, rows[i2, k], n, nwords, tail)
        for i3 in range(nu):
            for j in range(nwords):
                p3[j] = p2[j] if augment else _U0
            for k in range(m):
                _or_shift(p3, p2, rows[i3, k], n, nwords, tail)
            if arity == 3:
                if not _is_full(p3, nwords, tail):
                    out[0] = units_[i2]
                    out[1] = units_[i3]
                    return out
            else:
                for i4 in range(nu):
                    for j in range(nwords):
                        p4[j] = p3[j] if augment else _U0
                    for k in range(m):
                        _or_shift(p4, p3, rows[i4, k], n, nwords, tail)
                    if not _is_full(p4, nwords, tail):
                        out[0] = units_[i2]
                        out[1] = units_[i3]
                        out[2] = units_[i4]
                        return out
    return out


def coverage(n, square_values, unit_values, arity, augment):
    nwords = (n + 63) // 64
    tail = np.uint64(((1 << (((n - 1) & 63) + 1)) - 1))
    base = np.zeros(nwords, dtype=np.uint64)
    for v in square_values:
        base[v >> 6] |= _U1 << np.uint64(int(v) & 63)
    rows = (unit_values[:, None] * square_values[None, :]) % n
    rows = np.sort(rows, axis=1).astype(np.int64)
    return _coverage(n, nwords, tail, base, rows, unit_values.astype(np.int64),
                     arity, bool(augment))
