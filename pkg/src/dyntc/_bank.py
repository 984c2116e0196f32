"""Compiled operations for a whole chained polynomial.

All degree-2 links of one polynomial live in stacked arrays indexed by a
global term id; ``grp[term]`` names the link (its own counter matrix
``s[g]`` and clock ``clock[g]``). The top structure is the last group and
owns several terms. Chain layout per polynomial term ``a`` of degree
``k >= 2``:

* ``lid[a, b, j]`` link ``j`` of the prefix chain over factors ``1..b``,
  left factor ``b - j`` (1-based), right factor the previous link or ``I``;
* ``rid[a, b, j]`` link ``j`` of the suffix chain over factors ``b+1..k``,
  left factor the previous link or ``I``, right factor ``b + 1 + j``;
* ``tops[a, b]`` the top term for the split after factor ``b``.

A degree-1 term only has ``tops[a, 0]``, holding ``X @ I``.

Every function takes the state tuple first (see ``PolyK._state``) and
returns the number of triples visited.
"""

import numpy as np
from numba import njit

from . import _kernels as K


@njit(cache=True)
def _row(st, term, side, i, vec):
    x1, x2, lf1, lf2, lr1, lc1, lr2, lc2, prod, s, or1, oc2, clock, phi, grp, lost = st
    g = grp[term]
    clock[g] += 1
    if side:
        v, inc = K.row_right(x1, x2, lf1, lf2, lr1, lc1, lr2, lc2, prod, s[g], term, i, vec, clock[g])
    else:
        v, inc = K.row_left(x1, x2, lf1, lf2, lr1, lc1, lr2, lc2, prod, s[g], or1, term, i, vec, clock[g])
    phi[0, term] += inc
    return v


@njit(cache=True)
def _col(st, term, side, i, vec):
    x1, x2, lf1, lf2, lr1, lc1, lr2, lc2, prod, s, or1, oc2, clock, phi, grp, lost = st
    g = grp[term]
    clock[g] += 1
    if side:
        v, inc = K.col_right(x1, x2, lf1, lf2, lr1, lc1, lr2, lc2, prod, s[g], oc2, term, i, vec, clock[g])
    else:
        v, inc = K.col_left(x1, x2, lf1, lf2, lr1, lc1, lr2, lc2, prod, s[g], term, i, vec, clock[g])
    phi[0, term] += inc
    return v


@njit(cache=True)
def _lazy(st, term, side, d):
    x1, x2, lf1, lf2 = st[0], st[1], st[2], st[3]
    clock, grp = st[12], st[14]
    g = grp[term]
    clock[g] += 1
    if side:
        K.lazy_mat(x2, lf2, term, d, clock[g])
    else:
        K.lazy_mat(x1, lf1, term, d, clock[g])


@njit(cache=True)
def _lazy_row(st, term, side, i, vec):
    x1, x2, lf1, lf2 = st[0], st[1], st[2], st[3]
    clock, grp = st[12], st[14]
    g = grp[term]
    clock[g] += 1
    if side:
        K.lazy_row(x2, lf2, term, i, vec, clock[g])
    else:
        K.lazy_row(x1, lf1, term, i, vec, clock[g])


@njit(cache=True)
def _lazy_col(st, term, side, i, vec):
    x1, x2, lf1, lf2 = st[0], st[1], st[2], st[3]
    clock, grp = st[12], st[14]
    g = grp[term]
    clock[g] += 1
    if side:
        K.lazy_col(x2, lf2, term, i, vec, clock[g])
    else:
        K.lazy_col(x1, lf1, term, i, vec, clock[g])


@njit(cache=True)
def _reset(st, term, side, d, restore):
    x1, x2, lf1, lf2, lr1, lc1, lr2, lc2, prod, s, or1, oc2, clock, phi, grp, lost = st
    g = grp[term]
    clock[g] += 1
    # restoring scans every term of the group, so hand over only those
    lo = g
    hi = g + 1 if g < s.shape[0] - 1 else x1.shape[0]
    a = term - lo
    if side:
        v, dec = K.reset_right(x1[lo:hi], x2[lo:hi], lf1[lo:hi], lf2[lo:hi], lr1[lo:hi],
                               lc1[lo:hi], lr2[lo:hi], lc2[lo:hi], prod[lo:hi], s[g],
                               or1[lo:hi], a, d, restore, lost, phi[0, lo:hi])
    else:
        v, dec = K.reset_left(x1[lo:hi], x2[lo:hi], lf1[lo:hi], lf2[lo:hi], lr1[lo:hi],
                              lc1[lo:hi], lr2[lo:hi], lc2[lo:hi], prod[lo:hi], s[g],
                              oc2[lo:hi], a, d, restore, lost, phi[0, lo:hi])
    phi[1, term] += dec
    return v


@njit(cache=True)
def _follow(st, below, term, side, restore):
    # bring the copy held by ``term`` in line with the group ``below``
    x1, x2, s, grp = st[0], st[1], st[9], st[14]
    n = x1.shape[1]
    have = x2[term] if side else x1[term]
    src = s[grp[below]]
    gone = np.zeros((n, n), dtype=np.bool_)
    grown = np.zeros((n, n), dtype=np.bool_)
    any_gone = False
    any_grown = False
    for p in range(n):
        for q in range(n):
            now = src[p, q] > 0
            if have[p, q] and not now:
                gone[p, q] = True
                any_gone = True
            elif now and not have[p, q]:
                grown[p, q] = True
                any_grown = True
    v = 0
    if any_gone:
        v += _reset(st, term, side, gone, restore)
    if any_grown:
        _lazy(st, term, side, grown)
    return v


@njit(cache=True)
def row(st, lid, rid, tops, deg, vals, a, c0, i, vec):
    x1, x2, s, grp = st[0], st[1], st[9], st[14]
    n = x1.shape[1]
    for q in range(n):
        if vec[q]:
            vals[a, c0, i, q] = True
    k = deg[a]
    if k == 1:
        return _row(st, tops[a, 0], 0, i, vec)
    zero = np.zeros(n, dtype=np.bool_)
    d = np.empty(n, dtype=np.bool_)
    c = c0 + 1
    # full update along the suffix chain that starts with this factor
    length = k - c + 1
    v = _row(st, rid[a, c - 1, 0], 1, i, vec)
    for j in range(1, length):
        prev, cur = rid[a, c - 1, j - 1], rid[a, c - 1, j]
        sp = s[grp[prev]]
        for q in range(n):
            d[q] = sp[i, q] > 0 and not x1[cur, i, q]
        v += _row(st, cur, 0, i, d)
    t = tops[a, c - 1]
    sp = s[grp[rid[a, c - 1, length - 1]]]
    for q in range(n):
        d[q] = sp[i, q] > 0 and not x2[t, i, q]
    v += _row(st, t, 1, i, d)
    # reveal-only update of the prefix chain ending just before it
    if c > 1:
        length = c - 1
        v += _col(st, lid[a, c - 1, 0], 0, i, zero)
        for j in range(1, length):
            prev, cur = lid[a, c - 1, j - 1], lid[a, c - 1, j]
            sp = s[grp[prev]]
            for p in range(n):
                d[p] = sp[p, i] > 0 and not x2[cur, p, i]
            v += _col(st, cur, 1, i, d)
        sp = s[grp[lid[a, c - 1, length - 1]]]
        for p in range(n):
            d[p] = sp[p, i] > 0 and not x1[t, p, i]
        v += _col(st, t, 0, i, d)
    else:
        v += _col(st, t, 0, i, zero)
    # every other copy of the factor is updated lazily
    for b in range(c, k + 1):
        _lazy_row(st, lid[a, b, b - c], 0, i, vec)
    for b in range(c - 1):
        _lazy_row(st, rid[a, b, c - 1 - b], 1, i, vec)
    return v


@njit(cache=True)
def col(st, lid, rid, tops, deg, vals, a, c0, i, vec):
    x1, x2, s, grp = st[0], st[1], st[9], st[14]
    n = x1.shape[1]
    for p in range(n):
        if vec[p]:
            vals[a, c0, p, i] = True
    k = deg[a]
    if k == 1:
        return _col(st, tops[a, 0], 0, i, vec)
    zero = np.zeros(n, dtype=np.bool_)
    d = np.empty(n, dtype=np.bool_)
    c = c0 + 1
    length = c
    v = _col(st, lid[a, c, 0], 0, i, vec)
    for j in range(1, length):
        prev, cur = lid[a, c, j - 1], lid[a, c, j]
        sp = s[grp[prev]]
        for p in range(n):
            d[p] = sp[p, i] > 0 and not x2[cur, p, i]
        v += _col(st, cur, 1, i, d)
    t = tops[a, c]
    sp = s[grp[lid[a, c, length - 1]]]
    for p in range(n):
        d[p] = sp[p, i] > 0 and not x1[t, p, i]
    v += _col(st, t, 0, i, d)
    if c < k:
        length = k - c
        v += _row(st, rid[a, c, 0], 1, i, zero)
        for j in range(1, length):
            prev, cur = rid[a, c, j - 1], rid[a, c, j]
            sp = s[grp[prev]]
            for q in range(n):
                d[q] = sp[i, q] > 0 and not x1[cur, i, q]
            v += _row(st, cur, 0, i, d)
        sp = s[grp[rid[a, c, length - 1]]]
        for q in range(n):
            d[q] = sp[i, q] > 0 and not x2[t, i, q]
        v += _row(st, t, 1, i, d)
    else:
        v += _row(st, t, 1, i, zero)
    for b in range(c + 1, k + 1):
        _lazy_col(st, lid[a, b, b - c], 0, i, vec)
    for b in range(c):
        _lazy_col(st, rid[a, b, c - 1 - b], 1, i, vec)
    return v


@njit(cache=True)
def lazy(st, lid, rid, tops, deg, vals, a, c0, d):
    n = d.shape[0]
    for p in range(n):
        for q in range(n):
            if d[p, q]:
                vals[a, c0, p, q] = True
    k = deg[a]
    if k == 1:
        _lazy(st, tops[a, 0], 0, d)
        return
    c = c0 + 1
    for b in range(c, k + 1):
        _lazy(st, lid[a, b, b - c], 0, d)
    for b in range(c):
        _lazy(st, rid[a, b, c - 1 - b], 1, d)


@njit(cache=True)
def reset(st, lid, rid, tops, deg, vals, a, c0, d, restore):
    s = st[9]
    n = d.shape[0]
    top = s.shape[0] - 1
    before = s[top] > 0
    for p in range(n):
        for q in range(n):
            if d[p, q]:
                vals[a, c0, p, q] = False
    k = deg[a]
    if k == 1:
        v = _reset(st, tops[a, 0], 0, d, restore)
    else:
        c = c0 + 1
        v = 0
        for b in range(c, k + 1):
            v += _reset(st, lid[a, b, b - c], 0, d, restore)
        for b in range(c):
            v += _reset(st, rid[a, b, c - 1 - b], 1, d, restore)
        for b in range(c, k + 1):
            for j in range(b - c + 1, b):
                v += _follow(st, lid[a, b, j - 1], lid[a, b, j], 1, restore)
            v += _follow(st, lid[a, b, b - 1], tops[a, b], 0, restore)
        for b in range(c):
            for j in range(c - b, k - b):
                v += _follow(st, rid[a, b, j - 1], rid[a, b, j], 0, restore)
            v += _follow(st, rid[a, b, k - b - 1], tops[a, b], 1, restore)
    if restore:
        v += _recover(st, lid, rid, tops, deg, vals, before)
    return v


@njit(cache=True)
def _recover(st, lid, rid, tops, deg, vals, before):
    # rows that lost a pair which still has a path through stale copies
    s = st[9]
    top = s.shape[0] - 1
    n = before.shape[0]
    h = deg.shape[0]
    v = 0
    acc = np.empty(n, dtype=np.bool_)
    nxt = np.empty(n, dtype=np.bool_)
    zero = np.zeros(n, dtype=np.bool_)
    for x in range(n):
        lost = False
        for z in range(n):
            if before[x, z] and s[top, x, z] == 0:
                lost = True
                break
        if not lost:
            continue
        back = False
        for a in range(h):
            acc[:] = False
            acc[x] = True
            for c in range(deg[a]):
                nxt[:] = False
                for y in range(n):
                    if acc[y]:
                        v += n
                        for z in range(n):
                            if vals[a, c, y, z]:
                                nxt[z] = True
                acc[:] = nxt
            for z in range(n):
                if acc[z] and before[x, z] and s[top, x, z] == 0:
                    back = True
            if back:
                break
        if back:
            for a in range(h):
                v += row(st, lid, rid, tops, deg, vals, a, 0, x, zero)
    return v


@njit(cache=True)
def _init_group(st, first, count, p, q):
    x1, x2, lf1, lf2, lr1, lc1, lr2, lc2, prod, s, or1, oc2, clock, phi, grp, lost = st
    g = grp[first]
    clock[g] += 1
    end = first + count
    visits = K.init_terms(x1[first:end], x2[first:end], lf1[first:end], lf2[first:end],
                          lr1[first:end], lc1[first:end], lr2[first:end], lc2[first:end],
                          prod[first:end], s[g], p, q, clock[g])
    n = x1.shape[1]
    for a in range(first, end):
        tot = 0
        for x in range(n):
            for z in range(n):
                tot += prod[a, x, z]
        phi[0, a] += tot
    return visits + 2 * count * n * n


@njit(cache=True)
def init(st, lid, rid, tops, deg, vals):
    s = st[9]
    n = s.shape[1]
    eye = np.zeros((n, n), dtype=np.bool_)
    for p in range(n):
        eye[p, p] = True
    h_top = 0
    for a in range(deg.shape[0]):
        h_top += 1 if deg[a] == 1 else deg[a] + 1
    first_top = tops[0, 0]
    for a in range(deg.shape[0]):
        if tops[a, 0] < first_top:
            first_top = tops[a, 0]
    tp = np.empty((h_top, n, n), dtype=np.bool_)
    tq = np.empty((h_top, n, n), dtype=np.bool_)
    p = np.empty((1, n, n), dtype=np.bool_)
    q = np.empty((1, n, n), dtype=np.bool_)
    v = 0
    for a in range(deg.shape[0]):
        k = deg[a]
        if k == 1:
            tp[tops[a, 0] - first_top] = vals[a, 0]
            tq[tops[a, 0] - first_top] = eye
            continue
        for b in range(1, k + 1):
            q[0] = eye
            for j in range(b):
                node = lid[a, b, j]
                p[0] = vals[a, b - j - 1]
                v += _init_group(st, node, 1, p, q)
                q[0] = s[st[14][node]] > 0
        for b in range(k):
            p[0] = eye
            for j in range(k - b):
                node = rid[a, b, j]
                q[0] = vals[a, b + j]
                v += _init_group(st, node, 1, p, q)
                p[0] = s[st[14][node]] > 0
        for b in range(k + 1):
            t = tops[a, b] - first_top
            if b:
                tp[t] = s[st[14][lid[a, b, b - 1]]] > 0
            else:
                tp[t] = eye
            if b < k:
                tq[t] = s[st[14][rid[a, b, k - b - 1]]] > 0
            else:
                tq[t] = eye
    v += _init_group(st, first_top, h_top, tp, tq)
    return v


def warmup() -> None:
    from .poly import PolyK

    p = PolyK(2, (1, 2))
    e = np.eye(2, dtype=bool)
    p.init([[e], [e, e]])
    p.set_row(0, e, (1, 0))
    p.set_col(0, e, (1, 1))
    p.lazy_set(e, (0, 0))
    p.reset(e, (1, 0))
