"""numba kernels for the witness-count loops of the degree-2 structure.

Every kernel works on the stacked arrays of one structure and a term index
``a``. Arrays: ``x1, x2`` bool (h, n, n); ``lf1, lf2, prod`` int64
(h, n, n); ``lr1, lc1, lr2, lc2`` int64 (h, n); ``s`` int64 (n, n).
Each scan returns ``(visited, changed)``: triples looked at, and counter
increments (or decrements for resets).
"""

import numpy as np
from numba import njit


@njit(cache=True)
def move_to_front(order, a, i):
    pos = 0
    while order[a, pos] != i:
        pos += 1
    while pos > 0:
        order[a, pos] = order[a, pos - 1]
        pos -= 1
    order[a, 0] = i


@njit(cache=True)
def _scan_mid(x1, x2, lf1, lf2, lr1, lc1, lr2, lc2, prod, s, a, i):
    # triples (x, i, z)
    n = x1.shape[1]
    visited = 0
    inc = 0
    bi = max(lc1[a, i], lr2[a, i])
    for x in range(n):
        if x1[a, x, i]:
            b = max(bi, lr1[a, x])
            f1 = lf1[a, x, i]
            for z in range(n):
                if x2[a, i, z]:
                    visited += 1
                    if max(f1, lf2[a, i, z]) > max(b, lc2[a, z]):
                        prod[a, x, z] += 1
                        inc += 1
                        if prod[a, x, z] == 1:
                            s[x, z] += 1
    return visited, inc


@njit(cache=True)
def row_left(x1, x2, lf1, lf2, lr1, lc1, lr2, lc2, prod, s, order_r1, a, i, vec, t):
    n = x1.shape[1]
    for y in range(n):
        if vec[y] and not x1[a, i, y]:
            x1[a, i, y] = True
            lf1[a, i, y] = t
    visited = 0
    inc = 0
    ri = lr1[a, i]
    for x in range(n):
        if x1[a, i, x]:
            b = max(ri, max(lc1[a, x], lr2[a, x]))
            f1 = lf1[a, i, x]
            for y in range(n):
                if x2[a, x, y]:
                    visited += 1
                    if max(f1, lf2[a, x, y]) > max(b, lc2[a, y]):
                        prod[a, i, y] += 1
                        inc += 1
                        if prod[a, i, y] == 1:
                            s[i, y] += 1
    lr1[a, i] = t
    move_to_front(order_r1, a, i)
    return visited, inc


@njit(cache=True)
def col_left(x1, x2, lf1, lf2, lr1, lc1, lr2, lc2, prod, s, a, i, vec, t):
    n = x1.shape[1]
    for x in range(n):
        if vec[x] and not x1[a, x, i]:
            x1[a, x, i] = True
            lf1[a, x, i] = t
    res = _scan_mid(x1, x2, lf1, lf2, lr1, lc1, lr2, lc2, prod, s, a, i)
    lc1[a, i] = t
    return res


@njit(cache=True)
def row_right(x1, x2, lf1, lf2, lr1, lc1, lr2, lc2, prod, s, a, i, vec, t):
    n = x1.shape[1]
    for z in range(n):
        if vec[z] and not x2[a, i, z]:
            x2[a, i, z] = True
            lf2[a, i, z] = t
    res = _scan_mid(x1, x2, lf1, lf2, lr1, lc1, lr2, lc2, prod, s, a, i)
    lr2[a, i] = t
    return res


@njit(cache=True)
def col_right(x1, x2, lf1, lf2, lr1, lc1, lr2, lc2, prod, s, order_c2, a, i, vec, t):
    n = x1.shape[1]
    for y in range(n):
        if vec[y] and not x2[a, y, i]:
            x2[a, y, i] = True
            lf2[a, y, i] = t
    visited = 0
    inc = 0
    ci = lc2[a, i]
    for y in range(n):
        if x2[a, y, i]:
            b = max(ci, max(lc1[a, y], lr2[a, y]))
            f2 = lf2[a, y, i]
            for x in range(n):
                if x1[a, x, y]:
                    visited += 1
                    if max(lf1[a, x, y], f2) > max(b, lr1[a, x]):
                        prod[a, x, i] += 1
                        inc += 1
                        if prod[a, x, i] == 1:
                            s[x, i] += 1
    lc2[a, i] = t
    move_to_front(order_c2, a, i)
    return visited, inc


@njit(cache=True)
def init_terms(x1, x2, lf1, lf2, lr1, lc1, lr2, lc2, prod, s, p, q, t):
    h, n = x1.shape[0], x1.shape[1]
    total = 0
    s[:, :] = 0
    for a in range(h):
        for x in range(n):
            lr1[a, x] = t
            lc1[a, x] = t
            lr2[a, x] = t
            lc2[a, x] = t
            for y in range(n):
                x1[a, x, y] = p[a, x, y]
                lf1[a, x, y] = t if p[a, x, y] else 0
                x2[a, x, y] = q[a, x, y]
                lf2[a, x, y] = t if q[a, x, y] else 0
                prod[a, x, y] = 0
        # sparse rows of q so each witness costs one visit
        ptr = np.zeros(n + 1, dtype=np.int64)
        idx = np.empty(n * n, dtype=np.int64)
        for y in range(n):
            ptr[y + 1] = ptr[y]
            for z in range(n):
                if q[a, y, z]:
                    idx[ptr[y + 1]] = z
                    ptr[y + 1] += 1
        for x in range(n):
            for y in range(n):
                if p[a, x, y]:
                    for e in range(ptr[y], ptr[y + 1]):
                        prod[a, x, idx[e]] += 1
            for z in range(n):
                c = prod[a, x, z]
                if c:
                    total += c
                    s[x, z] += 1
    return total


@njit(cache=True)
def _stamp(lr1, lc1, lr2, lc2, a, x, y, z):
    return max(max(lr1[a, x], lc1[a, y]), max(lr2[a, y], lc2[a, z]))


@njit(cache=True)
def _reveal_left(x1, x2, lf1, lf2, lr1, lc1, lr2, lc2, prod, s, a, x, y):
    # treat entry (x, y) of the left factor as flipped at time 0
    old = lf1[a, x, y]
    if old == 0:
        return 0, 0
    lf1[a, x, y] = 0
    n = x1.shape[1]
    visited = 0
    inc = 0
    for z in range(n):
        if x2[a, y, z]:
            visited += 1
            st = _stamp(lr1, lc1, lr2, lc2, a, x, y, z)
            f2 = lf2[a, y, z]
            if f2 <= st and max(old, f2) > st:
                prod[a, x, z] += 1
                inc += 1
                if prod[a, x, z] == 1:
                    s[x, z] += 1
    return visited, inc


@njit(cache=True)
def _reveal_right(x1, x2, lf1, lf2, lr1, lc1, lr2, lc2, prod, s, a, y, z):
    old = lf2[a, y, z]
    if old == 0:
        return 0, 0
    lf2[a, y, z] = 0
    n = x1.shape[1]
    visited = 0
    inc = 0
    for x in range(n):
        if x1[a, x, y]:
            visited += 1
            st = _stamp(lr1, lc1, lr2, lc2, a, x, y, z)
            f1 = lf1[a, x, y]
            if f1 <= st and max(f1, old) > st:
                prod[a, x, z] += 1
                inc += 1
                if prod[a, x, z] == 1:
                    s[x, z] += 1
    return visited, inc


@njit(cache=True)
def _restore(x1, x2, lf1, lf2, lr1, lc1, lr2, lc2, prod, s, lost, nlost, up):
    # pairs whose last counted witness vanished while another one remains
    h, n = x1.shape[0], x1.shape[1]
    visited = 0
    for k in range(nlost):
        x = lost[k, 0]
        z = lost[k, 1]
        if s[x, z] > 0:
            continue
        found = False
        for b in range(h):
            for y in range(n):
                visited += 1
                if x1[b, x, y] and x2[b, y, z]:
                    v1, i1 = _reveal_left(x1, x2, lf1, lf2, lr1, lc1, lr2, lc2, prod, s, b, x, y)
                    v2, i2 = _reveal_right(x1, x2, lf1, lf2, lr1, lc1, lr2, lc2, prod, s, b, y, z)
                    visited += v1 + v2
                    up[b] += i1 + i2
                    found = True
                    break
            if found:
                break
    return visited


@njit(cache=True)
def reset_left(x1, x2, lf1, lf2, lr1, lc1, lr2, lc2, prod, s, order_c2, a, d, restore, lost, up):
    n = x1.shape[1]
    visited = 0
    dec = 0
    nlost = 0
    for x in range(n):
        for y in range(n):
            if not d[x, y]:
                continue
            f1 = lf1[a, x, y]
            b = max(lr1[a, x], max(lc1[a, y], lr2[a, y]))
            if b >= f1:
                for z in range(n):
                    if x2[a, y, z]:
                        visited += 1
                        if max(f1, lf2[a, y, z]) <= max(b, lc2[a, z]):
                            prod[a, x, z] -= 1
                            dec += 1
                            if prod[a, x, z] == 0:
                                s[x, z] -= 1
                                if s[x, z] == 0:
                                    lost[nlost, 0] = x
                                    lost[nlost, 1] = z
                                    nlost += 1
            else:
                # only columns stamped after the flip can satisfy the predicate
                for k in range(n):
                    z = order_c2[a, k]
                    cz = lc2[a, z]
                    if cz < f1:
                        break
                    visited += 1
                    if x2[a, y, z] and lf2[a, y, z] <= cz:
                        prod[a, x, z] -= 1
                        dec += 1
                        if prod[a, x, z] == 0:
                            s[x, z] -= 1
                            if s[x, z] == 0:
                                lost[nlost, 0] = x
                                lost[nlost, 1] = z
                                nlost += 1
    for x in range(n):
        for y in range(n):
            if d[x, y]:
                x1[a, x, y] = False
                lf1[a, x, y] = 0
    # increments from restoring go to whichever term gained them
    if restore and nlost:
        visited += _restore(x1, x2, lf1, lf2, lr1, lc1, lr2, lc2, prod, s, lost, nlost, up)
    return visited, dec


@njit(cache=True)
def reset_right(x1, x2, lf1, lf2, lr1, lc1, lr2, lc2, prod, s, order_r1, a, d, restore, lost, up):
    n = x1.shape[1]
    visited = 0
    dec = 0
    nlost = 0
    for y in range(n):
        for z in range(n):
            if not d[y, z]:
                continue
            f2 = lf2[a, y, z]
            b = max(lc2[a, z], max(lc1[a, y], lr2[a, y]))
            if b >= f2:
                for x in range(n):
                    if x1[a, x, y]:
                        visited += 1
                        if max(lf1[a, x, y], f2) <= max(b, lr1[a, x]):
                            prod[a, x, z] -= 1
                            dec += 1
                            if prod[a, x, z] == 0:
                                s[x, z] -= 1
                                if s[x, z] == 0:
                                    lost[nlost, 0] = x
                                    lost[nlost, 1] = z
                                    nlost += 1
            else:
                for k in range(n):
                    x = order_r1[a, k]
                    rx = lr1[a, x]
                    if rx < f2:
                        break
                    visited += 1
                    if x1[a, x, y] and lf1[a, x, y] <= rx:
                        prod[a, x, z] -= 1
                        dec += 1
                        if prod[a, x, z] == 0:
                            s[x, z] -= 1
                            if s[x, z] == 0:
                                lost[nlost, 0] = x
                                lost[nlost, 1] = z
                                nlost += 1
    for y in range(n):
        for z in range(n):
            if d[y, z]:
                x2[a, y, z] = False
                lf2[a, y, z] = 0
    # increments from restoring go to whichever term gained them
    if restore and nlost:
        visited += _restore(x1, x2, lf1, lf2, lr1, lc1, lr2, lc2, prod, s, lost, nlost, up)
    return visited, dec


@njit(cache=True)
def lazy_mat(x, lf, a, d, t):
    n = x.shape[1]
    for p in range(n):
        for q in range(n):
            if d[p, q] and not x[a, p, q]:
                x[a, p, q] = True
                lf[a, p, q] = t


@njit(cache=True)
def lazy_row(x, lf, a, i, vec, t):
    n = x.shape[1]
    for q in range(n):
        if vec[q] and not x[a, i, q]:
            x[a, i, q] = True
            lf[a, i, q] = t


@njit(cache=True)
def lazy_col(x, lf, a, i, vec, t):
    n = x.shape[1]
    for p in range(n):
        if vec[p] and not x[a, p, i]:
            x[a, p, i] = True
            lf[a, p, i] = t


def warmup() -> None:
    """Compile (or load from cache) every kernel on tiny inputs."""
    h, n = 1, 2
    x1 = np.zeros((h, n, n), dtype=np.bool_)
    x2 = np.zeros((h, n, n), dtype=np.bool_)
    i64 = lambda *s: np.zeros(s, dtype=np.int64)  # noqa: E731
    lf1, lf2, prod = i64(h, n, n), i64(h, n, n), i64(h, n, n)
    lr1, lc1, lr2, lc2 = i64(h, n), i64(h, n), i64(h, n), i64(h, n)
    order = np.tile(np.arange(n, dtype=np.int64), (h, 1))
    s = i64(n, n)
    vec = np.zeros(n, dtype=np.bool_)
    d = np.zeros((n, n), dtype=np.bool_)
    args = (x1, x2, lf1, lf2, lr1, lc1, lr2, lc2, prod, s)
    row_left(*args, order, 0, 0, vec, 1)
    col_left(*args, 0, 0, vec, 1)
    row_right(*args, 0, 0, vec, 1)
    col_right(*args, order, 0, 0, vec, 1)
    lost = np.zeros((n * n, 2), dtype=np.int64)
    reset_left(*args, order, 0, d, True, lost, np.zeros(1, dtype=np.int64))
    reset_right(*args, order, 0, d, True, lost, np.zeros(1, dtype=np.int64))
    lazy_mat(x1, lf1, 0, d, 1)
    lazy_row(x1, lf1, 0, 0, vec, 1)
    lazy_col(x1, lf1, 0, 0, vec, 1)
    init_terms(*args, x1, x2, 1)
