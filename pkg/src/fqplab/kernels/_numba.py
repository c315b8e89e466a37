"""Numba kernels; same contracts as the numpy twins in ``_numpy``."""

from __future__ import annotations

import numba as nb
import numpy as np

from ._numpy import (
    ADD_NOT_ASSOCIATIVE,
    ADD_NOT_COMMUTATIVE,
    MUL_NOT_ASSOCIATIVE,
    MUL_NOT_COMMUTATIVE,
    NO_NEGATIVE,
    NOT_DISTRIBUTIVE,
    OK,
    ONE_NOT_IDENTITY,
    ZERO_EQUALS_ONE,
    ZERO_NOT_IDENTITY,
)

jit = nb.njit(cache=True, nogil=True)


@jit
def axiom_violation(add, mul, zero, one):
    n = add.shape[0]
    for a in range(n):
        if add[zero, a] != a:
            return (ZERO_NOT_IDENTITY, a, -1, -1)
    for a in range(n):
        for b in range(n):
            if add[a, b] != add[b, a]:
                return (ADD_NOT_COMMUTATIVE, a, b, -1)
    for a in range(n):
        has = False
        for b in range(n):
            if add[a, b] == zero:
                has = True
                break
        if not has:
            return (NO_NEGATIVE, a, -1, -1)
    for a in range(n):
        for b in range(n):
            ab = add[a, b]
            for c in range(n):
                if add[ab, c] != add[a, add[b, c]]:
                    return (ADD_NOT_ASSOCIATIVE, a, b, c)
    for a in range(n):
        if mul[one, a] != a:
            return (ONE_NOT_IDENTITY, a, -1, -1)
    for a in range(n):
        for b in range(n):
            if mul[a, b] != mul[b, a]:
                return (MUL_NOT_COMMUTATIVE, a, b, -1)
    for a in range(n):
        for b in range(n):
            ab = mul[a, b]
            for c in range(n):
                if mul[ab, c] != mul[a, mul[b, c]]:
                    return (MUL_NOT_ASSOCIATIVE, a, b, c)
        for b in range(n):
            for c in range(n):
                if mul[a, add[b, c]] != add[mul[a, b], mul[a, c]]:
                    return (NOT_DISTRIBUTIVE, a, b, c)
    if n > 1 and zero == one:
        return (ZERO_EQUALS_ONE, zero, -1, -1)
    return (OK, -1, -1, -1)


@jit
def sumset(add, a_idx, b_idx):
    out = np.zeros(add.shape[0], dtype=np.bool_)
    for i in a_idx:
        for j in b_idx:
            out[add[i, j]] = True
    return out


@jit
def additive_closure(add, mask, zero):
    cur = mask.copy()
    cur[zero] = True
    while True:
        idx = np.flatnonzero(cur)
        nxt = sumset(add, idx, idx)
        same = True
        for i in range(cur.shape[0]):
            if nxt[i] != cur[i]:
                same = False
                break
        if same:
            return cur
        cur = nxt


@jit
def hom_search(coef, orbit, cyc, src_add, tgt_add, tgt_act, tgt_zero,
               first_bijective):
    m, k = coef.shape
    nt = tgt_add.shape[0]
    nr = orbit.shape[1]
    total = 1
    for _ in range(k):
        total *= nt
    cap = 64
    out = np.empty((cap, m), dtype=np.int32)
    count = 0
    digits = np.zeros(k, dtype=np.int64)
    f = np.empty(m, dtype=np.int32)
    seen = np.zeros(nt, dtype=np.bool_)
    for t in range(total):
        rem = t
        for j in range(k - 1, -1, -1):
            digits[j] = rem % nt
            rem //= nt
        for x in range(m):
            acc = tgt_zero
            for j in range(k):
                acc = tgt_add[acc, tgt_act[coef[x, j], digits[j]]]
            f[x] = acc
        ok = True
        for j in range(k):
            for r in range(nr):
                if f[orbit[j, r]] != tgt_act[r, digits[j]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            for c in cyc:
                fc = f[c]
                for x in range(m):
                    if f[src_add[x, c]] != tgt_add[f[x], fc]:
                        ok = False
                        break
                if not ok:
                    break
        if not ok:
            continue
        if first_bijective:
            seen[:] = False
            inj = True
            for x in range(m):
                if seen[f[x]]:
                    inj = False
                    break
                seen[f[x]] = True
            if not inj:
                continue
            res = np.empty((1, m), dtype=np.int32)
            res[0] = f
            return res
        if count == cap:
            cap *= 2
            grown = np.empty((cap, m), dtype=np.int32)
            grown[:count] = out[:count]
            out = grown
        out[count] = f
        count += 1
    if first_bijective:
        return np.zeros((0, m), dtype=np.int32)
    return out[:count].copy()


@jit
def gaussian_violation(mul, principal, zero):
    n = mul.shape[0]
    for a in range(n):
        aa = mul[a, a]
        for b in range(a, n):
            bb = mul[b, b]
            ab = mul[a, b]
            c1 = principal[aa, ab] and principal[aa, bb]
            c2 = principal[bb, ab] and principal[bb, aa]
            if not (c1 or c2):
                return (a, b)
            if ab == zero:
                if c1 and bb != zero:
                    return (a, b)
                if c2 and aa != zero:
                    return (a, b)
    return (-1, -1)


@jit
def content_search(mul, add, pid, isum, zero, d, start):
    n = mul.shape[0]
    w = d + 1
    total = 1
    for _ in range(w):
        total *= n
    zero_id = pid[zero]
    f = np.empty(w, dtype=np.int64)
    g = np.empty(w, dtype=np.int64)
    for F in range(start, total):
        rem = F
        for i in range(w - 1, -1, -1):
            f[i] = rem % n
            rem //= n
        for G in range(F, total):
            rem = G
            for i in range(w - 1, -1, -1):
                g[i] = rem % n
                rem //= n
            prod_id = zero_id
            for i in range(w):
                for j in range(w):
                    prod_id = isum[prod_id, pid[mul[f[i], g[j]]]]
            fg_id = zero_id
            for t in range(2 * d + 1):
                h = zero
                for i in range(max(0, t - d), min(d, t) + 1):
                    h = add[h, mul[f[i], g[t - i]]]
                fg_id = isum[fg_id, pid[h]]
            if prod_id != fg_id:
                return (F, G)
    return (-1, -1)
