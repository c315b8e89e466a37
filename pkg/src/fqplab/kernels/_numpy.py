"""Pure-numpy kernels.

Every function here has a twin with the same signature in ``_numba``.
Tables are ``int32`` arrays of element indices; masks are ``bool`` arrays.
"""

from __future__ import annotations

import numpy as np

OK = 0
ZERO_NOT_IDENTITY = 2
ADD_NOT_COMMUTATIVE = 3
NO_NEGATIVE = 4
ADD_NOT_ASSOCIATIVE = 5
ONE_NOT_IDENTITY = 6
MUL_NOT_COMMUTATIVE = 7
MUL_NOT_ASSOCIATIVE = 8
NOT_DISTRIBUTIVE = 9
ZERO_EQUALS_ONE = 10


def _first(mask):
    return tuple(int(v) for v in np.argwhere(mask)[0])


def axiom_violation(add, mul, zero, one):
    """Return ``(code, a, b, c)`` for the first failed ring axiom, code 0 if none."""
    n = add.shape[0]
    idx = np.arange(n)
    bad = add[zero] != idx
    if bad.any():
        return (ZERO_NOT_IDENTITY, _first(bad)[0], -1, -1)
    bad = add != add.T
    if bad.any():
        a, b = _first(bad)
        return (ADD_NOT_COMMUTATIVE, a, b, -1)
    bad = ~(add == zero).any(axis=1)
    if bad.any():
        return (NO_NEGATIVE, _first(bad)[0], -1, -1)
    for a in range(n):
        bad = add[add[a]] != add[a][add]
        if bad.any():
            b, c = _first(bad)
            return (ADD_NOT_ASSOCIATIVE, a, b, c)
    bad = mul[one] != idx
    if bad.any():
        return (ONE_NOT_IDENTITY, _first(bad)[0], -1, -1)
    bad = mul != mul.T
    if bad.any():
        a, b = _first(bad)
        return (MUL_NOT_COMMUTATIVE, a, b, -1)
    for a in range(n):
        bad = mul[mul[a]] != mul[a][mul]
        if bad.any():
            b, c = _first(bad)
            return (MUL_NOT_ASSOCIATIVE, a, b, c)
        row = mul[a]
        bad = row[add] != add[row[:, None], row[None, :]]
        if bad.any():
            b, c = _first(bad)
            return (NOT_DISTRIBUTIVE, a, b, c)
    if n > 1 and zero == one:
        return (ZERO_EQUALS_ONE, zero, -1, -1)
    return (OK, -1, -1, -1)


def sumset(add, a_idx, b_idx):
    """Mask of ``{a + b : a in a_idx, b in b_idx}``."""
    out = np.zeros(add.shape[0], dtype=np.bool_)
    if len(a_idx) and len(b_idx):
        out[add[np.ix_(a_idx, b_idx)].ravel()] = True
    return out


def additive_closure(add, mask, zero):
    """Smallest additive subgroup containing the masked elements."""
    cur = mask.copy()
    cur[zero] = True
    while True:
        idx = np.flatnonzero(cur)
        nxt = sumset(add, idx, idx)
        if np.array_equal(nxt, cur):
            return cur
        cur = nxt


def _maps_for(images, coef, tgt_add, tgt_act, tgt_zero):
    # images: (batch, k) target indices -> (batch, |M|) candidate maps
    batch = images.shape[0]
    f = np.full((batch, coef.shape[0]), tgt_zero, dtype=np.int32)
    for j in range(coef.shape[1]):
        f = tgt_add[f, tgt_act[coef[:, j][None, :], images[:, j][:, None]]]
    return f


def hom_search(coef, orbit, cyc, src_add, tgt_add, tgt_act, tgt_zero,
               first_bijective):
    """Enumerate module homomorphisms by generator images.

    ``coef[m]`` writes source element ``m`` in terms of the generators,
    ``orbit[j, r]`` is ``r * g_j`` in the source and ``cyc`` lists the
    elements of the cyclic submodules ``R g_j``.  A candidate image tuple is
    a homomorphism iff it respects ``r * g_j`` for every ``r`` and
    ``f(m + c) = f(m) + f(c)`` for every ``c`` in ``cyc``.  Candidates are
    visited in lexicographic order of image tuples.
    """
    m, k = coef.shape
    nt = tgt_add.shape[0]
    total = nt ** k
    found = []
    batch = max(1, min(total, (1 << 22) // (m * max(1, len(cyc)))))
    radix = nt ** np.arange(k - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, batch):
        t = np.arange(start, min(total, start + batch), dtype=np.int64)
        images = ((t[:, None] // radix[None, :]) % nt).astype(np.int32)
        f = _maps_for(images, coef, tgt_add, tgt_act, tgt_zero)
        ok = np.ones(len(t), dtype=np.bool_)
        for j in range(k):
            ok &= (f[:, orbit[j]] == tgt_act[:, images[:, j]].T).all(axis=1)
        if len(cyc):
            fc = f[:, cyc]
            lhs = f[:, src_add[:, cyc]]
            rhs = tgt_add[f[:, :, None], fc[:, None, :]]
            ok &= (lhs == rhs).all(axis=(1, 2))
        if first_bijective:
            for row in f[ok]:
                if len(np.unique(row)) == m:
                    return row[None, :].astype(np.int32)
            continue
        if ok.any():
            found.append(f[ok])
    if not found:
        return np.zeros((0, m), dtype=np.int32)
    return np.concatenate(found).astype(np.int32)


def gaussian_violation(mul, principal, zero):
    """First pair ``(a, b)`` breaking the local pairwise Gaussian criterion.

    ``principal[x, y]`` is true iff ``y`` lies in the principal ideal ``(x)``.
    """
    n = mul.shape[0]
    diag = np.diagonal(mul)
    aa = diag[:, None].repeat(n, axis=1)
    bb = diag[None, :].repeat(n, axis=0)
    ab = mul
    c1 = principal[aa, ab] & principal[aa, bb]
    c2 = principal[bb, ab] & principal[bb, aa]
    bad = ~(c1 | c2)
    kill = ab == zero
    bad |= kill & c1 & (bb != zero)
    bad |= kill & c2 & (aa != zero)
    bad &= np.triu(np.ones((n, n), dtype=np.bool_))
    if bad.any():
        a, b = _first(bad)
        return (a, b)
    return (-1, -1)


def content_search(mul, add, pid, isum, zero, d, start):
    """First polynomial pair with ``c(fg) != c(f)c(g)``.

    Polynomials of degree <= ``d`` are coded as integers in base ``n`` with
    the constant coefficient most significant.  ``pid[x]`` is the id of
    ``(x)`` and ``isum`` is the ideal-sum table over ids.  Pairs ``F <= G``
    are scanned lexicographically from ``F = start``; returns ``(F, G)`` or
    ``(-1, -1)``.
    """
    n = mul.shape[0]
    w = d + 1
    total = n ** w
    radix = n ** np.arange(w - 1, -1, -1, dtype=np.int64)
    allc = ((np.arange(total, dtype=np.int64)[:, None] // radix) % n).astype(np.int32)
    zero_id = pid[zero]
    for F in range(start, total):
        g = allc[F:]
        f = allc[F]
        prod_id = np.full(len(g), zero_id, dtype=np.int32)
        for i in range(w):
            for j in range(w):
                prod_id = isum[prod_id, pid[mul[f[i], g[:, j]]]]
        fg_id = np.full(len(g), zero_id, dtype=np.int32)
        for t in range(2 * d + 1):
            h = np.full(len(g), zero, dtype=np.int32)
            for i in range(max(0, t - d), min(d, t) + 1):
                h = add[h, mul[f[i], g[:, t - i]]]
            fg_id = isum[fg_id, pid[h]]
        bad = np.flatnonzero(prod_id != fg_id)
        if len(bad):
            return (F, F + int(bad[0]))
    return (-1, -1)
