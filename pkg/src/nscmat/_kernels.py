"""Compiled inner loops.  Every kernel works on uint64 words, so callers
must keep ``n <= 64`` (elements) and ``r <= 63`` (rank); wrappers fall back to
pure Python beyond that.
"""

import numpy as np
from numba import njit

U1 = np.uint64(1)
U0 = np.uint64(0)


@njit(cache=True)
def _low_index(x):
    i = 0
    while (x & U1) == U0:
        x >>= U1
        i += 1
    return i


@njit(cache=True)
def _complement_check(cols, comp, r, connected, piv, pcombo, circ):
    """Rank test (and optionally connectivity) of the columns selected by ``comp``.

    Returns 1 when the selected columns have rank ``r - 1`` (and, if
    ``connected``, form a connected restriction), else 0.
    """
    n = cols.shape[0]
    rank = 0
    ncirc = 0
    size = 0
    for j in range(n):
        bit = U1 << np.uint64(j)
        if (comp & bit) == U0:
            continue
        size += 1
        v = cols[j]
        combo = U0
        for k in range(rank):
            p = piv[k]
            if v & (p & (~p + U1)):
                v ^= p
                combo ^= pcombo[k]
        if v != U0:
            if rank == r - 1:
                return 0
            piv[rank] = v
            pcombo[rank] = combo ^ bit
            rank += 1
        else:
            circ[ncirc] = combo | bit
            ncirc += 1
    if rank != r - 1:
        return 0
    if not connected or size <= 1:
        return 1
    # Merge fundamental circuits into components (as element masks).
    comps = np.empty(ncirc, dtype=np.uint64)
    ncomp = 0
    for t in range(ncirc):
        merged = circ[t]
        k = 0
        for s in range(ncomp):
            if comps[s] & merged:
                merged |= comps[s]
            else:
                comps[k] = comps[s]
                k += 1
        comps[k] = merged
        ncomp = k + 1
    if ncomp == 1 and comps[0] == comp:
        return 1
    return 0


@njit(cache=True)
def scan_cocircuits(rows, cols, r, n, connected, capacity):
    """Gray-code scan of the row space.

    Returns ``(count, coeffs, supports)``; ``count == -1`` signals that more
    than ``capacity`` cocircuits exist and the call must be repeated.
    """
    coeffs = np.empty(capacity, dtype=np.uint64)
    supports = np.empty(capacity, dtype=np.uint64)
    if n == 64:
        full = ~U0
    else:
        full = (U1 << np.uint64(n)) - U1
    piv = np.empty(max(r, 1), dtype=np.uint64)
    pcombo = np.empty(max(r, 1), dtype=np.uint64)
    circ = np.empty(max(n, 1), dtype=np.uint64)
    count = 0
    word = U0
    coeff = U0
    total = np.int64(1) << np.int64(r)
    for k in range(1, total):
        i = _low_index(np.uint64(k))
        coeff ^= U1 << np.uint64(i)
        word ^= rows[i]
        comp = full & ~word
        if _complement_check(cols, comp, r, connected, piv, pcombo, circ):
            if count == capacity:
                return -1, coeffs, supports
            coeffs[count] = coeff
            supports[count] = word
            count += 1
    return count, coeffs, supports


@njit(cache=True)
def projective_minor(cols, r, k, table):
    """Does some contraction to rank ``k`` contain one of the point sets in ``table``?

    ``table`` holds bitmasks over the nonzero vectors of GF(2)^k (bit ``p``
    stands for vector ``p``).  Contraction sets range over the independent
    ``(r - k)``-subsets of the columns, built depth first so that each level
    reduces the columns by one more pivot.
    """
    n = cols.shape[0]
    m = r - k
    if m < 0 or m > n:
        return False
    # proj[d] = columns reduced by the first d pivots; pivmask[d] = their low bits
    proj = np.empty((m + 1, n), dtype=np.uint64)
    pivmask = np.zeros(m + 1, dtype=np.uint64)
    proj[0, :] = cols
    idx = np.zeros(m + 1, dtype=np.int64)
    free = np.empty(max(k, 1), dtype=np.int64)
    d = 0
    idx[0] = 0
    while True:
        if d == m:
            f = 0
            for b in range(r):
                if ((pivmask[m] >> np.uint64(b)) & U1) == U0:
                    free[f] = b
                    f += 1
            points = U0
            for j in range(n):
                v = proj[m, j]
                if v == U0:
                    continue
                x = 0
                for t in range(k):
                    if (v >> np.uint64(free[t])) & U1:
                        x |= 1 << t
                points |= U1 << np.uint64(x)
            for t in range(table.shape[0]):
                if (table[t] & ~points) == U0:
                    return True
            if m == 0:
                return False
            d -= 1
            idx[d] += 1
            continue
        # choose the element at depth d, leaving room for the rest
        j = idx[d]
        limit = n - (m - d)
        while j <= limit and proj[d, j] == U0:
            j += 1
        if j > limit:
            if d == 0:
                return False
            d -= 1
            idx[d] += 1
            continue
        idx[d] = j
        p = proj[d, j]
        low = p & (~p + U1)
        for t in range(n):
            v = proj[d, t]
            if v & low:
                v ^= p
            proj[d + 1, t] = v
        pivmask[d + 1] = pivmask[d] | low
        d += 1
        idx[d] = j + 1


@njit(cache=True)
def _connected_on(vals, comp, piv, pcombo, circ):
    """Is the matroid on the columns ``vals[j]`` (``j`` in ``comp``) connected?"""
    n = vals.shape[0]
    rank = 0
    ncirc = 0
    size = 0
    for j in range(n):
        bit = U1 << np.uint64(j)
        if (comp & bit) == U0:
            continue
        size += 1
        v = vals[j]
        combo = U0
        for k in range(rank):
            p = piv[k]
            if v & (p & (~p + U1)):
                v ^= p
                combo ^= pcombo[k]
        if v != U0:
            piv[rank] = v
            pcombo[rank] = combo ^ bit
            rank += 1
        else:
            circ[ncirc] = combo | bit
            ncirc += 1
    if size <= 1:
        return True
    comps = np.empty(ncirc, dtype=np.uint64)
    ncomp = 0
    for t in range(ncirc):
        merged = circ[t]
        k = 0
        for s in range(ncomp):
            if comps[s] & merged:
                merged |= comps[s]
            else:
                comps[k] = comps[s]
                k += 1
        comps[k] = merged
        ncomp = k + 1
    return ncomp == 1 and comps[0] == comp


@njit(cache=True)
def scan_circuits(cols, s, n, contract_connected, capacity):
    """All circuits of the matroid on ``cols`` (rank ``s``).

    Each circuit ``C`` is produced once, as an independent set ``I`` (indices
    increasing) followed by the element ``x > max(I)`` whose column equals the
    sum of ``I``.  With ``contract_connected`` only circuits whose contraction
    leaves a connected matroid are kept.  Returns ``(count, supports)`` with
    ``count == -1`` when ``capacity`` is too small.
    """
    supports = np.empty(capacity, dtype=np.uint64)
    count = 0
    if n == 64:
        full = ~U0
    else:
        full = (U1 << np.uint64(n)) - U1
    # value -> mask of elements with that column
    order = np.argsort(cols)
    svals = cols[order]
    uniq = np.empty(n, dtype=np.uint64)
    umask = np.zeros(n, dtype=np.uint64)
    nu = 0
    for t in range(n):
        if nu == 0 or svals[t] != uniq[nu - 1]:
            uniq[nu] = svals[t]
            nu += 1
        umask[nu - 1] |= U1 << np.uint64(order[t])
    uniq = uniq[:nu]
    umask = umask[:nu]
    depth_cap = s + 1
    idx = np.empty(depth_cap, dtype=np.int64)
    sums = np.zeros(depth_cap + 1, dtype=np.uint64)
    red = np.empty(depth_cap, dtype=np.uint64)
    setmask = np.zeros(depth_cap + 1, dtype=np.uint64)
    proj = np.empty(n, dtype=np.uint64)
    piv = np.empty(max(n, 1), dtype=np.uint64)
    pcombo = np.empty(max(n, 1), dtype=np.uint64)
    circ = np.empty(max(n, 1), dtype=np.uint64)
    d = 0
    nxt = 0
    while True:
        # Emit circuits I + x for the current set I (size d).
        target = sums[d]
        pos = np.searchsorted(uniq, target)
        if pos < nu and uniq[pos] == target:
            m = umask[pos]
            lo = 0 if d == 0 else idx[d - 1] + 1
            for x in range(lo, n):
                if (m >> np.uint64(x)) & U1:
                    cmask = setmask[d] | (U1 << np.uint64(x))
                    keep = True
                    if contract_connected:
                        for j in range(n):
                            v = cols[j]
                            for k in range(d):
                                p = red[k]
                                if v & (p & (~p + U1)):
                                    v ^= p
                            proj[j] = v
                        keep = _connected_on(proj, full & ~cmask, piv, pcombo, circ)
                    if keep:
                        if count == capacity:
                            return -1, supports
                        supports[count] = cmask
                        count += 1
        # Advance the DFS over independent sets.
        advanced = False
        if d < s:
            j = nxt
            while j < n:
                v = cols[j]
                for k in range(d):
                    p = red[k]
                    if v & (p & (~p + U1)):
                        v ^= p
                if v != U0:
                    idx[d] = j
                    red[d] = v
                    sums[d + 1] = sums[d] ^ cols[j]
                    setmask[d + 1] = setmask[d] | (U1 << np.uint64(j))
                    d += 1
                    nxt = j + 1
                    advanced = True
                    break
                j += 1
        if advanced:
            continue
        # Backtrack to the next sibling.
        while True:
            if d == 0:
                return count, supports
            d -= 1
            j = idx[d] + 1
            found = False
            while j < n:
                v = cols[j]
                for k in range(d):
                    p = red[k]
                    if v & (p & (~p + U1)):
                        v ^= p
                if v != U0:
                    idx[d] = j
                    red[d] = v
                    sums[d + 1] = sums[d] ^ cols[j]
                    setmask[d + 1] = setmask[d] | (U1 << np.uint64(j))
                    d += 1
                    nxt = j + 1
                    found = True
                    break
                j += 1
            if found:
                break
