"""Minor containment and the excluded-minor predicates.

``N`` of rank ``k`` is a minor of ``M`` iff for some independent ``C`` with
``|C| = r(M) - k`` the columns of ``M`` taken modulo ``span(C)`` contain a copy
of ``N``'s column multiset under an injective linear map.  Small simple targets
(rank at most 4) are matched against their full GL(k,2) orbit of point sets in
a compiled loop; everything else goes through the embedding search in
:mod:`nscmat.iso`.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

import numpy as np

from . import _kernels
from .gf2core import span_basis
from .iso import _embed
from .matroid import BinaryMatroid, dual, is_simple
from .zoo import complete, complete_bipartite, fano

FAST_MAX_RANK = 4


def _ordered_bases(k: int):
    """All ordered bases of GF(2)^k (i.e. the elements of GL(k,2))."""
    def rec(prefix, span):
        if len(prefix) == k:
            yield tuple(prefix)
            return
        for v in range(1, 1 << k):
            if v not in span:
                new_span = span | {s ^ v for s in span}
                yield from rec(prefix + [v], new_span)
    yield from rec([], {0})


@lru_cache(maxsize=64)
def _orbit_table(columns: tuple[int, ...], k: int) -> np.ndarray:
    masks = set()
    for basis in _ordered_bases(k):
        m = 0
        for c in columns:
            w = 0
            for i in range(k):
                if (c >> i) & 1:
                    w ^= basis[i]
            m |= 1 << w
        masks.add(m)
    return np.array(sorted(masks), dtype=np.uint64)


def _fast_applicable(M: BinaryMatroid, N: BinaryMatroid) -> bool:
    return 1 <= N.r <= FAST_MAX_RANK and M.n <= 64 and is_simple(N)


def _general(M: BinaryMatroid, N: BinaryMatroid, budget: int | None) -> bool:
    k, r = N.r, M.r
    m = r - k
    cols = M.columns
    spent = 0
    seen: set[tuple[int, ...]] = set()
    for C in combinations(range(M.n), m):
        basis = span_basis(cols[j] for j in C)
        if len(basis) != m:
            continue
        key = tuple(basis)
        if key in seen:
            continue
        seen.add(key)
        pivots = [b.bit_length() - 1 for b in basis]
        free = [b for b in range(r) if b not in set(pivots)]
        cset = set(C)
        projected = []
        for j, c in enumerate(cols):
            if j in cset:
                continue
            for b in basis:
                c = min(c, c ^ b)
            projected.append(sum(1 << t for t, b in enumerate(free) if (c >> b) & 1))
        remaining = None if budget is None else budget - spent
        counter = [0]
        try:
            found = _embed(N.columns, k, projected, k, remaining, counter=counter)
        finally:
            spent += counter[0]
        if found is not None:
            return True
    return False


def has_minor(M: BinaryMatroid, N: BinaryMatroid, budget: int | None = None) -> bool:
    """Is ``N`` isomorphic to a minor of ``M``?

    ``budget`` bounds the embedding-search nodes of the general path; when it
    runs out :class:`BudgetExceeded` is raised.
    """
    if N.r > M.r or N.corank > M.corank:
        return False
    if N.n == 0:
        return True
    if _fast_applicable(M, N):
        return _fast(M, N)
    # N is a minor of M exactly when dual(N) is a minor of dual(M).
    Md, Nd = dual(M), dual(N)
    if _fast_applicable(Md, Nd):
        return _fast(Md, Nd)
    return _general(M, N, budget)


def _fast(M: BinaryMatroid, N: BinaryMatroid) -> bool:
    table = _orbit_table(tuple(N.columns), N.r)
    cols = np.array(M.columns, dtype=np.uint64)
    return bool(_kernels.projective_minor(cols, M.r, N.r, table))


@lru_cache(maxsize=None)
def excluded_minors_graphic() -> tuple[BinaryMatroid, ...]:
    """F7, F7*, M*(K3,3) and M*(K5), cheapest test first."""
    F7 = fano()
    return (F7, dual(F7), dual(complete_bipartite(3, 3)), dual(complete(5)))


@lru_cache(maxsize=None)
def _fano_pair() -> tuple[BinaryMatroid, BinaryMatroid]:
    F7 = fano()
    return F7, dual(F7)


def is_regular(M: BinaryMatroid) -> bool:
    F7, F7d = _fano_pair()
    return not has_minor(M, F7) and not has_minor(M, F7d)


def is_graphic(M: BinaryMatroid) -> bool:
    return not any(has_minor(M, N) for N in excluded_minors_graphic())


def is_cographic(M: BinaryMatroid) -> bool:
    return is_graphic(dual(M))

