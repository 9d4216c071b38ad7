"""Cocircuits, non-separating cocircuits, and the sets Y(M) and its complement.

An element ``e`` lies in Y(M) when the non-separating cocircuits avoiding it
are linearly dependent in the cocircuit space, i.e. ``dep(M, {e}) > 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import ScanLimitExceeded
from .gf2core import rank_of_vectors
from .matroid import BinaryMatroid, corank_of, dual, label_key, sort_labels

DEFAULT_SCAN_LIMIT = 24


@dataclass(frozen=True)
class Cocircuit:
    """A row-space codeword ``coeff^T . rep`` together with its support."""

    coeff: int
    support: frozenset[str]
    mask: int = field(repr=False)

    def __len__(self):
        return len(self.support)

    def sorted_support(self) -> list[str]:
        return sort_labels(self.support)


@dataclass(frozen=True)
class NscReport:
    matroid_id: str | None
    nsc: tuple[Cocircuit, ...]
    meets: dict[str, int]
    avoids: dict[str, int]
    dep: dict[str, int]
    Y: frozenset[str]
    Ytilde: frozenset[str]
    ytilde_corank: int

    @property
    def X(self) -> frozenset[str]:
        """Elements meeting more than two non-separating cocircuits."""
        return frozenset(e for e, k in self.meets.items() if k > 2)

    def to_dict(self, labels: Sequence[str]) -> dict:
        order = list(labels)
        return {
            "nsc": [c.sorted_support() for c in self.nsc],
            "meets": {e: self.meets[e] for e in order},
            "avoids": {e: self.avoids[e] for e in order},
            "dep": {e: self.dep[e] for e in order},
            "Y": sort_labels(self.Y),
            "Ytilde": sort_labels(self.Ytilde),
            "ytilde_corank": self.ytilde_corank,
        }


def _scan_python(M: BinaryMatroid, connected: bool) -> list[tuple[int, int]]:
    rows = M.rep.data
    cols = M.columns
    r, n = M.r, M.n
    full = (1 << n) - 1
    found = []
    coeff = word = 0
    for k in range(1, 1 << r):
        i = (k & -k).bit_length() - 1
        coeff ^= 1 << i
        word ^= rows[i]
        comp = full & ~word
        basis: list[tuple[int, int]] = []
        circuits = []
        ok = True
        for j in range(n):
            if not (comp >> j) & 1:
                continue
            v, combo = cols[j], 0
            for p, pc in basis:
                if v & (p & -p):
                    v ^= p
                    combo ^= pc
            if v:
                if len(basis) == r - 1:
                    ok = False
                    break
                basis.append((v, combo ^ (1 << j)))
            else:
                circuits.append(combo | (1 << j))
        if not ok or len(basis) != r - 1:
            continue
        if connected and bin(comp).count("1") > 1:
            comps: list[int] = []
            for c in circuits:
                merged = c
                rest = []
                for s in comps:
                    if s & merged:
                        merged |= s
                    else:
                        rest.append(s)
                comps = rest + [merged]
            if not (len(comps) == 1 and comps[0] == comp):
                continue
        found.append((coeff, word))
    return found


def _rows_route(M: BinaryMatroid, connected: bool) -> list[tuple[int, int]]:
    if M.n > 64 or M.r > 62:
        return _scan_python(M, connected)
    rows = np.array(M.rep.data, dtype=np.uint64)
    cols = np.array(M.columns, dtype=np.uint64)
    capacity = 1024
    while True:
        count, coeffs, supports = _kernels.scan_cocircuits(rows, cols, M.r, M.n, connected, capacity)
        if count >= 0:
            return list(zip(coeffs[:count].tolist(), supports[:count].tolist()))
        capacity *= 4


def _circuits_route(M: BinaryMatroid, connected: bool) -> list[tuple[int, int]]:
    """Cocircuits of M as circuits of the dual; M\\C is connected exactly
    when dual(M)/C is connected."""
    r, n = M.r, M.n
    D = dual(M)
    cols = np.array(D.columns, dtype=np.uint64)
    capacity = 1024
    while True:
        count, supports = _kernels.scan_circuits(cols, D.r, n, connected, capacity)
        if count >= 0:
            break
        capacity *= 4
    # dual column t is column (t + r) mod n of M
    k = n - r
    low = (1 << k) - 1
    out = []
    for w in supports[:count].tolist():
        word = ((w & low) << r) | (w >> k)
        out.append((word & ((1 << r) - 1), word))
    return out


def _circuit_route_cost(M: BinaryMatroid) -> int:
    return sum(comb(M.n, t) for t in range(M.n - M.r + 1))


def _scan(M: BinaryMatroid, connected: bool, scan_limit: int, route: str = "auto") -> list[tuple[int, int]]:
    """Cocircuit codewords ``(coeff, support)``; optionally only non-separating.

    Two routes: a Gray-code scan of the row space (``2^r`` codewords) or an
    enumeration of the circuits of the dual (independent sets of the
    rank-``n - r`` dual).  ``auto`` picks the cheaper one.
    """
    if M.r == 0:
        return []
    if route == "rows":
        if M.r > scan_limit:
            raise ScanLimitExceeded(f"rank {M.r} exceeds scan limit {scan_limit}")
        return _rows_route(M, connected)
    if route == "circuits":
        return _circuits_route(M, connected)
    circuit_cost = _circuit_route_cost(M) if M.n <= 64 else None
    rows_ok = M.r <= scan_limit
    circuits_ok = circuit_cost is not None and circuit_cost <= (1 << (scan_limit + 2))
    if rows_ok and (not circuits_ok or (1 << M.r) <= circuit_cost):
        return _rows_route(M, connected)
    if circuits_ok:
        return _circuits_route(M, connected)
    raise ScanLimitExceeded(f"rank {M.r} exceeds scan limit {scan_limit} and the dual route is too large")


def _to_cocircuits(M: BinaryMatroid, raw) -> list[Cocircuit]:
    out = [Cocircuit(int(c), M.labels_of(int(w)), int(w)) for c, w in raw]
    out.sort(key=lambda c: (len(c.support), [label_key(x) for x in c.sorted_support()]))
    return out


def cocircuits(M: BinaryMatroid, scan_limit: int = DEFAULT_SCAN_LIMIT,
               route: str = "auto") -> list[Cocircuit]:
    """All cocircuits: codeword supports whose complement has rank ``r - 1``."""
    return _to_cocircuits(M, _scan(M, False, scan_limit, route))


def nonseparating_cocircuits(M: BinaryMatroid, scan_limit: int = DEFAULT_SCAN_LIMIT,
                             route: str = "auto") -> list[Cocircuit]:
    """Cocircuits whose deletion leaves a connected matroid."""
    return _to_cocircuits(M, _scan(M, True, scan_limit, route))


def dep(M: BinaryMatroid, A: Iterable[str], nsc: Sequence[Cocircuit] | None = None) -> int:
    """Number of non-separating cocircuits avoiding ``A`` minus the dimension they span."""
    amask = M.mask(A)
    if nsc is None:
        nsc = nonseparating_cocircuits(M)
    family = [c.coeff for c in nsc if not c.mask & amask]
    return len(family) - rank_of_vectors(family)


def report(M: BinaryMatroid, matroid_id: str | None = None,
           scan_limit: int = DEFAULT_SCAN_LIMIT, route: str = "auto") -> NscReport:
    nsc = nonseparating_cocircuits(M, scan_limit, route)
    meets, avoids, deps = {}, {}, {}
    for j, e in enumerate(M.labels):
        bit = 1 << j
        family = [c.coeff for c in nsc if not c.mask & bit]
        meets[e] = len(nsc) - len(family)
        avoids[e] = len(family)
        deps[e] = len(family) - rank_of_vectors(family)
    Y = frozenset(e for e in M.labels if deps[e] > 0)
    Ytilde = frozenset(M.labels) - Y
    return NscReport(matroid_id, tuple(nsc), meets, avoids, deps, Y, Ytilde,
                     corank_of(M, Ytilde))


def nsc_span_dimension(M: BinaryMatroid, nsc: Sequence[Cocircuit], avoiding: str | None = None) -> int:
    """Dimension of the span of the non-separating cocircuits (optionally those avoiding one element)."""
    if avoiding is None:
        return rank_of_vectors(c.coeff for c in nsc)
    bit = 1 << M.index[avoiding]
    return rank_of_vectors(c.coeff for c in nsc if not c.mask & bit)
