"""Isomorphism testing, canonical keys and restriction embeddings.

Two binary matroids are isomorphic exactly when their column multisets agree
up to an invertible linear map, so a canonical form is obtained by choosing an
ordered basis, writing every column in those coordinates, and minimising the
sorted coordinate multiset over all admissible bases.  Admissible bases come
from an individualisation-refinement tree; colours are refined on the
triangle (3-point line) structure and on coordinates inside the span of the
elements chosen so far.  Equal leaves yield automorphisms, which prune
equivalent branches.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import nsc as _nsc
from .errors import BudgetExceeded, SizeLimit
from .matroid import BinaryMatroid, dual

SIZE_CAP = 6
MAX_CANONICAL_N = 64
SIGNATURE_SCAN_LIMIT = 20


# -- invariant signature -----------------------------------------------------------

@dataclass(frozen=True)
class Signature:
    """Per-element profiles plus global counts; isomorphisms preserve both.

    ``side`` records whether the profile counts cocircuits or circuits (the
    scan runs on whichever side has the smaller rank).
    """

    side: str
    global_counts: tuple
    profiles: dict[str, tuple]

    def multiset(self) -> tuple:
        return (self.side, self.global_counts, tuple(sorted(Counter(self.profiles.values()).items())))


def _support_words(M: BinaryMatroid) -> tuple[str, np.ndarray]:
    r, n = M.r, M.n
    if r == 0 or r == n:
        return "none", np.zeros(0, dtype=np.uint64)
    if r <= n - r:
        side, host = "cocircuits", M
    else:
        side, host = "circuits", dual(M)
    if host.r > SIGNATURE_SCAN_LIMIT:
        return "none", np.zeros(0, dtype=np.uint64)
    perm = [host.index[lab] for lab in M.labels]
    if n > 64:
        out = []
        for _, w in _nsc._scan_python(host, False):
            if bin(w).count("1") <= SIZE_CAP:
                out.append(sum(1 << j for j, src in enumerate(perm) if (w >> src) & 1))
        return side, out
    raw = _nsc._scan(host, False, SIGNATURE_SCAN_LIMIT)
    words = np.array([w for _, w in raw], dtype=np.uint64)
    # ``host`` lists the same elements in a different column order.
    return side, _permute_bits(words, perm)


def _permute_bits(words: np.ndarray, perm: Sequence[int]) -> np.ndarray:
    out = np.zeros_like(words)
    for j, src in enumerate(perm):
        out |= ((words >> np.uint64(src)) & np.uint64(1)) << np.uint64(j)
    return out


def _element_profiles(M: BinaryMatroid) -> tuple[str, tuple, list[tuple]]:
    cols = M.columns
    mult = Counter(cols)
    side, words = _support_words(M)
    n = M.n
    counts = [[0] * SIZE_CAP for _ in range(n)]
    dist = [0] * (SIZE_CAP + 1)
    if isinstance(words, np.ndarray):
        if words.size:
            sizes = np.bitwise_count(words)
            for s in range(1, SIZE_CAP + 1):
                sel = words[sizes == s]
                dist[s] = int(sel.size)
                if sel.size:
                    for j in range(n):
                        counts[j][s - 1] = int(((sel >> np.uint64(j)) & np.uint64(1)).sum())
            dist[0] = int((sizes > SIZE_CAP).sum())
    else:
        for w in words:
            s = bin(w).count("1")
            dist[s] += 1
            for j in range(n):
                if (w >> j) & 1:
                    counts[j][s - 1] += 1
    profiles = [(int(cols[j] == 0), mult[cols[j]], tuple(counts[j])) for j in range(n)]
    return side, (M.r, n, tuple(dist)), profiles


def invariant_signature(M: BinaryMatroid) -> Signature:
    """Per element: loop flag, parallel multiplicity, and the number of
    (co)circuits of each size up to ``SIZE_CAP`` containing it."""
    side, glob, prof = _element_profiles(M)
    return Signature(side, glob, dict(zip(M.labels, prof)))


# -- colour refinement -------------------------------------------------------------

def _relabel(sigs: Sequence) -> list[int]:
    order = {s: i for i, s in enumerate(sorted(set(sigs)))}
    return [order[s] for s in sigs]


def _triangles(cols: Sequence[int]) -> list[list[tuple[int, int]]]:
    by_val: dict[int, list[int]] = defaultdict(list)
    for j, c in enumerate(cols):
        by_val[c].append(j)
    tri: list[list[tuple[int, int]]] = [[] for _ in cols]
    for e, ce in enumerate(cols):
        if not ce:
            continue
        for f, cf in enumerate(cols):
            if not cf or cf == ce:
                continue
            for g in by_val.get(ce ^ cf, ()):
                if f < g:
                    tri[e].append((f, g))
    return tri


def _refine(colors: list[int], tri) -> list[int]:
    ncol = len(set(colors))
    while True:
        sigs = []
        for e, c in enumerate(colors):
            pairs = sorted((min(colors[f], colors[g]), max(colors[f], colors[g])) for f, g in tri[e])
            sigs.append((c, tuple(pairs)))
        new = _relabel(sigs)
        k = len(set(new))
        if k == ncol:
            return new
        colors, ncol = new, k


def _reduce(v: int, basis: list[tuple[int, int]]) -> tuple[int, int]:
    combo = 0
    for pv, pc in basis:
        if v & (pv & -pv):
            v ^= pv
            combo ^= pc
    return v, combo


# -- canonical search ------------------------------------------------------------

@dataclass(frozen=True, order=True)
class CanonicalKey:
    """Canonical bytes: rank, size, then the columns of ``[I_r | D]`` with D sorted."""

    data: bytes

    def hex(self) -> str:
        return self.data.hex()

    @classmethod
    def from_hex(cls, text: str) -> "CanonicalKey":
        return cls(bytes.fromhex(text))

    @property
    def r(self) -> int:
        return self.data[0]

    @property
    def n(self) -> int:
        return int.from_bytes(self.data[1:3], "big")

    def columns(self) -> list[int]:
        width = max(1, (self.r + 7) // 8)
        body = self.data[3:]
        return [int.from_bytes(body[i:i + width], "big") for i in range(0, len(body), width)]


def _serialize(r: int, n: int, value: tuple[int, ...]) -> CanonicalKey:
    rest = list(value)
    for i in range(r):
        rest.remove(1 << i)
    width = max(1, (r + 7) // 8)
    out = bytearray([r]) + n.to_bytes(2, "big")
    for c in [1 << i for i in range(r)] + rest:
        out += c.to_bytes(width, "big")
    return CanonicalKey(bytes(out))


class _Search:
    """Individualisation-refinement over ordered bases."""

    def __init__(self, M: BinaryMatroid, initial: list | None = None):
        self.cols = M.columns
        self.r = M.r
        self.n = M.n
        self.tri = _triangles(self.cols)
        if initial is None:
            _, _, initial = _element_profiles(M)
        self.root_colors = _refine(_relabel(initial), self.tri)
        self.first = None      # (value, path, coords)
        self.best = None
        self.generators: list[tuple[int, ...]] = []

    def run(self):
        if self.r == 0:
            self.best = (tuple([0] * self.n), (), [0] * self.n)
            return self
        self._node([], [], self.root_colors)
        return self

    # The path holds chosen element indices; ``basis`` the reduced pivots.
    def _node(self, path, basis, colors):
        level = len(path)
        cols = self.cols
        if level == self.r:
            return self._leaf(path, basis)
        red = [_reduce(c, basis) for c in cols]
        sigs = [(0, combo, colors[e]) if not v else (1, 0, colors[e])
                for e, (v, combo) in enumerate(red)]
        colors = _refine(_relabel(sigs), self.tri)
        cells: dict[int, list[int]] = defaultdict(list)
        for e, (v, _) in enumerate(red):
            if v:
                cells[colors[e]].append(e)
        seen_vals = {}
        for c, members in cells.items():
            seen_vals[c] = list({cols[e]: e for e in reversed(members)}.values())
        target = min(cells, key=lambda c: (len(seen_vals[c]), c))
        children = sorted(seen_vals[target])
        explored: list[int] = []
        for y in children:
            if explored and self._pruned(y, explored, path):
                continue
            v, combo = red[y]
            res = self._node(path + [y], basis + [(v, combo ^ (1 << level))], colors)
            explored.append(y)
            if res is not None and res < level:
                return res
        return None

    def _pruned(self, y, explored, path) -> bool:
        gens = [g for g in self.generators if all(g[p] == p for p in path)]
        if not gens:
            return False
        orbit = {y}
        stack = [y]
        while stack:
            x = stack.pop()
            for g in gens:
                z = g[x]
                if z not in orbit:
                    orbit.add(z)
                    stack.append(z)
        return any(x in orbit for x in explored)

    def _leaf(self, path, basis):
        coords = [_reduce(c, basis)[1] for c in self.cols]
        value = tuple(sorted(coords))
        leaf = (value, tuple(path), coords)
        if self.first is None:
            self.first = self.best = leaf
            return None
        for ref in (self.first, self.best):
            if value == ref[0]:
                self.generators.append(self._automorphism(ref, leaf))
                return _common_prefix(ref[1], leaf[1])
        if value < self.best[0]:
            self.best = leaf
        return None

    def _automorphism(self, a, b) -> tuple[int, ...]:
        """Element map sending leaf ``a`` to leaf ``b`` (coordinates agree)."""
        def groups(leaf):
            g: dict[int, list[int]] = defaultdict(list)
            front = set(leaf[1])
            for e in sorted(range(self.n), key=lambda e: (e not in front, leaf[1].index(e) if e in front else e)):
                g[leaf[2][e]].append(e)
            return g
        ga, gb = groups(a), groups(b)
        perm = [0] * self.n
        for val, src in ga.items():
            for x, y in zip(src, gb[val]):
                perm[x] = y
        return tuple(perm)


def _common_prefix(p, q) -> int:
    k = 0
    while k < len(p) and k < len(q) and p[k] == q[k]:
        k += 1
    return k


def _check_size(M: BinaryMatroid):
    if M.n > MAX_CANONICAL_N:
        raise SizeLimit(f"{M.n} elements exceeds the canonical-form limit {MAX_CANONICAL_N}")


def _searches_dual(M: BinaryMatroid) -> bool:
    """Refinement only sees triangles, so a triangle-free matroid is searched
    through its dual when that side has triangles or the smaller rank.  Both
    conditions are isomorphism invariants, so the choice is too."""
    if M.r == 0 or M.r == M.n or any(_triangles(M.columns)):
        return False
    D = dual(M)
    return any(_triangles(D.columns)) or D.r < M.r


def _ordered_key(M: BinaryMatroid, order: Sequence[str]) -> CanonicalKey:
    """Key of ``M`` with its elements taken in a given order: the greedy basis
    in that order and every column's coordinates over it.  A binary matroid has
    one representation per basis, so isomorphic orders give equal keys."""
    basis: list[tuple[int, int]] = []
    cols = [M.columns[M.index[x]] for x in order]
    for c in cols:
        v, combo = _reduce(c, basis)
        if v:
            basis.append((v, combo ^ (1 << len(basis))))
    value = tuple(sorted(_reduce(c, basis)[1] for c in cols))
    return _serialize(M.r, M.n, value)


def canonical_key(M: BinaryMatroid) -> CanonicalKey:
    return canonical_form(M)[0]


def canonical_form(M: BinaryMatroid) -> tuple[CanonicalKey, tuple[str, ...]]:
    """Canonical key plus the element labels listed in canonical column order."""
    _check_size(M)
    if _searches_dual(M):
        _, order = _direct_form(dual(M))
        return _ordered_key(M, order), order
    return _direct_form(M)


def _direct_form(M: BinaryMatroid) -> tuple[CanonicalKey, tuple[str, ...]]:
    s = _Search(M).run()
    value, path, coords = s.best
    key = _serialize(M.r, M.n, value)
    order = list(path) + sorted((e for e in range(M.n) if e not in set(path)),
                                key=lambda e: (coords[e], e))
    return key, tuple(M.labels[e] for e in order)


def are_isomorphic(M1: BinaryMatroid, M2: BinaryMatroid) -> bool:
    if (M1.r, M1.n) != (M2.r, M2.n):
        return False
    _check_size(M1)
    _check_size(M2)
    if invariant_signature(M1).multiset() != invariant_signature(M2).multiset():
        return False
    return canonical_key(M1) == canonical_key(M2)


def automorphism_generators(M: BinaryMatroid) -> list[tuple[int, ...]]:
    """Generators (as column-index permutations) of automorphisms found by
    the canonical search, plus transpositions of parallel elements."""
    _check_size(M)
    if _searches_dual(M):
        D = dual(M)
        to_m = [M.index[x] for x in D.labels]
        gens = []
        for g in dict.fromkeys(_Search(D).run().generators):
            p = [0] * M.n
            for j, img in enumerate(g):
                p[to_m[j]] = to_m[img]
            gens.append(tuple(p))
    else:
        gens = list(dict.fromkeys(_Search(M).run().generators))
    ident = tuple(range(M.n))
    by_val: dict[int, list[int]] = defaultdict(list)
    for j, c in enumerate(M.columns):
        by_val[c].append(j)
    for members in by_val.values():
        for a, b in zip(members, members[1:]):
            p = list(ident)
            p[a], p[b] = b, a
            gens.append(tuple(p))
    return [g for g in gens if g != ident]


def is_automorphism(M: BinaryMatroid, perm: Sequence[int]) -> bool:
    """Does the column permutation preserve the matroid?  (Checked linearly.)"""
    from .gf2core import rank_of_vectors
    cols = M.columns
    images = [cols[perm[j]] for j in range(M.n)]
    # A linear map T with T cols[j] = images[j] must exist: stack (col, image).
    stacked = [c | (im << M.r) for c, im in zip(cols, images)]
    return rank_of_vectors(stacked) == M.r


# -- restriction embeddings -------------------------------------------------------

def _tri_counts(cols) -> list[int]:
    return [len(t) for t in _triangles(cols)]


def find_restriction_embedding(N: BinaryMatroid, M: BinaryMatroid,
                               budget: int | None = None) -> dict[str, str] | None:
    """An injective label map ``phi`` with ``M | phi(E(N))`` isomorphic to ``N`` via ``phi``, or None."""
    return _embed(N.columns, N.r, M.columns, M.r, budget, N.labels, M.labels)


def restriction_embeds(N: BinaryMatroid, M: BinaryMatroid, budget: int | None = None) -> bool:
    if N.r > M.r or N.n > M.n:
        return False
    return _embed(N.columns, N.r, M.columns, M.r, budget) is not None


def _embed(ncols, k, mcols, r, budget, nlabels=None, mlabels=None, counter=None):
    """Search for a linear injection GF(2)^k -> GF(2)^r carrying the column
    multiset ``ncols`` into the multiset ``mcols``."""
    if k > r or len(ncols) > len(mcols):
        return None
    avail = Counter(mcols)
    need_loops = sum(1 for c in ncols if c == 0)
    if need_loops > avail.get(0, 0):
        return None
    if k == 0:
        return _witness(ncols, [], mcols, nlabels, mlabels)
    # Order N's coordinates so that columns become fully determined early.
    order: list[int] = []
    rest = set(range(k))
    nonzero = [c for c in ncols if c]
    while rest:
        chosen = 0
        for i in order:
            chosen |= 1 << i
        best = max(sorted(rest), key=lambda i: sum(1 for c in nonzero if c & ~(chosen | (1 << i)) == 0))
        order.append(best)
        rest.remove(best)
    # ready[t] = N columns whose highest coordinate (in ``order``) is t.
    pos = {b: t for t, b in enumerate(order)}
    ready: list[list[int]] = [[] for _ in range(k)]
    for c in nonzero:
        top = max(pos[i] for i in range(k) if (c >> i) & 1)
        ready[top].append(c)
    ntri = _tri_counts(ncols)
    mtri_by_val: dict[int, int] = {}
    for c, t in zip(mcols, _tri_counts(mcols)):
        mtri_by_val[c] = t
    ntri_unit = {}
    for c, t in zip(ncols, ntri):
        if c and c & (c - 1) == 0:
            ntri_unit[c.bit_length() - 1] = max(ntri_unit.get(c.bit_length() - 1, 0), t)
    values = sorted(v for v in avail if v)
    images = [0] * k
    used: Counter = Counter()
    nodes = counter if counter is not None else [0]

    def image(c):
        w = 0
        for i in range(k):
            if (c >> i) & 1:
                w ^= images[i]
        return w

    def span_contains(vecs, v):
        basis: list[int] = []
        for x in vecs:
            for b in basis:
                x = min(x, x ^ b)
            if x:
                basis.append(x)
        for b in sorted(basis, reverse=True):
            v = min(v, v ^ b)
        return v == 0

    def rec(t):
        if t == k:
            return True
        nodes[0] += 1
        if budget is not None and nodes[0] > budget:
            raise BudgetExceeded("restriction embedding search exceeded its node budget")
        coord = order[t]
        prior = [images[order[s]] for s in range(t)]
        for y in values:
            if mtri_by_val.get(y, 0) < ntri_unit.get(coord, 0):
                continue
            if span_contains(prior, y):
                continue
            images[coord] = y
            added = []
            ok = True
            for c in ready[t]:
                w = image(c)
                used[w] += 1
                added.append(w)
                if used[w] > avail.get(w, 0):
                    ok = False
                    break
            if ok and rec(t + 1):
                return True
            for w in added:
                used[w] -= 1
        images[coord] = 0
        return False

    if not rec(0):
        return None
    return _witness(ncols, images, mcols, nlabels, mlabels)


def _witness(ncols, images, mcols, nlabels, mlabels):
    if nlabels is None:
        return {}
    k = len(images)
    pool: dict[int, list[int]] = defaultdict(list)
    for j, c in enumerate(mcols):
        pool[c].append(j)
    out = {}
    for j, c in enumerate(ncols):
        w = 0
        for i in range(k):
            if (c >> i) & 1:
                w ^= images[i]
        out[nlabels[j]] = mlabels[pool[w].pop(0)]
    return out
