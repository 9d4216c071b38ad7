"""The :class:`BinaryMatroid` value type and its structural operations."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import DuplicateLabel, RankDeficient, UnknownLabel
from .gf2core import (
    BitMatrix,
    _standard_from_rref,
    rank_of_vectors,
    rref,
    span_basis,
    reduce_vector,
    standardize,
)

ElementSet = frozenset

_CHUNK = re.compile(r"(\d+)")


def label_key(label: str):
    """Natural sort key: ``a2 < a10``, ``9 < 10``."""
    return tuple((0, int(tok)) if tok.isdigit() else (1, tok)
                 for tok in _CHUNK.split(str(label)) if tok)


def sort_labels(labels: Iterable[str]) -> list[str]:
    return sorted(labels, key=label_key)


@dataclass(frozen=True)
class BinaryMatroid:
    """A binary matroid held as a standard-form matrix ``[I_r | D]``.

    ``labels[j]`` names the element represented by column ``j`` of ``rep``;
    the first ``r`` labels therefore form a basis.
    """

    rep: BitMatrix
    labels: tuple[str, ...]

    def __post_init__(self):
        if len(self.labels) != self.rep.cols:
            raise ValueError("one label per column required")
        if len(set(self.labels)) != len(self.labels):
            raise DuplicateLabel("labels must be distinct")
        for i, w in enumerate(self.rep.data):
            if w & ((1 << self.rep.rows) - 1) != 1 << i:
                raise ValueError("rep is not in standard form [I_r | D]")

    @property
    def r(self) -> int:
        return self.rep.rows

    @property
    def n(self) -> int:
        return self.rep.cols

    @property
    def corank(self) -> int:
        return self.n - self.r

    @cached_property
    def columns(self) -> tuple[int, ...]:
        return self.rep.columns()

    @cached_property
    def index(self) -> dict[str, int]:
        return {lab: j for j, lab in enumerate(self.labels)}

    @property
    def ground_set(self) -> frozenset[str]:
        return frozenset(self.labels)

    def indices(self, S: Iterable[str]) -> list[int]:
        idx = self.index
        try:
            return [idx[s] for s in S]
        except KeyError as exc:
            raise UnknownLabel(f"{exc.args[0]!r} is not an element") from None

    def mask(self, S: Iterable[str]) -> int:
        m = 0
        for j in self.indices(S):
            m |= 1 << j
        return m

    def labels_of(self, mask: int) -> frozenset[str]:
        out = []
        j = 0
        while mask:
            if mask & 1:
                out.append(self.labels[j])
            mask >>= 1
            j += 1
        return frozenset(out)

    def __repr__(self):
        return f"BinaryMatroid(r={self.r}, n={self.n})"


# -- construction -------------------------------------------------------------

def _check_labels(labels, count):
    labels = tuple(str(x) for x in labels)
    if len(labels) != count:
        raise ValueError(f"expected {count} labels, got {len(labels)}")
    if len(set(labels)) != len(labels):
        raise DuplicateLabel("labels must be distinct")
    return labels


def from_matrix(A: BitMatrix, labels: Sequence[str] | None = None) -> BinaryMatroid:
    """The matroid ``M[A]`` of a full-row-rank matrix, labels tracking columns."""
    if labels is None:
        labels = [str(j + 1) for j in range(A.cols)]
    labels = _check_labels(labels, A.cols)
    B, perm = standardize(A)
    return BinaryMatroid(B, tuple(labels[j] for j in perm))


def from_columns(columns: Sequence[int], labels: Sequence[str] | None = None) -> BinaryMatroid:
    """Matroid of arbitrary column vectors; dependent rows are dropped."""
    if labels is None:
        labels = [str(j + 1) for j in range(len(columns))]
    labels = _check_labels(labels, len(columns))
    height = max((c.bit_length() for c in columns), default=0)
    words = BitMatrix.from_columns(columns, height).data
    reduced, pivots = rref(words, len(columns))
    B, perm = _standard_from_rref(reduced, pivots, len(columns))
    return BinaryMatroid(B, tuple(labels[j] for j in perm))


def relabel(M: BinaryMatroid, mapping) -> BinaryMatroid:
    """Rename elements; ``mapping`` is a dict or a callable."""
    f = mapping.get if isinstance(mapping, dict) else mapping
    return BinaryMatroid(M.rep, _check_labels([f(x) for x in M.labels], M.n))


def empty_matroid() -> BinaryMatroid:
    return BinaryMatroid(BitMatrix(0, 0, ()), ())


# -- duality and minors ---------------------------------------------------------

def dual(M: BinaryMatroid) -> BinaryMatroid:
    r, n = M.r, M.n
    cols = M.columns
    k = n - r
    data = tuple((1 << t) | (cols[r + t] << k) for t in range(k))
    return BinaryMatroid(BitMatrix(k, n, data), M.labels[r:] + M.labels[:r])


def delete(M: BinaryMatroid, S: Iterable[str]) -> BinaryMatroid:
    drop = set(M.indices(S))
    keep = [j for j in range(M.n) if j not in drop]
    cols = M.columns
    return from_columns([cols[j] for j in keep], [M.labels[j] for j in keep])


def contract(M: BinaryMatroid, S: Iterable[str]) -> BinaryMatroid:
    S = list(S)
    if not S:
        M.indices(S)
        return M
    return dual(delete(dual(M), S))


def restriction(M: BinaryMatroid, S: Iterable[str]) -> BinaryMatroid:
    S = set(S)
    M.indices(S)
    return delete(M, [x for x in M.labels if x not in S])


# -- rank functions -------------------------------------------------------------

def rank_of(M: BinaryMatroid, S: Iterable[str]) -> int:
    cols = M.columns
    return rank_of_vectors(cols[j] for j in M.indices(S))


def corank_of(M: BinaryMatroid, S: Iterable[str]) -> int:
    S = set(S)
    idx = set(M.indices(S))
    cols = M.columns
    rest = rank_of_vectors(cols[j] for j in range(M.n) if j not in idx)
    return len(idx) + rest - M.r


def closure(M: BinaryMatroid, S: Iterable[str]) -> frozenset[str]:
    cols = M.columns
    basis = span_basis(cols[j] for j in M.indices(S))
    return frozenset(M.labels[j] for j in range(M.n)
                     if reduce_vector(cols[j], basis) == 0)


def coclosure(M: BinaryMatroid, S: Iterable[str]) -> frozenset[str]:
    return closure(dual(M), S)


# -- parallel/series structure ----------------------------------------------------

def loops(M: BinaryMatroid) -> frozenset[str]:
    return frozenset(M.labels[j] for j, c in enumerate(M.columns) if c == 0)


def coloops(M: BinaryMatroid) -> frozenset[str]:
    return loops(dual(M))


def parallel_classes(M: BinaryMatroid) -> list[frozenset[str]]:
    """Classes of equal nonzero columns, ordered by their smallest label.  Loops excluded."""
    groups: dict[int, list[str]] = {}
    for lab, c in zip(M.labels, M.columns):
        if c:
            groups.setdefault(c, []).append(lab)
    classes = [frozenset(g) for g in groups.values()]
    classes.sort(key=lambda cl: label_key(min(cl, key=label_key)))
    return classes


def series_classes(M: BinaryMatroid) -> list[frozenset[str]]:
    return parallel_classes(dual(M))


def is_simple(M: BinaryMatroid) -> bool:
    cols = M.columns
    return 0 not in cols and len(set(cols)) == len(cols)


def is_cosimple(M: BinaryMatroid) -> bool:
    # Dual of [I|D] is [D^T|I]: its columns are the rows of D and unit vectors.
    r = M.r
    rows = [w >> r for w in M.rep.data]
    if any(w == 0 or w & (w - 1) == 0 for w in rows):
        return False
    return len(set(rows)) == len(rows)


def simplify(M: BinaryMatroid) -> tuple[BinaryMatroid, dict[str, str | None]]:
    """Delete loops and all but the smallest label of each parallel class.

    The map sends every original label to its class representative; loops
    map to ``None``.
    """
    rep_of: dict[str, str | None] = {x: None for x in loops(M)}
    drop = set(rep_of)
    for cl in parallel_classes(M):
        keep = min(cl, key=label_key)
        for x in cl:
            rep_of[x] = keep
            if x != keep:
                drop.add(x)
    return delete(M, drop), rep_of


def cosimplify(M: BinaryMatroid) -> tuple[BinaryMatroid, dict[str, str | None]]:
    """Contract all but one element of each series class and delete coloops."""
    S, rep_of = simplify(dual(M))
    return dual(S), rep_of


# -- connectivity -------------------------------------------------------------

def components(M: BinaryMatroid) -> list[frozenset[str]]:
    """Connected components, read off the bipartite support graph of ``D``."""
    r, n = M.r, M.n
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for j in range(r, n):
        c = M.columns[j]
        i = 0
        while c:
            if c & 1:
                a, b = find(i), find(j)
                if a != b:
                    parent[a] = b
            c >>= 1
            i += 1
    groups: dict[int, list[str]] = {}
    for j in range(n):
        groups.setdefault(find(j), []).append(M.labels[j])
    comps = [frozenset(g) for g in groups.values()]
    comps.sort(key=lambda cl: label_key(min(cl, key=label_key)))
    return comps


def is_connected(M: BinaryMatroid) -> bool:
    if M.n <= 1:
        return True
    return len(components(M)) == 1


def _pivot_insert(pivots: dict[int, int], v: int) -> bool:
    while v:
        top = v.bit_length() - 1
        if top in pivots:
            v ^= pivots[top]
        else:
            pivots[top] = v
            return True
    return False


def find_2_separation(M: BinaryMatroid) -> tuple[frozenset[str], frozenset[str]] | None:
    """Return a partition ``(X, Y)`` with ``|X|, |Y| >= 2`` and
    ``r(X) + r(Y) <= r(M) + 1``, or ``None``.

    Branch and bound over element assignments; ``r(X) + r(Y)`` of a partial
    assignment never decreases as it grows, so branches exceeding ``r + 1``
    are cut.
    """
    n, r = M.n, M.r
    if n < 4:
        return None
    cols = M.columns
    limit = r + 1

    def search(j, px, py, xmask, nx, ny):
        if len(px) + len(py) > limit:
            return None
        if j == n:
            if nx >= 2 and ny >= 2:
                return xmask
            return None
        # An assignment can only finish if both sides can still reach size 2.
        remaining = n - j
        if nx + remaining < 2 or ny + remaining < 2:
            return None
        for side in (0, 1):
            if side == 0:
                p = dict(px)
                _pivot_insert(p, cols[j])
                found = search(j + 1, p, py, xmask | (1 << j), nx + 1, ny)
            else:
                p = dict(py)
                _pivot_insert(p, cols[j])
                found = search(j + 1, px, p, xmask, nx, ny + 1)
            if found is not None:
                return found
        return None

    px: dict[int, int] = {}
    _pivot_insert(px, cols[0])
    xmask = search(1, px, {}, 1, 1, 0)
    if xmask is None:
        return None
    X = M.labels_of(xmask)
    return X, M.ground_set - X


def is_3connected(M: BinaryMatroid) -> bool:
    if M.n <= 3:
        # No 2-separation fits; only a 1-separation can occur.
        return is_connected(M)
    if not (is_simple(M) and is_cosimple(M)):
        return False
    if not is_connected(M):
        return False
    return find_2_separation(M) is None


# -- sums -------------------------------------------------------------------

def direct_sum(M: BinaryMatroid, N: BinaryMatroid) -> BinaryMatroid:
    if set(M.labels) & set(N.labels):
        raise DuplicateLabel("direct sum needs disjoint labels")
    cols = list(M.columns) + [c << M.r for c in N.columns]
    return from_columns(cols, M.labels + N.labels)


def parallel_connection(M: BinaryMatroid, N: BinaryMatroid, p: str, q: str) -> BinaryMatroid:
    """Glue ``N`` onto ``M`` by identifying ``q`` with ``p``; the basepoint keeps label ``p``."""
    if set(M.labels) & (set(N.labels) - {q}):
        raise DuplicateLabel("parallel connection needs disjoint labels")
    cm, cn = M.columns, N.columns
    vp, vq = cm[M.index[p]], cn[N.index[q]]
    if not vp or not vq:
        raise ValueError("basepoints must not be loops")
    coords = _coordinates(_complete_basis(vq, cn, N.r))
    out_cols = list(cm)
    out_labels = list(M.labels)
    for lab, c in zip(N.labels, cn):
        if lab == q:
            continue
        x = coords(c)
        out_cols.append((vp if x & 1 else 0) ^ ((x >> 1) << M.r))
        out_labels.append(lab)
    return from_columns(out_cols, out_labels)


def _complete_basis(first, cols, r):
    piv: dict[int, int] = {}
    out = [first]
    _pivot_insert(piv, first)
    for c in cols:
        if len(out) == r:
            break
        if _pivot_insert(piv, c):
            out.append(c)
    if len(out) != r:
        raise RankDeficient("columns do not span")
    return out


def _coordinates(basis: list[int]):
    """Return a function mapping a vector to its coordinate bitmask in ``basis``."""
    # Track combinations alongside a reduced echelon form.
    rows: list[tuple[int, int]] = []
    for k, b in enumerate(basis):
        v, combo = b, 1 << k
        for pv, pc in rows:
            if v & (pv & -pv):
                v ^= pv
                combo ^= pc
        rows.append((v, combo))

    def coords(c: int) -> int:
        combo = 0
        for pv, pc in rows:
            if c & (pv & -pv):
                c ^= pv
                combo ^= pc
        if c:
            raise ValueError("vector outside span")
        return combo

    return coords
