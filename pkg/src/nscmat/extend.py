"""The one-row coextension operator Γ(A, v) and layered, isomorph-free
enumeration of its outputs.

For ``A = [I_r | D]`` and ``v`` in ``{0,1,2}^n``, ``Γ(A, v)`` prepends a row and
a unit column: column ``i`` becomes ``(v_i mod 2, c_i)`` and every ``i`` with
``v_i = 2`` also contributes an extra column ``(1, c_i)``.  The layer ``L(A)``
restricts the identity coordinates to ``{0, 2}``; with that restriction the
output is already in standard form, which the vectorised cosimplicity test
below relies on.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import BudgetExceeded, LengthMismatch, ScanLimitExceeded
from .gf2core import BitMatrix
from .iso import CanonicalKey, automorphism_generators, canonical_key
from .matroid import BinaryMatroid, dual, from_matrix, is_3connected, is_cosimple, is_simple
from .minors import has_minor, is_regular
from . import nsc

log = logging.getLogger(__name__)

CHUNK = 1 << 18


# -- vectors and the operator ---------------------------------------------------

@dataclass(frozen=True)
class ExtensionVector:
    entries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))
        if any(x not in (0, 1, 2) for x in self.entries):
            raise ValueError("extension vector entries must be 0, 1 or 2")

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __str__(self):
        return "".join(map(str, self.entries))

    @classmethod
    def parse(cls, text: str) -> "ExtensionVector":
        text = text.strip()
        parts = text.split(",") if "," in text else list(text)
        return cls(tuple(int(p) for p in parts if p.strip()))

    def in_layer(self, r: int) -> bool:
        """Are the first ``r`` (identity) coordinates in ``{0, 2}``?"""
        return all(x != 1 for x in self.entries[:r])

    def twos(self) -> int:
        return sum(1 for x in self.entries if x == 2)


def gamma(A: BitMatrix, v) -> BitMatrix:
    v = tuple(v)
    if len(v) != A.cols:
        raise LengthMismatch(f"vector has length {len(v)}, matrix has {A.cols} columns")
    cols = A.columns()
    out = [1]
    out += [(x & 1) | (c << 1) for x, c in zip(v, cols)]
    out += [1 | (c << 1) for x, c in zip(v, cols) if x == 2]
    return BitMatrix.from_columns(out, A.rows + 1)


def gamma_labels(labels: Sequence[str], v, new_label: str = "e") -> list[str]:
    """Labels for ``M[Γ(A, v)]``: the new element, the old ones, then primed copies."""
    extra = [f"{lab}'" for lab, x in zip(labels, v) if x == 2]
    return [new_label] + list(labels) + extra


def gamma_matroid(M: BinaryMatroid, v, new_label: str = "e") -> BinaryMatroid:
    return from_matrix(gamma(M.rep, v), gamma_labels(M.labels, v, new_label))


def _radices(r: int, n: int, full: bool) -> list[int]:
    return [3 if (full or i >= r) else 2 for i in range(n)]


def layer_size(A: BitMatrix, full_vectors: bool = False) -> int:
    out = 1
    for k in _radices(A.rows, A.cols, full_vectors):
        out *= k
    return out


def layer(A: BitMatrix, full_vectors: bool = False) -> Iterator[tuple[ExtensionVector, BitMatrix]]:
    """All ``(v, Γ(A, v))`` for ``v`` in ``L(A)`` (or ``{0,1,2}^n``), lexicographically."""
    r, n = A.rows, A.cols
    choices = [(0, 1, 2) if (full_vectors or i >= r) else (0, 2) for i in range(n)]
    for v in product(*choices):
        yield ExtensionVector(v), gamma(A, v)


def _decode(codes: np.ndarray, r: int, n: int, full: bool) -> np.ndarray:
    radix = _radices(r, n, full)
    V = np.empty((codes.size, n), dtype=np.int8)
    rest = codes.copy()
    for i in range(n - 1, -1, -1):
        digit = rest % radix[i]
        rest //= radix[i]
        V[:, i] = digit * 2 if radix[i] == 2 else digit
    return V


def _encode(V: np.ndarray, r: int, full: bool) -> np.ndarray:
    n = V.shape[1]
    radix = _radices(r, n, full)
    code = np.zeros(V.shape[0], dtype=np.int64)
    for i in range(n):
        digit = V[:, i].astype(np.int64)
        if radix[i] == 2:
            digit //= 2
        code = code * radix[i] + digit
    return code


def vector_code(v: ExtensionVector, r: int, full: bool = False) -> int:
    return int(_encode(np.array([v.entries], dtype=np.int8), r, full)[0])


# -- vectorised cosimplicity ------------------------------------------------------

def _cosimple_mask(V: np.ndarray, cols: Sequence[int], r: int) -> np.ndarray:
    """Is ``M[Γ(A, v)]`` cosimple, for each row ``v`` of ``V`` (all in ``L(A)``)?

    The rows of the non-identity block of ``Γ`` are laid out on slots: the
    original non-identity column ``j`` uses slot ``j - r`` and the copy of
    column ``i`` uses slot ``m + i`` (``m = n - r``).
    """
    N, n = V.shape
    m = n - r
    u = np.uint64
    tw = np.zeros(N, dtype=u)
    for i in range(n):
        tw |= (V[:, i] == 2).astype(u) << u(m + i)
    on = np.zeros(N, dtype=u)
    for j in range(m):
        on |= (V[:, r + j] == 1).astype(u) << u(j)
    rows = np.empty((N, r + 1), dtype=u)
    rows[:, 0] = on | tw
    for i in range(r):
        base = 0
        cm = 0
        for j in range(m):
            if (cols[r + j] >> i) & 1:
                base |= 1 << j
        for k in range(n):
            if (cols[k] >> i) & 1:
                cm |= 1 << (m + k)
        rows[:, i + 1] = u(base) | (tw & u(cm))
    ok = (np.bitwise_count(rows) >= 2).all(axis=1)
    srt = np.sort(rows, axis=1)
    ok &= (srt[:, 1:] != srt[:, :-1]).all(axis=1)
    return ok


def _normalize(W: np.ndarray, cols: Sequence[int], r: int) -> np.ndarray:
    """Map a vector with 1s on identity coordinates to the ``L(A)`` vector
    giving an isomorphic Γ (add the matching rows of A to the new row)."""
    W = W.copy()
    u = np.uint64
    F = np.zeros(W.shape[0], dtype=u)
    for i in range(r):
        F |= (W[:, i] == 1).astype(u) << u(i)
    W[:, :r][W[:, :r] == 1] = 0
    for j in range(r, W.shape[1]):
        par = (np.bitwise_count(F & u(cols[j])) & u(1)).astype(np.int8)
        col = W[:, j]
        W[:, j] = np.where(col == 2, 2, col ^ par)
    return W


def _orbit_representatives(codes: np.ndarray, V: np.ndarray, gens, cols, r) -> np.ndarray:
    """Indices (into ``codes``, sorted ascending) of the smallest code in each
    orbit of the relation ``v ~ normalize(v∘σ)`` over automorphisms ``σ``."""
    N = codes.size
    if N == 0 or not gens:
        return np.arange(N)
    src, dst = [], []
    for g in gens:
        inv = np.argsort(np.asarray(g))
        W = _normalize(V[:, inv], cols, r)
        img = _encode(W, r, False)
        pos = np.searchsorted(codes, img)
        pos = np.minimum(pos, N - 1)
        hit = codes[pos] == img
        if not hit.all():
            log.warning("orbit image outside the surviving set; keeping those vectors")
        src.append(np.nonzero(hit)[0])
        dst.append(pos[hit])
    s = np.concatenate(src)
    d = np.concatenate(dst)
    graph = coo_matrix((np.ones(s.size, dtype=np.int8), (s, d)), shape=(N, N)).tocsr()
    _, labels = connected_components(graph, directed=True, connection="weak")
    _, first = np.unique(labels, return_index=True)
    return np.sort(first)


# -- filters and catalog values -----------------------------------------------------

@dataclass(frozen=True)
class Filters:
    """Predicates applied to ``M[Γ(A, v)]`` in cheap-to-expensive order."""

    cosimple: bool = True
    simple: bool = False
    three_connected: bool = False
    regular: bool = False
    excluded_minors: tuple[BinaryMatroid, ...] = ()
    min_dual_ytilde_corank: int | None = None
    scan_limit: int = nsc.DEFAULT_SCAN_LIMIT

    def describe(self) -> dict:
        return {
            "cosimple": self.cosimple,
            "simple": self.simple,
            "three_connected": self.three_connected,
            "regular": self.regular,
            "excluded_minors": [f"r{N.r}n{N.n}:{canonical_key(N).hex()}" for N in self.excluded_minors],
            "min_dual_ytilde_corank": self.min_dual_ytilde_corank,
        }


def dual_stats(M: BinaryMatroid, scan_limit: int = nsc.DEFAULT_SCAN_LIMIT) -> dict:
    """NSC summary of ``dual(M)``, the matroid whose Y-sets the searches track."""
    rep = nsc.report(dual(M), scan_limit=scan_limit)
    return {
        "Y": len(rep.Y),
        "Ytilde": len(rep.Ytilde),
        "ytilde_corank": rep.ytilde_corank,
        "nsc": len(rep.nsc),
    }


@dataclass(frozen=True)
class CatalogItem:
    key: CanonicalKey
    parent: CanonicalKey | None = None
    vector: ExtensionVector | None = None
    stats: dict = field(default_factory=dict, compare=False)

    @property
    def r(self) -> int:
        return self.key.r

    @property
    def n(self) -> int:
        return self.key.n

    @property
    def matrix(self) -> BitMatrix:
        return BitMatrix.from_columns(self.key.columns(), self.key.r)

    def matroid(self) -> BinaryMatroid:
        return from_matrix(self.matrix)


@dataclass
class CatalogLayer:
    level: int
    items: list[CatalogItem]
    counts: dict = field(default_factory=dict)
    skipped: list[dict] = field(default_factory=list)

    def keys(self) -> list[CanonicalKey]:
        return [it.key for it in self.items]

    @classmethod
    def from_matroids(cls, level: int, matroids: Sequence[BinaryMatroid]) -> "CatalogLayer":
        items = {canonical_key(M): None for M in matroids}
        return cls(level, [CatalogItem(k) for k in sorted(items)])


# -- enumeration ------------------------------------------------------------------

@dataclass(frozen=True)
class _Job:
    seed_index: int
    matrix: BitMatrix
    filters: Filters
    orbit_prune: bool
    full_vectors: bool
    stats: bool


def _survivors_fast(job: _Job, counts: dict) -> tuple[np.ndarray, np.ndarray]:
    A = job.matrix
    r, n = A.rows, A.cols
    cols = A.columns()
    total = layer_size(A)
    kept_codes, kept_V = [], []
    wide = (n - r) + n > 64
    for start in range(0, total, CHUNK):
        codes = np.arange(start, min(total, start + CHUNK), dtype=np.int64)
        V = _decode(codes, r, n, False)
        if job.filters.cosimple and not wide:
            ok = _cosimple_mask(V, cols, r)
            codes, V = codes[ok], V[ok]
        kept_codes.append(codes)
        kept_V.append(V)
    codes = np.concatenate(kept_codes) if kept_codes else np.zeros(0, dtype=np.int64)
    V = np.concatenate(kept_V) if kept_V else np.zeros((0, n), dtype=np.int8)
    counts["cosimple"] = counts.get("cosimple", 0) + int(codes.size)
    if job.orbit_prune and codes.size:
        gens = automorphism_generators(from_matrix(A))
        reps = _orbit_representatives(codes, V, gens, cols, r)
        codes, V = codes[reps], V[reps]
    counts["orbit_representatives"] = counts.get("orbit_representatives", 0) + int(codes.size)
    return codes, V


def _passes(M: BinaryMatroid, f: Filters, checked_cosimple: bool) -> bool:
    if f.cosimple and not checked_cosimple and not is_cosimple(M):
        return False
    if f.simple and not is_simple(M):
        return False
    if f.three_connected and not is_3connected(M):
        return False
    if f.regular and not is_regular(M):
        return False
    for N in f.excluded_minors:
        if has_minor(M, N):
            return False
    return True


def _run_job(job: _Job) -> tuple[list[tuple], dict, list[dict]]:
    A = job.matrix
    r, n = A.rows, A.cols
    counts = {"candidates": layer_size(A, job.full_vectors)}
    skipped: list[dict] = []
    f = job.filters
    if job.full_vectors:
        pairs = []
        for v, G in layer(A, full_vectors=True):
            pairs.append((vector_code(v, r, True), v, G))
        counts["cosimple"] = 0
        counts["orbit_representatives"] = len(pairs)
        checked = False
    else:
        codes, V = _survivors_fast(job, counts)
        pairs = []
        for code, row in zip(codes.tolist(), V):
            v = ExtensionVector(tuple(int(x) for x in row))
            pairs.append((code, v, gamma(A, v.entries)))
        checked = f.cosimple and (n - r) + n <= 64
    best: dict[CanonicalKey, tuple] = {}
    stat_cache: dict[CanonicalKey, dict | None] = {}
    passed_structural = 0
    plain = tuple(str(j + 1) for j in range(n + 1 + n))
    for code, v, G in pairs:
        # Γ over the layer is already in standard form.
        M = from_matrix(G) if job.full_vectors else BinaryMatroid(G, plain[:G.cols])
        if job.full_vectors and f.cosimple:
            if not is_cosimple(M):
                continue
            counts["cosimple"] += 1
        if not _passes(M, f, checked):
            continue
        passed_structural += 1
        key = canonical_key(M)
        if key not in stat_cache:
            stat_cache[key] = _item_stats(M, f, job.stats, skipped, v)
        st = stat_cache[key]
        if st is None:
            continue
        if f.min_dual_ytilde_corank is not None and st["ytilde_corank"] < f.min_dual_ytilde_corank:
            continue
        prev = best.get(key)
        if prev is None or (job.seed_index, code) < prev[0]:
            best[key] = ((job.seed_index, code), v, st)
    counts["structural"] = passed_structural
    out = [(k.data, prov, v.entries, st) for k, (prov, v, st) in best.items()]
    return out, counts, skipped


def _item_stats(M, f: Filters, want: bool, skipped: list, v) -> dict | None:
    if f.min_dual_ytilde_corank is None and not want:
        return {}
    try:
        return dual_stats(M, f.scan_limit)
    except ScanLimitExceeded as exc:
        skipped.append({"vector": str(v), "reason": str(exc)})
        return None


def enumerate_extensions(seeds: CatalogLayer, filters: Filters | None = None,
                         orbit_prune: bool = True, full_vectors: bool = False,
                         workers: int = 1, stats: bool = False,
                         budget: int | None = None) -> CatalogLayer:
    """Apply Γ to every seed, filter, canonise and deduplicate into a new layer.

    ``budget`` caps the number of candidate vectors; when the next seed would
    exceed it, :class:`BudgetExceeded` carries the layer built so far.
    Orbit pruning is skipped for ``full_vectors`` (the audit path keeps every
    vector and builds each matrix directly).
    """
    filters = filters or Filters()
    jobs = [_Job(i, it.matrix, filters, orbit_prune and not full_vectors, full_vectors, stats)
            for i, it in enumerate(seeds.items)]
    level = seeds.level + 1
    results = []
    spent = 0
    allowed = []
    for job in jobs:
        size = layer_size(job.matrix, full_vectors)
        if budget is not None and spent + size > budget:
            break
        spent += size
        allowed.append(job)
    if workers > 1 and len(allowed) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_job, allowed))
    else:
        results = [_run_job(job) for job in allowed]
    out = _merge(level, seeds, results)
    if len(allowed) < len(jobs):
        raise BudgetExceeded(f"candidate budget {budget} exhausted after {len(allowed)} of {len(jobs)} seeds",
                             partial=out)
    return out


def _merge(level: int, seeds: CatalogLayer, results) -> CatalogLayer:
    best: dict[bytes, tuple] = {}
    counts: dict[str, int] = {}
    skipped: list[dict] = []
    for rows, cnt, sk in results:
        for k, v in cnt.items():
            counts[k] = counts.get(k, 0) + v
        skipped.extend(sk)
        for key, prov, vec, st in rows:
            prev = best.get(key)
            if prev is None or tuple(prov) < prev[0]:
                best[key] = (tuple(prov), vec, st)
    items = []
    for key in sorted(best):
        (seed_index, _), vec, st = best[key]
        items.append(CatalogItem(CanonicalKey(key), seeds.items[seed_index].key,
                                 ExtensionVector(vec), st))
    counts["unique"] = len(items)
    return CatalogLayer(level, items, counts, skipped)
