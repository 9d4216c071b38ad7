"""Drivers that rerun the computational lemmas and the conjecture search.

Every driver returns a :class:`DriverReport`: a list of named checks, the
witnesses behind any failure, and an ``incomplete`` flag for runs cut short
by a budget or scan limit.  Reports contain no timings, so their JSON is
byte-identical across runs.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import fileio, nsc
from .errors import BadParams, BudgetExceeded, MatroidError, ScanLimitExceeded
from .extend import CatalogItem, CatalogLayer, Filters, dual_stats, enumerate_extensions, layer_size
from .iso import CanonicalKey, canonical_key
from .matroid import (
    BinaryMatroid,
    delete,
    direct_sum,
    dual,
    from_columns,
    is_3connected,
    parallel_connection,
    relabel,
    sort_labels,
)
from .minors import has_minor, is_graphic, is_regular
from .zoo import (
    ag32,
    added_v1_edges,
    bond_matroid,
    complete,
    complete_bipartite,
    fano,
    k33ij,
    k33ij_graph,
    k3n_triple_graph,
    pg_complement,
    projective_geometry,
    s2n,
    spike,
    r10,
    uniform,
    wheel,
)

log = logging.getLogger(__name__)


@dataclass
class DriverReport:
    name: str
    checks: list[dict] = field(default_factory=list)
    witnesses: list[dict] = field(default_factory=list)
    header: dict = field(default_factory=dict)
    incomplete: bool = False

    def check(self, name: str, passed: bool, **detail) -> bool:
        self.checks.append({"name": name, "passed": bool(passed), "detail": detail})
        return bool(passed)

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks)

    @property
    def verdict(self) -> str:
        if not self.passed:
            return "fail"
        return "incomplete" if self.incomplete else "pass"

    def to_dict(self) -> dict:
        return {
            "driver": self.name,
            "header": self.header,
            "checks": self.checks,
            "verdict": self.verdict,
            "witnesses": self.witnesses,
            "incomplete": self.incomplete,
        }


def _labels(S) -> list[str]:
    return sort_labels(S)


# -- small-case lemmas ------------------------------------------------------------

def verify_initial_cases() -> DriverReport:
    """Y(M) = E(M) for F7, F7*, M*(K5) and R10."""
    rep = DriverReport("initial-cases")
    cases = [("F7", fano()), ("F7*", dual(fano())), ("M*(K5)", dual(complete(5))), ("R10", r10())]
    for name, M in cases:
        out = nsc.report(M, name)
        ok = rep.check(f"{name}: Y = E", out.Y == M.ground_set,
                       n=M.n, nsc_count=len(out.nsc), Ytilde=_labels(out.Ytilde))
        if not ok:
            rep.witnesses.append({"matroid": name, "Ytilde": _labels(out.Ytilde)})
    return rep


def verify_k33_family() -> DriverReport:
    """Bond matroids of K3,3 with i edges added in one colour class and j in the other."""
    rep = DriverReport("k33")
    K5d = dual(complete(5))
    for i in range(4):
        for j in range(i + 1):
            G = k33ij_graph(i, j)
            M = bond_matroid(G)
            name = f"M*(K33^({i},{j}))"
            out = nsc.report(M, name)
            if (i, j) == (3, 0):
                added = added_v1_edges(G)
                ok = rep.check(f"{name}: Ytilde = added triangle", out.Ytilde == added,
                               Ytilde=_labels(out.Ytilde))
                ok &= rep.check(f"{name}: corank of Ytilde = 2", out.ytilde_corank == 2,
                                ytilde_corank=out.ytilde_corank)
                ok &= rep.check(f"{name}: Y = E(K33)", out.Y == M.ground_set - added,
                                Y=_labels(out.Y))
            else:
                ok = rep.check(f"{name}: Y = E", out.Y == M.ground_set, Ytilde=_labels(out.Ytilde))
            if not ok:
                rep.witnesses.append({"matroid": name, "Ytilde": _labels(out.Ytilde)})
            has = has_minor(M, K5d)
            if not rep.check(f"{name}: M*(K5)-minor iff i, j >= 1", has == (i >= 1 and j >= 1),
                             has_minor=has):
                rep.witnesses.append({"matroid": name, "has_M*(K5)_minor": has})
    return rep


# -- rank-4 classification ------------------------------------------------------------

def _transvection_perms() -> list[np.ndarray]:
    """Point permutations of PG(3,2) induced by the elementary transvections."""
    perms = []
    for a in range(4):
        for b in range(4):
            if a != b:
                perm = np.array([v ^ (((v >> b) & 1) << a) for v in range(16)], dtype=np.int64)
                perms.append(perm)
    return perms


def _subset_orbits() -> np.ndarray:
    """Minimum mask of every GL(4,2)-orbit on subsets of PG(3,2) (bit p-1 = point p)."""
    masks = np.arange(1 << 15, dtype=np.int64)
    src, dst = [], []
    for perm in _transvection_perms():
        img = np.zeros_like(masks)
        for p in range(1, 16):
            img |= ((masks >> (p - 1)) & 1) << (perm[p] - 1)
        src.append(masks)
        dst.append(img)
    src, dst = np.concatenate(src), np.concatenate(dst)
    graph = coo_matrix((np.ones(src.size, dtype=np.int8), (src, dst)), shape=(masks.size, masks.size))
    count, labels = connected_components(graph, directed=True, connection="weak")
    rep = np.full(count, masks.size, dtype=np.int64)
    np.minimum.at(rep, labels, masks)
    return np.sort(rep)


def _point_matroid(mask: int) -> BinaryMatroid:
    pts = [p for p in range(1, 16) if (mask >> (p - 1)) & 1]
    return from_columns(pts, [f"p{p}" for p in pts])


def _u(r: int, n: int, tag: str) -> BinaryMatroid:
    return relabel(uniform(r, n), lambda x: f"{tag}{x}")


def _complement(M: BinaryMatroid) -> BinaryMatroid:
    return pg_complement(M, 3)


def named_rank4() -> list[tuple[str, str, BinaryMatroid]]:
    """``(group, name, matroid)`` for the classification list, alternatives included."""
    K4 = complete(4)
    K4e = delete(K4, [K4.labels[-1]])
    K5 = complete(5)
    P = _complement
    uu = direct_sum
    return [
        ("i", "F7*", dual(fano())),
        ("i", "S8", s2n(4)),
        ("i", "AG(3,2)", ag32()),
        ("i", "M(W4)", wheel(4)),
        ("ii", "Z4", spike(4)),
        ("ii", "P9 = P\\[M(K4-e)+U11]", P(uu(K4e, _u(1, 1, "x")))),
        ("ii", "M*(K33)", dual(complete_bipartite(3, 3))),
        ("ii", "M(K5\\e)", delete(K5, [K5.labels[-1]])),
        ("iii", "P\\M(K4\\e)", P(K4e)),
        ("iii", "P\\[U23+U22]", P(uu(_u(2, 3, "a"), _u(2, 2, "b")))),
        ("iii", "P\\[U34+U11]", P(uu(_u(3, 4, "a"), _u(1, 1, "b")))),
        ("iii", "M(K5)", K5),
        ("iv", "P\\[U23+U11]", P(uu(_u(2, 3, "a"), _u(1, 1, "b")))),
        ("iv", "P\\U34", P(uniform(3, 4))),
        ("iv", "P\\U44", P(uniform(4, 4))),
        ("v", "P\\U11", P(uniform(1, 1))),
        ("v", "P\\U22", P(uniform(2, 2))),
        ("v", "P\\U23", P(uniform(2, 3))),
        ("v", "P\\U33", P(uniform(3, 3))),
    ]


def alternative_rank4() -> list[tuple[str, str, BinaryMatroid]]:
    """Second constructions of four listed classes, as ``(listed name, alias, matroid)``."""
    K5 = complete(5)
    glued = parallel_connection(_u(2, 3, "a"), _u(3, 4, "b"), "a1", "b1")
    return [
        ("Z4", "P\\M(K4)", _complement(complete(4))),
        ("M*(K33)", "P\\[U23+U23]", _complement(direct_sum(_u(2, 3, "a"), _u(2, 3, "b")))),
        ("M(K5\\e)", "P\\P(U23,U34)", _complement(glued)),
        ("M(K5)", "P\\U45", _complement(uniform(4, 5))),
        ("AG(3,2)", "P\\F7", _complement(fano())),
    ]


_GROUP_SIZES = {"i": range(0, 9), "ii": range(9, 10), "iii": range(10, 11),
                "iv": range(11, 12), "v": range(12, 16)}


@lru_cache(maxsize=1)
def rank4_classes() -> tuple[tuple[CanonicalKey, BinaryMatroid], ...]:
    """Rank-4 3-connected restrictions of PG(3,2), one per isomorphism class."""
    found = []
    for mask in _subset_orbits().tolist():
        M = _point_matroid(mask)
        if M.r == 4 and is_3connected(M):
            found.append((canonical_key(M), M))
    found.sort(key=lambda t: (t[1].n, t[0]))
    return tuple(found)


def classify_rank4() -> DriverReport:
    rep = DriverReport("classify-rank4")
    classes = rank4_classes()
    keys = [k for k, _ in classes]
    rep.check("orbit classes have distinct canonical keys", len(set(keys)) == len(keys),
              orbits=len(keys), keys=len(set(keys)))
    names = {}
    for group, name, M in named_rank4():
        k = canonical_key(M)
        ok = rep.check(f"{name}: rank 4, 3-connected, size fits group ({group})",
                       M.r == 4 and is_3connected(M) and M.n in _GROUP_SIZES[group], n=M.n)
        ok &= rep.check(f"{name}: found by the enumeration", k in keys)
        if k in names:
            rep.check(f"{name}: distinct from {names[k]}", False)
        names[k] = name
        if not ok:
            rep.witnesses.append({"name": name, "key": k.hex()})
    for listed, alias, M in alternative_rank4():
        k = canonical_key(M)
        rep.check(f"{alias} matches {listed}", names.get(k) == listed, matched=names.get(k))
    pg = canonical_key(projective_geometry(3))
    listing = []
    unmatched = []
    for k, M in classes:
        name = names.get(k)
        if name is None and k == pg:
            name = "PG(3,2) (present, unlisted)"
        if name is None:
            unmatched.append(k.hex())
        listing.append({"n": M.n, "name": name, "key": k.hex()})
    rep.check("every class is named or PG(3,2)", not unmatched, unmatched=unmatched)
    rep.check("19 named classes plus PG(3,2)", len(names) == 19 and len(classes) == 20,
              named=len(names), found=len(classes))
    rep.check("exactly one class with 7 elements",
              sum(1 for _, M in classes if M.n == 7) == 1)
    rep.header["classes"] = listing
    for k in unmatched:
        rep.witnesses.append({"unmatched_key": k})
    return rep


# -- the comput lemma --------------------------------------------------------------

def _gamma_steps(rep: DriverReport, seeds: CatalogLayer, steps: int, full_vectors: bool,
                 budget: int | None, workers: int) -> list[CatalogLayer]:
    filters = Filters(cosimple=True, three_connected=True)
    layers = []
    for step in range(steps):
        try:
            seeds = enumerate_extensions(seeds, filters, full_vectors=full_vectors,
                                         workers=workers, budget=budget)
        except BudgetExceeded as exc:
            rep.incomplete = True
            rep.header.setdefault("notes", []).append(f"step {step + 1}: {exc}")
            seeds = exc.partial
            layers.append(seeds)
            break
        layers.append(seeds)
    return layers


def _check_survivors(rep: DriverReport, layers: list[CatalogLayer], tag: str, bound) -> None:
    """Apply ``bound(report) -> bool`` to the dual of every survivor."""
    total = 0
    for L in layers:
        for it in L.items:
            N = it.matroid()
            try:
                out = nsc.report(dual(N))
            except ScanLimitExceeded as exc:
                rep.incomplete = True
                rep.header.setdefault("notes", []).append(f"{it.key.hex()}: {exc}")
                continue
            total += 1
            if not bound(out):
                rep.witnesses.append({
                    "seed": tag, "key": it.key.hex(), "parent": it.parent.hex() if it.parent else None,
                    "vector": str(it.vector), "Ytilde": _labels(out.Ytilde),
                    "ytilde_corank": out.ytilde_corank,
                })
    rep.header.setdefault("checked", {})[tag] = total


def verify_comput(part: str, steps: int = 1, full_vectors: bool = False,
                  budget: int | None = None, workers: int = 1) -> DriverReport:
    """One of the four parts ``a``-``d`` of the computer-assisted lemma.

    Parts a, c and d coextend a representation of ``co(M\\e)``'s dual by Γ and
    check the resulting 3-connected matroids' duals; ``steps`` iterates Γ.
    """
    if part not in ("a", "b", "c", "d"):
        raise BadParams(f"unknown part {part!r}")
    rep = DriverReport(f"comput-{part}")
    rep.header.update({"steps": steps, "full_vectors": full_vectors})
    if part == "b":
        S8 = canonical_key(s2n(4))
        for k, M in rank4_classes():
            D = dual(M)
            out = nsc.report(D)
            if is_graphic(D):
                # Outside the lemma's non-graphic setting: Y must be empty instead.
                ok = rep.check(f"dual of n={M.n} class {k.hex()} (graphic): Y empty",
                               not out.Y, Y=_labels(out.Y))
            elif k == S8:
                ok = rep.check(f"dual of n={M.n} class {k.hex()} (S8): |Ytilde| = 1",
                               len(out.Ytilde) == 1, Ytilde=_labels(out.Ytilde))
            else:
                ok = rep.check(f"dual of n={M.n} class {k.hex()}: Y = E",
                               out.Y == D.ground_set, Ytilde=_labels(out.Ytilde))
            if not ok:
                rep.witnesses.append({"key": k.hex(), "Ytilde": _labels(out.Ytilde)})
        return rep
    if part == "a":
        seeds = {"S8": s2n(4)}
        bound = lambda out: len(out.Ytilde) <= 1  # noqa: E731
    elif part == "c":
        seeds = {f"M(K33^({i},0))": k33ij(i, 0) for i in range(3)}
        bound = lambda out: not out.Ytilde  # noqa: E731
    else:
        seeds = {"PG(3,2)": projective_geometry(3)}
        bound = lambda out: not out.Ytilde  # noqa: E731
    for tag, M in seeds.items():
        start = CatalogLayer.from_matroids(M.r, [M])
        layers = _gamma_steps(rep, start, steps, full_vectors, budget, workers)
        first = layers[0].counts if layers else {}
        rep.header.setdefault("counts", {})[tag] = [L.counts for L in layers]
        rep.check(f"{tag}: candidate count = |L(A)|",
                  first.get("candidates") == layer_size(start.items[0].matrix, full_vectors),
                  candidates=first.get("candidates"))
        before = len(rep.witnesses)
        _check_survivors(rep, layers, tag, bound)
        rep.check(f"{tag}: every 3-connected coextension meets the bound",
                  len(rep.witnesses) == before,
                  survivors=sum(len(L.items) for L in layers))
    return rep


# -- extremal families ---------------------------------------------------------------

def verify_extremal(spikes=range(4, 8), triples=range(3, 6)) -> DriverReport:
    rep = DriverReport("extremal")
    for n in spikes:
        M = s2n(n)
        out = nsc.report(M)
        ok = rep.check(f"S{2 * n}: |Ytilde| = 1", len(out.Ytilde) == 1, Ytilde=_labels(out.Ytilde))
        if not ok:
            rep.witnesses.append({"matroid": f"S{2 * n}", "Ytilde": _labels(out.Ytilde)})
    for n in triples:
        G = k3n_triple_graph(n)
        M = bond_matroid(G)
        out = nsc.report(M)
        added = added_v1_edges(G)
        ok = rep.check(f"M*(K3,{n}'''): Ytilde = added triad", out.Ytilde == added,
                       Ytilde=_labels(out.Ytilde))
        ok &= rep.check(f"M*(K3,{n}'''): corank of Ytilde = 2", out.ytilde_corank == 2,
                        ytilde_corank=out.ytilde_corank)
        if not ok:
            rep.witnesses.append({"matroid": f"M*(K3,{n}''')", "Ytilde": _labels(out.Ytilde)})
    return rep


# -- conjecture search ---------------------------------------------------------------

THRESHOLDS = {
    "proof": {6: 1, 7: 1, 8: 2, 9: 3},
    "printed": {6: 1, 7: 2, 8: 2, 9: 2},
}

COUNTEREXAMPLE_CORANK = 3


class ResumeMismatch(MatroidError):
    """A stored layer was built with a different configuration."""


def _threshold(preset: dict, level: int) -> int:
    if level in preset:
        return preset[level]
    return preset[max(k for k in preset if k <= level)] if any(k <= level for k in preset) else 1


def search_seed() -> BinaryMatroid:
    """M(K3,3'''): K3,3 with a triangle on one colour class."""
    return k33ij(3, 0)


def conjecture_search(max_rank: int = 9, thresholds: str | dict = "proof",
                      catalog_dir=None, resume: bool = False, workers: int = 1,
                      full_vectors: bool = False, budget: int | None = None) -> DriverReport:
    """Layers of regular, cosimple coextensions of M(K3,3''') with no M(K5)-minor.

    Layer ``i`` keeps the rank-``i`` matrices whose dual has Ỹ of corank at
    least the layer's threshold; every survivor with corank 3 or more is a
    counterexample candidate and is listed as a witness.
    """
    preset_name = thresholds if isinstance(thresholds, str) else "custom"
    if isinstance(thresholds, str):
        if thresholds not in THRESHOLDS:
            raise BadParams(f"unknown threshold preset {thresholds!r}")
        thresholds = THRESHOLDS[thresholds]
    thresholds = {int(k): int(v) for k, v in thresholds.items()}
    rep = DriverReport("search")
    rep.header.update({
        "seed": "M(K33''')",
        "thresholds": preset_name,
        "threshold_by_rank": {str(i): _threshold(thresholds, i) for i in range(6, max_rank + 1)},
        "excluded_minor": "M(K5) in M[A], i.e. M*(K5) in the dual",
        "full_vectors": full_vectors,
    })
    A0 = search_seed()
    rep.check("seed: rank 5, 12 elements, 3-connected, regular, no M(K5)-minor",
              A0.r == 5 and A0.n == 12 and is_3connected(A0) and is_regular(A0)
              and not has_minor(A0, complete(5)))
    layer = CatalogLayer.from_matroids(5, [A0])
    layer.items = [CatalogItem(it.key, None, None, dual_stats(A0)) for it in layer.items]
    layers_out = []
    parent_digest = ",".join(k.hex() for k in layer.keys())
    for level in range(6, max_rank + 1):
        t = _threshold(thresholds, level)
        filters = Filters(cosimple=True, regular=True, excluded_minors=(complete(5),),
                          min_dual_ytilde_corank=t)
        config = {"filters": filters.describe(), "full_vectors": full_vectors,
                  "parents": parent_digest}
        stored = fileio.read_layer(catalog_dir, level) if (catalog_dir and resume) else None
        if stored is not None:
            layer_new, meta = stored
            if meta.get("config") != config:
                raise ResumeMismatch(f"layer {level} in {catalog_dir} was built with a different configuration")
            log.info("layer %d: resumed %d items", level, len(layer_new.items))
        else:
            try:
                layer_new = enumerate_extensions(layer, filters, full_vectors=full_vectors,
                                                 workers=workers, stats=True, budget=budget)
            except BudgetExceeded as exc:
                rep.incomplete = True
                rep.header.setdefault("notes", []).append(f"layer {level}: {exc}")
                layer_new = exc.partial
                if catalog_dir:
                    fileio.write_layer(Path(catalog_dir) / "partial", layer_new, {"config": config})
                _summarize(rep, level, layer_new, t)
                break
            if catalog_dir:
                fileio.write_layer(catalog_dir, layer_new, {"config": config})
        _summarize(rep, level, layer_new, t)
        layers_out.append(layer_new)
        layer = layer_new
        parent_digest = ",".join(k.hex() for k in layer.keys())
    if layers_out and layers_out[0].level == 6 and not full_vectors:
        rep.check("layer 6 candidates = 2^5 * 3^7", layers_out[0].counts.get("candidates") == 69984,
                  candidates=layers_out[0].counts.get("candidates"))
    return rep


def _summarize(rep: DriverReport, level: int, layer: CatalogLayer, threshold: int) -> None:
    coranks = [it.stats.get("ytilde_corank", 0) for it in layer.items]
    worst = max(coranks, default=None)
    rep.header.setdefault("layers", []).append({
        "rank": level,
        "threshold": threshold,
        "counts": layer.counts,
        "survivors": len(layer.items),
        "max_ytilde_corank": worst,
        "skipped": len(layer.skipped),
    })
    if layer.skipped:
        rep.incomplete = True
    flagged = [it for it in layer.items if it.stats.get("ytilde_corank", 0) >= COUNTEREXAMPLE_CORANK]
    for it in flagged:
        rep.witnesses.append({
            "rank": level, "key": it.key.hex(), "parent": it.parent.hex() if it.parent else None,
            "vector": str(it.vector), "stats": it.stats,
        })
    rep.check(f"rank {level}: every survivor has corank of Ytilde <= 2", not flagged,
              max_ytilde_corank=worst, candidates=len(flagged))
