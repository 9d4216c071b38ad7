"""Deterministic constructors for the named matroids and graph families.

Graph edges are labelled ``"<u>-<v>"`` from vertex names; the complete
bipartite families name their sides ``u1, u2, ...`` and ``w1, w2, ...``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable

from .errors import BadParams, NotSimple, RankTooLarge, UnknownName
from .gf2core import BitMatrix
from .matroid import (
    BinaryMatroid,
    delete,
    dual,
    from_columns,
    from_matrix,
    is_simple,
)


@dataclass(frozen=True)
class SimpleGraph:
    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    vertex_names: tuple[str, ...] = ()

    def __post_init__(self):
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError("loops are not allowed")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError("vertex index out of range")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"repeated edge {key}")
            seen.add(key)
        if self.vertex_names and len(self.vertex_names) != self.vertex_count:
            raise ValueError("one name per vertex")

    def name(self, v: int) -> str:
        return self.vertex_names[v] if self.vertex_names else str(v + 1)

    def edge_labels(self) -> list[str]:
        return [f"{self.name(u)}-{self.name(v)}" for u, v in self.edges]

    def add_edges(self, extra) -> "SimpleGraph":
        return SimpleGraph(self.vertex_count, self.edges + tuple(extra), self.vertex_names)


def graph_matroid(G: SimpleGraph) -> BinaryMatroid:
    """Cycle matroid from the vertex-edge incidence matrix mod 2."""
    cols = [(1 << u) | (1 << v) for u, v in G.edges]
    return from_columns(cols, G.edge_labels())


def bond_matroid(G: SimpleGraph) -> BinaryMatroid:
    return dual(graph_matroid(G))


# -- graph families -------------------------------------------------------------

def complete_graph(k: int) -> SimpleGraph:
    return SimpleGraph(k, tuple(combinations(range(k), 2)))


def complete_bipartite_graph(a: int, b: int) -> SimpleGraph:
    names = tuple(f"u{i + 1}" for i in range(a)) + tuple(f"w{j + 1}" for j in range(b))
    edges = tuple((i, a + j) for i in range(a) for j in range(b))
    return SimpleGraph(a + b, edges, names)


def wheel_graph(k: int) -> SimpleGraph:
    names = ("h",) + tuple(str(i + 1) for i in range(k))
    spokes = tuple((0, i) for i in range(1, k + 1))
    rim = tuple((i, i % k + 1) for i in range(1, k + 1))
    return SimpleGraph(k + 1, spokes + rim, names)


# Added edges inside V1 = {u1,u2,u3} and V2 = {w1,w2,w3}, in this order.
_V1_EDGES = ((0, 1), (0, 2), (1, 2))
_V2_EDGES = ((3, 4), (3, 5), (4, 5))


def k33ij_graph(i: int, j: int) -> SimpleGraph:
    if not 0 <= j <= i <= 3:
        raise BadParams("k33ij needs 0 <= j <= i <= 3")
    return complete_bipartite_graph(3, 3).add_edges(_V1_EDGES[:i] + _V2_EDGES[:j])


def k3n_triple_graph(n: int) -> SimpleGraph:
    if n < 3:
        raise BadParams("k3n_triple needs n >= 3")
    return complete_bipartite_graph(3, n).add_edges(_V1_EDGES)


def added_v1_edges(G: SimpleGraph) -> frozenset[str]:
    """Labels of the edges joining two vertices of V1 (the 'triple' edges)."""
    return frozenset(f"{G.name(u)}-{G.name(v)}" for u, v in _V1_EDGES)


# -- named matroids -------------------------------------------------------------

def fano() -> BinaryMatroid:
    return from_matrix(BitMatrix.from_strings(["1000111", "0101011", "0011101"]))


def projective_geometry(s: int) -> BinaryMatroid:
    """PG(s, 2): every nonzero vector of GF(2)^(s+1), labelled ``p<value>``."""
    if not 1 <= s <= 5:
        raise BadParams("PG(s,2) supported for 1 <= s <= 5")
    pts = list(range(1, 1 << (s + 1)))
    return from_columns(pts, [f"p{v}" for v in pts])


def ag32() -> BinaryMatroid:
    pts = [v for v in range(1, 16) if v & 1]
    return from_columns(pts, [f"p{v}" for v in pts])


def spike(r: int) -> BinaryMatroid:
    """Z_r = [I_r | complement of I_r | all-ones], labels a1..ar, b1..br, c."""
    if r < 3:
        raise BadParams("spike needs r >= 3")
    ones = (1 << r) - 1
    cols = [1 << i for i in range(r)] + [ones ^ (1 << i) for i in range(r)] + [ones]
    labels = [f"a{i + 1}" for i in range(r)] + [f"b{i + 1}" for i in range(r)] + ["c"]
    return from_columns(cols, labels)


def s2n(n: int) -> BinaryMatroid:
    if n < 4:
        raise BadParams("S_2n needs n >= 4")
    return delete(spike(n), [f"b{n}"])


def r10() -> BinaryMatroid:
    first = [1, 1, 0, 0, 1]
    rows = []
    for i in range(5):
        d = first[-i:] + first[:-i] if i else first
        rows.append([int(t == i) for t in range(5)] + d)
    return from_matrix(BitMatrix.from_lists(rows))


_R12_D = ["111000", "110100", "100010", "010001", "001011", "000111"]


def r12() -> BinaryMatroid:
    rows = [[int(t == i) for t in range(6)] + [int(ch) for ch in _R12_D[i]] for i in range(6)]
    return from_matrix(BitMatrix.from_lists(rows))


def uniform(r: int, n: int) -> BinaryMatroid:
    """U_{r,n} for the binary cases: r in {0, 1, n-1, n}."""
    if not (0 <= r <= n):
        raise BadParams("need 0 <= r <= n")
    labels = [str(j + 1) for j in range(n)]
    if r == 0:
        return from_columns([0] * n, labels)
    if r == n:
        return from_columns([1 << i for i in range(n)], labels)
    if r == 1:
        return from_columns([1] * n, labels)
    if r == n - 1:
        return from_columns([1 << i for i in range(r)] + [(1 << r) - 1], labels)
    raise BadParams(f"U_{r},{n} is not binary")


def wheel(k: int) -> BinaryMatroid:
    if k < 3:
        raise BadParams("wheel needs k >= 3")
    return graph_matroid(wheel_graph(k))


def complete(k: int) -> BinaryMatroid:
    if k < 2:
        raise BadParams("complete graph needs k >= 2")
    return graph_matroid(complete_graph(k))


def complete_bipartite(a: int, b: int) -> BinaryMatroid:
    if a < 1 or b < 1:
        raise BadParams("complete bipartite needs a, b >= 1")
    return graph_matroid(complete_bipartite_graph(a, b))


def k33ij(i: int, j: int) -> BinaryMatroid:
    return graph_matroid(k33ij_graph(i, j))


def k3n_triple(n: int) -> BinaryMatroid:
    return graph_matroid(k3n_triple_graph(n))


_NAMED: dict[str, tuple[Callable[..., BinaryMatroid], int]] = {
    "fano": (fano, 0),
    "fano_dual": (lambda: dual(fano()), 0),
    "ag32": (ag32, 0),
    "s8": (lambda: s2n(4), 0),
    "wheel": (wheel, 1),
    "spike": (spike, 1),
    "s2n": (s2n, 1),
    "r10": (r10, 0),
    "r12": (r12, 0),
    "pg32": (lambda: projective_geometry(3), 0),
    "pg32_dual": (lambda: dual(projective_geometry(3)), 0),
    "pg": (projective_geometry, 1),
    "u": (uniform, 2),
    "k33ij": (k33ij, 2),
    "k3n_triple": (k3n_triple, 1),
    "complete": (complete, 1),
    "complete_bipartite": (complete_bipartite, 2),
}


def named_constructors() -> list[str]:
    return sorted(_NAMED)


def make_named(name: str, *params: int) -> BinaryMatroid:
    """Build a named matroid, e.g. ``make_named("spike", 5)``."""
    try:
        fn, arity = _NAMED[name]
    except KeyError:
        raise UnknownName(f"unknown matroid name {name!r}") from None
    if len(params) != arity:
        raise BadParams(f"{name} takes {arity} parameter(s), got {len(params)}")
    try:
        params = tuple(int(p) for p in params)
    except (TypeError, ValueError):
        raise BadParams("parameters must be integers") from None
    return fn(*params)


def pg_complement(M: BinaryMatroid, s: int) -> BinaryMatroid:
    """Restriction of PG(s, 2) to the points outside an embedded copy of ``M``.

    ``M`` is embedded through its own standard-form coordinates padded with
    zero rows; any other embedding gives an isomorphic result.
    """
    if not is_simple(M):
        raise NotSimple("the complement needs a simple matroid")
    if M.r > s + 1:
        raise RankTooLarge(f"rank {M.r} does not fit in PG({s},2)")
    used = set(M.columns)
    pts = [v for v in range(1, 1 << (s + 1)) if v not in used]
    return from_columns(pts, [f"p{v}" for v in pts])
