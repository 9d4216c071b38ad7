import pytest
from hypothesis import assume, given, settings

from nscmat.errors import DuplicateLabel, RankDeficient, UnknownLabel
from nscmat.gf2core import BitMatrix
from nscmat.iso import are_isomorphic
from nscmat.matroid import (
    closure,
    coclosure,
    coloops,
    components,
    contract,
    corank_of,
    cosimplify,
    delete,
    dual,
    from_columns,
    from_matrix,
    is_3connected,
    is_connected,
    is_cosimple,
    is_simple,
    parallel_classes,
    parallel_connection,
    rank_of,
    relabel,
    restriction,
    series_classes,
    simplify,
)
from nscmat.zoo import SimpleGraph, complete, fano, graph_matroid, s2n, spike, uniform, wheel

from conftest import CORPUS, SMALL, binary_matroids
from oracles import Oracle

FANO_ROWS = ["1000111", "0101011", "0011101"]


def test_from_matrix_basics():
    M = from_matrix(BitMatrix.from_strings(FANO_ROWS), list("1234567"))
    assert (M.r, M.n) == (3, 7)
    U = from_matrix(BitMatrix.identity(4), list("abcd"))
    assert coloops(U) == frozenset("abcd")
    with pytest.raises(DuplicateLabel):
        from_matrix(BitMatrix.identity(2), ["a", "a"])
    with pytest.raises(RankDeficient):
        from_matrix(BitMatrix.from_strings(["11", "11"]))


def test_dual_examples():
    F = fano()
    D = dual(F)
    assert (D.r, D.n) == (4, 7)
    assert are_isomorphic(dual(s2n(4)), s2n(4))


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_dual_is_an_involution(name):
    M = CORPUS[name]
    DD = dual(dual(M))
    assert DD.labels == M.labels and DD.rep == M.rep


def test_deletions_of_fano_and_spike():
    F = fano()
    for e in F.labels:
        assert are_isomorphic(delete(F, [e]), complete(4))
    assert are_isomorphic(delete(spike(4), ["b4"]), s2n(4))
    assert contract(F, []) is F
    with pytest.raises(UnknownLabel):
        delete(F, ["zz"])


def test_rank_and_corank_examples():
    F = fano()
    assert rank_of(F, F.labels[:3]) == 3
    assert corank_of(F, []) == 0
    line = closure(F, ["1", "2"])
    assert len(line) == 3
    assert closure(F, F.labels) == F.ground_set
    U = uniform(2, 2)
    assert coclosure(U, []) == coloops(U) == U.ground_set


def test_parallel_and_series_classes():
    M = from_columns([0b01, 0b01, 0b10], ["1", "2", "3"])
    assert parallel_classes(M) == [frozenset({"1", "2"}), frozenset({"3"})]
    assert not is_simple(M)
    S, mp = simplify(M)
    assert S.labels == ("1", "3") and mp["2"] == "1"
    # K4 with one edge subdivided: the two halves form a series class
    G = SimpleGraph(5, ((0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (0, 4), (4, 3)))
    series = series_classes(graph_matroid(G))
    assert frozenset({"1-5", "5-4"}) in series
    assert sum(len(c) == 1 for c in series) == 5
    assert all(len(c) == 1 for c in parallel_classes(fano()))


def test_cosimplify():
    F = fano()
    C, mp = cosimplify(F)
    assert C.labels == F.labels and all(mp[x] == x for x in F.labels)
    # A triangle with every edge subdivided is one series class, like the triangle.
    hexagon = SimpleGraph(6, tuple((i, (i + 1) % 6) for i in range(6)))
    C, _ = cosimplify(graph_matroid(hexagon))
    T, _ = cosimplify(complete(3))
    assert are_isomorphic(C, T) and (C.r, C.n) == (0, 1)


def test_connectivity_examples():
    assert is_connected(fano())
    assert not is_connected(uniform(2, 2))
    assert is_connected(complete(4))
    assert is_3connected(wheel(4))
    assert is_3connected(from_columns([1, 2, 3], ["a", "b", "c"]))  # U2,3
    tri = from_columns([1, 2, 3], ["a", "b", "p"])
    tri2 = from_columns([1, 2, 3], ["c", "d", "q"])
    P = parallel_connection(tri, tri2, "p", "q")
    assert P.n == 5 and not is_3connected(P)


@pytest.mark.parametrize("name", sorted(n for n, M in SMALL.items() if M.n <= 10))
def test_connected_matches_common_circuit_oracle(name):
    M = SMALL[name]
    o = Oracle(M)
    comps = o.components_without(frozenset(), o.circuits())
    assert is_connected(M) == (len(comps) <= 1)
    assert sorted(sorted(M.index[x] for x in c) for c in components(M)) == sorted(sorted(c) for c in comps)


@pytest.mark.parametrize("name", sorted(n for n, M in SMALL.items() if M.n >= 4))
def test_3connected_matches_partition_oracle(name):
    M = SMALL[name]
    assert is_3connected(M) == Oracle(M).is_3connected()


@settings(max_examples=60, deadline=None)
@given(binary_matroids(max_rank=5, max_n=9, min_n=4))
def test_3connected_property(M):
    o = Oracle(M)
    assert is_3connected(M) == o.is_3connected()
    if is_3connected(M):
        assert is_simple(M) and is_cosimple(M)


@settings(max_examples=60, deadline=None)
@given(binary_matroids(max_rank=5, max_n=9))
def test_corank_is_rank_in_dual(M):
    D = dual(M)
    o = Oracle(M)
    for k in range(M.n + 1):
        X = M.labels[:k]
        assert corank_of(M, X) == rank_of(D, X)
        assert rank_of(M, X) == o.rank(range(k))


@settings(max_examples=40, deadline=None)
@given(binary_matroids(max_rank=5, max_n=9, min_n=3))
def test_delete_contract_commute(M):
    assume(M.n >= 3)
    a, b = M.labels[0], M.labels[-1]
    left = contract(delete(M, [a]), [b])
    right = delete(contract(M, [b]), [a])
    assert are_isomorphic(left, right)
    # deletion and contraction are swapped by duality
    assert dual(delete(M, [a])).labels == contract(dual(M), [a]).labels or \
        are_isomorphic(dual(delete(M, [a])), contract(dual(M), [a]))


def test_relabel_and_restriction():
    F = relabel(fano(), lambda x: "x" + x)
    assert F.labels[0].startswith("x")
    R = restriction(F, ["x1", "x2", "x3"])
    assert R.n == 3 and R.r <= 3
