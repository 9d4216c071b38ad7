import pytest

from nscmat.errors import BadParams, NotSimple, RankTooLarge, UnknownName
from nscmat.iso import are_isomorphic
from nscmat.matroid import delete, dual, from_columns, is_3connected, is_simple
from nscmat.nsc import cocircuits
from nscmat.zoo import (
    SimpleGraph, added_v1_edges, ag32, bond_matroid, complete, complete_bipartite, fano, graph_matroid,
    k33ij, k33ij_graph, k3n_triple, make_named, named_constructors, pg_complement, projective_geometry,
    r10, r12, s2n, spike, uniform, wheel,
)

from oracles import Oracle


@pytest.mark.parametrize("maker,rank,size", [
    (fano, 3, 7), (ag32, 4, 8), (r10, 5, 10), (r12, 6, 12),
    (lambda: spike(5), 5, 11), (lambda: s2n(5), 5, 10),
    (lambda: projective_geometry(3), 4, 15), (lambda: wheel(5), 5, 10),
    (lambda: complete(5), 4, 10), (lambda: complete_bipartite(3, 4), 6, 12),
    (lambda: k33ij(2, 1), 5, 12), (lambda: k3n_triple(4), 6, 15),
    (lambda: uniform(2, 3), 2, 3), (lambda: uniform(0, 2), 0, 2),
])
def test_rank_and_size(maker, rank, size):
    M = maker()
    assert (M.r, M.n) == (rank, size)


@pytest.mark.parametrize("maker", [fano, ag32, r10, r12, lambda: spike(4), lambda: s2n(4),
                                   lambda: projective_geometry(3), lambda: wheel(4), lambda: complete(5),
                                   lambda: complete_bipartite(3, 3), lambda: k33ij(3, 0)])
def test_named_matroids_are_3connected(maker):
    assert is_3connected(maker())


def test_self_duality():
    for M in (r10(), r12(), s2n(4), s2n(5), ag32(), wheel(4)):
        assert are_isomorphic(M, dual(M))
    assert not are_isomorphic(fano(), dual(fano()))


def test_r10_structure():
    M = r10()
    # every single-element deletion is M(K33), every contraction is its dual
    for e in M.labels:
        assert are_isomorphic(delete(M, [e]), complete_bipartite(3, 3))
    assert sorted(len(c) for c in cocircuits(M))[:1] == [4]


def test_ag32_is_pg_minus_a_plane():
    assert are_isomorphic(pg_complement(fano(), 3), ag32())
    assert pg_complement(complete(4), 3).n == 9
    with pytest.raises(NotSimple):
        pg_complement(from_columns([1, 1, 2]), 3)
    with pytest.raises(RankTooLarge):
        pg_complement(r10(), 3)


def test_graph_labels_and_incidence():
    G = k33ij_graph(3, 0)
    M = graph_matroid(G)
    assert added_v1_edges(G) == {"u1-u2", "u1-u3", "u2-u3"}
    assert added_v1_edges(G) <= set(M.labels)
    # a triangle's three edges are dependent
    o = Oracle(M)
    tri = [M.index[x] for x in added_v1_edges(G)]
    assert o.rank(tri) == 2
    assert bond_matroid(G).r == M.n - M.r


def test_graph_rejects_loops_and_repeats():
    with pytest.raises(ValueError):
        SimpleGraph(2, ((0, 0),))
    with pytest.raises(ValueError):
        SimpleGraph(2, ((0, 1), (1, 0)))
    with pytest.raises(ValueError):
        SimpleGraph(2, ((0, 2),))


def test_bad_parameters():
    for bad in (lambda: spike(2), lambda: s2n(3), lambda: wheel(2), lambda: uniform(2, 4),
                lambda: k33ij(1, 2), lambda: projective_geometry(0), lambda: k3n_triple(2)):
        with pytest.raises(BadParams):
            bad()


def test_make_named():
    assert "spike" in named_constructors()
    assert are_isomorphic(make_named("s8"), s2n(4))
    assert are_isomorphic(make_named("spike", "4"), spike(4))
    assert make_named("u", 1, 3).n == 3
    with pytest.raises(UnknownName):
        make_named("nope")
    with pytest.raises(BadParams):
        make_named("spike")
    with pytest.raises(BadParams):
        make_named("spike", "x")


def test_spike_and_s2n():
    Z = spike(4)
    assert is_simple(Z)
    assert are_isomorphic(spike(3), fano())
    assert are_isomorphic(delete(Z, ["b4"]), s2n(4))
