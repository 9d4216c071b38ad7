import pytest
from hypothesis import HealthCheck, assume, given, settings, strategies as st

from nscmat import nsc
from nscmat.errors import ScanLimitExceeded
from nscmat.matroid import dual, from_columns, is_3connected, rank_of
from nscmat.minors import is_graphic
from nscmat.zoo import bond_matroid, complete, fano, k33ij_graph, projective_geometry, s2n, uniform

from conftest import CORPUS, SMALL, binary_matroids
from oracles import Oracle

# Counts of non-separating cocircuits, computed with the brute-force oracle.
NSC_COUNTS = {
    "F7": 7, "F7*": 7, "AG(3,2)": 14, "S8": 7, "S10": 12, "Z4": 14, "Z5": 26,
    "R10": 15, "R12": 11, "W3": 4, "W4": 5, "W5": 6, "K4": 4, "K5": 5, "K33": 6,
    "K34": 7, "K33'''": 6, "AG(3,2)*": 14, "Z4*": 12, "Z5*": 21, "K5*": 10,
    "K33*": 9, "K34*": 18, "K33'''*": 9, "K33^(1,1)*": 10, "K33^(2,1)*": 11,
    "U3,4": 0, "U1,3": 1, "U1,3*": 3,
}

# |Y| for the same fixtures (oracle values).
Y_SIZES = {
    "F7": 7, "AG(3,2)": 8, "S8": 7, "S10": 9, "Z4": 9, "Z5": 11, "R10": 10,
    "R12": 12, "K5*": 10, "K33*": 9, "K33'''*": 9, "K33^(1,1)*": 11, "W5": 0, "K34": 0,
}


@pytest.mark.parametrize("name", sorted(NSC_COUNTS))
def test_frozen_nsc_counts(name):
    assert len(nsc.nonseparating_cocircuits(CORPUS[name])) == NSC_COUNTS[name]


@pytest.mark.parametrize("name", sorted(Y_SIZES))
def test_frozen_y_sizes(name):
    assert len(nsc.report(CORPUS[name]).Y) == Y_SIZES[name]


@pytest.mark.parametrize("name", sorted(SMALL))
def test_nsc_matches_oracle(name):
    M = SMALL[name]
    o = Oracle(M)
    expect = sorted(sorted(C) for C in o.nonseparating_cocircuits())
    got = sorted(sorted(M.index[x] for x in c.support) for c in nsc.nonseparating_cocircuits(M))
    assert got == expect
    assert frozenset(M.index[x] for x in nsc.report(M).Y) == o.y_set()


def test_cocircuit_examples():
    K4 = complete(4)
    sizes = sorted(len(c) for c in nsc.cocircuits(K4))
    assert sizes == [3, 3, 3, 3, 4, 4, 4]
    assert sorted(len(c) for c in nsc.nonseparating_cocircuits(K4)) == [3, 3, 3, 3]
    F = fano()
    assert [len(c) for c in nsc.cocircuits(F)] == [4] * 7
    assert len(nsc.nonseparating_cocircuits(F)) == 7
    U23 = from_columns([1, 2, 3], list("abc"))
    assert [len(c) for c in nsc.cocircuits(U23)] == [2, 2, 2]


def test_bond_of_k33_triple_nsc_are_cross_triangles():
    G = k33ij_graph(3, 0)
    M = bond_matroid(G)
    V1 = {"u1", "u2", "u3"}
    for c in nsc.nonseparating_cocircuits(M):
        ends = {v for e in c.support for v in e.split("-")}
        assert len(c) == 3 and ends & V1 and ends - V1
    assert len(nsc.nonseparating_cocircuits(M)) == 9


def test_dep_examples():
    F = fano()
    for e in F.labels:
        assert nsc.dep(F, [e]) == 1
    K4 = complete(4)
    for e in K4.labels:
        assert nsc.dep(K4, [e]) == 0
    assert nsc.dep(F, F.labels) == 0


def test_report_examples():
    F = fano()
    assert nsc.report(F).Y == F.ground_set
    G = k33ij_graph(3, 0)
    rep = nsc.report(bond_matroid(G))
    assert rep.Ytilde == {"u1-u2", "u1-u3", "u2-u3"} and rep.ytilde_corank == 2
    S8 = s2n(4)
    assert nsc.report(S8).Ytilde == {"c"}
    assert nsc.report(dual(S8)).Ytilde == {"a4"}


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_rows_and_circuits_routes_agree(name):
    M = CORPUS[name]
    for connected in (False, True):
        rows = sorted(w for _, w in nsc._scan(M, connected, 24, "rows"))
        circ = sorted(w for _, w in nsc._scan(M, connected, 24, "circuits"))
        assert rows == circ


def test_scan_limit():
    P = dual(projective_geometry(4))  # rank 26
    with pytest.raises(ScanLimitExceeded):
        nsc.nonseparating_cocircuits(P, scan_limit=4, route="rows")
    # the automatic route scans the rank-5 dual's circuits instead
    assert len(nsc.nonseparating_cocircuits(P)) > 0


@pytest.mark.parametrize("name", sorted(n for n, M in CORPUS.items() if M.n >= 4 and is_3connected(M)))
def test_structural_theorems(name):
    M = CORPUS[name]
    rep = nsc.report(M)
    assert nsc.nsc_span_dimension(M, rep.nsc) == M.r
    assert all(k >= 2 for k in rep.meets.values())
    graphic = is_graphic(M)
    assert graphic == all(k <= 2 for k in rep.meets.values())
    assert graphic == (not rep.Y)
    for e in M.labels:
        assert nsc.nsc_span_dimension(M, rep.nsc, avoiding=e) == M.r - 1
        assert (e in rep.Y) == (rep.avoids[e] >= M.r)


@settings(max_examples=50, deadline=None)
@given(binary_matroids(max_rank=5, max_n=10, min_n=4))
def test_report_invariants(M):
    rep = nsc.report(M)
    assert rep.Y | rep.Ytilde == M.ground_set and not rep.Y & rep.Ytilde
    for e in M.labels:
        assert rep.meets[e] + rep.avoids[e] == len(rep.nsc)
    for c in rep.nsc:
        assert rank_of(M, M.ground_set - c.support) == M.r - 1


dense_point_sets = st.integers(3, 5).flatmap(
    lambda r: st.lists(st.integers(1, (1 << r) - 1), min_size=r + 3, max_size=min(12, (1 << r) - 1),
                       unique=True).map(lambda pts: from_columns(pts, [f"p{v}" for v in pts])))


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(dense_point_sets)
def test_theorems_on_random_3connected(M):
    assume(M.r >= 3 and is_3connected(M))
    rep = nsc.report(M)
    assert nsc.nsc_span_dimension(M, rep.nsc) == M.r
    assert all(k >= 2 for k in rep.meets.values())
    assert is_graphic(M) == (not rep.Y)


def test_rank_zero_and_loops():
    U = uniform(0, 2)
    assert nsc.cocircuits(U) == []
    rep = nsc.report(U)
    assert rep.Y == frozenset() and rep.Ytilde == U.ground_set and rep.ytilde_corank == 2
