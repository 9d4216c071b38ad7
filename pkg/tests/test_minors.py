import pytest
from hypothesis import given, settings, strategies as st

from nscmat.errors import BudgetExceeded
from nscmat.iso import are_isomorphic
from nscmat.matroid import contract, delete, dual, from_columns
from nscmat.minors import excluded_minors_graphic, has_minor, is_cographic, is_graphic, is_regular
from nscmat.zoo import (
    ag32, complete, complete_bipartite, fano, k33ij, projective_geometry, r10, r12, s2n, spike, uniform, wheel,
)

from conftest import binary_matroids
from oracles import brute_has_minor

SMALL_TARGETS = {
    "U1,2": uniform(1, 2),
    "U2,3": uniform(2, 3),
    "K4": complete(4),
    "F7": fano(),
    "F7*": dual(fano()),
    "U0,1": uniform(0, 1),
    "parallel pair": from_columns([1, 1, 2]),
}


@pytest.mark.parametrize("target", sorted(SMALL_TARGETS))
@settings(max_examples=25, deadline=None)
@given(M=binary_matroids(max_rank=4, max_n=8, min_n=3))
def test_minor_matches_brute_force(target, M):
    N = SMALL_TARGETS[target]
    assert has_minor(M, N) == brute_has_minor(M, N, are_isomorphic)


@settings(max_examples=30, deadline=None)
@given(binary_matroids(max_rank=5, max_n=9, min_n=4), st.data())
def test_deletions_and_contractions_are_minors(M, data):
    e = data.draw(st.sampled_from(M.labels))
    assert has_minor(M, delete(M, [e]))
    assert has_minor(M, contract(M, [e]))
    assert has_minor(M, M)


def test_minor_facts():
    assert has_minor(projective_geometry(3), fano())
    assert has_minor(ag32(), fano())
    assert has_minor(s2n(4), fano())
    assert has_minor(k33ij(1, 1), complete(5))
    assert not has_minor(k33ij(3, 0), complete(5))
    assert has_minor(k33ij(1, 1), complete_bipartite(3, 3))
    assert not has_minor(r12(), r10())
    assert not has_minor(fano(), complete(5))
    assert has_minor(wheel(5), wheel(4)) and not has_minor(wheel(4), wheel(5))


def test_dual_route_agrees_with_direct():
    # targets of rank above the fast limit whose duals qualify
    M, N = dual(projective_geometry(3)), dual(fano())
    assert has_minor(M, N) and has_minor(dual(M), dual(N))
    assert not has_minor(dual(r10()), dual(complete(5)))


@pytest.mark.parametrize("maker,regular,graphic,cographic", [
    (r10, True, False, False),
    (r12, True, False, False),
    (fano, False, False, False),
    (ag32, False, False, False),
    (lambda: s2n(4), False, False, False),
    (lambda: complete(5), True, True, False),
    (lambda: dual(complete(5)), True, False, True),
    (lambda: complete_bipartite(3, 3), True, True, False),
    (lambda: wheel(4), True, True, True),
    (lambda: k33ij(3, 0), True, True, False),
])
def test_class_predicates(maker, regular, graphic, cographic):
    M = maker()
    assert is_regular(M) == regular
    assert is_graphic(M) == graphic
    assert is_cographic(M) == cographic


def test_excluded_minors_for_graphic():
    F7, F7d, K33d, K5d = excluded_minors_graphic()
    assert (F7.r, F7d.r, K33d.r, K5d.r) == (3, 4, 4, 6)
    for N in excluded_minors_graphic():
        assert not is_graphic(N)
        for e in N.labels:
            assert is_graphic(delete(N, [e])) and is_graphic(contract(N, [e]))


def test_spike_minors():
    for r in (4, 5):
        Z = spike(r)
        assert has_minor(Z, spike(r - 1))


def test_general_search_budget():
    # a rank-5 target forces the embedding search in both directions
    with pytest.raises(BudgetExceeded):
        has_minor(projective_geometry(4), r10(), budget=1)
