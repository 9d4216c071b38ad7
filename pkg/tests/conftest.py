import random

import pytest
from hypothesis import strategies as st

from nscmat.gf2core import BitMatrix
from nscmat.matroid import dual, from_columns, from_matrix
from nscmat import zoo


def corpus() -> dict:
    """Named fixtures with at most 15 elements, duals included where distinct."""
    base = {
        "F7": zoo.fano(),
        "F7*": dual(zoo.fano()),
        "AG(3,2)": zoo.ag32(),
        "S8": zoo.s2n(4),
        "S10": zoo.s2n(5),
        "Z3": zoo.spike(3),
        "Z4": zoo.spike(4),
        "Z5": zoo.spike(5),
        "R10": zoo.r10(),
        "R12": zoo.r12(),
        "W3": zoo.wheel(3),
        "W4": zoo.wheel(4),
        "W5": zoo.wheel(5),
        "K4": zoo.complete(4),
        "K5": zoo.complete(5),
        "K33": zoo.complete_bipartite(3, 3),
        "K34": zoo.complete_bipartite(3, 4),
        "K33'''": zoo.k33ij(3, 0),
        "K33^(1,1)": zoo.k33ij(1, 1),
        "K33^(2,1)": zoo.k33ij(2, 1),
        "PG(2,2)": zoo.projective_geometry(2),
        "PG(3,2)": zoo.projective_geometry(3),
        "U3,4": zoo.uniform(3, 4),
        "U1,3": zoo.uniform(1, 3),
    }
    out = dict(base)
    for name, M in base.items():
        out[name + "*"] = dual(M)
    out.pop("F7**")
    return out


CORPUS = corpus()
SMALL = {k: M for k, M in CORPUS.items() if M.n <= 12}


@pytest.fixture(scope="session")
def small_corpus():
    return SMALL


@st.composite
def binary_matroids(draw, max_rank=5, max_n=10, min_n=1):
    """Random binary matroids from ``[I_r | D]`` with shuffled columns."""
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    r = draw(st.integers(min_value=1 if n else 0, max_value=min(max_rank, n)))
    entries = draw(st.lists(st.integers(0, 1), min_size=r * (n - r), max_size=r * (n - r)))
    cols = [1 << i for i in range(r)]
    for j in range(n - r):
        cols.append(sum(entries[j * r + i] << i for i in range(r)))
    seed = draw(st.integers(0, 2 ** 16))
    order = list(range(n))
    random.Random(seed).shuffle(order)
    labels = [f"e{j}" for j in range(n)]
    return from_columns([cols[k] for k in order], labels)


@st.composite
def simple_binary_matroids(draw, max_rank=4, max_n=10):
    """Random simple matroids: distinct nonzero points of PG(r-1, 2)."""
    r = draw(st.integers(min_value=2, max_value=max_rank))
    pts = draw(st.lists(st.integers(1, (1 << r) - 1), min_size=r, max_size=min(max_n, (1 << r) - 1),
                        unique=True))
    return from_columns(pts, [f"p{v}" for v in pts])


def permuted(M, seed: int):
    """The same matroid with its columns shuffled and renamed."""
    order = list(range(M.n))
    random.Random(seed).shuffle(order)
    A = BitMatrix.from_columns([M.columns[j] for j in order], M.r)
    return from_matrix(A, [f"x{j}" for j in range(M.n)])
