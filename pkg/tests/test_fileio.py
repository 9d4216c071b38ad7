import pytest
from hypothesis import given, settings

from nscmat.extend import CatalogItem, CatalogLayer, ExtensionVector
from nscmat.fileio import (
    FormatError, emit_bm, emit_matroid, format_record, layer_path, matroid_from_bm, meta_path, parse_bm,
    parse_graph, parse_record, read_layer, write_layer,
)
from nscmat.iso import are_isomorphic, canonical_key
from nscmat.zoo import complete_bipartite, fano, graph_matroid, r10, s2n

from conftest import binary_matroids

FANO_BM = """# the Fano plane
3 7
1000111
0101011
0011101
labels: a b c d e f g
"""


def test_parse_bm_with_labels_and_comments():
    A, labels = parse_bm(FANO_BM)
    assert (A.rows, A.cols) == (3, 7) and labels == tuple("abcdefg")
    M, perm = matroid_from_bm(FANO_BM)
    assert list(perm) == list(range(7))
    assert are_isomorphic(M, fano())


def test_matroid_from_bm_standardizes():
    M, perm = matroid_from_bm("2 3\n110\n011\n")
    assert M.r == 2 and sorted(perm) == [0, 1, 2]
    assert M.labels == tuple(str(p + 1) for p in perm)


@pytest.mark.parametrize("text", [
    "", "3\n", "2 3\n110\n", "2 3\n110\n012\n", "2 3\n1101\n011\n", "1 2\n11\nlabels: a\n",
])
def test_malformed_bm(text):
    with pytest.raises(FormatError):
        parse_bm(text)


@settings(max_examples=40, deadline=None)
@given(binary_matroids(max_rank=5, max_n=10))
def test_bm_round_trip(M):
    again, perm = matroid_from_bm(emit_matroid(M))
    assert list(perm) == list(range(M.n))
    assert again.labels == M.labels and again.rep == M.rep


def test_emit_bm_layout():
    assert emit_bm(fano().rep) == "3 7\n1000111\n0101011\n0011101\n"


def test_parse_graph():
    G = parse_graph("# K3,3\n6 9\n" + "".join(f"{u} {v}\n" for u in (1, 2, 3) for v in (4, 5, 6)))
    assert are_isomorphic(graph_matroid(G), complete_bipartite(3, 3))
    for bad in ("", "3 2\n1 2\n", "2 1\n1 1\n", "3 1\n1 x\n", "2 1\n1 3\n"):
        with pytest.raises(FormatError):
            parse_graph(bad)


def test_record_round_trip():
    parent = canonical_key(s2n(4))
    item = CatalogItem(canonical_key(r10()), parent, ExtensionVector.parse("2002101"), {"Y": 3})
    line = format_record(item)
    back = parse_record(line, {"Y": 3})
    assert back == item and back.stats == {"Y": 3}
    root = CatalogItem(canonical_key(fano()))
    assert parse_record(format_record(root)) == root
    fields = line.split()
    fields[1] = "9"
    with pytest.raises(FormatError):
        parse_record(" ".join(fields))
    with pytest.raises(FormatError):
        parse_record("abc 1 2")


def test_layer_files(tmp_path):
    items = [CatalogItem(canonical_key(M), None, None, {"n": M.n}) for M in (fano(), r10())]
    layer = CatalogLayer(5, sorted(items, key=lambda it: it.key), {"unique": 2})
    write_layer(tmp_path, layer, {"config": {"x": 1}})
    assert layer_path(tmp_path, 5).name == "layer_05.cat"
    assert meta_path(tmp_path, 5).exists()
    back, meta = read_layer(tmp_path, 5)
    assert back.keys() == layer.keys() and meta["config"] == {"x": 1}
    assert [it.stats for it in back.items] == [it.stats for it in layer.items]
    assert read_layer(tmp_path, 6) is None
