import pytest

from nscmat import drivers, fileio
from nscmat.extend import gamma
from nscmat.gf2core import BitMatrix
from nscmat.iso import canonical_key
from nscmat.matroid import from_matrix
from nscmat.minors import has_minor, is_regular
from nscmat.zoo import complete


def test_report_verdicts():
    rep = drivers.DriverReport("demo")
    assert rep.verdict == "pass"
    rep.check("fine", True, x=1)
    rep.incomplete = True
    assert rep.verdict == "incomplete"
    rep.check("broken", False)
    assert rep.verdict == "fail" and not rep.passed
    d = rep.to_dict()
    assert d["checks"][0] == {"name": "fine", "passed": True, "detail": {"x": 1}}


def test_threshold_lookup():
    proof, printed = drivers.THRESHOLDS["proof"], drivers.THRESHOLDS["printed"]
    assert [drivers._threshold(proof, i) for i in range(6, 11)] == [1, 1, 2, 3, 3]
    assert [drivers._threshold(printed, i) for i in range(6, 10)] == [1, 2, 2, 2]
    assert drivers._threshold({8: 2}, 6) == 1


def test_unknown_preset():
    with pytest.raises(drivers.BadParams):
        drivers.conjecture_search(6, thresholds="loose")


@pytest.fixture(scope="module")
def layer6(tmp_path_factory):
    d = tmp_path_factory.mktemp("cat")
    rep = drivers.conjecture_search(6, catalog_dir=d)
    return rep, d


def test_layer6_search(layer6):
    rep, d = layer6
    assert rep.verdict == "pass"
    info = rep.header["layers"][0]
    assert info["counts"]["candidates"] == 69984 and info["max_ytilde_corank"] <= 2
    layer, meta = fileio.read_layer(d, 6)
    assert len(layer.items) == info["survivors"]


def test_layer6_survivors_meet_the_filters(layer6):
    _, d = layer6
    layer, _ = fileio.read_layer(d, 6)
    seed = drivers.search_seed()
    for it in layer.items:
        M = it.matroid()
        assert M.r == 6 and is_regular(M) and not has_minor(M, complete(5))
        assert it.stats["ytilde_corank"] >= 1
        # provenance: Γ(parent, vector) rebuilds the item
        assert it.parent == canonical_key(seed)
        parent = BitMatrix.from_columns(it.parent.columns(), it.parent.r)
        assert canonical_key(from_matrix(gamma(parent, it.vector))) == it.key


def test_lower_threshold_keeps_a_superset(layer6):
    _, d = layer6
    strict, _ = fileio.read_layer(d, 6)
    loose = drivers.conjecture_search(6, thresholds={6: 0})
    assert loose.header["layers"][0]["survivors"] >= len(strict.items)
    assert loose.header["layers"][0]["counts"]["candidates"] == 69984


def test_resume(layer6, tmp_path):
    _, d = layer6
    again = drivers.conjecture_search(6, catalog_dir=d, resume=True)
    assert again.verdict == "pass"
    with pytest.raises(drivers.ResumeMismatch):
        drivers.conjecture_search(6, thresholds={6: 0}, catalog_dir=d, resume=True)


def test_budget_marks_search_incomplete():
    rep = drivers.conjecture_search(6, budget=10)
    assert rep.incomplete and rep.verdict == "incomplete"


def test_comput_budget_marks_incomplete():
    rep = drivers.verify_comput("a", budget=10)
    assert rep.incomplete


def test_comput_a():
    rep = drivers.verify_comput("a")
    assert rep.verdict == "pass"
    assert rep.header["counts"]["S8"][0]["candidates"] == 1296
    assert rep.header["checked"]["S8"] == 71


def test_small_drivers_pass():
    for fn in (drivers.verify_initial_cases, drivers.verify_k33_family, drivers.verify_extremal):
        rep = fn()
        assert rep.verdict == "pass", [c for c in rep.checks if not c["passed"]]


def test_unknown_comput_part():
    with pytest.raises(drivers.BadParams):
        drivers.verify_comput("e")
