import json

import pytest

from commring import harness
from commring.harness import (
    CHECKS,
    CorpusEntry,
    check_order_p2,
    check_preliminaries,
    check_products,
    check_signed,
    check_theorem_A,
    check_theorem_B,
    read_report,
    run_suite,
    write_report,
)
from commring.ring import direct_product, functional_ring, presentation_E, presentation_F, zero_ring


def by_check(records):
    out = {}
    for r in records:
        out.setdefault(r.check, []).append(r)
    return out


def test_preliminaries_E4(E4):
    recs = by_check(check_preliminaries(E4, "E4"))
    assert "Thm20" not in recs  # needs more than four elements
    assert all(r.status == "pass" for rs in recs.values() for r in rs)
    assert recs["Thm18"][0].evidence["iso"] == "E_2"


def test_preliminaries_E9(E9):
    recs = by_check(check_preliminaries(E9, "E9"))
    assert recs["Thm20"][0].evidence["diameter_complement"] == 2
    assert recs["Thm2"][0].status == "pass"


def test_theorem_A(E4, F4):
    recs = check_theorem_A([CorpusEntry("E4", E4, "constructed"), CorpusEntry("F4", F4, "constructed")])
    i = [r for r in recs if r.check == "ThmA.i"]
    assert [r.evidence["sum"] for r in i] == [4, 4]
    assert all(r.status == "pass" for r in recs)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_order_p2(p):
    recs = check_order_p2(p)
    assert [r.evidence["gamma"] for r in recs] == [p + 1, p + 1]
    assert all(r.status == "pass" for r in recs)


def test_theorem_B_constructed_p3():
    R = functional_ring(3, 3)
    recs = by_check(check_theorem_B([CorpusEntry("E_3^3", R, "constructed")], 3))
    ev = recs["ThmB"][0].evidence
    assert ev["l1"] + 4 * ev["l2"] == 13 and ev["gamma"] == ev["l1"] + ev["l2"]
    assert recs["ThmB"][0].status == "pass"
    assert recs["Lem11"][0].status == "pass"


def test_theorem_B_empty_is_vacuous():
    recs = check_theorem_B([], 5)
    assert {r.status for r in recs} == {"vacuous"}
    assert all("hypothesis" in r.evidence for r in recs)


def test_products_examples(E4, F4):
    recs = check_products([("E4", E4), ("F4", F4)], max_order=16,
                          commutative=[("Z2zero", zero_ring(2))])
    got = {(r.check, r.subject): r for r in recs}
    assert got[("ThmC", "E4xF4")].evidence["gamma"] == 3
    assert got[("Thm.strong", "E4xZ2zero")].evidence["gamma_product"] == 3
    assert got[("Thm.strong", "E4xZ2zero")].evidence["isomorphic"]
    e = got[("ThmE", "E4xE4")].evidence
    assert e["bound"] == 13 and e["delta_case"] == "some even"
    assert all(r.status == "pass" for r in recs)


def test_signed_E4(E4):
    recs = by_check(check_signed([CorpusEntry("E4", E4, "constructed")]))
    assert recs["ThmD.i"][0].evidence["gamma_s"] == 3
    assert recs["Thm22"][0].evidence["gamma_s_complement"] == 1


def test_unknown_suite(corpus9):
    with pytest.raises(ValueError):
        run_suite(corpus9, "nonsense")


def test_every_check_reported(corpus9):
    recs = run_suite(corpus9, "all", oracle_count=5)
    assert {r.check for r in recs} == set(CHECKS)
    keys = [(r.check, harness._natural_key(r.subject)) for r in recs]
    assert keys == sorted(keys)
    for r in recs:
        assert r.status in ("pass", "fail", "vacuous")
        if r.status == "vacuous":
            assert r.evidence["hypothesis"] == CHECKS[r.check][1]
        if r.status == "fail":
            assert r.evidence


def test_vacuous_classes(corpus9):
    recs = by_check(run_suite(corpus9, "signed"))
    # no zero-center ring has order 2p with p an odd prime up to 9
    assert [r.status for r in recs["Lem24"]] == ["vacuous"]


def test_report_round_trip(tmp_path, corpus9):
    recs = run_suite(corpus9, "prelim")
    path = tmp_path / "r.jsonl"
    write_report(recs, path, timing=False)
    lines = path.read_text().splitlines()
    assert list(json.loads(lines[0])) == ["check", "subject", "status", "evidence", "millis"]
    back = read_report(path)
    assert [(r.check, r.subject, r.status, r.evidence) for r in back] == \
        [(r.check, r.subject, r.status, r.evidence) for r in recs]


def test_parallel_matches_serial(corpus9):
    a = run_suite(corpus9, "prelim,domination", jobs=1)
    b = run_suite(corpus9, "prelim,domination", jobs=3)
    assert [r.to_json(False) for r in a] == [r.to_json(False) for r in b]


def test_corpus_from_directory(tmp_path):
    from commring.factory import EnumerationSpec, enumerate_rings, write_corpus
    write_corpus(enumerate_rings(EnumerationSpec(4, require_noncommutative=True)), tmp_path)
    c = harness.build_corpus(5, tmp_path, families=False)
    assert [e.source for e in c.entries] == ["file", "file"]
    assert c.enumeration[4]["noncommutative"] == 2 and c.enumeration[5]["noncommutative"] == 0
