import json

import pytest

from k3mirror.diaggrp import j_group, sl_group
from k3mirror.errors import InvalidPair
from k3mirror.invpoly import InvertiblePolynomial
from k3mirror.pipeline import (analyze, group_by_index, group_from_literal, load_golden,
                               verify_tables)

P = InvertiblePolynomial.parse


def test_analyze_first_example():
    W = P("x^2+y^3+z^8+w^24")
    rec = analyze(W, j_group(W), 3)
    assert (rec.r, rec.a) == (8, 1)
    assert rec.dual_polynomial_no == "13d" and rec.dual_group_index == 2
    assert rec.mirror_check


def test_analyze_chain_example():
    W = P("x^2w+y^5+z^5+w^5")
    rec = analyze(W, sl_group(W), 5)
    assert (rec.r, rec.a) == (18, 1)
    assert rec.yonemura_no == "21a"
    assert rec.dual_polynomial_no == "6c" and rec.dual_group_index == 1


def test_analyze_p13_self_dual():
    W = P("x^2z+xy^2+yz^3+w^13")
    rec = analyze(W, j_group(W), 13)
    assert (rec.r, rec.a) == (10, 1)
    assert rec.yonemura_no == rec.dual_polynomial_no == "87"


def test_analyze_round_trip():
    W = P("x^3+y^3+z^6+w^6")
    G = group_from_literal(W, "2/3,1/3,0,0")
    rec = analyze(W, G, 3)
    back = analyze(P(rec.dual_polynomial), group_from_literal(P(rec.dual_polynomial),
                                                              rec.dual_group_generators), 3)
    assert (back.r, back.a) == (rec.dual_r, rec.dual_a)
    assert (back.dual_r, back.dual_a) == (rec.r, rec.a)


def test_invalid_pairs():
    W = P("x^2+y^3+z^8+w^24")
    with pytest.raises(InvalidPair):
        analyze(W, j_group(W), 5)
    with pytest.raises(InvalidPair):
        group_from_literal(W, "1/5,0,0,0")
    Q = P("x^3+y^3+z^3+w^3")
    with pytest.raises(InvalidPair):
        analyze(Q, j_group(Q), 3)   # weights do not sum to the degree
    V = P("x^3+y^3+z^6+w^6")
    with pytest.raises(InvalidPair):
        group_by_index(V, 3)        # four candidates


def test_group_by_index():
    W = P("x^2+y^3+z^8+w^24")
    assert group_by_index(W, 2) == sl_group(W)
    assert group_by_index(W, 1) == j_group(W)


@pytest.mark.parametrize("p", [5, 7, 13])
def test_verify_small_primes(p):
    report = verify_tables(p)
    assert report.ok, report.mismatches
    assert report.matched_rows == report.golden_rows


def test_verify_reports_transcription_error(tmp_path):
    entries = json.loads((__import__("importlib").resources.files("k3mirror")
                          / "data/golden_tables.json").read_text())
    for e in entries:
        if e["no"] == "87":
            e["rows"][0]["r"] = 12
    path = tmp_path / "golden.json"
    path.write_text(json.dumps(entries))
    report = verify_tables(13, golden_path=str(path))
    assert not report.ok
    assert any("87" in m for m in report.mismatches)
    assert len(load_golden(str(path))) == len(load_golden())


def test_report_formats():
    report = verify_tables(13)
    data = json.loads(report.render("json"))
    assert data["ok"] and data["records"][0]["yonemura_no"] == "87"
    csv_text = report.render("csv")
    assert csv_text.splitlines()[0].startswith("yonemura_no,weight_system,polynomial")
    assert "no mismatches" in report.render("md")


def test_parallel_is_deterministic():
    a = verify_tables(7).render("json")
    b = verify_tables(7, jobs=2).render("json")
    assert a == b
