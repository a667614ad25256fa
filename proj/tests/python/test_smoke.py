import json

import pytest

import chromatic_hh as ch


def test_derive_first_stage():
    r = ch.derive(p=3, i=1, n=2, m=1)
    assert r["ok"]
    doc = r["artifacts"]["derivation.json"]
    assert doc["solved"]["w2"] == "-t1^3*v1 + t1*v1^3"
    tex = ch.derive(emit="tex")["artifacts"]["derivation.tex"]
    assert "t_{1}^{3} v_{1} + w_{2} = t_{1} v_{1}^{3}" in tex


def test_hh_from_derivation_document():
    doc = ch.derive(m=2)["artifacts"]["derivation.json"]
    r = ch.hh(doc, method="hkr", window=(0, 32))
    assert r["verdicts"]["exterior"] == ["dw2"]
    bar = ch.hh(doc, method="bar", s_max=2, specialize={"v1": 1, "w2": 1})
    table = bar["artifacts"]["hh.json"]
    assert table["ranks"] == [{"s": 0, "t": 0, "rank": 9}]


def test_koszul_on_a_plain_presentation():
    pres = {
        "schema": "chromatic.presentation/1",
        "prime": 0,
        "generators": [{"name": "v1", "degree": 4, "kind": "polynomial", "homological": 0}],
        "base": ["v1"],
        "ground": [],
        "relations": [],
    }
    r = ch.hh(pres, method="koszul", s_max=1, window=(0, 8), emit="csv")
    assert "1,8,1" in r["artifacts"]["hh.csv"]


def test_checks():
    assert ch.check_conjecture(p=5, n=3)["verdicts"]["verdict"] == "consistent"
    assert ch.check_splitting(p=3)["ok"]
    assert ch.check_collapse(p=3, n=2, i=1)["verdicts"]["verdict"] == "collapses"


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        ch.derive(p=4)
    with pytest.raises(ValueError):
        ch.hh({"schema": "nothing"})


def test_reproduce_is_deterministic(tmp_path):
    a = ch.reproduce(out_dir=str(tmp_path / "a"))
    b = ch.reproduce(out_dir=str(tmp_path / "b"))
    assert a["ok"]
    assert a["manifest"] == b["manifest"]
    assert (tmp_path / "a" / "manifest.json").read_bytes() == (tmp_path / "b" / "manifest.json").read_bytes()
    assert set(ch.fixture_names()) == {f["name"] for f in a["artifacts"]["report.json"]["fixtures"]}
    assert ch.reproduce(only=[])["artifacts"]["report.json"]["fixtures"] == []
    assert json.loads(json.dumps(a["verdicts"]))["splitting"] == "pass"
