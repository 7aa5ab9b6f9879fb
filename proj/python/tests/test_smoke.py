import json
import pathlib

import pytest

import tdk

FIXTURES = pathlib.Path(__file__).resolve().parents[2] / "fixtures"


def fixture(name):
    return (FIXTURES / name).read_text()


def test_builtin_cohomology():
    groups = tdk.space_cohomology('{"builtin": "heisenberg"}')
    assert [g["text"] for g in groups] == ["Z", "Z^2", "Z^2", "Z"]


def test_lens_space_torsion():
    pair = json.dumps({"format": "pair", "base": "sphere2", "chern": [{"g2": 4}], "flux": [0]})
    groups = tdk.total_cohomology(pair)
    assert groups[2]["torsion"] == [4]
    assert groups[3]["rank"] == 1


def test_dualize_round_trip():
    pair = fixture("hopf_k2.json")
    assert tdk.is_dualizable(pair)
    triple = tdk.dualize(pair)
    assert all(tdk.check_triple(triple).values())
    doc = json.loads(triple)
    assert doc["dual"]["chern"] == [["2"]]
    report = tdk.verify_iso(triple)
    assert report["chain_map"] and report["iso"]
    assert report["side"] == report["dual"][::-1]


def test_not_dualizable():
    pair = fixture("t3_over_s1_vol.json")
    assert not tdk.is_dualizable(pair)
    with pytest.raises(tdk.DomainError):
        tdk.dualize(pair)


def test_input_errors_are_located():
    with pytest.raises(tdk.InputError, match=r"\$\.flux"):
        tdk.dualize(fixture("nonclosed_flux.json"))
    with pytest.raises(ValueError):
        tdk.space_cohomology("{")


def test_onn_membership():
    assert tdk.is_onn([[0, 1], [1, 0]])
    assert not tdk.is_onn([[2, 0], [0, 1]])
    assert tdk.is_onn([[1, 0, 0, 10**30], [0, 1, -(10**30), 0], [0, 0, 1, 0], [0, 0, 0, 1]])


def test_big_integers():
    pair = json.dumps(
        {"format": "pair", "base": "sphere2", "chern": [{"g2": 1}], "flux": {"y⊗g2": str(10**40)}}
    )
    assert tdk.flux_vector(pair) == [10**40]
    assert tdk.twisted_dims(pair) == (0, 0)


def test_cli_bridge():
    code, report = tdk.cli("dualizable", "--pair", "p.json", files={"p.json": fixture("hopf_k2.json")})
    assert code == 0
    assert report == {"dualizable": True, "leading": [["y⊗g2", "2"]]}
    code, report = tdk.cli("dualizable", "--pair", "missing_input.json")
    assert code == 2
    assert report["error"]["kind"] == "input"
