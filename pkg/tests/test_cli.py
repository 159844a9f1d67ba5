from __future__ import annotations

import json

import pytest

from charqp import cli, verify
from charqp.equivariant import ClassFunctionQP, Report
from charqp.linalg import RationalPolynomial
from charqp.qpoly import QuasiPolynomial


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_chi_d4_even_constituent(capsys):
    code, out, _ = run(capsys, "chi", "--type", "D", "--rank", "4")
    assert code == 0
    qp = QuasiPolynomial.from_json(json.loads(out))
    assert qp.period == 2
    even = RationalPolynomial.from_roots([2, 4]) * RationalPolynomial([6, -6, 1])
    assert qp.constituent(2) == even
    assert qp.constituent(2)(10) == 8 * 6 * 46


def test_equiv_e6_value(capsys):
    code, out, _ = run(capsys, "equiv", "--type", "E6", "--element", "1", "--q", "12")
    assert code == 0
    assert json.loads(out)["values"] == [{"j": 1, "q": 12, "value": 72}]


def test_equiv_document_round_trip(capsys):
    code, out, _ = run(capsys, "equiv", "--type", "C", "--rank", "3")
    assert code == 0
    doc = json.loads(out)
    assert [x["j"] for x in doc["omega"]] == [0, 3]
    cf = ClassFunctionQP.from_json(doc)
    assert cf.to_json() == doc


def test_json_is_byte_identical(capsys):
    _, a, _ = run(capsys, "chi", "--type", "G2")
    _, b, _ = run(capsys, "chi", "--type", "G2")
    assert a == b


def test_verify_duality_exit_zero(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "duality", "--type", "B", "--rank", "3")
    assert code == 0 and out.startswith("PASS duality")


def test_verify_failure_exit_two(capsys, monkeypatch):
    def broken(types=None):
        rep = Report(True, 1)
        rep.fail(type="A1", element=0, q=1, expected=0, got=1, route="test")
        return rep

    monkeypatch.setitem(verify.SUITES, "duality", verify.Suite("duality", broken, ""))
    code, out, _ = run(capsys, "verify", "--suite", "duality", "--format", "json")
    assert code == 2
    report = json.loads(out)
    assert report["failures"][0]["route"] == "test"


def test_usage_errors_exit_one(capsys):
    assert run(capsys, "chi", "--type", "A")[0] == 1
    assert run(capsys, "chi", "--type", "Q", "--rank", "2")[0] == 1
    assert run(capsys, "equiv", "--type", "A3", "--element", "7")[0] == 1
    with pytest.raises(SystemExit) as exc:
        cli.main(["nonsense"])
    assert exc.value.code == 1


def test_budget_refusal_exit_three(capsys):
    code, _, err = run(capsys, "oracle", "--type", "E7", "--q", "40", "--budget", "1000")
    assert code == 3 and "budget" in err


def test_oracle_counts(capsys):
    code, out, _ = run(capsys, "oracle", "--type", "B", "--rank", "2", "--q-range", "1:6",
                       "--format", "csv")
    assert code == 0
    assert out.splitlines()[1:] == ["1,0", "2,0", "3,0", "4,4", "5,8", "6,16"]


def test_folding_json(capsys):
    code, out, _ = run(capsys, "folding", "--type", "E", "--rank", "6", "--element", "1")
    doc = json.loads(out)
    assert code == 0 and doc["folded_type"] == "G2" and doc["order"] == 3


def test_table_reference_and_computed_agree(capsys):
    _, ref, _ = run(capsys, "table", "--key", "E6:w1")
    _, comp, _ = run(capsys, "table", "--key", "E6:w1", "--source", "computed")
    assert ref.splitlines()[1:] == comp.splitlines()[1:]
    assert "2 (q - 6)^2" in ref
