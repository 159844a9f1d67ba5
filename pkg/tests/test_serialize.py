from __future__ import annotations

import csv
import io

from charqp import serialize
from charqp.linalg import RationalPolynomial
from charqp.qpoly import QuasiPolynomial, qpoly_coxeter
from charqp.roots import build


def test_dumps_is_stable():
    doc = {"b": 1, "a": [3, {"z": 1, "y": 2}]}
    assert serialize.dumps(doc) == serialize.dumps(dict(reversed(list(doc.items()))))
    assert serialize.loads(serialize.dumps(doc)) == doc


def test_factor_display():
    p = RationalPolynomial.from_roots([2, 4, 4])
    assert serialize.factor_display(p) == "(q - 2) (q - 4)^2"
    assert serialize.factor_display(p, latex=True) == "(q - 2) (q - 4)^{2}"
    q = RationalPolynomial.from_roots([6]) * RationalPolynomial([6, -6, 1]) * 2
    assert serialize.factor_display(q) == "2 (q - 6) (q^2 - 6*q + 6)"
    assert serialize.factor_display(RationalPolynomial()) == "0"


def test_text_groups_cases_by_gcd():
    out = serialize.render_qpoly(qpoly_coxeter(build("D", 4)), "text", "D4")
    assert "(q - 2) (q - 4) (q^2 - 6*q + 6)    if gcd(q,2)=2" in out


def test_latex_cases_layout():
    out = serialize.render_qpoly(qpoly_coxeter(build("G", 2)), "latex", "G_2")
    assert out.startswith("\\chi_{G_2}(q) = \\begin{cases}")
    assert "\\gcd\\{6,q\\} = 6" in out


def test_csv_has_one_row_per_coefficient():
    qp = qpoly_coxeter(build("B", 2))
    rows = list(csv.reader(io.StringIO(serialize.render_qpoly(qp, "csv", "B2"))))
    assert rows[0] == ["label", "residue", "degree", "numerator", "denominator"]
    assert len(rows) - 1 == sum(len(c.coeffs) for c in qp.constituents)


def test_json_round_trip():
    qp = qpoly_coxeter(build("F", 4))
    back = QuasiPolynomial.from_json(serialize.loads(serialize.render_qpoly(qp, "json")))
    assert back == qp
