from __future__ import annotations

import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from charqp.linalg import RationalPolynomial
from charqp.qpoly import (ArrangementSpec, QuasiPolynomial, QuasiPolynomialError, alcove_count,
                          alcove_counts, arrangement_period, characteristic_qpoly,
                          constituent_gap_bound, coset_representatives, count_complement,
                          dilate_qpoly, interpolate_residues, qpoly_by_subsets, qpoly_coxeter,
                          residue, standard_lattice_count)
from charqp.roots import (build, coefficient_matrix, coweight_lattice, dilate,
                          standard_sublattice)


def coweight_spec(kind, l):
    phi = build(kind, l)
    return ArrangementSpec(coefficient_matrix(phi.positive_roots, coweight_lattice(phi)))


def test_residue_maps_zero_to_period():
    assert residue(6, 6) == 6 and residue(7, 6) == 1 and residue(-1, 6) == 5


def test_json_round_trip_keeps_metadata():
    qp = qpoly_coxeter(build("G", 2))
    doc = json.loads(json.dumps(qp.to_json()))
    back = QuasiPolynomial.from_json(doc)
    assert back == qp and back.metadata == qp.metadata


def test_value_rejects_fractions():
    qp = QuasiPolynomial(1, [RationalPolynomial([Fraction(1, 2)])])
    with pytest.raises(QuasiPolynomialError):
        qp.value(3)


def test_minimal_period_and_reduction():
    p, r = RationalPolynomial([0, 1]), RationalPolynomial([1, 1])
    qp = QuasiPolynomial(4, [p, r, p, r])
    assert qp.minimal_period() == 2
    assert qp.reduced().period == 2 and qp.reduced().same_function(qp)


@pytest.mark.parametrize("kind,l", [("A", 3), ("B", 3), ("C", 3), ("D", 4), ("G", 2)])
def test_subsets_agree_with_counting_and_alcove(kind, l):
    spec = coweight_spec(kind, l)
    qp = qpoly_by_subsets(spec)
    assert qp.same_function(qpoly_coxeter(build(kind, l)))
    for q in range(1, 13):
        assert qp.value(q) == count_complement(spec, q)


def test_period_of_g2_arrangement():
    assert arrangement_period(coweight_spec("G", 2)) == 6


def test_gap_bound_on_f4():
    rep = constituent_gap_bound(qpoly_coxeter(build("F", 4)), coweight_spec("F", 4))
    assert rep.ok and rep.checked_s >= 1


def test_alcove_counts_small():
    # y_0 + y_1 + y_2 = q with y_i >= 1
    assert alcove_counts((1, 1, 1), 6) == [0, 0, 0, 1, 3, 6, 10]
    assert alcove_count((1, 1, 1), 3, closed=True) == 10


@pytest.mark.parametrize("kind,l", [("B", 4), ("C", 4), ("D", 4), ("BC", 3)])
def test_standard_lattice_counter(kind, l):
    phi = build(kind, l)
    spec = ArrangementSpec(coefficient_matrix(phi.positive_roots, standard_sublattice(phi)))
    for q in range(1, 12):
        assert standard_lattice_count(kind, l, q) == count_complement(spec, q)


def test_characteristic_qpoly_standard_lattice_matches_counts():
    phi = build("D", 4)
    qp = characteristic_qpoly(phi, "L")
    spec = ArrangementSpec(coefficient_matrix(phi.positive_roots, standard_sublattice(phi)))
    assert all(qp.value(q) == count_complement(spec, q) for q in range(1, 10))


@pytest.mark.parametrize("k", [2, 3, 4])
def test_dilation_law_b2(k):
    phi = build("B", 2)
    base = qpoly_by_subsets(coweight_spec("B", 2))
    S = coefficient_matrix(dilate(phi.positive_roots, k), coweight_lattice(phi))
    assert qpoly_by_subsets(ArrangementSpec(S)).same_function(dilate_qpoly(base, k))


def test_coset_representatives_count():
    # image of z -> zP has index gcd(2, q) for this P
    P = [[1, 0], [-1, 2]]
    assert len(coset_representatives(P, 6)) == 2
    assert len(coset_representatives(P, 5)) == 1


def test_interpolation_detects_wrong_period():
    with pytest.raises(QuasiPolynomialError):
        interpolate_residues(lambda q: q * q if q % 2 else q * q + 1, 1, 2)


@given(st.integers(1, 40))
def test_coxeter_monic_leading_term(q):
    qp = qpoly_coxeter(build("B", 3))
    assert qp.constituent(q).coeffs[-1] == 1 and qp.degree == 3


def test_spec_examples():
    from charqp.reference import reference_eval

    assert reference_eval("B4/Z", 8) == 192 == qpoly_coxeter(build("B", 4)).value(8)
    assert reference_eval("E6", 12) == 17280 == qpoly_coxeter(build("E", 6)).value(12)
