from __future__ import annotations

import pytest

from charqp.roots import (UnsupportedRootSystem, build, coefficient_matrix, coweight_lattice, dot,
                          lattice_index, long_normalized_dual, parse_label, standard_sublattice,
                          type_c_coweights, type_data)

TYPES = [("A", 1), ("A", 4), ("B", 3), ("C", 4), ("D", 5), ("E", 6), ("E", 7), ("E", 8),
         ("F", 4), ("G", 2)]


@pytest.mark.parametrize("kind,l", TYPES)
def test_invariants_match_tabulated(kind, l):
    phi = build(kind, l)
    data = type_data(kind, l)
    assert len(phi.positive_roots) == sum(data.exponents)
    assert phi.marks == data.marks
    assert phi.coxeter_number == data.coxeter
    assert phi.index_of_connection == data.connection
    assert phi.weyl_order == data.weyl_order


def test_e7_order_from_marks():
    # f * l! * prod(marks)
    assert build("E", 7).weyl_order == 2903040


def test_bc_is_non_reduced():
    phi = build("BC", 2)
    assert not phi.reduced
    assert len(phi.positive_roots) == 6
    assert phi.marks == (2, 2)


@pytest.mark.parametrize("kind,l", [("B", 3), ("C", 3), ("D", 4), ("E", 6), ("F", 4)])
def test_coefficient_matrix_is_integral(kind, l):
    phi = build(kind, l)
    S = coefficient_matrix(phi.positive_roots, coweight_lattice(phi))
    assert len(S) == l and len(S[0]) == len(phi.positive_roots)
    # simple roots pair with the coweights as the identity
    simple = coefficient_matrix(phi.simple_roots, coweight_lattice(phi))
    assert simple == tuple(tuple(int(i == j) for j in range(l)) for i in range(l))


def test_standard_lattice_indices():
    assert lattice_index(build("C", 3), standard_sublattice(build("C", 3))) == 2
    assert lattice_index(build("D", 4), standard_sublattice(build("D", 4))) == 2
    assert lattice_index(build("B", 3), standard_sublattice(build("B", 3))) == 1


def test_type_c_coweights_are_dual():
    for l in (1, 2, 4):
        Z, simple = type_c_coweights(l)
        assert [[dot(w, a) for a in simple] for w in Z.vectors] == \
            [[int(i == j) for j in range(l)] for i in range(l)]


def test_long_normalized_dual_g2():
    phi = build("G", 2)
    lengths = {dot(r, r) for r in long_normalized_dual(phi.positive_roots)}
    assert len(lengths) == 2


def test_labels_and_errors():
    assert parse_label("bc3") == ("BC", 3)
    with pytest.raises(UnsupportedRootSystem):
        build("G", 3)
    with pytest.raises(UnsupportedRootSystem):
        parse_label("E")


def test_descriptor_round_trip_fields():
    d = build("G", 2).descriptor()
    assert d["type"] == "G" and d["coxeter_number"] == 6
    assert len(d["positive_roots"]) == 6
