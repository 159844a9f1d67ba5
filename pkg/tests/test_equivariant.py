from __future__ import annotations

import json

import pytest

from charqp import weyl
from charqp.equivariant import (ClassFunctionQP, check_duality, class_function_qp,
                                equiv_chi_folding, equiv_chi_induced, equiv_chi_theorem56,
                                equiv_chi_torus, equiv_count_bruteforce, equiv_ehrhart_alcove,
                                fixed_torus, folding)
from charqp.roots import build

SMALL = [("A", 3), ("B", 3), ("C", 3), ("D", 4), ("D", 5)]


@pytest.mark.parametrize("kind,l", SMALL)
def test_all_routes_agree(kind, l):
    phi = build(kind, l)
    for e in weyl.omega_group(phi):
        if not e.j:
            continue
        for q in range(1, 13):
            brute = equiv_count_bruteforce(phi, e.weyl, q)
            assert equiv_chi_folding(phi, e.j, q) == brute
            assert equiv_chi_theorem56(phi, e.j, q) == brute
            assert equiv_chi_torus(phi, e.weyl, q) == brute


def test_e6_example_value():
    assert equiv_chi_theorem56(build("E", 6), 1, 12) == 72


def test_induction_on_a3():
    phi = build("A", 3)
    for e in weyl.omega_group(phi):
        for q in (4, 6, 8):
            want = equiv_chi_theorem56(phi, e.j, q) if e.j else \
                equiv_count_bruteforce(phi, e.weyl, q)
            assert equiv_chi_induced(phi, e.weyl, q) == want


def test_fixed_torus_rank_matches_fixed_space():
    phi = build("D", 5)
    for e in weyl.omega_group(phi):
        assert fixed_torus(e.weyl).rank == weyl.fixed_rank(e.weyl)


def test_folding_data_d5():
    fd = folding(build("D", 5), 4)
    assert fd.order == 4 and fd.folded_label == "BC1" and fd.d == 2
    assert fd.table_match == "equivalent"
    doc = fd.to_json()
    assert doc["folded_type"] == "BC1" and doc["p_sets"]["short"] == [-3, -2, -1, 0, 1, 2, 3]


def test_folding_c_odd():
    fd = folding(build("C", 3), 3)
    assert fd.folded_label == "BC1" and fd.table_match == "exact"


def test_ehrhart_alcove_fixed_points():
    phi = build("A", 3)
    # omega_2 of A3 has two orbits of weight 2, so fixed alcove points need q even
    assert [equiv_ehrhart_alcove(phi, 2, q) for q in range(1, 7)] == [0, 0, 0, 1, 0, 2]


def test_class_function_round_trip():
    cf = class_function_qp(build("B", 3))
    doc = json.loads(json.dumps(cf.to_json()))
    assert doc["type"] == "B" and [x["j"] for x in doc["omega"]] == [0, 1]
    assert ClassFunctionQP.from_json(doc) == cf


def test_duality_b3():
    assert check_duality(build("B", 3)).ok
