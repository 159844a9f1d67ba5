from __future__ import annotations

import pytest

from charqp.reference import (UnknownKey, catalog, dump_catalog, entry, folding_row,
                              parse_key, reference_eval)
from charqp.roots import build


def test_catalog_is_stable_and_excludes_e8():
    keys = catalog()
    assert keys == catalog()
    assert not any(k.startswith("E8") for k in keys)
    with pytest.raises(UnknownKey):
        entry("E8")


def test_f4_dual_has_six_cases():
    e = entry("F4v")
    assert sorted(e.cases) == [1, 2, 3, 4, 6, 12]


def test_d_odd_has_multiple_of_four_case():
    e = entry("D5:w5")
    assert e.modulus == 4 and 4 in e.cases
    assert e.evaluate(8) == 2 * (8 - 4)


def test_moduli_are_as_printed():
    assert {entry(k).modulus for k in catalog() if ":" not in k} <= {1, 2, 4, 6, 12}


def test_spec_examples():
    assert reference_eval("B4/Z", 8) == 192
    assert reference_eval("E6", 12) == 17280
    assert reference_eval("C3:w3", 6) == 4


IDENTITY_KEYS = [k for k in catalog()
                 if ":" not in k and "/L" not in k and not k.startswith("2B") and "v" not in k]


@pytest.mark.parametrize("key", IDENTITY_KEYS)
def test_reference_positivity(key):
    kind, l, _, _ = parse_key(key)
    h = build(kind, l).coxeter_number
    vals = [reference_eval(key, q) for q in range(1, 3 * h + 1)]
    assert all((v > 0) == (q >= h) for q, v in zip(range(1, 3 * h + 1), vals))


def test_dump_catalog_is_json_ready():
    import json

    docs = dump_catalog()
    assert len(docs) == len(catalog())
    json.dumps(docs)


def test_folding_rows_exist_for_all_nontrivial_omega():
    from charqp import weyl

    for kind, l in [("A", 5), ("B", 4), ("C", 4), ("D", 5), ("D", 6), ("E", 6), ("E", 7)]:
        for e in weyl.omega_group(build(kind, l)):
            if e.j:
                assert folding_row(kind, l, e.j) is not None


@pytest.mark.parametrize("key", IDENTITY_KEYS + [k for k in catalog() if ":" in k])
def test_reference_duality(key):
    from charqp import weyl

    kind, l, _, j = parse_key(key)
    phi = build(kind, l)
    h = phi.coxeter_number
    sign = (-1) ** l
    if j:
        sign *= weyl.delta(weyl.omega_by_j(phi, j).weyl)
    for q in range(-h, 2 * h + 1):
        assert reference_eval(key, q) == sign * reference_eval(key, h - q)
