from __future__ import annotations

import pytest

from charqp.verify import PROPERTY_SUITES, SUITES, run_suite


@pytest.mark.parametrize("name", PROPERTY_SUITES)
def test_property_suites_on_small_types(name):
    rep = run_suite(name, [("A", 3), ("B", 3), ("D", 4), ("G", 2)])
    assert rep.ok, rep.failures[:3]
    assert rep.checked > 0


def test_type_filter_restricts_work():
    assert run_suite("coset", [("B", 2)]).checked == 24
    assert run_suite("coset", [("A", 2)]).checked == 0


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope")


def test_registry_has_all_suites():
    assert set(PROPERTY_SUITES) < set(SUITES) and "properties" in SUITES
