from __future__ import annotations

import pytest

from charqp import weyl
from charqp.config import override, reset
from charqp.roots import build


@pytest.mark.parametrize("kind,l", [("A", 3), ("B", 3), ("C", 3), ("D", 4), ("G", 2), ("F", 4)])
def test_enumeration_size(kind, l):
    phi = build(kind, l)
    mats = weyl.enumerate_matrices(phi)
    assert len(mats) == phi.weyl_order
    assert len({m.tobytes() for m in mats}) == phi.weyl_order


def test_enumeration_cap():
    try:
        override(weyl_cap=100)
        with pytest.raises(weyl.EnumerationRefused):
            weyl.enumerate_matrices(build("B", 4))
    finally:
        reset()


def test_longest_element_negates_positive_roots():
    phi = build("D", 5)
    w0 = weyl.longest_element(phi)
    images = {w0.act_on_root(c) for c in phi.positive_coordinates}
    assert images == {tuple(-x for x in c) for c in phi.positive_coordinates}


@pytest.mark.parametrize("kind,l,orders", [("A", 5, [1, 6, 3, 2, 3, 6]), ("D", 5, [1, 2, 4, 4]),
                                           ("E", 6, [1, 3, 3]), ("E", 7, [1, 2]), ("F", 4, [1])])
def test_omega_orders(kind, l, orders):
    assert [e.order for e in weyl.omega_group(build(kind, l))] == orders


def test_delta_and_fixed_rank():
    phi = build("B", 3)
    assert weyl.delta(weyl.identity_element(phi)) == 1
    s = weyl.simple_reflection(phi, 0)
    assert weyl.fixed_rank(s) == 2 and weyl.delta(s) == -1


def test_conjugation_counts_identity():
    phi = build("A", 3)
    counts = weyl.conjugation_counts(phi, weyl.identity_element(phi))
    assert counts[0] == phi.weyl_order
    assert all(c == 0 for j, c in counts.items() if j)
