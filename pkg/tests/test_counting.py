from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from charqp import config
from charqp.counting import (BudgetExceeded, count_naive, count_points, totient,
                             triangularize_columns)

coef = st.integers(-3, 3)


@st.composite
def systems(draw):
    l = draw(st.integers(1, 3))
    me = draw(st.integers(0, 2))
    mn = draw(st.integers(0 if me else 1, 3))
    eq = [[draw(coef) for _ in range(me)] for _ in range(l)] if me else None
    ne = [[draw(coef) for _ in range(mn)] for _ in range(l)] if mn else None
    shift = [draw(st.integers(-5, 5)) for _ in range(mn)] if mn else None
    return draw(st.integers(1, 7)), eq, ne, shift


@settings(max_examples=300, deadline=None)
@given(systems())
def test_count_points_matches_naive(case):
    q, eq, ne, shift = case
    assert count_points(q, eq=eq, ne=ne, shift=shift) == count_naive(q, eq=eq, ne=ne, shift=shift)


def test_triangularized_columns_have_distinct_pivots():
    cols = triangularize_columns([[2, 4, 1], [6, 3, 0], [1, 1, 1]])
    pivots = [max(i for i, x in enumerate(c) if x) for c in cols]
    assert len(set(pivots)) == len(pivots) == 3


def test_budget_refusal():
    with pytest.raises(BudgetExceeded):
        count_points(100, ne=[[1, 1], [1, 2], [1, 3]], budget=1000)


def test_budget_from_settings():
    try:
        config.override(budget=10)
        with pytest.raises(BudgetExceeded):
            count_points(5, ne=[[1], [1]])
    finally:
        config.reset()


def test_parallel_count_is_identical():
    ne = [[1, 0, 1, 1], [0, 1, 1, 2]]
    assert count_points(29, ne=ne, jobs=3) == count_points(29, ne=ne, jobs=1)


def test_totient():
    assert [totient(n) for n in range(1, 13)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]
