from __future__ import annotations

from fractions import Fraction

from hypothesis import given, settings, strategies as st

from charqp import linalg
from charqp.linalg import RationalPolynomial, interpolate, smith_normal_form

small_int = st.integers(min_value=-6, max_value=6)


def matrices(max_dim: int = 4):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(st.lists(small_int, min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_smith_form_reconstructs(a):
    s = smith_normal_form(a)
    assert s.reconstructs(a)
    assert abs(linalg.det(s.U)) == 1 and abs(linalg.det(s.V)) == 1
    d = s.nonzero
    assert all(x > 0 for x in d)
    assert all(b % x == 0 for x, b in zip(d, d[1:]))
    assert len(d) == linalg.rank(a)


def test_smith_form_known_case():
    assert linalg.elementary_divisors([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == (2, 6, 12)


def test_inverse_and_integer_inverse():
    a = [[2, 1], [1, 1]]
    assert linalg.matmul(a, linalg.integer_inverse(a)) == linalg.identity(2)
    inv = linalg.inverse([[2, 0], [0, 4]])
    assert inv == ((Fraction(1, 2), 0), (0, Fraction(1, 4)))


def test_polynomial_arithmetic():
    p = RationalPolynomial.from_roots([1, 3])
    assert p.coeffs == (3, -4, 1)
    assert (p * p)(2) == 1
    assert (p - p).is_zero()
    assert p.rescale_argument(Fraction(1, 2))(4) == p(2)
    assert str(p) == "q^2 - 4*q + 3"


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=6))
def test_interpolation_recovers_polynomial(coeffs):
    p = RationalPolynomial(coeffs)
    pts = [(x, p(x)) for x in range(len(coeffs))]
    assert interpolate(pts) == p
