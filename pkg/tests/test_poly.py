from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from charproj.field import QQ, FieldContext
from charproj.poly import (
    Polynomial,
    poly_divrem,
    poly_eval,
    poly_gcd,
    poly_mul,
    poly_square,
    poly_xgcd,
    root_valuation,
    squarefree_decomposition,
    squarefree_part,
    synthetic_divide,
    taylor_shift,
)

X = Polynomial.x()
QI = FieldContext.extension([1, 0, 1])

small = st.fractions(min_value=-6, max_value=6, max_denominator=4)
polys = st.lists(small, min_size=0, max_size=7).map(Polynomial)
nonzero_polys = polys.filter(bool)


def P(*coeffs):
    """Polynomial from coefficients, highest degree first (reads like the printed formula)."""
    return Polynomial(list(reversed(coeffs)))


LEVEL30 = (X + 1) ** 2 * (X - 1)
LEVEL90 = X**8 * LEVEL30


def test_products():
    assert (X - 1) * (X + 1) == X**2 - 1
    assert LEVEL30 == P(1, 1, -1, -1)
    assert LEVEL30 + Polynomial() == LEVEL30


def test_divrem_examples():
    assert poly_divrem(X**2 - 1, X - 1) == (X + 1, Polynomial())
    assert poly_divrem(X**2 + 1, X - 1) == (X + 1, Polynomial([2]))


def test_divrem_hecke_charpoly():
    chi = P(1, 3, 5, 7, 1, -5, -3, -9)
    q, r = poly_divrem(chi, X - 1)
    assert q == P(1, 4, 9, 16, 17, 12, 9)
    assert not r


def test_divrem_by_zero():
    with pytest.raises(ZeroDivisionError):
        poly_divrem(X, Polynomial())


def test_xgcd_coprime_linear():
    d, u, v = poly_xgcd(X - 1, X + 1)
    assert (d, u, v) == (Polynomial([1]), Polynomial([Fraction(-1, 2)]), Polynomial([Fraction(1, 2)]))


def test_xgcd_divisible():
    assert poly_xgcd((X - 1) ** 2, X - 1) == (X - 1, Polynomial(), Polynomial([1]))


def test_xgcd_against_square():
    # oracle: u = u0 + u1 X with (X-1) u = 1 mod (X+1)^2, i.e. value 1 and slope 0 at X = -1:
    #   -2 u0 + 2 u1 = 1
    #     u0 - 3 u1 = 0
    a, b, c, d, e, f = -2, 2, 1, -3, 1, 0
    det = Fraction(a * d - b * c)
    u0, u1 = (e * d - b * f) / det, (a * f - e * c) / det
    d, u, v = poly_xgcd(X - 1, (X + 1) ** 2)
    assert d == Polynomial([1])
    assert u == Polynomial([u0, u1]) == -(X + 3) / 4
    assert u * (X - 1) + v * (X + 1) ** 2 == 1


def test_xgcd_zero_zero():
    with pytest.raises(ValueError):
        poly_xgcd(Polynomial(), Polynomial())


def test_synthetic_division():
    assert synthetic_divide(X**2 - 1, QQ(1)) == (X + 1, QQ(0))
    assert synthetic_divide(LEVEL30, QQ(-1)) == (X**2 - 1, QQ(0))
    assert synthetic_divide(X + 1, QQ(1)) == (Polynomial([1]), QQ(2))


def test_root_valuation():
    assert root_valuation(LEVEL30, QQ(-1)) == (2, X - 1)
    assert root_valuation(LEVEL90, QQ(0)) == (8, LEVEL30)
    assert root_valuation(X**2 + 1, QQ(2)) == (0, X**2 + 1)


def test_eval():
    i = QI.gen()
    assert poly_eval((X**2 + 1).base_change(QI), i) == QI.zero()
    assert poly_eval(X - 1, QQ(1)) == 0
    assert poly_eval(P(1, 4, 9, 16, 17, 12, 9), QQ(1)) == 68


def test_taylor_shift():
    assert taylor_shift(X**2, QQ(1)) == X**2 + 2 * X + 1
    f = (X - 1) ** 2 * (X + 1)
    g = taylor_shift(f, QQ(1))
    # oracle: g(x) = f(x + 1) at more points than the degree
    for x in range(-4, 5):
        assert poly_eval(g, QQ(x)) == poly_eval(f, QQ(x + 1))
    assert g == X**2 * (X + 2)


def test_squarefree_part():
    assert squarefree_part(LEVEL30) == (X + 1) * (X - 1)
    assert squarefree_part(LEVEL90) == X * (X + 1) * (X - 1)
    assert squarefree_part(2 * X**2 - 2) == X**2 - 1


def test_squarefree_decomposition():
    assert squarefree_decomposition(LEVEL90) == [(X - 1, 1), (X + 1, 2), (X, 8)]


def test_square_matches_product():
    f = P(3, -1, 2, 5)
    assert poly_square(f) == f * f


def test_context_mismatch():
    with pytest.raises(ValueError):
        poly_mul(X, X.base_change(QI))


def test_format():
    assert str(P(Fraction(-17, 4), Fraction(-1, 2), Fraction(19, 4), 0, 0, 0, 0, 0, 0, 0, 0)) == \
        "-17/4*X^10 - 1/2*X^9 + 19/4*X^8"
    assert str(Polynomial()) == "0"


@settings(max_examples=80, deadline=None)
@given(polys, nonzero_polys)
def test_divrem_roundtrip(f, g):
    q, r = poly_divrem(f, g)
    assert q * g + r == f
    assert r.degree < g.degree


@settings(max_examples=80, deadline=None)
@given(polys, polys)
def test_xgcd_certificate(f, g):
    assume(f or g)
    d, u, v = poly_xgcd(f, g)
    assert u * f + v * g == d
    assert d.leading() == 1
    assert not poly_divrem(f, d)[1] and not poly_divrem(g, d)[1]


@settings(max_examples=80, deadline=None)
@given(polys, small)
def test_synthetic_matches_divrem(f, a):
    q, r = synthetic_divide(f, QQ(a))
    q2, r2 = poly_divrem(f, X - a)
    assert q == q2
    assert Polynomial([r]) == r2


@settings(max_examples=60, deadline=None)
@given(nonzero_polys, st.integers(-3, 3), st.integers(0, 3))
def test_root_valuation_property(f, a, k):
    f = f * (X - a) ** k
    nu, q = root_valuation(f, QQ(a))
    assert nu >= k
    assert poly_eval(q, QQ(a)) != 0
    assert (X - a) ** nu * q == f


@settings(max_examples=60, deadline=None)
@given(polys, small)
def test_shift_inverse(f, a):
    assert taylor_shift(taylor_shift(f, QQ(a)), QQ(-a)) == f


@settings(max_examples=60, deadline=None)
@given(nonzero_polys.filter(lambda p: p.degree > 0))
def test_squarefree_output_is_squarefree(f):
    s = squarefree_part(f * f)
    assert poly_gcd(s, s.derivative()) == 1
