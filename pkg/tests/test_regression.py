from fractions import Fraction

import pytest

from charproj.poly import Polynomial
from charproj.regression import CHECKS, bezout_by_linear_system, run_checks

X = Polynomial.x()


def test_linear_system_certificate_level30():
    # (X+1)^2 (X-1): cofactor X - 1
    got = bezout_by_linear_system([Fraction(-1), Fraction(1)], Fraction(-1), 2)
    assert got == [Fraction(3, 4), Fraction(-1, 2), Fraction(-1, 4)]


def test_linear_system_certificate_level90():
    cofactor = X**8 * (X - 1)
    got = bezout_by_linear_system([c.to_rational() for c in cofactor], Fraction(-1), 2)
    assert got == [0] * 8 + [Fraction(19, 4), Fraction(-1, 2), Fraction(-17, 4)]


def test_linear_system_certificate_simple_root():
    chi = Polynomial([-9, -3, -5, 1, 7, 5, 3, 1])
    cofactor = chi // (X - 1)
    got = bezout_by_linear_system([c.to_rational() for c in cofactor], Fraction(1), 1)
    assert Polynomial(got) == Polynomial([9, 12, 17, 16, 9, 4, 1]) / 68


@pytest.mark.parametrize("verdict", run_checks(), ids=lambda v: v.fixture)
def test_fixture(verdict):
    assert verdict.ok, verdict.line()


def test_every_fixture_is_checked(fixture_dir):
    assert sorted(CHECKS) == sorted(p.name for p in fixture_dir.glob("*.json"))
