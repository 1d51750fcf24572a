from fractions import Fraction
from math import comb, factorial

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from heisreal.exactnum import (GaussianRational, I, ONE, ZERO, bernoulli, exp_coeffs,
                               format_scalar, parse_scalar, psi_coeff, psi_inv_coeff,
                               series_inverse, series_mul)


def bernoulli_oracle(k):
    """B_k from the plain recurrence, using Fraction only."""
    B = [Fraction(1)]
    for m in range(1, k + 1):
        B.append(-sum(comb(m + 1, j) * B[j] for j in range(m)) / (m + 1))
    return B[k]


@pytest.mark.parametrize("k, expected", [(0, 1), (1, Fraction(-1, 2)), (2, Fraction(1, 6)),
                                         (3, 0), (4, Fraction(-1, 30)), (6, Fraction(1, 42)),
                                         (12, Fraction(-691, 2730))])
def test_bernoulli_values(k, expected):
    assert bernoulli(k) == expected


def test_bernoulli_matches_recurrence():
    for k in range(30):
        assert bernoulli(k) == bernoulli_oracle(k)


def test_odd_bernoulli_vanish():
    assert all(bernoulli(k) == 0 for k in range(3, 40, 2))


def test_negative_index_rejected():
    with pytest.raises(ValueError):
        bernoulli(-1)


@pytest.mark.parametrize("k, expected", [(0, 1), (1, Fraction(1, 2)), (2, Fraction(1, 12)),
                                         (3, 0), (4, Fraction(-1, 720))])
def test_psi_coeff(k, expected):
    assert psi_coeff(k) == expected


def test_psi_coeff_by_series_inversion():
    # t/(1 - e^{-t}) is the reciprocal of (1 - e^{-t})/t = sum (-1)^k t^k/(k+1)!
    base = [mpq((-1) ** k, factorial(k + 1)) for k in range(15)]
    inv = series_inverse(base, 14)
    assert [psi_coeff(k) for k in range(15)] == inv


@pytest.mark.parametrize("k, expected", [(0, 1), (1, Fraction(-1, 2)), (2, Fraction(1, 6)),
                                         (3, Fraction(-1, 24))])
def test_psi_inv_coeff(k, expected):
    assert psi_inv_coeff(k) == expected


def test_psi_series_are_inverse():
    for k in range(13):
        acc = sum(psi_coeff(j) * psi_inv_coeff(k - j) for j in range(k + 1))
        assert acc == (1 if k == 0 else 0)


def test_series_helpers():
    e = exp_coeffs(5)
    assert e == [1, 1, mpq(1, 2), mpq(1, 6), mpq(1, 24), mpq(1, 120)]
    # e^t * e^{-t} = 1
    em = [c * (-1) ** k for k, c in enumerate(e)]
    assert series_mul(e, em, 5) == [1, 0, 0, 0, 0, 0]
    with pytest.raises(ZeroDivisionError):
        series_inverse([0, 1], 3)


rationals = st.fractions(max_denominator=50).map(lambda f: mpq(f.numerator, f.denominator))
gaussians = st.builds(GaussianRational, rationals, rationals)


@given(gaussians, gaussians, gaussians)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == ZERO
    if a:
        assert a * a.inverse() == ONE


@given(gaussians)
def test_scalar_text_round_trip(z):
    assert parse_scalar(format_scalar(z)) == z


def test_scalar_formatting():
    assert format_scalar(GaussianRational(mpq(-1, 2))) == "-1/2"
    assert format_scalar(I * mpq(1, 10)) == "1/10*i"
    assert format_scalar(GaussianRational(1, -3)) == "1-3*i"
    assert I * I == -ONE
    assert GaussianRational(2) == 2 and hash(GaussianRational(2)) == hash(GaussianRational(2, 0))
