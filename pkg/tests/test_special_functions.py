"""Piecewise polynomial Fourier pairs and their exact identities."""
import math
from fractions import Fraction

import pytest

from artifact.scalar_algebra import PiScalar, UniPoly
from artifact.special_functions import (appendix_suite, derivative_identity_check, fourier_pair,
                                        poly_P2, poly_Pm2, poly_Q, reflection_check,
                                        shift_identity_check, value_at_zero, value_at_zero_bis,
                                        value_at_zero_closed)

F = Fraction


def test_poly_P2_examples():
    assert poly_P2((1, 1)) == UniPoly([F(1, 2)])
    assert poly_P2((3, 0)).is_zero()
    assert poly_P2((-1, 2)) == UniPoly([-1, 2])


def test_poly_Pm2_examples():
    assert poly_Pm2((1, 0)) == UniPoly([1])
    assert poly_Pm2((0, 4)).is_zero()
    assert poly_Pm2((2, 1)) == UniPoly([F(1, 4), F(-1, 2)])


def test_poly_Q_examples():
    assert poly_Q((2, -1)).is_zero()
    assert poly_Q((0, 0)) == UniPoly([1])
    # (1 + iy) with x = iy
    assert poly_Q((-1, 0)) == UniPoly([1, 1])


def test_fourier_pair_examples():
    fp = fourier_pair((1, 1))
    assert fp.plus_part == fp.minus_part == UniPoly([F(1, 2)])
    assert fp.delta_part.is_zero()
    assert fp.overall == PiScalar(2, 1, 0)
    assert fp.value(1.0) == pytest.approx(math.pi / math.e)
    fp = fourier_pair((0, 0))
    assert fp.plus_part.is_zero() and fp.minus_part.is_zero()
    assert fp.delta_part == UniPoly([1])
    fp = fourier_pair((1, 0))
    assert fp.plus_part.is_zero() and fp.minus_part == UniPoly([1])


def test_value_at_zero_examples():
    # the rising product a(a+1)...(a+b-2) has b-1 factors: 2^{-4} * 2 * 3 / 2!
    assert value_at_zero((2, 3), 2) == F(3, 16)
    assert value_at_zero((1, 1), 2) == F(1, 2)
    assert value_at_zero((2, -2), -2) == -4
    with pytest.raises(ValueError):
        value_at_zero((1, 0), 2)


@pytest.mark.parametrize("bound", [6])
def test_value_at_zero_closed_form(bound):
    for a in range(-bound, bound + 1):
        for b in range(1, bound + 1):
            assert value_at_zero((a, b), 2) == value_at_zero_closed((a, b), 2)
            assert value_at_zero((b, a), -2) == value_at_zero_closed((b, a), -2)


def test_value_at_zero_binomial_sign():
    assert value_at_zero_bis((2, -2), -2) == value_at_zero((2, -2), -2) == -4
    assert value_at_zero_bis((2, -2), -2, printed_sign=True) == 4
    for a in range(1, 6):
        for b in range(-6, 1):
            if a + b <= 1:
                assert value_at_zero_bis((a, b), -2) == value_at_zero((a, b), -2)
                assert value_at_zero_bis((b, a), 2) == value_at_zero((b, a), 2)


def test_shift_identity_examples():
    assert shift_identity_check(0, 1, 0).ok
    rep = shift_identity_check(-1, 1, 1)
    assert rep.ok and rep.cases == 1
    assert poly_P2((-1, 1)) * UniPoly.monomial(1) == UniPoly([0, 2])
    assert shift_identity_check(3, 3, 1).cases == 0


def test_derivative_rules():
    assert poly_P2((-1, 2)).derivative() == UniPoly([2]) == poly_P2((-1, 1))
    assert poly_P2((4, 1)).derivative().is_zero() and poly_P2((4, 0)).is_zero()
    assert poly_Pm2((2, 1)).derivative() == UniPoly([F(-1, 2)]) == -poly_Pm2((1, 1))
    assert derivative_identity_check(3, -2).ok


def test_reflection():
    for a in range(-4, 5):
        for b in range(-4, 5):
            assert reflection_check(a, b).ok


def test_delta_part_degree_law():
    for a in range(-5, 6):
        for b in range(-5, 6):
            q = poly_Q((a, b))
            if a + b >= 1:
                assert q.is_zero()
            else:
                assert q.degree == -a - b


def test_appendix_suite_is_clean():
    rep = appendix_suite(8)
    assert rep.ok, rep.failures[:3]
    assert rep.cases > 1000
