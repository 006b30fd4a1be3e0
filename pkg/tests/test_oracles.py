"""Independent verification engines."""
import math
from fractions import Fraction

import pytest

from artifact.oracles import (QuadratureError, Tableau, fan_det, gaussian_selberg,
                              gaussian_selberg_closed, pair_with_test_function, partial_pi_pi,
                              proportionality_constant, quad_fourier, restricted_root_product,
                              schur_oracle, semistandard_tableaux)
from artifact.scalar_algebra import MultiPoly, PiScalar
from artifact.special_functions import fourier_pair

F = Fraction


def test_quad_fourier_classical_values():
    assert quad_fourier(1, 1, 1) == pytest.approx(math.pi / math.e, rel=1e-10)
    assert quad_fourier(1, 0, -1) == pytest.approx(2 * math.pi / math.e, rel=1e-10)
    assert abs(quad_fourier(1, 0, 1)) < 1e-10


def test_quad_fourier_at_zero_matches_one_sided_limits():
    for a, b in ((2, 1), (1, 2), (3, 2)):
        fp = fourier_pair((a, b))
        avg = (fp.one_sided_limit(1) + fp.one_sided_limit(-1)) / 2
        assert quad_fourier(a, b, 0) == pytest.approx(avg, rel=1e-9)


def test_quad_fourier_preconditions():
    with pytest.raises(ValueError):
        quad_fourier(0, 0, 1)
    with pytest.raises(ValueError):
        quad_fourier(1, 0, 0)
    with pytest.raises(QuadratureError):
        quad_fourier(1, 0, 0.5, Y=5.0, tol=1e-16)


def test_quad_fourier_reports_error_budget():
    res = quad_fourier(2, 1, 0.5, full=True)
    assert res.error < 1e-10


def test_pairing_examples():
    assert pair_with_test_function(0, 0, shift=0.0).ok
    rep = pair_with_test_function(0, -1, power=2, shift=0.0)
    assert rep.ok
    # psi = xi^3 e^{-xi^2} vanishes to third order: the delta part drops out
    rep = pair_with_test_function(-1, -1, power=3, shift=0.0)
    assert rep.ok and rep.delta_part == 0
    rep = pair_with_test_function(-1, -1, power=0, shift=0.4)
    assert rep.ok and abs(rep.delta_part) > 0.1
    rep = pair_with_test_function(2, -3, power=1, shift=-0.3)
    assert rep.ok and abs(rep.lhs) > 0.1
    with pytest.raises(ValueError):
        pair_with_test_function(1, 1)


def test_gaussian_selberg_examples():
    assert gaussian_selberg(1, 2) == 1
    assert gaussian_selberg(1, 1) == 1
    assert gaussian_selberg(2, 2) == 2
    for l in (1, 2, 3):
        for lp in range(l, l + 3):
            assert gaussian_selberg(l, lp) == gaussian_selberg_closed(l, lp)


def test_fan_det_examples():
    assert fan_det(F(9, 4), 2) == 1
    assert fan_det(F(7, 3), 3) == 2
    assert fan_det(-5, 4) == 12


def test_partial_pi_pi_examples():
    assert [partial_pi_pi(l) for l in (1, 2, 3)] == [1, 2, 12]


def test_tableaux():
    assert len(semistandard_tableaux((2, 1), 2)) == 2
    t = Tableau((2, 1), ((1, 1), (2,)), 2)
    assert t.weight() == [2, 1]
    with pytest.raises(ValueError):
        Tableau((2, 1), ((1, 1), (1,)), 2)


def test_schur_oracle_examples():
    x1, x2 = 0.3 + 0.2j, -1.1 + 0.5j
    assert schur_oracle((1, 0), [x1, x2]) == pytest.approx(x1 + x2)
    assert schur_oracle((2, 1), [1, 1]) == 2
    assert schur_oracle((1, 1), [x1, x2]) == pytest.approx(x1 * x2)


def test_restricted_root_product_and_proportionality():
    y1, y2 = MultiPoly.var(2, 0), MultiPoly.var(2, 1)
    assert restricted_root_product("A", 2, 2) == y1 - y2
    # C_2 restricted to one coordinate: e1 - e2, e1 + e2, 2 e1
    assert restricted_root_product("C", 2, 1) == MultiPoly.var(1, 0) ** 3 * 2
    c = proportionality_constant((y1 - y2) * PiScalar(3, 1, 1), y1 - y2)
    assert c == PiScalar(3, 1, 1)
    assert proportionality_constant(y1 + y2, y1 - y2) is None
