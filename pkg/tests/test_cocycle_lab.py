"""Metaplectic cocycle: modulus, phase, unitary restriction and identities."""
import math

import numpy as np
import pytest

from artifact.cocycle_lab import (ConditioningError, SymplecticElement, cocycle_lab_report,
                                  cocycle_modulus, cocycle_phase, det_identity_check,
                                  det_identity_sides, h_form, haar_unitary, omega, q_form,
                                  random_symplectic, random_unitary_element,
                                  signature_halving_check, theta_squared, unitary_cocycle,
                                  unitary_cocycle_plus)


def _rot(theta):
    return SymplecticElement.from_unitary(np.array([[np.exp(1j * theta)]]))


def test_symplectic_element_validation():
    with pytest.raises(ValueError):
        SymplecticElement(np.diag([2.0, 1.0]))
    g = random_symplectic(3, np.random.default_rng(0))
    assert np.allclose(g.matrix.T @ omega(3) @ g.matrix, omega(3))


def test_haar_unitary_is_unitary():
    rng = np.random.default_rng(1)
    for n in (1, 2, 5):
        u = haar_unitary(n, rng)
        assert np.allclose(u.conj().T @ u, np.eye(n))


def test_theta_squared_examples():
    assert theta_squared(SymplecticElement.identity(2)) == 1
    for n in (1, 2, 3):
        val = theta_squared(SymplecticElement.minus_one(n))
        assert val == pytest.approx((1j) ** (2 * n) * 2.0 ** (-2 * n))


def test_theta_squared_routes_agree():
    rng = np.random.default_rng(2)
    for n in (1, 2, 3, 4):
        for _ in range(10):
            g = random_symplectic(n, rng)
            a, b = theta_squared(g, "restricted"), theta_squared(g, "eigen")
            assert abs(a - b) <= 1e-9 * abs(a)
            u = random_unitary_element(n, rng, fixed=n // 2)
            a, b = theta_squared(u, "restricted"), theta_squared(u, "unitary")
            assert abs(a - b) <= 1e-9 * abs(a)


def test_cocycle_modulus_examples():
    rng = np.random.default_rng(3)
    g = random_symplectic(2, rng)
    assert cocycle_modulus(SymplecticElement.identity(2), g) == pytest.approx(1)
    for n in range(1, 5):
        m1 = SymplecticElement.minus_one(n)
        assert cocycle_modulus(m1, m1) == pytest.approx(2.0 ** (2 * n), rel=1e-9)


def test_cocycle_modulus_symmetric():
    rng = np.random.default_rng(4)
    for _ in range(100):
        g1, g2 = random_symplectic(2, rng), random_symplectic(2, rng)
        a, b = cocycle_modulus(g1, g2), cocycle_modulus(g2, g1)
        assert abs(a - b) <= 1e-8 * a


def test_phase_of_minus_one():
    m1 = SymplecticElement.minus_one(2)
    assert q_form(m1, m1).signature == 0
    assert cocycle_phase(m1, m1) == pytest.approx(1)


def test_unitary_cocycle_scalar_case():
    g = _rot(math.pi / 2)
    assert unitary_cocycle(g, g) == pytest.approx(-1j)
    assert unitary_cocycle_plus(g, g) == pytest.approx(1j)
    assert h_form(g, g).signature == -1
    assert q_form(g, g).signature == -2
    t1, t2 = 0.7, -2.1
    e = np.exp(1j * np.array([t1, t2, t1 + t2]))
    expected = np.conj((e[0] - 1) * (e[1] - 1) / (e[2] - 1))
    assert unitary_cocycle(_rot(t1), _rot(t2)) == pytest.approx(expected)
    assert unitary_cocycle(g, SymplecticElement.identity(1)) == pytest.approx(1)


def test_unitary_cocycle_is_modulus_times_phase():
    rng = np.random.default_rng(5)
    for n in (1, 2, 3):
        for _ in range(30):
            g1, g2 = random_unitary_element(n, rng), random_unitary_element(n, rng)
            uc = unitary_cocycle(g1, g2)
            mp = cocycle_modulus(g1, g2) * cocycle_phase(g1, g2)
            assert abs(uc - mp) <= 1e-8 * abs(mp)


def test_det_identity_scalar_case():
    g = _rot(math.pi / 2)
    lhs, rhs = det_identity_sides(g, g)
    assert lhs == pytest.approx(-1j) and rhs == pytest.approx(-1j)


def test_det_identity_with_g2_minus_one():
    rng = np.random.default_rng(6)
    g1 = random_unitary_element(3, rng)
    rep = det_identity_check(g1, SymplecticElement.minus_one(3))
    assert rep.ok, rep.failures


def test_det_identity_rejects_fixed_vectors_of_g1():
    g1 = random_unitary_element(2, np.random.default_rng(7), fixed=1)
    with pytest.raises(ConditioningError):
        det_identity_sides(g1, random_unitary_element(2, np.random.default_rng(8)))


def test_signature_halving_random():
    rng = np.random.default_rng(9)
    for _ in range(50):
        g1, g2 = random_unitary_element(2, rng), random_unitary_element(2, rng)
        assert signature_halving_check(g1, g2).ok


def test_report_is_deterministic_and_clean():
    a = cocycle_lab_report(2, 15, seed=3)
    b = cocycle_lab_report(2, 15, seed=3)
    assert a == b and a["ok"]
