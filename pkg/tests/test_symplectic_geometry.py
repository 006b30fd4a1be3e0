"""Moment maps, Cartan subspaces, nilpotent orbits and dilations."""
import math
from fractions import Fraction

import numpy as np
import pytest

from artifact.root_data import make_pair
from artifact.symplectic_geometry import (CartanSpec, MatrixOverD, cartan_J, cartan_element,
                                          derivative_order_bound, equivariance_residual,
                                          gt_dilation_det, homogeneity_gap,
                                          homogeneity_gap_listed, is_in_Wg, is_in_Wg_rank,
                                          lie_algebra_basis, max_orbit_index, orbit_dim,
                                          orbit_dim_general, orbit_dim_numeric, orbit_table,
                                          random_W, stable_range_equality,
                                          stable_range_predicate, tau, tau_prime)

CARTAN_CASES = [
    (make_pair("C", "U", 2, 3, p=1, q=2), 1),
    (make_pair("C", "U", 3, 2, p=1, q=1), 1),
    (make_pair("R", "O", 4, 6), None),
    (make_pair("R", "O", 3, 4), None),
    (make_pair("H", "Sp", 2, 3), None),
]


def _zero_like(m):
    return MatrixOverD(m.algebra, np.zeros_like(m.data))


def test_matrix_over_H_roundtrip():
    rng = np.random.default_rng(0)
    w = random_W(make_pair("H", "Sp", 2, 3), rng)
    assert w.shape == (3, 2)
    assert w.is_quaternionic()
    back = MatrixOverD.from_real_vector("H", w.shape, w.realify())
    assert np.allclose(back.data, w.data)
    assert MatrixOverD.from_json(w.to_json()).shape == (3, 2)


def test_tau_trivial_examples():
    pair = make_pair("R", "O", 3, 4)
    zero = MatrixOverD("R", np.zeros((4, 3)))
    assert tau(zero, pair).norm() == 0 and tau_prime(zero, pair).norm() == 0
    rank1 = MatrixOverD("R", np.outer([1.0, 2.0, 0.0, -1.0], [0.5, -1.0, 3.0]))
    assert np.linalg.matrix_rank(tau(rank1, pair).data, tol=1e-12) <= 1


@pytest.mark.parametrize("pair,m", CARTAN_CASES)
def test_cartan_normal_form(pair, m):
    coords = [0.7, -1.3][:pair.l_doubleprime]
    spec = CartanSpec(pair, coords, m)
    w = cartan_element(spec)
    Js, Jps = cartan_J(pair, m)
    t, tp = tau(w, pair), tau_prime(w, pair)
    expect, expect_p = _zero_like(t), _zero_like(tp)
    for x, dl, J, Jp in zip(coords, spec.deltas, Js, Jps):
        expect = expect + J.scale(x * x * dl)
        expect_p = expect_p + Jp.scale(x * x * dl)
    assert (t - expect).norm() < 1e-12
    assert (tp - expect_p).norm() < 1e-12


def test_cartan_element_complex_phase():
    pair = make_pair("C", "U", 1, 1, p=1, q=0)
    u = cartan_element(CartanSpec(pair, [1.0], 1))
    assert u.data[0, 0] == pytest.approx(np.exp(-1j * math.pi / 4))
    assert cartan_element(CartanSpec(pair, [0.0], 1)).norm() == 0


def test_cartan_real_block_gives_rotation_generator():
    pair = make_pair("R", "O", 2, 2)
    u = cartan_element(CartanSpec(pair, [1.0]))
    Js, _ = cartan_J(pair)
    assert np.allclose(tau(u, pair).data, Js[0].data)
    assert np.allclose(Js[0].data, [[0, 1], [-1, 0]])


@pytest.mark.parametrize("alg,g,d,dp", [("R", "O", 3, 4), ("C", "U", 2, 3), ("H", "Sp", 2, 2),
                                        ("R", "O", 1, 2), ("C", "U", 3, 2)])
def test_moment_map_equivariance(alg, g, d, dp):
    rng = np.random.default_rng(d * 10 + dp)
    pair = make_pair(alg, g, d, dp)
    assert max(equivariance_residual(pair, rng) for _ in range(20)) < 1e-12


def test_lie_algebra_dimensions():
    assert len(lie_algebra_basis(make_pair("R", "O", 3, 4), "g")) == 3
    assert len(lie_algebra_basis(make_pair("R", "O", 3, 4), "g_prime")) == 10
    assert len(lie_algebra_basis(make_pair("C", "U", 2, 3, p=1, q=2), "g_prime")) == 9
    assert len(lie_algebra_basis(make_pair("H", "Sp", 1, 2), "g_prime")) == 6


def test_is_in_Wg_examples():
    rng = np.random.default_rng(3)
    pair = make_pair("C", "U", 2, 3)
    zero = MatrixOverD("C", np.zeros((3, 2), dtype=complex))
    assert not is_in_Wg(zero, pair)
    w = random_W(pair, rng)
    assert is_in_Wg(w, pair) and is_in_Wg_rank(w, pair)
    o3 = make_pair("R", "O", 3, 4)
    rank2 = MatrixOverD("R", np.array([[1.0, 0, 0], [0, 1.0, 0], [0, 0, 0], [0, 0, 0]]))
    assert is_in_Wg(rank2, o3) and is_in_Wg_rank(rank2, o3)


def test_orbit_dim_examples():
    assert orbit_dim(make_pair("R", "O", 1, 2), 1) == 2
    assert orbit_dim(make_pair("C", "U", 2, 4, p=2, q=2), 1) == 6
    assert orbit_dim(make_pair("C", "U", 2, 4, p=2, q=2), 0) == 0
    rows = [(o.k, o.dim) for o in orbit_table(make_pair("C", "U", 2, 4, p=2, q=2))]
    assert rows == [(0, 0), (1, 6), (2, 8)]
    with pytest.raises(ValueError):
        orbit_dim(make_pair("C", "U", 2, 4), 1)


def test_orbit_dim_three_routes():
    for alg, g in (("R", "O"), ("C", "U"), ("H", "Sp")):
        for d in range(1, 4):
            for dp in range(1, 7):
                try:
                    pair = make_pair(alg, g, d, dp, p=dp // 2 if alg == "C" else None)
                except ValueError:
                    continue
                for k in range(max_orbit_index(pair) + 1):
                    assert orbit_dim(pair, k) == orbit_dim_general(alg, dp, k)
                    assert orbit_dim(pair, k) == orbit_dim_numeric(pair, k), (pair.name, k)


def test_stable_range_examples():
    o2 = make_pair("R", "O", 2, 2)
    assert stable_range_equality(o2) and stable_range_predicate(o2)
    o1 = make_pair("R", "O", 1, 4)
    assert stable_range_equality(o1) and stable_range_predicate(o1)
    u3 = make_pair("C", "U", 3, 2, p=1, q=1)
    assert not stable_range_equality(u3) and not stable_range_predicate(u3)


def test_homogeneity_gap_examples():
    for dp in (2, 4, 6):
        assert homogeneity_gap(make_pair("R", "O", 2, dp)) == 0
    for p, q in ((1, 1), (1, 3), (2, 2)):
        assert homogeneity_gap(make_pair("C", "U", 1, p + q, p=p, q=q)) == 0
    assert homogeneity_gap(make_pair("C", "U", 2, 4, p=2, q=2)) > 0


def test_homogeneity_gap_extra_zeros():
    # zeros found by enumeration beyond the listed families
    assert homogeneity_gap(make_pair("R", "O", 1, 4)) == 0
    assert homogeneity_gap(make_pair("C", "U", 1, 1, p=0, q=1)) == 0
    assert homogeneity_gap(make_pair("C", "U", 2, 2, p=1, q=1)) == 0
    assert homogeneity_gap(make_pair("H", "Sp", 1, 1)) == 0
    assert homogeneity_gap(make_pair("R", "O", 3, 4)) == 2
    assert not homogeneity_gap_listed(make_pair("R", "O", 1, 4))


def test_dilation_examples():
    rep = gt_dilation_det(make_pair("R", "O", 1, 2), 1)
    assert rep.exponent_slice == 0 and rep.ok
    rep = gt_dilation_det(make_pair("C", "U", 1, 2, p=1, q=1), 1)
    assert rep.exponent_slice == 2 and rep.exponent_full == 4 and rep.ok


@pytest.mark.parametrize("alg,g,d,dp,p", [("R", "O", 2, 4, None), ("R", "O", 3, 6, None),
                                          ("C", "U", 2, 4, 2), ("C", "U", 1, 3, 1),
                                          ("H", "Sp", 1, 3, None), ("H", "Sp", 2, 4, None)])
def test_dilation_all_k(alg, g, d, dp, p):
    pair = make_pair(alg, g, d, dp, p=p)
    for k in range(max_orbit_index(pair) + 1):
        assert gt_dilation_det(pair, k, Fraction(3)).ok, (pair.name, k)


def test_derivative_order_bound_examples():
    assert derivative_order_bound(make_pair("C", "U", 1, 3)) == 1
    assert derivative_order_bound(make_pair("H", "Sp", 1, 2)) == 1
    # d' = 2 for Sp_2(R): 2 - 1 - 1 = 0
    assert derivative_order_bound(make_pair("R", "O", 2, 2)) == 0
    with pytest.raises(ValueError):
        derivative_order_bound(make_pair("C", "U", 3, 2))
