"""Acceptance criteria 1-12, one test per criterion (plus one strict xfail).

A one-line PASS/FAIL summary per criterion is printed at the end of the run
by the hook in conftest.py.
"""
import cmath
import itertools
import math
import random
from fractions import Fraction

import numpy as np
import pytest

from artifact.cocycle_lab import cocycle_lab_report, haar_unitary
from artifact.intertwining import (admissible_mus, correspond_dimension, eval_uu,
                                   multiplicity_one_check, o1_sp_toy, uu_distribution)
from artifact.oracles import (fan_det, gaussian_selberg, gaussian_selberg_closed,
                              pair_with_test_function, partial_pi_pi, quad_fourier,
                              schur_oracle)
from artifact.root_data import (EvaluationError, HighestWeight, dim_pi_prime, make_pair,
                                weyl_character)
from artifact.scalar_algebra import (falling_product_sum, falling_product_sum_bruteforce,
                                     vandermonde_det)
from artifact.special_functions import (appendix_suite, fourier_pair, value_at_zero,
                                        value_at_zero_closed)
from artifact.symplectic_geometry import (CartanSpec, MatrixOverD, cartan_J, cartan_element,
                                          equivariance_residual, homogeneity_gap,
                                          homogeneity_gap_listed, max_orbit_index, orbit_dim,
                                          orbit_dim_general, stable_range_equality,
                                          stable_range_predicate, tau, tau_prime)

F = Fraction
XIS = [F(1, 2), F(-1, 2), F(1), F(-1), F(2), F(-2)]


def _factorials(n):
    out = 1
    for k in range(1, n + 1):
        out *= math.factorial(k)
    return out


def _enumerate_pairs(dmax=10, dpmax=10):
    for d in range(1, dmax + 1):
        for dp in range(1, dpmax + 1):
            for alg, g in (("R", "O"), ("C", "U"), ("H", "Sp")):
                if alg == "C":
                    for p in range(dp + 1):
                        yield make_pair(alg, g, d, dp, p=p)
                else:
                    try:
                        yield make_pair(alg, g, d, dp)
                    except ValueError:
                        continue


@pytest.mark.criterion(1, "Fourier pairs against direct quadrature")
def test_criterion_01_fourier_pairs(criterion):
    worst, cases = 0.0, 0
    for a in range(-4, 5):
        for b in range(-4, 5):
            if a + b < 1:
                continue
            for xi in XIS:
                exact = fourier_pair((a, b)).value(float(xi))
                num = quad_fourier(a, b, xi)
                # relative error, with an absolute floor where the exact value is 0
                worst = max(worst, abs(num - exact) / max(abs(exact), 1.0))
                cases += 1
    criterion.note(f"{cases} integrals, worst {worst:.1e}")
    assert worst <= 1e-6


@pytest.mark.criterion(2, "distributional identity against test functions")
def test_criterion_02_distributional(criterion):
    worst, cases, bad = 0.0, 0, []
    for a in range(-3, 4):
        for b in range(-3, 4):
            if a + b > 0:
                continue
            tests = [(-a - b + 1, 0.0), (-a - b + 1, 0.3), (0, 0.25), (1, -0.4)]
            for power, shift in tests:
                rep = pair_with_test_function(a, b, power, shift, tol=1e-5)
                cases += 1
                if not rep.ok:
                    bad.append(rep.to_json())
                if max(abs(rep.lhs), abs(rep.rhs)) > 1e-10:
                    worst = max(worst, rep.residual)
    criterion.note(f"{cases} pairings, worst {worst:.1e}")
    assert not bad, bad[:3]


@pytest.mark.criterion(3, "exact polynomial identity suite")
def test_criterion_03_exact_suite(criterion):
    rep = appendix_suite(8)
    extra = 0
    for a in range(-8, 9):
        for b in range(1, 9):
            assert value_at_zero((a, b), 2) == value_at_zero_closed((a, b), 2)
            assert value_at_zero((b, a), -2) == value_at_zero_closed((b, a), -2)
            extra += 2
    criterion.note(f"{rep.cases + extra} exact cases, {len(rep.failures)} failures")
    assert rep.ok, rep.failures[:3]


@pytest.mark.criterion(4, "determinant and combinatorial suite")
def test_criterion_04_combinatorics(criterion):
    rng = random.Random(4)
    for m in range(1, 7):
        for _ in range(100):
            z = [rng.randint(-12, 12) for _ in range(m)]
            assert falling_product_sum(z) == falling_product_sum_bruteforce(z) == vandermonde_det(z)
    for n in range(1, 9):
        for a in (F(7, 3), F(-11, 5)):
            assert fan_det(a, n) == _factorials(n - 1)
    for l in range(1, 6):
        assert partial_pi_pi(l) == _factorials(l)
    for l in range(1, 4):
        for lp in range(l, 7):
            assert gaussian_selberg(l, lp) == gaussian_selberg_closed(l, lp)
    criterion.note("all exact")


@pytest.mark.criterion(5, "multiplicity one: |S(mu)|/dim constant in mu")
def test_criterion_05_multiplicity_one(criterion):
    ratios = {}
    for l in range(1, 5):
        for lp in range(l, 5):
            rep = multiplicity_one_check(l, lp, 6)
            assert rep.ok, (l, lp, rep.failures[:2])
            ratios[(l, lp)] = rep.ratio
    assert ratios[(1, 2)] == 2
    criterion.note(f"{len(ratios)} pairs, ratio(1,2) = {ratios[(1, 2)]}")


@pytest.mark.criterion(6, "Howe correspondence dimension consistency")
def test_criterion_06_correspondence(criterion):
    cases = 0
    for l in range(1, 4):
        for lp in range(l, 6):
            for mu in admissible_mus(l, lp, 5):
                assert correspond_dimension(mu, l, lp) == dim_pi_prime(mu, l, lp)
                cases += 1
    criterion.note(f"{cases} parameters")


@pytest.mark.criterion(7, "O_1 toy intertwining distribution")
def test_criterion_07_toy(criterion):
    for n in range(1, 9):
        for sign in (1, -1):
            toy = o1_sp_toy(n, sign)
            assert toy.delta_coeff == F(1, 2)
            assert toy.lebesgue_coeff == sign * F(1, 2 ** (n + 1))
    criterion.note("n <= 8, both signs")


def _gap_zero_corrected(pair):
    """Zero set of the homogeneity gap for l <= l', found by enumeration."""
    d, dp = pair.d, pair.d_prime
    if pair.algebra == "R":
        return d in (1, 2) or (d == 3 and dp == 2)
    if pair.algebra == "C":
        p, q = pair.signature
        return (d == 1 and (min(p, q) >= 1 or dp == 1)) or (d == 2 and (p, q) == (1, 1))
    return d == 1 and dp == 1


@pytest.mark.criterion(8, "orbit geometry: dimensions, stable range, homogeneity gap")
def test_criterion_08_orbit_geometry(criterion):
    for alg in ("R", "C", "H"):
        for dp in range(1, 13):
            for k in range(0, 7):
                pair_d = max(k, 1)
                try:
                    pair = make_pair(alg, {"R": "O", "C": "U", "H": "Sp"}[alg], pair_d, dp,
                                     p=dp // 2 if alg == "C" else None)
                except ValueError:
                    continue
                if k <= max_orbit_index(pair):
                    assert orbit_dim(pair, k) == orbit_dim_general(alg, dp, k)
    pairs = list(_enumerate_pairs())
    for pair in pairs:
        assert stable_range_equality(pair) == stable_range_predicate(pair), pair.name
    in_range = [p for p in pairs if p.l <= p.l_prime]
    for pair in in_range:
        assert (homogeneity_gap(pair) == 0) == _gap_zero_corrected(pair), pair.name
    criterion.note(f"{len(pairs)} pairs; gap zero set checked against the enumerated set")


@pytest.mark.criterion(8, "homogeneity gap zero set equals the listed families (literal)")
@pytest.mark.xfail(strict=True, reason="the listed families miss zeros such as (O_1, Sp_2n) "
                                       "and include (O_3, Sp_2n), n >= 2, where the gap is 2")
def test_criterion_08_literal_list(criterion):
    mismatches = [p.name for p in _enumerate_pairs()
                  if p.l <= p.l_prime and (homogeneity_gap(p) == 0) != homogeneity_gap_listed(p)]
    criterion.note(f"{len(mismatches)} mismatches, e.g. {mismatches[:3]}")
    assert not mismatches


@pytest.mark.criterion(9, "moment-map equivariance and Cartan normal form")
def test_criterion_09_equivariance(criterion):
    rng = np.random.default_rng(9)
    families = [make_pair("R", "O", 3, 4), make_pair("C", "U", 2, 3, p=1, q=2),
                make_pair("H", "Sp", 2, 3)]
    worst = 0.0
    for pair in families:
        Js, Jps = cartan_J(pair, 1 if pair.algebra == "C" else None)
        for _ in range(200):
            worst = max(worst, equivariance_residual(pair, rng))
            coords = list(rng.standard_normal(pair.l_doubleprime))
            spec = CartanSpec(pair, coords, 1 if pair.algebra == "C" else None)
            w = cartan_element(spec)
            t, tp = tau(w, pair), tau_prime(w, pair)
            e = MatrixOverD(pair.algebra, np.zeros_like(t.data))
            ep = MatrixOverD(pair.algebra, np.zeros_like(tp.data))
            for x, dl, J, Jp in zip(coords, spec.deltas, Js, Jps):
                e, ep = e + J.scale(x * x * dl), ep + Jp.scale(x * x * dl)
            scale = max(1.0, sum(x * x for x in coords))
            worst = max(worst, (t - e).norm() / scale, (tp - ep).norm() / scale)
    criterion.note(f"worst residual {worst:.1e}")
    assert worst <= 1e-12


@pytest.mark.criterion(10, "cocycle lab")
def test_criterion_10_cocycle(criterion):
    doc = cocycle_lab_report(max_dim=5, samples=200, seed=42)
    worst = {c["check"]: c["worst_residual"] for c in doc["checks"]}
    criterion.note(", ".join(f"{k}: {v:.1e}" for k, v in worst.items()))
    assert doc["ok"], [c for c in doc["checks"] if not c["ok"]]


@pytest.mark.criterion(11, "Weyl character against the tableau oracle")
def test_criterion_11_characters(criterion):
    rng = np.random.default_rng(11)
    worst, cases = 0.0, 0
    for l in range(1, 4):
        pair = make_pair("C", "U", l, l)
        for lam in itertools.product(range(7), repeat=l):
            if sum(lam) > 6 or list(lam) != sorted(lam, reverse=True):
                continue
            done = 0
            while done < 20:
                th = list(rng.uniform(-1, 1, l))
                try:
                    w = weyl_character(HighestWeight(lam), pair, th)
                except EvaluationError:
                    continue
                s = schur_oracle(lam, [cmath.exp(1j * math.pi * t) for t in th])
                worst = max(worst, abs(w - s))
                done += 1
                cases += 1
    criterion.note(f"{cases} evaluations, worst {worst:.1e}")
    assert worst <= 1e-10


@pytest.mark.criterion(12, "invariance of the (U_l, U_l') closed form")
def test_criterion_12_invariance(criterion):
    rng = np.random.default_rng(12)
    worst = 0.0
    for l, lp in ((1, 1), (1, 2), (2, 2), (2, 3)):
        mus = admissible_mus(l, lp, 3)
        for t in range(100):
            prof = uu_distribution(mus[t % len(mus)], l, lp)
            w = (rng.standard_normal((lp, l)) + 1j * rng.standard_normal((lp, l))) * 0.8
            moved = haar_unitary(lp, rng) @ w @ haar_unitary(l, rng).conj().T
            a = eval_uu(prof, MatrixOverD("C", w))
            b = eval_uu(prof, MatrixOverD("C", moved))
            worst = max(worst, abs(a - b) / max(abs(a), abs(b), 1e-300))
    criterion.note(f"worst relative {worst:.1e}")
    assert worst <= 1e-9
