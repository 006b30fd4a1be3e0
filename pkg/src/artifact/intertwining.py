"""Intertwining distributions: exponents, the Howe parameter correspondence,
integrand profiles, the (U_l, U_l') closed form and multiplicity one.

Global constants (C, c_Pi) are tracked only up to modulus-one factors, so the
checks compare moduli and ratios rather than signed constants.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .root_data import (
    DualPair,
    HCParam,
    HighestWeight,
    dim_pi_prime,
    make_pair,
    pi_g_h,
    rho_doubleprime,
    rho_for,
    weyl_dimension,
)
from .scalar_algebra import (
    MultiPoly,
    PiScalar,
    UniPoly,
    divide_by_vandermonde,
    permutation_sign,
    rat,
    rat_str,
    signed_permutations,
)
from .special_functions import poly_P2, poly_Pm2, poly_Q
from .symplectic_geometry import MatrixOverD

__all__ = [
    "ABExponents",
    "IntegrandProfile",
    "UUProfile",
    "ToyDistribution",
    "MultiplicityReport",
    "uu_pair",
    "ab_exponents",
    "occurs_in_omega",
    "admissible",
    "vanishing_condition_l_gt_lprime",
    "vanishing_condition_bruteforce",
    "correspond",
    "correspond_dimension",
    "boundary_mask",
    "integrand_profile",
    "uu_distribution",
    "eval_uu",
    "T_at_zero_skew_sum",
    "falling_identity_lhs",
    "multiplicity_one_check",
    "admissible_mus",
    "o1_sp_toy",
]

PI = PiScalar(1, 1, 0)


def _as_hc(mu) -> HCParam:
    return mu if isinstance(mu, HCParam) else HCParam(tuple(mu))


def _integer(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise ValueError(f"{what} = {x} is not an integer")
    return int(x)


@dataclass(frozen=True)
class ABExponents:
    """Integer exponents (a_j, b_j) with an explicit convention tag.

    sec6: a_j = -mu_j - delta + 1, b_j = mu_j - delta + 1.
    sec7: a_j = mu_j - delta + 1, b_j = -mu_j - delta + 1.
    The two conventions differ by swapping a and b.
    """

    a: Tuple[int, ...]
    b: Tuple[int, ...]
    convention: str

    def __post_init__(self):
        if self.convention not in ("sec6", "sec7"):
            raise ValueError("convention must be 'sec6' or 'sec7'")
        if len(self.a) != len(self.b):
            raise ValueError("a and b must have equal length")

    def convert(self, convention: str) -> "ABExponents":
        if convention == self.convention:
            return self
        return ABExponents(self.b, self.a, convention)

    def to_json(self) -> dict:
        return {"a": list(self.a), "b": list(self.b), "convention": self.convention}


def ab_exponents(mu, delta, convention: str = "sec6") -> ABExponents:
    """Exponents attached to mu, delta in the requested convention."""
    mu = _as_hc(mu)
    delta = rat(delta)
    plus = [_integer(m - delta + 1, "mu_j - delta + 1") for m in mu]
    minus = [_integer(-m - delta + 1, "-mu_j - delta + 1") for m in mu]
    if convention == "sec6":
        return ABExponents(tuple(minus), tuple(plus), "sec6")
    return ABExponents(tuple(plus), tuple(minus), "sec7")


# --------------------------------------------------------------------------
# (U_l, U_l') bookkeeping
# --------------------------------------------------------------------------


def uu_pair(l: int, l_prime: int) -> DualPair:
    """(U_l, U_{0,l'}), the realization used by the closed form."""
    return make_pair("C", "U", l, l_prime, 0, l_prime)


def _uu_delta(l: int, l_prime: int) -> Fraction:
    return Fraction(l_prime - l + 1, 2)


def admissible(mu, l: int, l_prime: int) -> bool:
    """mu_j - delta in Z>=0 for every j."""
    delta = _uu_delta(l, l_prime)
    mu = _as_hc(mu)
    if len(mu) != l:
        raise ValueError("mu must have l entries")
    return all((m - delta).denominator == 1 and m - delta >= 0 for m in mu)


def occurs_in_omega(lam: HighestWeight, pair: DualPair) -> bool:
    """lambda_l >= l'/2 for (U_l, U_l'), l <= l'.

    Equivalent to mu = lambda + rho lying in delta + Z>=0 coordinatewise.

    Raises
    ------
    ValueError
        For families other than the unitary one, or l > l'.
    """
    if pair.algebra != "C":
        raise ValueError("occurrence criterion implemented only for (U_l, U_l')")
    if pair.l > pair.l_prime:
        raise ValueError("occurrence criterion needs l <= l'")
    lam = list(lam)
    if len(lam) != pair.l:
        raise ValueError("lambda must have l entries")
    return lam[-1] >= Fraction(pair.l_prime, 2)


def _rho_doubleprime_g(pair: DualPair) -> List[Fraction]:
    """rho of the compact group of the same family on D^{d-d'} (l > l')."""
    fam = pair.g_family
    if pair.algebra == "R":
        n = pair.d - pair.d_prime
        return rho_for("O", n)
    return rho_for(fam, pair.d - pair.d_prime)


def vanishing_condition_l_gt_lprime(mu, pair: DualPair) -> bool:
    """True iff some Weyl conjugate of mu restricts to rho'' on h''.

    h'' spans the last l - l' coordinates; rho'' is the rho of the compact
    group of the same type on D^{d-d'}. For D = C the Weyl group permutes;
    otherwise it also flips signs. The test is a bipartite matching of the
    entries of rho'' against distinct entries of mu.
    """
    if pair.l <= pair.l_prime:
        raise ValueError("vanishing condition needs l > l'")
    mu = [rat(x) for x in mu]
    target = _rho_doubleprime_g(pair)
    signed = pair.algebra != "C"
    used = [False] * len(mu)

    def match(t: int) -> bool:
        if t == len(target):
            return True
        for j, m in enumerate(mu):
            if not used[j] and (m == target[t] or (signed and -m == target[t])):
                used[j] = True
                if match(t + 1):
                    return True
                used[j] = False
        return False

    return match(0)


def vanishing_condition_bruteforce(mu, pair: DualPair) -> bool:
    """Same predicate by enumerating the Weyl group (oracle)."""
    mu = [rat(x) for x in mu]
    target = _rho_doubleprime_g(pair)
    k = len(target)
    for s in signed_permutations(len(mu), with_signs=pair.algebra != "C"):
        if list(s.act(mu))[len(mu) - k:] == target:
            return True
    return False


def correspond(mu, l: int, l_prime: int) -> HCParam:
    """Howe correspondence of HC parameters for (U_l, U_l'), l <= l'.

    mu' is the decreasing rearrangement of (-mu, rho''), with rho'' the rho
    of u_{l'-l}.

    Raises
    ------
    ValueError
        If mu is not admissible.
    """
    mu = _as_hc(mu)
    if l > l_prime:
        raise ValueError("correspond needs l <= l'")
    if not admissible(mu, l, l_prime):
        raise ValueError(f"mu = {[rat_str(m) for m in mu]} is not admissible")
    extra = rho_doubleprime(l, l_prime) if l < l_prime else []
    return HCParam(tuple(sorted([-m for m in mu] + list(extra), reverse=True)))


def correspond_dimension(mu, l: int, l_prime: int) -> Fraction:
    """Weyl dimension of the U_l' representation with HC parameter correspond(mu)."""
    mup = correspond(mu, l, l_prime)
    rho_p = rho_for("U", l_prime)
    lam = HighestWeight(tuple(m - r for m, r in zip(mup, rho_p)))
    return weyl_dimension(lam, make_pair("C", "U", l_prime, 1))


# --------------------------------------------------------------------------
# integrand profiles
# --------------------------------------------------------------------------


def boundary_mask(pair: DualPair, m: Optional[int] = None) -> List[bool]:
    """Coordinates j (0-based) whose boundary y_j = 0 is two-sided.

    For D = C with signature (p, q) this is max(l-q, 0) < j+1 <= min(p, l);
    for D = R, H every coordinate qualifies. ``m`` is accepted for symmetry
    with the Cartan data and does not change the mask.
    """
    l = pair.l_doubleprime
    if pair.algebra != "C":
        return [True] * l
    p, q = pair.signature
    lo, hi = max(l - q, 0), min(p, l)
    return [lo < j + 1 <= hi for j in range(l)]


@dataclass(frozen=True)
class IntegrandProfile:
    """u(y) = C prod_j (p_j(y_j) + q_j(-d/dy_j) delta_0(y_j)).

    p_j(y) = P_{a_j,b_j,2}(beta y) e^{-beta y} for y > 0 and
    P_{a_j,b_j,-2}(beta y) e^{beta y} for y < 0; the polynomials are stored
    with rational coefficients in the variable beta y. ``q`` holds the
    coefficients of the delta part (index k multiplies (-d/dy)^k delta_0).
    """

    pair: DualPair
    exponents: ABExponents
    p_plus: Tuple[UniPoly, ...]
    p_minus: Tuple[UniPoly, ...]
    q: Tuple[Tuple[PiScalar, ...], ...]
    beta: PiScalar
    mask: Tuple[bool, ...]

    def delta_degree(self, j: int) -> int:
        return len(self.q[j]) - 1

    def smooth_value(self, y: Sequence[float]) -> float:
        """prod_j p_j(y_j) at a point off the coordinate hyperplanes."""
        b = float(complex(self.beta).real)
        out = 1.0
        for j, yj in enumerate(y):
            t = b * yj
            if yj > 0:
                out *= float(self.p_plus[j](t)) * math.exp(-t)
            elif yj < 0:
                out *= float(self.p_minus[j](t)) * math.exp(t)
            else:
                raise ValueError("smooth part undefined on y_j = 0")
        return out

    def to_json(self) -> dict:
        return {
            "pair": self.pair.name,
            "exponents": self.exponents.to_json(),
            "p_plus": [p.to_json() for p in self.p_plus],
            "p_minus": [p.to_json() for p in self.p_minus],
            "q": [[c.to_json() for c in qj] for qj in self.q],
            "beta": self.beta.to_json(),
            "two_sided": list(self.mask),
        }


def integrand_profile(mu, pair: DualPair, m: Optional[int] = None,
                      convention: str = "sec6") -> IntegrandProfile:
    """Symbolic integrand of the l <= l' main formula.

    The delta part on coordinate j comes from the Fourier pair of
    (1+iy)^{-a}(1-iy)^{-b}, whose singular part is 2 pi Q(-d/dxi) delta_0;
    after xi = beta y the coefficient of (-d/dy)^k delta_0 is
    2 pi Q_k beta^{-1-k}. It is dropped on one-sided coordinates.
    """
    mu = _as_hc(mu)
    if pair.l > pair.l_prime:
        raise ValueError("integrand_profile needs l <= l'")
    if len(mu) != pair.l:
        raise ValueError("mu must have l entries")
    ab = ab_exponents(mu, pair.delta, convention)
    mask = boundary_mask(pair, m)
    beta = pair.beta
    plus, minus, qs = [], [], []
    for j, (a, b) in enumerate(zip(ab.a, ab.b)):
        plus.append(poly_P2((a, b)))
        minus.append(poly_Pm2((a, b)))
        Q = poly_Q((a, b))
        if not mask[j] or Q.is_zero():
            qs.append(())
            continue
        coeffs = []
        for k, c in enumerate(Q.coeffs):
            # delta(beta y) = delta(y)/beta and d/dxi = beta^{-1} d/dy
            coeffs.append(PiScalar(2 * c, 1, 0) * beta ** (-1 - k))
        qs.append(tuple(coeffs))
    return IntegrandProfile(pair, ab, tuple(plus), tuple(minus), tuple(qs), beta,
                            tuple(mask))


@dataclass(frozen=True)
class UUProfile:
    """exp(-(pi/2) <Jw, w>) Ptilde_mu(tau(w)) for (U_l, U_l')."""

    mu: HCParam
    l: int
    l_prime: int
    invariant_poly: MultiPoly
    gaussian_rate: PiScalar
    phase: PiScalar

    def real_poly(self) -> MultiPoly:
        """phase * Ptilde_mu, which has real coefficients."""
        return self.invariant_poly * self.phase

    def to_json(self) -> dict:
        return {
            "mu": [rat_str(m) for m in self.mu],
            "l": self.l,
            "l_prime": self.l_prime,
            "invariant_poly": self.invariant_poly.to_json(),
            "gaussian_rate": self.gaussian_rate.to_json(),
            "phase": self.phase.to_json(),
        }


def _p_mu(mu: HCParam, l: int, l_prime: int) -> MultiPoly:
    ab = ab_exponents(mu, _uu_delta(l, l_prime), "sec7")
    out = MultiPoly.const(l, 1)
    for j, (a, b) in enumerate(zip(ab.a, ab.b)):
        out = out * MultiPoly.from_unipoly(l, j, poly_Pm2((a, b)), PI)
    return out


def uu_distribution(mu, l: int, l_prime: int) -> UUProfile:
    """Closed form for (U_l, U_l'): Ptilde_mu = skew-sum(P_mu) / pi_{g/h}.

    P_mu(y) = prod_j P_{a_j,b_j,-2}(pi y_j) in the sec7 convention.

    Raises
    ------
    ValueError
        If mu is not admissible.
    DivisibilityError
        If the skew sum is not divisible (internal error).
    """
    mu = _as_hc(mu)
    if not admissible(mu, l, l_prime):
        raise ValueError("mu is not admissible")
    P = _p_mu(mu, l, l_prime)
    group = list(signed_permutations(l, with_signs=False))
    skew = MultiPoly(l)
    for s in group:
        skew = skew + P.substitute_signed_perm(s) * s.perm_sign()
    pi = pi_g_h(uu_pair(l, l_prime))
    quot = divide_by_vandermonde(skew, group, divisor=pi)
    n_pos = l * (l - 1) // 2
    return UUProfile(mu, l, l_prime, quot, PiScalar(Fraction(1, 2), 1, 0),
                     PiScalar(1, 0, n_pos))


def eval_uu(profile: UUProfile, w: MatrixOverD) -> float:
    """Numeric value at w (an l' x l complex matrix).

    tau(w) = conj(w)^t F w with F = -i I has eigenvalues i y_j,
    y_j = -(eigenvalues of w^H w). The returned value is
    exp(-(pi/2) tr(w w^H)) * phase * Ptilde_mu(y), which is real.
    """
    l, lp = profile.l, profile.l_prime
    data = np.asarray(w.data, dtype=complex)
    if data.shape != (lp, l):
        raise ValueError(f"w must be {lp} x {l}")
    gram = data.conj().T @ data
    y = -np.linalg.eigvalsh(gram)
    rate = float(complex(profile.gaussian_rate).real)
    val = complex(profile.real_poly().evaluate(list(y)))
    return float(math.exp(-rate * float(np.trace(gram).real)) * val.real)


def T_at_zero_skew_sum(mu, l: int, l_prime: int) -> Fraction:
    """S(mu) = sum_s sgn(s) prod_j [d^{s(j)-1} P_{a_j,b_j,-2}](0), sec7 exponents."""
    mu = _as_hc(mu)
    if not admissible(mu, l, l_prime):
        raise ValueError("mu is not admissible")
    ab = ab_exponents(mu, _uu_delta(l, l_prime), "sec7")
    # derivative tables
    tables = []
    for a, b in zip(ab.a, ab.b):
        p = poly_Pm2((a, b))
        vals = []
        for _ in range(l):
            vals.append(p(Fraction(0)))
            p = p.derivative()
        tables.append(vals)
    total = Fraction(0)
    for perm in itertools.permutations(range(l)):
        term = Fraction(permutation_sign(perm))
        for j, s in enumerate(perm):
            term *= tables[j][s]
        total += term
    return total


def falling_identity_lhs(mu, l: int, l_prime: int) -> Fraction:
    """sum_s sgn(s) prod_j (mu_j - delta)! / (mu_j - s(j) - delta + 1)!.

    Terms with a negative factorial in the denominator vanish.
    """
    mu = _as_hc(mu)
    delta = _uu_delta(l, l_prime)
    n = [_integer(m - delta, "mu_j - delta") for m in mu]
    total = Fraction(0)
    for perm in itertools.permutations(range(l)):
        term = Fraction(permutation_sign(perm))
        for j, s in enumerate(perm):
            den = n[j] - s  # s = s(j) - 1, 0-based
            if den < 0:
                term = Fraction(0)
                break
            term *= Fraction(math.factorial(n[j]), math.factorial(den))
        total += term
    return total


def admissible_mus(l: int, l_prime: int, max_shift: int) -> List[HCParam]:
    """All strictly decreasing mu with mu_j - delta in {0, ..., max_shift}."""
    delta = _uu_delta(l, l_prime)
    out = []
    for combo in itertools.combinations(range(max_shift, -1, -1), l):
        out.append(HCParam(tuple(delta + c for c in combo)))
    return out


@dataclass
class MultiplicityReport:
    l: int
    l_prime: int
    cases: int = 0
    ratio: Optional[Fraction] = None
    identity_sign: Optional[int] = None
    failures: List[dict] = field(default_factory=list)
    sign_pattern: List[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and self.cases > 0

    def to_json(self) -> dict:
        return {
            "l": self.l,
            "l_prime": self.l_prime,
            "cases": self.cases,
            "ratio": None if self.ratio is None else rat_str(self.ratio),
            "identity_sign": self.identity_sign,
            "sign_pattern": self.sign_pattern,
            "failures": self.failures,
            "ok": self.ok,
        }


def multiplicity_one_check(l: int, l_prime: int, max_shift: int = 6) -> MultiplicityReport:
    """Check |S(mu)| / dim Pi'(mu) is constant and the falling identity.

    (i) falling_identity_lhs(mu) = sign_l prod_{j<k}(mu_j - mu_k) with one
    sign per l, fixed at the first mu of the sweep;
    (ii) |S(mu)| / dim_pi_prime(mu) is the same rational for every mu.
    """
    if not 1 <= l <= l_prime:
        raise ValueError("need 1 <= l <= l'")
    rep = MultiplicityReport(l, l_prime)
    for mu in admissible_mus(l, l_prime, max_shift):
        rep.cases += 1
        lhs = falling_identity_lhs(mu, l, l_prime)
        vdm = Fraction(1)
        for j in range(l):
            for k in range(j + 1, l):
                vdm *= mu[j] - mu[k]
        q = lhs / vdm
        if rep.identity_sign is None and abs(q) == 1:
            rep.identity_sign = int(q)
        if q != rep.identity_sign:
            rep.failures.append({"check": "falling identity", "mu": [rat_str(m) for m in mu],
                                 "lhs": rat_str(lhs), "vandermonde": rat_str(vdm)})
        S = T_at_zero_skew_sum(mu, l, l_prime)
        r = abs(S) / dim_pi_prime(mu, l, l_prime)
        rep.sign_pattern.append(1 if S > 0 else -1 if S < 0 else 0)
        if rep.ratio is None:
            rep.ratio = r
        elif r != rep.ratio or r == 0:
            rep.failures.append({"check": "ratio", "mu": [rat_str(m) for m in mu],
                                 "ratio": rat_str(r), "expected": rat_str(rep.ratio)})
    return rep


# --------------------------------------------------------------------------
# (O_1, Sp_2n) toy
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ToyDistribution:
    """delta_coeff * delta_0 + lebesgue_coeff * dw."""

    delta_coeff: Fraction
    lebesgue_coeff: Fraction

    def to_json(self) -> dict:
        return {"delta_coeff": rat_str(self.delta_coeff),
                "lebesgue_coeff": rat_str(self.lebesgue_coeff)}


def _toy_group(n: int):
    """The four elements (g, xi) of the double cover of O_1 in Mp_2n."""
    c = PiScalar(Fraction(1, 2 ** n), 0, n)
    return [(1, PiScalar(1)), (1, PiScalar(-1)), (-1, c), (-1, -c)]


def _toy_inverse(n: int, el):
    """Inverse from the group law (g1,x1)(g2,x2) = (g1g2, x1 x2 C(g1,g2)),
    C(1, .) = 1 and C(-1,-1) = 2^{2n}."""
    g, xi = el
    if g == 1:
        return (1, xi.inverse())
    return (-1, (xi * PiScalar(Fraction(2 ** (2 * n)))).inverse())


def o1_sp_toy(n: int, sign: int) -> ToyDistribution:
    """T(check Theta_Pi) = (1/4) sum_g Theta(g^{-1}) T(g) over the cover of O_1.

    Theta_{+}(g, eta) = eta/|eta| and Theta_{-}(g, eta) = g eta/|eta|;
    T(1, xi) = xi delta_0 and T(-1, xi) = xi dw.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    delta = PiScalar(0)
    leb = PiScalar(0)
    for el in _toy_group(n):
        g, xi = el
        gi, eta = _toy_inverse(n, el)
        unit = eta * PiScalar(1 / abs(eta.coeff))
        theta = unit * (gi if sign == -1 else 1)
        term = theta * xi
        if g == 1:
            delta = delta + term
        else:
            leb = leb + term
    delta = delta * Fraction(1, 4)
    leb = leb * Fraction(1, 4)
    for v in (delta, leb):
        if v.i_power or v.pi_power:
            raise ArithmeticError(f"toy coefficient is not rational: {v!r}")
    return ToyDistribution(delta.coeff, leb.coeff)
