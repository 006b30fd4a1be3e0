"""Dual-pair descriptors and root-system data of the compact member.

Coordinates: a point of the elliptic Cartan subalgebra is written
``sum_j y_j J_j`` and a weight ``mu`` acts on the torus point with angles
``theta`` by ``xi_mu = exp(i sum_j mu_j theta_j)``.
"""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .scalar_algebra import (MultiPoly, PiScalar, SignedPermutation, rat,
                             signed_permutations)
from .special_functions import IdentityReport

__all__ = [
    "DualPair",
    "HCParam",
    "HighestWeight",
    "make_pair",
    "rho",
    "rho_for",
    "rho_doubleprime",
    "positive_roots",
    "pi_g_h",
    "pi_gprime_zprime",
    "pi_gprime_hprime_bis",
    "pi_g_z_bis",
    "pi_s0_h2",
    "weyl_group",
    "weyl_sign",
    "character_group",
    "weyl_denominator",
    "weyl_character",
    "weyl_dimension",
    "weyl_dimension_hc",
    "dim_pi_prime",
    "degree_relation_check",
    "dimension_identity_check",
    "dims",
    "EvaluationError",
]

ALGEBRAS = ("R", "C", "H")
FAMILIES = ("O_even", "O_odd", "U", "Sp")


class EvaluationError(ArithmeticError):
    """Raised when a character is evaluated too close to a singular point."""


@dataclass(frozen=True)
class DualPair:
    """An irreducible dual pair (G, G') with G compact.

    ``d`` and ``d_prime`` are the dimensions over the division algebra of the
    spaces on which G and G' act: (O_d, Sp_{d'}(R)), (U_d, U_{p,q}) with
    p + q = d', (Sp_d, O*_{2d'}).
    """

    algebra: str
    g_family: str
    d: int
    d_prime: int
    signature: Optional[Tuple[int, int]] = None

    def __post_init__(self):
        if self.algebra not in ALGEBRAS or self.g_family not in FAMILIES:
            raise ValueError(f"unknown algebra/family {self.algebra}/{self.g_family}")
        expected = {"O_even": "R", "O_odd": "R", "U": "C", "Sp": "H"}[self.g_family]
        if expected != self.algebra:
            raise ValueError(f"{self.g_family} lives over {expected}")
        if self.d < 1 or self.d_prime < 1:
            raise ValueError("dimensions must be positive")
        if self.g_family == "O_even" and self.d % 2:
            raise ValueError("O_even needs even d")
        if self.g_family == "O_odd" and self.d % 2 == 0:
            raise ValueError("O_odd needs odd d")
        if self.algebra == "R" and self.d_prime % 2:
            raise ValueError("Sp_{d'}(R) needs even d'")
        if self.algebra == "C":
            sig = self.signature if self.signature is not None else (0, self.d_prime)
            p, q = int(sig[0]), int(sig[1])
            if p < 0 or q < 0 or p + q != self.d_prime:
                raise ValueError("signature must satisfy p + q = d'")
            object.__setattr__(self, "signature", (p, q))
        elif self.signature is not None:
            raise ValueError("signature only applies to D = C")

    # derived constants
    @property
    def l(self) -> int:
        return self.d // 2 if self.algebra == "R" else self.d

    @property
    def l_prime(self) -> int:
        return self.d_prime // 2 if self.algebra == "R" else self.d_prime

    @property
    def l_doubleprime(self) -> int:
        return min(self.l, self.l_prime)

    @property
    def r(self) -> Fraction:
        if self.algebra == "R":
            return Fraction(self.d - 1)
        if self.algebra == "C":
            return Fraction(self.d)
        return Fraction(2 * self.d + 1, 2)

    @property
    def iota(self) -> Fraction:
        return Fraction(1, 2) if self.algebra == "H" else Fraction(1)

    @property
    def delta(self) -> Fraction:
        return (self.d_prime - self.r + self.iota) / (2 * self.iota)

    @property
    def beta_pi_multiple(self) -> Fraction:
        """beta = pi / iota, returned as the multiple of pi."""
        return 1 / self.iota

    @property
    def beta(self) -> PiScalar:
        return PiScalar(self.beta_pi_multiple, 1, 0)

    @property
    def dim_R_D(self) -> int:
        return {"R": 1, "C": 2, "H": 4}[self.algebra]

    @property
    def witt_index(self) -> int:
        """Witt index of the form preserved by G'."""
        if self.algebra == "R":
            return self.d_prime // 2
        if self.algebra == "C":
            return min(self.signature)
        return self.d_prime // 2

    @property
    def name(self) -> str:
        g = {"O_even": "O", "O_odd": "O", "U": "U", "Sp": "Sp"}[self.g_family]
        if self.algebra == "R":
            gp = f"Sp_{self.d_prime}(R)"
        elif self.algebra == "C":
            gp = f"U_{{{self.signature[0]},{self.signature[1]}}}"
        else:
            gp = f"O*_{2 * self.d_prime}"
        return f"({g}_{self.d}, {gp})"

    def to_json(self) -> dict:
        from .scalar_algebra import rat_str
        out = {
            "pair": self.name,
            "algebra": self.algebra,
            "g_family": self.g_family,
            "d": self.d,
            "d_prime": self.d_prime,
            "l": self.l,
            "l_prime": self.l_prime,
            "r": rat_str(self.r),
            "iota": rat_str(self.iota),
            "delta": rat_str(self.delta),
            "beta_pi_multiple": rat_str(self.beta_pi_multiple),
        }
        if self.signature is not None:
            out["signature"] = list(self.signature)
        return out


def make_pair(algebra: str, g: str, d: int, d_prime: int,
              p: Optional[int] = None, q: Optional[int] = None) -> DualPair:
    """Build a DualPair from CLI-style tokens (``g`` in {O, U, Sp})."""
    algebra = algebra.upper()
    if g == "O":
        fam = "O_even" if d % 2 == 0 else "O_odd"
    elif g in FAMILIES:
        fam = g
    else:
        fam = {"U": "U", "Sp": "Sp", "SP": "Sp"}.get(g.upper() if g != "Sp" else g)
        if fam is None:
            raise ValueError(f"unknown group {g}")
    sig = None
    if algebra == "C":
        if p is None and q is None:
            sig = (0, d_prime)
        else:
            p = d_prime - q if p is None else p
            q = d_prime - p if q is None else q
            sig = (p, q)
    return DualPair(algebra, fam, d, d_prime, sig)


@dataclass(frozen=True)
class HCParam:
    """Strictly decreasing Harish-Chandra parameter."""

    entries: Tuple[Fraction, ...]

    def __post_init__(self):
        e = tuple(rat(x) for x in self.entries)
        if any(e[j] <= e[j + 1] for j in range(len(e) - 1)):
            raise ValueError(f"HC parameter must be strictly decreasing: {e}")
        object.__setattr__(self, "entries", e)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, j):
        return self.entries[j]


@dataclass(frozen=True)
class HighestWeight:
    """Weakly decreasing highest weight with integral gaps."""

    entries: Tuple[Fraction, ...]

    def __post_init__(self):
        e = tuple(rat(x) for x in self.entries)
        for j in range(len(e) - 1):
            gap = e[j] - e[j + 1]
            if gap < 0 or gap.denominator != 1:
                raise ValueError(f"highest weight gaps must be in Z>=0: {e}")
        object.__setattr__(self, "entries", e)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


# --------------------------------------------------------------------------
# rho and roots
# --------------------------------------------------------------------------


def rho_for(family: str, d: int) -> List[Fraction]:
    """rho of the compact group of the given family acting on D^d."""
    if family in ("O_even", "O_odd", "O"):
        return [Fraction(d, 2) - j for j in range(1, d // 2 + 1)]
    if family == "U":
        return [Fraction(d + 1, 2) - j for j in range(1, d + 1)]
    if family == "Sp":
        return [Fraction(d + 1 - j) for j in range(1, d + 1)]
    raise ValueError(f"unknown family {family}")


def rho(pair: DualPair) -> List[Fraction]:
    """rho for the compact member G."""
    return rho_for(pair.g_family, pair.d)


def rho_doubleprime(l: int, l_prime: int) -> List[Fraction]:
    """rho of u_{l'-l}: entries (l'-l+1-2j)/2, j = 1..l'-l.

    Raises
    ------
    ValueError
        If l >= l'.
    """
    if l >= l_prime:
        raise ValueError("rho_doubleprime needs l < l'")
    n = l_prime - l
    return [Fraction(n + 1 - 2 * j, 2) for j in range(1, n + 1)]


def root_type(family: str, d: int) -> str:
    """Dynkin type letter of the complexified Lie algebra of the compact group."""
    if family == "U":
        return "A"
    if family == "Sp":
        return "C"
    return "D" if d % 2 == 0 else "B"


def positive_roots(kind: str, n: int) -> List[Tuple[int, ...]]:
    """Positive roots as integer vectors in n coordinates.

    ``kind`` is one of "A" (gl_n: e_j - e_k), "B", "C", "D".
    """
    roots = []
    for j in range(n):
        for k in range(j + 1, n):
            v = [0] * n
            v[j], v[k] = 1, -1
            roots.append(tuple(v))
            if kind != "A":
                v = [0] * n
                v[j], v[k] = 1, 1
                roots.append(tuple(v))
    if kind in ("B", "C"):
        for j in range(n):
            v = [0] * n
            v[j] = 1 if kind == "B" else 2
            roots.append(tuple(v))
    return roots


# --------------------------------------------------------------------------
# products of positive roots
# --------------------------------------------------------------------------


def _y(n, j, c=1):
    return MultiPoly.var(n, j, c)


def _pair_product(n: int, squares: bool) -> MultiPoly:
    """prod_{j<k} i(-y_j+y_k) (squares=False) or prod_{j<k} (-y_j^2+y_k^2)."""
    out = MultiPoly.const(n, 1)
    for j in range(n):
        for k in range(j + 1, n):
            if squares:
                out = out * (-(_y(n, j) ** 2) + _y(n, k) ** 2)
            else:
                out = out * ((-_y(n, j) + _y(n, k)) * PiScalar(1, 0, 1))
    return out


def _power_each(n: int, base, e: int) -> MultiPoly:
    """prod_j base(j)^e."""
    if e < 0:
        raise ValueError("negative exponent in root product")
    out = MultiPoly.const(n, 1)
    for j in range(n):
        out = out * base(j) ** e
    return out


def pi_g_h(pair: DualPair) -> MultiPoly:
    """Product of the positive roots of g on its elliptic Cartan subalgebra."""
    l = pair.l
    i_ = PiScalar(1, 0, 1)
    if pair.algebra == "C":
        return _pair_product(l, squares=False)
    base = _pair_product(l, squares=True)
    if pair.algebra == "H":
        return base * _power_each(l, lambda j: _y(l, j, i_ * 2), 1)
    if pair.g_family == "O_even":
        return base
    return base * _power_each(l, lambda j: _y(l, j, i_), 1)


def pi_gprime_zprime(pair: DualPair) -> MultiPoly:
    """Product of the roots of h in g'/z' (hypothesis l <= l').

    Raises
    ------
    ValueError
        If l > l'; use :func:`pi_gprime_hprime_bis` and :func:`pi_g_z_bis`.
    """
    l, lp = pair.l, pair.l_prime
    if l > lp:
        raise ValueError("pi_gprime_zprime is keyed to l <= l'")
    i_ = PiScalar(1, 0, 1)
    e = pair.d_prime - pair.d
    if pair.algebra == "C":
        return _pair_product(l, False) * _power_each(l, lambda j: _y(l, j, -i_), e)
    base = _pair_product(l, True)
    if pair.algebra == "H":
        return base * _power_each(l, lambda j: -(_y(l, j) ** 2), e)
    two_iy = _power_each(l, lambda j: _y(l, j, i_ * 2), 1)
    if pair.g_family == "O_even":
        return base * two_iy * _power_each(l, lambda j: _y(l, j, i_), e)
    return base * two_iy * _power_each(l, lambda j: _y(l, j, i_), e + 1)


def pi_gprime_hprime_bis(pair: DualPair) -> MultiPoly:
    """Product of positive roots of g' on h' = h when l > l' (l' variables)."""
    if pair.l <= pair.l_prime:
        raise ValueError("keyed to l > l'")
    lp = pair.l_prime
    i_ = PiScalar(1, 0, 1)
    if pair.algebra == "C":
        return _pair_product(lp, False)
    base = _pair_product(lp, True)
    if pair.algebra == "H":
        return base
    return base * _power_each(lp, lambda j: _y(lp, j, i_ * 2), 1)


def pi_g_z_bis(pair: DualPair, literal: bool = False) -> MultiPoly:
    """Product of the roots of h' in g/z when l > l' (l' variables).

    For so_{2l+1} the printed table multiplies prod_j i y_j by
    prod_j (i y_j)^{d-d'}; restricting the B_l roots to the first l'
    coordinates gives prod_j (i y_j)^{d-d'} only (the short roots e_j and the
    2(l-l') roots e_j +- e_k, k > l', together). ``literal=True`` returns the
    printed version.
    """
    if pair.l <= pair.l_prime:
        raise ValueError("keyed to l > l'")
    lp = pair.l_prime
    i_ = PiScalar(1, 0, 1)
    e = pair.d - pair.d_prime
    if pair.algebra == "C":
        return _pair_product(lp, False) * _power_each(lp, lambda j: _y(lp, j, -i_), e)
    base = _pair_product(lp, True)
    if pair.algebra == "H":
        return (base * _power_each(lp, lambda j: _y(lp, j, i_ * 2), 1)
                * _power_each(lp, lambda j: -(_y(lp, j) ** 2), e))
    if pair.g_family == "O_even":
        return base * _power_each(lp, lambda j: _y(lp, j, i_), e)
    extra = 1 if literal else 0
    return (base * _power_each(lp, lambda j: _y(lp, j, i_), extra)
            * _power_each(lp, lambda j: _y(lp, j, i_), e))


def cartan_signs(pair: DualPair, m: Optional[int] = None) -> List[int]:
    """delta_j: the first m are +1, the rest -1 (D = C); all +1 otherwise."""
    l2 = pair.l_doubleprime
    if pair.algebra != "C":
        return [1] * l2
    p, q = pair.signature
    lo, hi = max(l2 - q, 0), min(p, l2)
    if m is None:
        m = hi
    if not lo <= m <= hi:
        raise ValueError(f"m must lie in [{lo}, {hi}]")
    return [1] * m + [-1] * (l2 - m)


def pi_s0_h2(pair: DualPair, m: Optional[int] = None) -> MultiPoly:
    """pi_{s0/h1^2}(w^2) as a polynomial in w_1..w_l (case l <= l').

    The D = C row uses delta_k w_k^2 in the second slot of each pair factor.
    """
    l = pair.l
    if l > pair.l_prime:
        raise ValueError("keyed to l <= l'")
    i_ = PiScalar(1, 0, 1)
    dl = cartan_signs(pair, m)
    e = pair.d_prime - pair.d
    w2 = [MultiPoly.var(l, j) ** 2 for j in range(l)]
    w4 = [x * x for x in w2]
    one = MultiPoly.const(l, 1)
    if pair.algebra == "C":
        pp = one
        for j in range(l):
            for k in range(j + 1, l):
                pp = pp * ((w2[j] * (-dl[j]) + w2[k] * dl[k]) * i_)
        out = pp * pp
        for j in range(l):
            out = out * (w2[j] * (-i_ * dl[j])) ** e
        return out
    pp = one
    for j in range(l):
        for k in range(j + 1, l):
            pp = pp * (-w4[j] + w4[k])
    out = pp * pp
    if pair.algebra == "H":
        for j in range(l):
            out = out * (w2[j] * (i_ * 2)) * (-w4[j]) ** e
        return out
    for j in range(l):
        out = out * (w2[j] * (i_ * 2))
        if pair.g_family == "O_even":
            out = out * (w2[j] * i_) ** e
        else:
            out = out * (w2[j] * i_) * (w2[j] * i_) ** (e + 1)
    return out


# --------------------------------------------------------------------------
# Weyl groups and characters
# --------------------------------------------------------------------------


def weyl_group(pair: DualPair) -> List[SignedPermutation]:
    """W(G, h): S_l for D = C, signed permutations otherwise."""
    return list(signed_permutations(pair.l, with_signs=pair.algebra != "C"))


def weyl_sign(pair: DualPair, s: SignedPermutation, _cache={}) -> int:
    """sgn_{g/h}(s), read off from the action of s on pi_{g/h}."""
    key = (pair.algebra, pair.g_family, pair.l)
    pi = _cache.get(key)
    if pi is None:
        pi = _cache[key] = pi_g_h(pair)
    moved = pi.substitute_signed_perm(s)
    if moved == pi:
        return 1
    if moved == -pi:
        return -1
    raise ValueError("pi_{g/h} is not skew under this element")


def character_group(pair: DualPair) -> List[SignedPermutation]:
    """The Weyl group of the identity component used in character sums.

    Equals :func:`weyl_group` except for O_even, where only even numbers of
    sign changes occur (type D).
    """
    even = pair.g_family == "O_even"
    return list(signed_permutations(pair.l, with_signs=pair.algebra != "C",
                                    even_signs=even))


def _roots_for(pair: DualPair):
    return positive_roots(root_type(pair.g_family, pair.d), pair.l)


def _xi(weight: Sequence, theta: Sequence[float]) -> complex:
    return cmath.exp(1j * sum(float(w) * t for w, t in zip(weight, theta)))


def weyl_denominator(pair: DualPair, torus_angles: Sequence) -> complex:
    """Delta = xi_rho prod_{alpha>0} (1 - xi_{-alpha}); angles in units of pi."""
    theta = [math.pi * float(rat(a)) if not isinstance(a, float) else math.pi * a
             for a in torus_angles]
    val = _xi(rho(pair), theta)
    for alpha in _roots_for(pair):
        val *= 1 - _xi([-x for x in alpha], theta)
    return val


def weyl_character(lam: HighestWeight, pair: DualPair, torus_angles: Sequence,
                   tol: float = 1e-9) -> complex:
    """Weyl character formula at a torus point (angles in units of pi).

    Raises
    ------
    EvaluationError
        If |Delta| is below ``tol``.
    """
    theta = [math.pi * float(a) for a in torus_angles]
    mu = [x + r for x, r in zip(lam, rho(pair))]
    den = weyl_denominator(pair, [float(a) for a in torus_angles])
    if abs(den) < tol:
        raise EvaluationError("Weyl denominator too small; resample")
    num = 0j
    for s in character_group(pair):
        num += weyl_sign(pair, s) * _xi(s.act(mu), theta)
    return num / den


def weyl_dimension_hc(mu: Sequence, family: str, d: int) -> Fraction:
    """prod_{alpha>0} <mu, alpha> / <rho, alpha> for an HC parameter mu."""
    mu = [rat(x) for x in mu]
    r = rho_for(family, d)
    num = Fraction(1)
    den = Fraction(1)
    for alpha in positive_roots(root_type(family, d), len(r)):
        num *= sum(a * m for a, m in zip(alpha, mu))
        den *= sum(a * x for a, x in zip(alpha, r))
    return num / den


def weyl_dimension(lam: HighestWeight, pair: DualPair) -> Fraction:
    """Weyl dimension formula for the highest weight lambda of G."""
    mu = [x + r for x, r in zip(lam, rho(pair))]
    return weyl_dimension_hc(mu, pair.g_family, pair.d)


def dim_pi_prime(mu: Sequence, l: int, l_prime: int) -> Fraction:
    """Dimension of the U_{l'} representation attached to mu (pair (U_l, U_l')).

    [1/prod_{j=1}^l (l'-j)!] prod_j (delta+mu_j-1)!/(mu_j-delta)!
    prod_{j<k} (mu_j - mu_k), with delta = (l'-l+1)/2.

    Raises
    ------
    ValueError
        If some mu_j is not in delta + Z>=0.
    """
    mu = [rat(x) for x in mu]
    delta = Fraction(l_prime - l + 1, 2)
    out = Fraction(1)
    for j in range(1, l + 1):
        out /= math.factorial(l_prime - j)
    for m in mu:
        n = m - delta
        if n.denominator != 1 or n < 0:
            raise ValueError(f"mu_j = {m} is not in delta + Z>=0 (delta = {delta})")
        out *= Fraction(math.factorial(int(delta + m - 1)), math.factorial(int(n)))
    for j in range(l):
        for k in range(j + 1, l):
            out *= mu[j] - mu[k]
    return out


# --------------------------------------------------------------------------
# structural checks
# --------------------------------------------------------------------------


def dims(pair: DualPair) -> dict:
    """Real dimensions used in the dimension identity."""
    d, dp, l, lp = pair.d, pair.d_prime, pair.l, pair.l_prime
    if pair.algebra == "R":
        dim_g, dim_gp = d * (d - 1) // 2, lp * (2 * lp + 1)
        dim_zp = l + (lp - l) * (2 * (lp - l) + 1) if l <= lp else None
    elif pair.algebra == "C":
        dim_g, dim_gp = d * d, dp * dp
        dim_zp = l + (dp - l) ** 2 if l <= lp else None
    else:
        dim_g, dim_gp = d * (2 * d + 1), dp * (2 * dp - 1)
        dim_zp = l + (dp - l) * (2 * (dp - l) - 1) if l <= lp else None
    s1 = 2 * (lp - l) if pair.g_family == "O_odd" and l <= lp else 0
    return {"W": d * dp * pair.dim_R_D, "g": dim_g, "g_prime": dim_gp, "z_prime": dim_zp,
            "h": l, "s1_V0": s1}


def degree_relation_check(pair: DualPair) -> IdentityReport:
    """max_j deg_{y_j} pi_{g/h} = (r - 1)/iota."""
    rep = IdentityReport("degree-relation")
    pi = pi_g_h(pair)
    got = max((pi.degree_in(j) for j in range(pair.l)), default=0)
    want = (pair.r - 1) / pair.iota
    rep.record(Fraction(got) == want, pair=pair.name, got=got, want=str(want))
    return rep


def dimension_identity_check(pair: DualPair) -> IdentityReport:
    """dim W = dim g + dim g'/z' + dim h + dim s1(V0), for l <= l'.

    dim g'/z' is computed twice: from closed forms and as twice the degree of
    pi_{g'/z'} (number of positive roots of h in g'/z').
    """
    rep = IdentityReport("dimension-identity")
    if pair.l > pair.l_prime:
        raise ValueError("dimension identity needs l <= l'")
    dm = dims(pair)
    gz_closed = dm["g_prime"] - dm["z_prime"]
    gz_roots = 2 * max(pi_gprime_zprime(pair).total_degree(), 0)
    rep.record(gz_closed == gz_roots, pair=pair.name, check="g'/z' two ways",
               closed=gz_closed, roots=gz_roots)
    total = dm["g"] + gz_closed + dm["h"] + dm["s1_V0"]
    rep.record(total == dm["W"], pair=pair.name, check="dim W", lhs=dm["W"], rhs=total)
    return rep
