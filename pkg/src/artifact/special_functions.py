"""Confluent hypergeometric polynomials and their Fourier pairs.

For integers a, b the function (1+iy)^{-a}(1-iy)^{-b} has a Fourier transform
of the form P(xi) e^{-|xi|} + Q(-d/dxi) delta_0, where P is a piecewise
polynomial built from two families P_{a,b,2} (xi > 0) and P_{a,b,-2}
(xi < 0) and Q vanishes unless a + b <= 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List

from .scalar_algebra import PiScalar, UniPoly, rat, rising

__all__ = [
    "ExponentPair",
    "LinePolyDistribution",
    "IdentityReport",
    "poly_P2",
    "poly_Pm2",
    "poly_Q",
    "fourier_pair",
    "value_at_zero",
    "value_at_zero_closed",
    "shift_identity_check",
    "derivative_identity_check",
    "reflection_check",
    "value_at_zero_bis",
    "appendix_suite",
    "TWO_PI",
]

TWO_PI = PiScalar(2, 1, 0)


@dataclass(frozen=True)
class ExponentPair:
    """The integer exponents (a, b) of (1+iy)^{-a}(1-iy)^{-b}."""

    a: int
    b: int

    def __post_init__(self):
        object.__setattr__(self, "a", int(self.a))
        object.__setattr__(self, "b", int(self.b))


@dataclass(frozen=True)
class LinePolyDistribution:
    """overall * (plus(xi) e^{-xi} 1_{xi>0} + minus(xi) e^{xi} 1_{xi<0}
    + delta(-d/dxi) delta_0)."""

    plus_part: UniPoly
    minus_part: UniPoly
    delta_part: UniPoly
    overall: PiScalar = TWO_PI

    def value(self, xi: float) -> complex:
        """Pointwise value of the smooth part away from zero."""
        if xi == 0:
            raise ValueError("the piecewise part is only defined off zero")
        scale = complex(self.overall)
        if xi > 0:
            return scale * self.plus_part(float(xi)) * math.exp(-xi)
        return scale * self.minus_part(float(xi)) * math.exp(xi)

    def one_sided_limit(self, side: int) -> complex:
        """Limit of the smooth part at 0 from the right (+1) or left (-1)."""
        p = self.plus_part if side > 0 else self.minus_part
        return complex(self.overall) * float(p(Fraction(0)))

    def to_json(self) -> dict:
        return {
            "plus": self.plus_part.to_json(),
            "minus": self.minus_part.to_json(),
            "delta": self.delta_part.to_json(),
            "overall": self.overall.to_json(),
        }


@dataclass
class IdentityReport:
    """Outcome of an exact identity check."""

    name: str
    cases: int = 0
    failures: List[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, ok: bool, **info):
        self.cases += 1
        if not ok:
            self.failures.append(info)

    def to_json(self) -> dict:
        return {"suite": self.name, "cases": self.cases, "failures": self.failures,
                "ok": self.ok}


def _ab(e) -> tuple:
    if isinstance(e, ExponentPair):
        return e.a, e.b
    a, b = e
    return int(a), int(b)


def poly_P2(e) -> UniPoly:
    """P_{a,b,2}: sum_{k<b} a^{(k)} / (k!(b-1-k)!) 2^{-a-k} xi^{b-1-k}."""
    a, b = _ab(e)
    if b <= 0:
        return UniPoly.zero()
    coeffs = [Fraction(0)] * b
    for k in range(b):
        c = rising(a, k) / (math.factorial(k) * math.factorial(b - 1 - k))
        coeffs[b - 1 - k] += c * Fraction(2) ** (-a - k)
    return UniPoly(coeffs)


def poly_Pm2(e) -> UniPoly:
    """P_{a,b,-2}: (-1)^{a+b-1} sum_{k<a} b^{(k)}/(k!(a-1-k)!) (-2)^{-b-k} xi^{a-1-k}."""
    a, b = _ab(e)
    if a <= 0:
        return UniPoly.zero()
    sign = -1 if (a + b - 1) % 2 else 1
    coeffs = [Fraction(0)] * a
    for k in range(a):
        c = rising(b, k) / (math.factorial(k) * math.factorial(a - 1 - k))
        coeffs[a - 1 - k] += sign * c * Fraction(-2) ** (-b - k)
    return UniPoly(coeffs)


def poly_Q(e) -> UniPoly:
    """Q_{a,b}/(2 pi) as a polynomial in x = iy.

    The 2 pi prefactor is returned separately by :func:`fourier_pair`
    (``overall``); this polynomial has rational coefficients.
    """
    a, b = _ab(e)
    one_minus = UniPoly((1, -1))
    one_plus = UniPoly((1, 1))
    if a + b >= 1:
        return UniPoly.zero()
    if b >= 1:
        # -a > b - 1 >= 0
        out = UniPoly.zero()
        for k in range(b, -a + 1):
            c = rising(a, k) / math.factorial(k) * Fraction(2) ** (-a - k)
            out = out + _power(one_minus, k - b) * c
        return out
    if a >= 1:
        out = UniPoly.zero()
        for k in range(a, -b + 1):
            c = rising(b, k) / math.factorial(k) * Fraction(2) ** (-b - k)
            out = out + _power(one_plus, k - a) * c
        return out
    return _power(one_plus, -a) * _power(one_minus, -b)


def _power(p: UniPoly, n: int) -> UniPoly:
    out = UniPoly.const(1)
    for _ in range(n):
        out = out * p
    return out


def fourier_pair(e) -> LinePolyDistribution:
    """Full distributional Fourier transform of (1+iy)^{-a}(1-iy)^{-b}.

    Convention: int f(y) e^{-iy xi} dy. All three parts share the factor 2 pi.
    """
    return LinePolyDistribution(poly_P2(e), poly_Pm2(e), poly_Q(e), TWO_PI)


def value_at_zero(e, branch: int) -> Fraction:
    """P_{a,b,2}(0) or P_{a,b,-2}(0), read off from the defining sums.

    Raises
    ------
    ValueError
        Unless b >= 1 for branch +2, or a >= 1 for branch -2.
    """
    a, b = _ab(e)
    if branch == 2:
        if b < 1:
            raise ValueError("value_at_zero(+2) needs b >= 1")
        return poly_P2((a, b))(Fraction(0))
    if branch == -2:
        if a < 1:
            raise ValueError("value_at_zero(-2) needs a >= 1")
        return poly_Pm2((a, b))(Fraction(0))
    raise ValueError("branch must be 2 or -2")


def value_at_zero_closed(e, branch: int) -> Fraction:
    """Closed form 2^{1-a-b} a^{(b-1)}/(b-1)! (and the mirror for -2)."""
    a, b = _ab(e)
    if branch == 2:
        if b < 1:
            raise ValueError("value_at_zero(+2) needs b >= 1")
        return Fraction(2) ** (1 - a - b) * rising(a, b - 1) / math.factorial(b - 1)
    if branch == -2:
        if a < 1:
            raise ValueError("value_at_zero(-2) needs a >= 1")
        return Fraction(2) ** (1 - a - b) * rising(b, a - 1) / math.factorial(a - 1)
    raise ValueError("branch must be 2 or -2")


def value_at_zero_bis(e, branch: int, printed_sign: bool = False) -> Fraction:
    """Binomial form of the value at 0 when the other exponent is <= 0.

    With ``printed_sign=False`` the sign is (-1)^{b-1} (branch +2) or
    (-1)^{a-1} (branch -2), which is what the defining sums give. The
    alternative (-1)^b / (-1)^a is kept only to document the discrepancy.
    """
    a, b = _ab(e)
    if branch == 2:
        n, top, k = b, -a, -a - b + 1
    else:
        n, top, k = a, -b, -a - b + 1
    if n < 1 or top < 0 or k < 0:
        raise ValueError("hypotheses of the binomial form not met")
    sign_exp = n if printed_sign else n - 1
    return (-1) ** sign_exp * Fraction(2) ** (1 - a - b) * math.comb(top, k)


def shift_identity_check(a: int, b: int, c: int) -> IdentityReport:
    """Check the shift identities on whichever hypotheses (a, b, c) satisfy.

    +2 branch (b >= 1, a+b+c = 1, c >= 0):
        P_{a,b,2} xi^c = 2^c (b+c-1)!/(b-1)! P_{a+c,b+c,2}
    -2 branch (a >= 1, a+b+c = 1, c >= 0):
        P_{a,b,-2} xi^c = (-1)^c 2^c (a+c-1)!/(a-1)! P_{a+c,b+c,-2}
    and its sign-flipped variant with (-xi)^c and no (-1)^c.

    The power of two is 2^c, not 2^{-c}: comparing coefficients of the two
    defining sums leaves 2^{-a-k} against 2^{-a-c-k}.
    """
    rep = IdentityReport("shift")
    if c < 0 or a + b + c != 1:
        return rep
    xi_c = UniPoly.monomial(c)
    if b >= 1:
        lhs = poly_P2((a, b)) * xi_c
        const = Fraction(math.factorial(b + c - 1) * 2 ** c, math.factorial(b - 1))
        rhs = poly_P2((a + c, b + c)) * const
        rep.record(lhs == rhs, branch=2, a=a, b=b, c=c)
    if a >= 1:
        const = Fraction(math.factorial(a + c - 1) * 2 ** c, math.factorial(a - 1))
        lhs = poly_Pm2((a, b)) * xi_c
        rhs = poly_Pm2((a + c, b + c)) * (const * (-1) ** c)
        rep.record(lhs == rhs, branch=-2, a=a, b=b, c=c)
        lhs_flip = poly_Pm2((a, b)) * UniPoly.monomial(c, (-1) ** c)
        rep.record(lhs_flip == poly_Pm2((a + c, b + c)) * const,
                   branch="-2 flipped", a=a, b=b, c=c)
    return rep


def derivative_identity_check(a: int, b: int) -> IdentityReport:
    """P'_{a,b,2} = P_{a,b-1,2} and P'_{a,b,-2} = -P_{a-1,b,-2}.

    The minus sign in the second rule follows from the reflection
    P_{a,b,-2}(xi) = P_{b,a,2}(-xi) and the first rule.
    """
    rep = IdentityReport("derivative")
    rep.record(poly_P2((a, b)).derivative() == poly_P2((a, b - 1)), branch=2, a=a, b=b)
    rep.record(poly_Pm2((a, b)).derivative() == -poly_Pm2((a - 1, b)),
               branch=-2, a=a, b=b)
    return rep


def reflection_check(a: int, b: int) -> IdentityReport:
    """P_{a,b,-2}(xi) = P_{b,a,2}(-xi) exactly."""
    rep = IdentityReport("reflection")
    rep.record(poly_Pm2((a, b)) == poly_P2((b, a)).reflect(), a=a, b=b)
    return rep


def appendix_suite(bound: int = 8) -> IdentityReport:
    """Run reflection, derivative, shift and value-at-zero identities exactly.

    Parameters range over |a|, |b|, c <= bound.
    """
    rep = IdentityReport("polynomial-identities")
    rng = range(-bound, bound + 1)
    for a in rng:
        for b in rng:
            for sub in (reflection_check(a, b), derivative_identity_check(a, b)):
                rep.cases += sub.cases
                rep.failures.extend(sub.failures)
            # degree law
            if b >= 1:
                p = poly_P2((a, b))
                lead = Fraction(2) ** (-a) / math.factorial(b - 1)
                rep.record(p.degree == b - 1 and p.coeffs[-1] == lead,
                           check="degree", a=a, b=b)
                rep.record(value_at_zero((a, b), 2) == value_at_zero_closed((a, b), 2),
                           check="value0+", a=a, b=b)
            if a >= 1:
                rep.record(value_at_zero((a, b), -2) == value_at_zero_closed((a, b), -2),
                           check="value0-", a=a, b=b)
            q = poly_Q((a, b))
            rep.record((a + b >= 1) == q.is_zero() and (a + b >= 1 or q.degree == -a - b),
                       check="delta-degree", a=a, b=b)
            for c in range(0, bound + 1):
                sub = shift_identity_check(a, b, c)
                rep.cases += sub.cases
                rep.failures.extend(sub.failures)
    return rep
