"""Independent verification engines.

Each oracle recomputes a quantity by a route that does not share code with
the formula it checks: direct quadrature for the Fourier pairs, monomial
expansion for the Gaussian Selberg-type integral, exact determinants for the
Fan identity, symbolic differentiation for d(pi)(pi), tableau enumeration for
characters and a restriction of full root systems for the root products.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy import integrate

from .root_data import positive_roots
from .scalar_algebra import MultiPoly, PiScalar, exact_det, rat, rising
from .special_functions import fourier_pair

__all__ = [
    "QuadratureError",
    "QuadratureSpec",
    "QuadratureResult",
    "PairingReport",
    "Tableau",
    "quad_fourier",
    "pair_with_test_function",
    "gaussian_selberg",
    "gaussian_selberg_closed",
    "fan_det",
    "partial_pi_pi",
    "semistandard_tableaux",
    "schur_oracle",
    "restricted_root_product",
    "proportionality_constant",
]


class QuadratureError(ArithmeticError):
    """The requested tolerance was not reached."""


# --------------------------------------------------------------------------
# oscillatory quadrature
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadratureSpec:
    a: int
    b: int
    xi: float
    Y: float = 40.0
    tol: float = 1e-9
    method: str = "panels+asymptotic-tail"

    def __post_init__(self):
        if self.a + self.b < 1:
            raise ValueError("direct quadrature needs a + b >= 1")


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    panel_error: float
    tail_error: float

    @property
    def error(self) -> float:
        return self.panel_error + self.tail_error


def _f(a: int, b: int, y):
    return (1 + 1j * y) ** (-a) * (1 - 1j * y) ** (-b)


def _f_derivative(a: int, b: int, k: int, y: float) -> complex:
    """k-th derivative of (1+iy)^{-a}(1-iy)^{-b} by the Leibniz rule."""
    total = 0j
    for m in range(k + 1):
        # d^m (1+iy)^{-a} = (-a)(-a-1)...(-a-m+1) i^m (1+iy)^{-a-m}
        c1 = float(rising(Fraction(-a - m + 1), m)) * (1j) ** m
        c2 = float(rising(Fraction(-b - (k - m) + 1), k - m)) * (-1j) ** (k - m)
        total += (math.comb(k, m) * c1 * c2 * (1 + 1j * y) ** (-a - m)
                  * (1 - 1j * y) ** (-b - k + m))
    return total


def _tail(a: int, b: int, xi: float, Y: float, terms: int = 12) -> Tuple[complex, float]:
    """Integral over |y| > Y by the integration-by-parts series.

    int_Y^inf f e^{-iy xi} dy = e^{-iY xi} sum_k f^{(k)}(Y) / (i xi)^{k+1},
    and the mirror term at -Y. The error estimate is the size of the first
    omitted term.
    """
    total = 0j
    last = 0.0
    for k in range(terms + 1):
        denom = (1j * xi) ** (k + 1)
        right = np.exp(-1j * Y * xi) * _f_derivative(a, b, k, Y) / denom
        left = -np.exp(1j * Y * xi) * _f_derivative(a, b, k, -Y) / denom
        if k == terms:
            last = abs(right) + abs(left)
        else:
            total += right + left
    return total, last


def _panels(a: int, b: int, xi: float, Y: float, n: int, width: float = 0.5) -> complex:
    m = int(math.ceil(2 * Y / width))
    edges = np.linspace(-Y, Y, m + 1)
    x, w = np.polynomial.legendre.leggauss(n)
    lo, hi = edges[:-1, None], edges[1:, None]
    ys = (hi - lo) / 2 * x[None, :] + (hi + lo) / 2
    ws = (hi - lo) / 2 * w[None, :]
    vals = _f(a, b, ys) * np.exp(-1j * ys * xi)
    return complex(np.sum(vals * ws))


def quad_fourier(a: int, b: int, xi, Y: float = 40.0, tol: float = 1e-9,
                 full: bool = False):
    """int (1+iy)^{-a}(1-iy)^{-b} e^{-iy xi} dy for a + b >= 1.

    Gauss-Legendre panels on [-Y, Y] (n and 2n nodes compared) plus the
    asymptotic tail series, with Y enlarged so that Y |xi| >= 40. At xi = 0
    (only allowed for a + b >= 2) the tail is a convergent integral in 1/y.

    Raises
    ------
    QuadratureError
        If the combined error estimate exceeds ``tol`` times max(1, |value|).
    """
    spec = QuadratureSpec(int(a), int(b), float(xi), Y, tol)
    x = float(spec.xi)
    if x == 0 and a + b < 2:
        raise ValueError("xi = 0 needs a + b >= 2 (the integral diverges otherwise)")
    if x != 0:
        # the tail series behaves like sum k! / (Y xi)^k: keep Y |xi| >= 40
        Y = max(Y, 40.0 / abs(x))
    v1 = _panels(a, b, x, Y, 16)
    v2 = _panels(a, b, x, Y, 32)
    panel_err = abs(v2 - v1)
    if x == 0:
        # symmetric tail: int_{|y|>Y} f dy, with |f| <= |y|^{-(a+b)}
        tail, _ = integrate.quad(lambda t: 2 * _f(a, b, 1 / t).real / t ** 2, 0, 1 / Y,
                                 epsabs=1e-14, epsrel=1e-13)
        tail_err = 1e-13
    else:
        tail, tail_err = _tail(a, b, x, Y)
    value = v2 + tail
    err = panel_err + tail_err
    if err > tol * max(1.0, abs(value)):
        raise QuadratureError(f"quadrature error {err:.3e} above tolerance {tol:.1e}")
    return QuadratureResult(value, panel_err, tail_err) if full else value


# --------------------------------------------------------------------------
# distributional identity against test functions
# --------------------------------------------------------------------------


def _psi_hat_poly(n: int, s: float) -> np.ndarray:
    """R_n with int xi^n e^{-(xi-s)^2} e^{-iy xi} dxi = sqrt(pi) e^{-y^2/4 - iys} R_n(y).

    G_{n+1} = i dG_n/dy gives R_{n+1} = i (R_n' + (-y/2 - is) R_n).
    """
    r = np.array([1.0 + 0j])
    lin = np.array([-1j * s, -0.5])
    for _ in range(n):
        r = 1j * npoly.polyadd(npoly.polyder(r) if len(r) > 1 else np.array([0j]),
                               npoly.polymul(lin, r))
    return r


def _psi_derivs_at_zero(n: int, s: float, kmax: int) -> List[float]:
    """psi^{(k)}(0) for psi = xi^n e^{-(xi-s)^2}: S_{k+1} = S_k' - 2(xi - s) S_k."""
    S = np.zeros(n + 1)
    S[n] = 1.0
    out = []
    for _ in range(kmax + 1):
        out.append(float(npoly.polyval(0.0, S)) * math.exp(-s * s))
        S = npoly.polyadd(npoly.polyder(S) if len(S) > 1 else np.array([0.0]),
                          npoly.polymul(np.array([2 * s, -2.0]), S))
    return out


@dataclass
class PairingReport:
    a: int
    b: int
    power: int
    shift: float
    lhs: complex
    rhs: complex
    delta_part: complex
    tol: float

    @property
    def residual(self) -> float:
        return abs(self.lhs - self.rhs) / max(abs(self.lhs), abs(self.rhs), 1e-12)

    @property
    def ok(self) -> bool:
        both_small = max(abs(self.lhs), abs(self.rhs)) < 1e-10
        return both_small or self.residual <= self.tol

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "power": self.power, "shift": self.shift,
                "lhs": [self.lhs.real, self.lhs.imag], "rhs": [self.rhs.real, self.rhs.imag],
                "delta_part": [self.delta_part.real, self.delta_part.imag],
                "residual": self.residual, "ok": self.ok}


def _cquad(fn, lo, hi) -> complex:
    kw = dict(epsabs=1e-13, epsrel=1e-11, limit=400)
    with warnings.catch_warnings():
        # roundoff warnings near exact cancellation; the residual is checked by the caller
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        re, _ = integrate.quad(lambda t: fn(t).real, lo, hi, **kw)
        im, _ = integrate.quad(lambda t: fn(t).imag, lo, hi, **kw)
    return complex(re, im)


def pair_with_test_function(a: int, b: int, power: Optional[int] = None,
                            shift: float = 0.25, tol: float = 1e-5) -> PairingReport:
    """Check <F f, psi> = <f, F psi> for f = (1+iy)^{-a}(1-iy)^{-b}, a + b <= 0.

    psi(xi) = xi^power e^{-(xi - shift)^2} (default power = -a - b + 1).
    LHS: int f(y) psi_hat(y) dy with psi_hat in closed form.
    RHS: 2 pi [int P e^{-|xi|} psi + sum_k Q_k psi^{(k)}(0)].
    """
    a, b = int(a), int(b)
    if a + b > 0:
        raise ValueError("pair_with_test_function needs a + b <= 0")
    n = -a - b + 1 if power is None else int(power)
    R = _psi_hat_poly(n, shift)

    def lhs_integrand(y):
        return (_f(a, b, y) * math.sqrt(math.pi) * np.exp(-y * y / 4 - 1j * y * shift)
                * npoly.polyval(y, R))

    lhs = _cquad(lhs_integrand, -np.inf, np.inf)
    fp = fourier_pair((a, b))
    two_pi = 2 * math.pi

    def psi(t):
        return t ** n * math.exp(-(t - shift) ** 2)

    plus = _cquad(lambda t: complex(float(fp.plus_part(t)) * math.exp(-t) * psi(t)), 0, np.inf)
    minus = _cquad(lambda t: complex(float(fp.minus_part(t)) * math.exp(t) * psi(t)), -np.inf, 0)
    q = fp.delta_part.coeffs
    derivs = _psi_derivs_at_zero(n, shift, max(len(q) - 1, 0))
    delta = sum(float(c) * derivs[k] for k, c in enumerate(q))
    rhs = two_pi * (plus + minus + delta)
    return PairingReport(a, b, n, shift, lhs, rhs, complex(two_pi * delta), tol)


# --------------------------------------------------------------------------
# exact combinatorial oracles
# --------------------------------------------------------------------------


def gaussian_selberg(l: int, l_prime: int) -> Fraction:
    """int_{(R+)^l} prod_{j<k}(x_j-x_k)^2 prod_j x_j^{l'-l} e^{-sum x} dx, exactly.

    The integrand is expanded into monomials and each monomial integrated
    with int x^alpha e^{-x} dx = alpha!.
    """
    if not 1 <= l <= l_prime:
        raise ValueError("need 1 <= l <= l'")
    poly = MultiPoly.const(l, 1)
    for j in range(l):
        for k in range(j + 1, l):
            diff = MultiPoly.var(l, j) - MultiPoly.var(l, k)
            poly = poly * diff * diff
    total = Fraction(0)
    for e, c in poly.terms.items():
        term = c.coeff
        for ej in e:
            term *= math.factorial(ej + l_prime - l)
        total += term
    return total


def gaussian_selberg_closed(l: int, l_prime: int) -> Fraction:
    """prod_{k=0}^{l} k! * prod_{k=0}^{l-1} (k + l' - l)!."""
    out = Fraction(1)
    for k in range(l + 1):
        out *= math.factorial(k)
    for k in range(l):
        out *= math.factorial(k + l_prime - l)
    return out


def fan_det(a, n: int) -> Fraction:
    """det[ (a+j)^{(c)} ]_{j,c=0..n-1} (rising factorials), exactly."""
    if n < 1:
        raise ValueError("n must be positive")
    a = rat(a)
    return exact_det([[rising(a + j, c) for c in range(n)] for j in range(n)])


def partial_pi_pi(l: int) -> Fraction:
    """d(pi)(pi) for pi = prod_{j<k}(x_k - x_j), the roots of u_l in x = iy."""
    if l < 1:
        raise ValueError("l must be positive")
    pi = MultiPoly.const(l, 1)
    for j in range(l):
        for k in range(j + 1, l):
            pi = pi * (MultiPoly.var(l, k) - MultiPoly.var(l, j))
    val = pi.apply_as_operator(pi)
    if val.total_degree() > 0:
        raise ArithmeticError("d(pi)(pi) is not a constant")
    c = val.constant_term()
    if c.pi_power or c.i_power:
        raise ArithmeticError("unexpected transcendental constant")
    return c.coeff


# --------------------------------------------------------------------------
# tableaux
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Tableau:
    """A semistandard filling; ``rows[i][j]`` is the entry in row i, column j."""

    shape: Tuple[int, ...]
    rows: Tuple[Tuple[int, ...], ...]
    max_entry: int

    def __post_init__(self):
        if tuple(len(r) for r in self.rows) != tuple(self.shape):
            raise ValueError("rows do not match the shape")
        for i, r in enumerate(self.rows):
            if any(not 1 <= x <= self.max_entry for x in r):
                raise ValueError("entry out of range")
            if any(r[j] > r[j + 1] for j in range(len(r) - 1)):
                raise ValueError("rows must weakly increase")
            if i and any(self.rows[i - 1][j] >= r[j] for j in range(len(r))):
                raise ValueError("columns must strictly increase")

    def weight(self) -> List[int]:
        w = [0] * self.max_entry
        for r in self.rows:
            for x in r:
                w[x - 1] += 1
        return w


def semistandard_tableaux(shape: Sequence[int], max_entry: int) -> List[Tableau]:
    """All semistandard tableaux of the given shape with entries <= max_entry."""
    shape = tuple(int(x) for x in shape if x > 0)
    cells = [(i, j) for i, r in enumerate(shape) for j in range(r)]
    out = []
    fill = [[0] * r for r in shape]

    def rec(t: int):
        if t == len(cells):
            out.append(Tableau(shape, tuple(tuple(r) for r in fill), max_entry))
            return
        i, j = cells[t]
        lo = 1
        if j:
            lo = max(lo, fill[i][j - 1])
        if i:
            lo = max(lo, fill[i - 1][j] + 1)
        for v in range(lo, max_entry + 1):
            fill[i][j] = v
            rec(t + 1)
        fill[i][j] = 0

    rec(0)
    return out


def schur_oracle(lam: Sequence, x: Sequence[complex]) -> complex:
    """s_lambda(x) = sum over semistandard tableaux of prod_j x_j^{#j}."""
    lam = [int(v) for v in lam]
    if any(v < 0 for v in lam):
        raise ValueError("schur_oracle needs a partition")
    total = 0j
    for t in semistandard_tableaux(lam, len(x)):
        term = 1 + 0j
        for xj, k in zip(x, t.weight()):
            term *= xj ** k
        total += term
    return total


# --------------------------------------------------------------------------
# restricted root products
# --------------------------------------------------------------------------


def restricted_root_product(kind: str, n: int, l: int) -> MultiPoly:
    """prod over positive roots of type ``kind`` on n coordinates of the
    restriction to the first l coordinates, skipping roots that vanish there.

    Roots are evaluated on y (no factors of i); compare with the tables up to
    a constant via :func:`proportionality_constant`.
    """
    out = MultiPoly.const(l, 1)
    for alpha in positive_roots(kind, n):
        if not any(alpha[:l]):
            continue
        lin = MultiPoly(l)
        for j in range(l):
            if alpha[j]:
                lin = lin + MultiPoly.var(l, j, alpha[j])
        out = out * lin
    return out


def proportionality_constant(p: MultiPoly, q: MultiPoly) -> Optional[PiScalar]:
    """c with p = c q, or None when p and q are not proportional."""
    if p.is_zero() or q.is_zero() or set(p.terms) != set(q.terms):
        return None
    e0 = next(iter(q.terms))
    c = p.terms[e0] / q.terms[e0]
    return c if p == q * c else None
