"""Exact arithmetic foundation.

Rationals, scalars of the form ``q * pi**k * i**m``, dense univariate and
sparse multivariate polynomials, signed permutations, exact determinants and
division by Vandermonde-type products.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple

Rat = Fraction

__all__ = [
    "Rat",
    "rat",
    "rat_str",
    "PiScalar",
    "UniPoly",
    "MultiPoly",
    "SignedPermutation",
    "DivisibilityError",
    "exact_det",
    "vandermonde_det",
    "falling_product_sum",
    "falling_product_sum_bruteforce",
    "divide_by_vandermonde",
    "permutation_sign",
    "rising",
    "falling",
]


class DivisibilityError(ArithmeticError):
    """Raised when an exact polynomial division leaves a remainder."""


def rat(x) -> Fraction:
    """Coerce ints, Fractions and strings like ``"3/2"`` to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        if not x.is_integer():
            raise TypeError(f"refusing to convert non-integral float {x!r}")
        return Fraction(int(x))
    raise TypeError(f"cannot make a rational from {type(x).__name__}")


def rat_str(x: Fraction) -> str:
    """Serialize a rational as ``"p/q"`` or ``"p"``."""
    x = rat(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def rising(a, k: int) -> Fraction:
    """Rising factorial a(a+1)...(a+k-1); equals 1 for k = 0."""
    a = rat(a)
    out = Fraction(1)
    for j in range(k):
        out *= a + j
    return out


def falling(a, k: int) -> Fraction:
    """Falling product (a-1)(a-2)...(a-k); equals 1 for k = 0."""
    a = rat(a)
    out = Fraction(1)
    for j in range(1, k + 1):
        out *= a - j
    return out


def permutation_sign(perm: Sequence[int]) -> int:
    """Sign of a permutation of ``range(n)`` given as an image tuple."""
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


# --------------------------------------------------------------------------
# PiScalar
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class PiScalar:
    """Exact scalar ``coeff * pi**pi_power * i**i_power``.

    The canonical form keeps ``i_power`` in {0, 1}; a factor ``i**2`` is folded
    into the sign of ``coeff``. Zero is ``(0, 0, 0)``.
    """

    coeff: Fraction = Fraction(0)
    pi_power: int = 0
    i_power: int = 0

    def __post_init__(self):
        c = rat(self.coeff)
        ip = int(self.i_power) % 4
        if ip >= 2:
            c = -c
            ip -= 2
        pp = int(self.pi_power)
        if c == 0:
            pp, ip = 0, 0
        object.__setattr__(self, "coeff", c)
        object.__setattr__(self, "pi_power", pp)
        object.__setattr__(self, "i_power", ip)

    @classmethod
    def of(cls, x) -> "PiScalar":
        if isinstance(x, PiScalar):
            return x
        return cls(rat(x), 0, 0)

    @property
    def is_zero(self) -> bool:
        return self.coeff == 0

    def __mul__(self, other) -> "PiScalar":
        o = PiScalar.of(other)
        return PiScalar(self.coeff * o.coeff, self.pi_power + o.pi_power,
                        self.i_power + o.i_power)

    __rmul__ = __mul__

    def __neg__(self) -> "PiScalar":
        return PiScalar(-self.coeff, self.pi_power, self.i_power)

    def __add__(self, other) -> "PiScalar":
        o = PiScalar.of(other)
        if self.is_zero:
            return o
        if o.is_zero:
            return self
        if (self.pi_power, self.i_power) != (o.pi_power, o.i_power):
            raise TypeError(f"cannot add {self} and {o}: different pi/i classes")
        return PiScalar(self.coeff + o.coeff, self.pi_power, self.i_power)

    __radd__ = __add__

    def __sub__(self, other) -> "PiScalar":
        return self + (-PiScalar.of(other))

    def inverse(self) -> "PiScalar":
        if self.is_zero:
            raise ZeroDivisionError("PiScalar zero")
        return PiScalar(1 / self.coeff, -self.pi_power, -self.i_power)

    def __truediv__(self, other) -> "PiScalar":
        return self * PiScalar.of(other).inverse()

    def __pow__(self, n: int) -> "PiScalar":
        if n < 0:
            return self.inverse() ** (-n)
        out = PiScalar(1)
        for _ in range(n):
            out = out * self
        return out

    def __complex__(self) -> complex:
        return complex(float(self.coeff) * math.pi ** self.pi_power) * (1j ** self.i_power)

    def to_json(self) -> dict:
        return {"coeff": rat_str(self.coeff), "pi": self.pi_power, "i": self.i_power}

    @classmethod
    def from_json(cls, d: Mapping) -> "PiScalar":
        return cls(rat(d["coeff"]), int(d["pi"]), int(d["i"]))

    def __repr__(self) -> str:
        parts = [rat_str(self.coeff)]
        if self.pi_power:
            parts.append(f"pi^{self.pi_power}")
        if self.i_power:
            parts.append("i")
        return "*".join(parts)


# --------------------------------------------------------------------------
# UniPoly
# --------------------------------------------------------------------------


class UniPoly:
    """Dense univariate polynomial with rational coefficients, constant first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: Tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def zero(cls) -> "UniPoly":
        return cls(())

    @classmethod
    def const(cls, c) -> "UniPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c=1) -> "UniPoly":
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = UniPoly.const(other)
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other) -> "UniPoly":
        other = other if isinstance(other, UniPoly) else UniPoly.const(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UniPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> "UniPoly":
        other = other if isinstance(other, UniPoly) else UniPoly.const(other)
        return self + (-other)

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            c = rat(other)
            return UniPoly(c * x for x in self.coeffs)
        if self.is_zero() or other.is_zero():
            return UniPoly.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x == 0:
                continue
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return UniPoly(out)

    __rmul__ = __mul__

    def __call__(self, x):
        """Horner evaluation; works for Fractions, floats and complex."""
        acc = 0 * x if not isinstance(x, (int, Fraction)) else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + (c if isinstance(x, (int, Fraction)) else float(c))
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly(k * c for k, c in enumerate(self.coeffs) if k > 0)

    def reflect(self) -> "UniPoly":
        """Return p(-x)."""
        return UniPoly(c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs))

    def rescale(self, s) -> "UniPoly":
        """Return p(s x) for rational s."""
        s = rat(s)
        return UniPoly(c * s ** k for k, c in enumerate(self.coeffs))

    def to_json(self) -> list:
        return [rat_str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "UniPoly":
        return cls(rat(c) for c in data)

    def __repr__(self) -> str:
        return f"UniPoly({[rat_str(c) for c in self.coeffs]})"


# --------------------------------------------------------------------------
# SignedPermutation
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SignedPermutation:
    """Signed permutation acting by e_j -> signs[j] * e_{perm[j]} (0-based)."""

    perm: Tuple[int, ...]
    signs: Tuple[int, ...]

    def __post_init__(self):
        perm = tuple(int(p) for p in self.perm)
        signs = tuple(int(s) for s in self.signs)
        if sorted(perm) != list(range(len(perm))) or len(signs) != len(perm):
            raise ValueError("not a signed permutation")
        if any(s not in (1, -1) for s in signs):
            raise ValueError("signs must be +-1")
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "signs", signs)

    @classmethod
    def identity(cls, n: int) -> "SignedPermutation":
        return cls(tuple(range(n)), (1,) * n)

    @property
    def size(self) -> int:
        return len(self.perm)

    def act(self, y: Sequence) -> list:
        """Image of the vector y: (s.y)[perm[j]] = signs[j] * y[j]."""
        out = [None] * len(y)
        for j, (p, e) in enumerate(zip(self.perm, self.signs)):
            out[p] = y[j] if e == 1 else -y[j]
        return out

    def compose(self, other: "SignedPermutation") -> "SignedPermutation":
        """self after other."""
        perm = tuple(self.perm[other.perm[j]] for j in range(self.size))
        signs = tuple(other.signs[j] * self.signs[other.perm[j]] for j in range(self.size))
        return SignedPermutation(perm, signs)

    def inverse(self) -> "SignedPermutation":
        perm = [0] * self.size
        signs = [1] * self.size
        for j, p in enumerate(self.perm):
            perm[p] = j
            signs[p] = self.signs[j]
        return SignedPermutation(tuple(perm), tuple(signs))

    def perm_sign(self) -> int:
        return permutation_sign(self.perm)

    def sign_count(self) -> int:
        return sum(1 for s in self.signs if s < 0)


def signed_permutations(n: int, with_signs: bool = True, even_signs: bool = False
                        ) -> Iterator[SignedPermutation]:
    """All permutations of n letters, optionally with (even) sign changes."""
    sign_choices = itertools.product((1, -1), repeat=n) if with_signs else [(1,) * n]
    sign_list = [s for s in sign_choices if not even_signs or s.count(-1) % 2 == 0]
    for perm in itertools.permutations(range(n)):
        for signs in sign_list:
            yield SignedPermutation(perm, signs)


# --------------------------------------------------------------------------
# MultiPoly
# --------------------------------------------------------------------------

Exp = Tuple[int, ...]


class MultiPoly:
    """Sparse multivariate polynomial with PiScalar coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exp, object] | None = None):
        self.nvars = int(nvars)
        clean: Dict[Exp, PiScalar] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != self.nvars or any(x < 0 for x in e):
                raise ValueError(f"bad exponent {e} for {self.nvars} variables")
            c = PiScalar.of(c)
            if e in clean:
                c = clean[e] + c
            if c.is_zero:
                clean.pop(e, None)
            else:
                clean[e] = c
        self.terms: Dict[Exp, PiScalar] = clean

    # constructors
    @classmethod
    def const(cls, nvars: int, c=1) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, j: int, c=1) -> "MultiPoly":
        e = [0] * nvars
        e[j] = 1
        return cls(nvars, {tuple(e): c})

    @classmethod
    def from_unipoly(cls, nvars: int, j: int, p: UniPoly, scale: PiScalar | None = None
                     ) -> "MultiPoly":
        """Embed p(scale * y_j)."""
        scale = PiScalar.of(1) if scale is None else PiScalar.of(scale)
        terms = {}
        for k, c in enumerate(p.coeffs):
            if c == 0:
                continue
            e = [0] * nvars
            e[j] = k
            terms[tuple(e)] = scale ** k * c
        return cls(nvars, terms)

    # basic protocol
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(self.nvars, other)
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return MultiPoly.const(self.nvars, other)

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return MultiPoly(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            c = PiScalar.of(other)
            return MultiPoly(self.nvars, {e: v * c for e, v in self.terms.items()})
        other = self._coerce(other)
        acc: Dict[Exp, PiScalar] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                c = c1 * c2
                acc[e] = acc[e] + c if e in acc else c
        return MultiPoly(self.nvars, acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        out = MultiPoly.const(self.nvars, 1)
        for _ in range(n):
            out = out * self
        return out

    def degree_in(self, j: int) -> int:
        return max((e[j] for e in self.terms), default=-1)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def evaluate(self, y: Sequence) -> complex:
        """Numeric evaluation at a point (floats or complex)."""
        total = 0j
        for e, c in self.terms.items():
            mon = complex(c)
            for yj, k in zip(y, e):
                mon *= yj ** k
            total += mon
        return total

    def substitute_signed_perm(self, s: SignedPermutation) -> "MultiPoly":
        """Return the polynomial y -> P(s.y)."""
        terms = {}
        for e, c in self.terms.items():
            new = [0] * self.nvars
            sgn = 1
            # variable x_{perm[j]} is replaced by signs[j] * y_j
            for j in range(self.nvars):
                k = e[s.perm[j]]
                new[j] = k
                if s.signs[j] < 0 and k % 2:
                    sgn = -sgn
            terms[tuple(new)] = c * sgn
        return MultiPoly(self.nvars, terms)

    def substitute_monomials(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Substitute y_j -> images[j] (all images in a common ring)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        nv = images[0].nvars
        out = MultiPoly(nv)
        for e, c in self.terms.items():
            mon = MultiPoly.const(nv, c)
            for img, k in zip(images, e):
                mon = mon * img ** k
            out = out + mon
        return out

    def partial(self, j: int) -> "MultiPoly":
        terms = {}
        for e, c in self.terms.items():
            if e[j] == 0:
                continue
            ne = list(e)
            ne[j] -= 1
            terms[tuple(ne)] = c * e[j]
        return MultiPoly(self.nvars, terms)

    def apply_as_operator(self, f: "MultiPoly") -> "MultiPoly":
        """Apply the constant-coefficient operator self(d/dy) to f."""
        out = MultiPoly(f.nvars)
        for e, c in self.terms.items():
            g = f
            for j, k in enumerate(e):
                for _ in range(k):
                    g = g.partial(j)
            out = out + g * c
        return out

    def constant_term(self) -> PiScalar:
        return self.terms.get((0,) * self.nvars, PiScalar(0))

    def leading(self) -> Tuple[Exp, PiScalar]:
        e = max(self.terms)
        return e, self.terms[e]

    def divmod(self, divisor: "MultiPoly") -> Tuple["MultiPoly", "MultiPoly"]:
        """Multivariate division in lex order; returns (quotient, remainder)."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        de, dc = divisor.leading()
        dinv = dc.inverse()
        p = self
        q = MultiPoly(self.nvars)
        r = MultiPoly(self.nvars)
        while not p.is_zero():
            e, c = p.leading()
            if all(x >= y for x, y in zip(e, de)):
                t = MultiPoly(self.nvars, {tuple(x - y for x, y in zip(e, de)): c * dinv})
                q = q + t
                p = p - t * divisor
            else:
                lt = MultiPoly(self.nvars, {e: c})
                r = r + lt
                p = p - lt
        return q, r

    def to_json(self) -> list:
        return [{"exp": list(e), "coeff": c.to_json()} for e, c in sorted(self.terms.items())]

    def __repr__(self) -> str:
        if not self.terms:
            return "MultiPoly(0)"
        return "MultiPoly(" + " + ".join(f"{c!r}*y^{list(e)}" for e, c in sorted(self.terms.items())) + ")"


# --------------------------------------------------------------------------
# Determinants and Vandermonde helpers
# --------------------------------------------------------------------------


def exact_det(m: Sequence[Sequence]) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination.

    Raises
    ------
    ValueError
        If the matrix is not square.
    """
    a = [[rat(x) for x in row] for row in m]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("exact_det: matrix is not square")
    if n == 0:
        return Fraction(1)
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
            a[i][k] = Fraction(0)
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def vandermonde_det(z: Sequence) -> Fraction:
    """prod_{j<k} (z_k - z_j), the determinant of [z_j^{c}] with rows j."""
    z = [rat(x) for x in z]
    out = Fraction(1)
    for j in range(len(z)):
        for k in range(j + 1, len(z)):
            out *= z[k] - z[j]
    return out


def falling_product_sum(z: Sequence) -> Fraction:
    """Sum over permutations s of sgn(s) prod_j prod_{k=1}^{s(j)-1} (z_j - k).

    Evaluated as the determinant of the matrix [falling(z_j, c)]_{j,c}.
    The result equals ``vandermonde_det(z)``, i.e.
    (-1)^{m(m-1)/2} prod_{j<k} (z_j - z_k).
    """
    z = [rat(x) for x in z]
    m = len(z)
    return exact_det([[falling(zj, c) for c in range(m)] for zj in z])


def falling_product_sum_bruteforce(z: Sequence) -> Fraction:
    """Same sum, by explicit enumeration of the symmetric group (oracle)."""
    z = [rat(x) for x in z]
    m = len(z)
    table = [[falling(zj, p) for p in range(m)] for zj in z]
    total = Fraction(0)
    for perm in itertools.permutations(range(m)):
        term = Fraction(permutation_sign(perm))
        for j, p in enumerate(perm):
            term *= table[j][p]
        total += term
    return total


def _default_vandermonde(n: int) -> MultiPoly:
    out = MultiPoly.const(n, 1)
    for j in range(n):
        for k in range(j + 1, n):
            out = out * (MultiPoly.var(n, j) - MultiPoly.var(n, k))
    return out


def divide_by_vandermonde(skew: MultiPoly, group: Iterable[SignedPermutation],
                          divisor: MultiPoly | None = None) -> MultiPoly:
    """Exact quotient of a skew polynomial by a product of positive roots.

    Parameters
    ----------
    skew : MultiPoly
        Polynomial with skew(s.y) = sgn(s) skew(y) for every s in ``group``.
    group : iterable of SignedPermutation
        The Weyl group; ``sgn`` is read off from the action on ``divisor``.
    divisor : MultiPoly, optional
        The product of positive roots. Defaults to prod_{j<k} (y_j - y_k).

    Raises
    ------
    DivisibilityError
        If ``skew`` is not skew for the group or the division is inexact.
    """
    n = skew.nvars
    if divisor is None:
        divisor = _default_vandermonde(n)
    for s in group:
        moved = divisor.substitute_signed_perm(s)
        if moved == divisor:
            sgn = 1
        elif moved == -divisor:
            sgn = -1
        else:
            raise DivisibilityError("divisor is not skew under the group")
        if skew.substitute_signed_perm(s) != skew * sgn:
            raise DivisibilityError("input is not skew under the group")
    q, r = skew.divmod(divisor)
    if not r.is_zero():
        raise DivisibilityError(f"nonzero remainder {r!r}")
    return q
