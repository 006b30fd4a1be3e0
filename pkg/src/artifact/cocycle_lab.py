"""Numerical checks of the metaplectic cocycle on concrete matrices.

W = R^{2n} with symplectic form <u, v> = u^t Omega v, Omega = [[0, I], [-I, 0]],
and the compatible positive complex structure J = Omega (so <J u, v> = u . v).
An element commuting with J has the block form [[A, B], [-B, A]] and acts on
the i-eigenspace W_C^+ = {(v, i v)} of J by u = A + iB.

Subspaces are extracted by singular-value thresholding; a sample whose
singular values do not show a clear gap raises :class:`ConditioningError`.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np
from scipy.linalg import expm, null_space

__all__ = [
    "ConditioningError",
    "SymplecticElement",
    "SignatureForm",
    "CheckReport",
    "omega",
    "haar_unitary",
    "random_symplectic",
    "random_unitary_element",
    "theta_squared",
    "cocycle_modulus",
    "q_form",
    "h_form",
    "cocycle_phase",
    "unitary_cocycle",
    "unitary_cocycle_plus",
    "det_identity_sides",
    "det_identity_check",
    "signature_halving_check",
    "cocycle_lab_report",
]

RANK_TOL = 1e-9
GAP = 1e3


class ConditioningError(ArithmeticError):
    """The numerical rank or signature could not be certified."""


def omega(n: int) -> np.ndarray:
    z, i = np.zeros((n, n)), np.eye(n)
    return np.block([[z, i], [-i, z]])


# --------------------------------------------------------------------------
# linear algebra helpers
# --------------------------------------------------------------------------


def _rank(s: np.ndarray, scale: float) -> int:
    """Numerical rank; values inside (tol / GAP, tol * GAP) are ambiguous."""
    if len(s) == 0:
        return 0
    tol = RANK_TOL * max(scale, 1.0)
    if np.any((s > tol / GAP) & (s < tol * GAP)):
        raise ConditioningError("no spectral gap at the rank threshold")
    return int(np.sum(s > tol))


def _image(m: np.ndarray) -> np.ndarray:
    """Orthonormal basis (columns) of the column space."""
    if m.size == 0:
        return np.zeros((m.shape[0], 0), dtype=m.dtype)
    u, s, _ = np.linalg.svd(m)
    r = _rank(s, s[0] if len(s) else 1.0)
    return u[:, :r]


def _kernel(m: np.ndarray) -> np.ndarray:
    """Orthonormal basis (columns) of the null space."""
    u, s, vh = np.linalg.svd(m)
    r = _rank(s, s[0] if len(s) else 1.0)
    return vh[r:].conj().T


def _intersection(b1: np.ndarray, b2: np.ndarray) -> np.ndarray:
    """Orthonormal basis of span(b1) cap span(b2) (both orthonormal)."""
    if b1.shape[1] == 0 or b2.shape[1] == 0:
        return np.zeros((b1.shape[0], 0), dtype=np.result_type(b1, b2))
    k = _kernel(np.hstack([b1, -b2]))
    if k.shape[1] == 0:
        return np.zeros((b1.shape[0], 0), dtype=np.result_type(b1, b2))
    return _image(b1 @ k[: b1.shape[1]])


def _restricted_det(m: np.ndarray, basis: np.ndarray) -> complex:
    """det of m restricted to the invariant subspace spanned by ``basis``."""
    if basis.shape[1] == 0:
        return 1.0
    return complex(np.linalg.det(basis.conj().T @ m @ basis))


def _cayley_on_image(g: np.ndarray) -> np.ndarray:
    """c(g) u = (g + 1) w for (g - 1) w = u, as a matrix valid on Im(g - 1)."""
    one = np.eye(g.shape[0])
    return (g + one) @ np.linalg.pinv(g - one, rcond=1e-12)


def _signature(sym: np.ndarray) -> int:
    """Signature of a hermitian matrix with a certified gap around zero."""
    if sym.shape[0] == 0:
        return 0
    ev = np.linalg.eigvalsh(sym)
    tol = RANK_TOL * max(1.0, float(np.abs(ev).max()))
    if np.any((np.abs(ev) > tol / GAP) & (np.abs(ev) < tol * GAP)):
        raise ConditioningError("signature not separated from zero")
    return int(np.sum(ev > tol) - np.sum(ev < -tol))


# --------------------------------------------------------------------------
# elements and samplers
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SymplecticElement:
    """A real 2n x 2n matrix g with g^t Omega g = Omega."""

    matrix: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.matrix, dtype=float)
        if g.ndim != 2 or g.shape[0] != g.shape[1] or g.shape[0] % 2:
            raise ValueError("need a square matrix of even size")
        om = omega(g.shape[0] // 2)
        res = np.abs(g.T @ om @ g - om).max()
        if res > 1e-10 * max(1.0, np.abs(g).max() ** 2):
            raise ValueError(f"matrix is not symplectic (residual {res:.2e})")
        object.__setattr__(self, "matrix", g)

    @property
    def n(self) -> int:
        return self.matrix.shape[0] // 2

    def __matmul__(self, other: "SymplecticElement") -> "SymplecticElement":
        return SymplecticElement(self.matrix @ other.matrix)

    @classmethod
    def identity(cls, n: int) -> "SymplecticElement":
        return cls(np.eye(2 * n))

    @classmethod
    def minus_one(cls, n: int) -> "SymplecticElement":
        return cls(-np.eye(2 * n))

    @classmethod
    def from_unitary(cls, u: np.ndarray) -> "SymplecticElement":
        """[[A, B], [-B, A]] with u = A + iB."""
        u = np.asarray(u, dtype=complex)
        a, b = u.real, u.imag
        return cls(np.block([[a, b], [-b, a]]))

    def commutes_with_J(self, tol: float = 1e-10) -> bool:
        om = omega(self.n)
        return bool(np.abs(om @ self.matrix - self.matrix @ om).max() < tol)

    def unitary_part(self) -> np.ndarray:
        """u = g restricted to W_C^+ (requires g to commute with J)."""
        if not self.commutes_with_J():
            raise ValueError("element does not commute with J")
        n = self.n
        return self.matrix[:n, :n] + 1j * self.matrix[:n, n:]


def haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary: QR of a complex Gaussian with phase correction."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_symplectic(n: int, rng: np.random.Generator, scale: float = 0.7) -> SymplecticElement:
    """exp(Omega S) with S a random symmetric matrix (a Hamiltonian generator)."""
    s = rng.standard_normal((2 * n, 2 * n)) * scale
    s = (s + s.T) / 2
    return SymplecticElement(expm(omega(n) @ s))


def random_unitary_element(n: int, rng: np.random.Generator,
                           fixed: int = 0) -> SymplecticElement:
    """Random element of Sp^J; ``fixed`` eigenvalues of u are set to 1."""
    q = haar_unitary(n, rng)
    phases = np.exp(1j * rng.uniform(-math.pi, math.pi, n))
    phases[:fixed] = 1.0
    return SymplecticElement.from_unitary(q @ np.diag(phases) @ q.conj().T)


# --------------------------------------------------------------------------
# theta^2 and the modulus
# --------------------------------------------------------------------------


def _J_g(g: SymplecticElement) -> np.ndarray:
    om = omega(g.n)
    return np.linalg.solve(om, g.matrix - np.eye(2 * g.n))


def _det_Jg(g: SymplecticElement) -> Tuple[float, int]:
    """(det of J_g restricted to J_g W, dim (g - 1) W)."""
    jg = _J_g(g)
    basis = _image(jg)
    return float(_restricted_det(jg, basis).real), basis.shape[1]


def _det_Jg_eigen(g: SymplecticElement) -> Tuple[complex, int]:
    """Same determinant as the product of the nonzero eigenvalues of J_g."""
    jg = _J_g(g)
    ev = np.linalg.eigvals(jg)
    scale = max(1.0, float(np.abs(ev).max()))
    keep = np.abs(ev) > RANK_TOL * scale
    dim = _image(g.matrix - np.eye(2 * g.n)).shape[1]
    if keep.sum() != dim:
        raise ConditioningError("eigenvalue count disagrees with the rank")
    return complex(np.prod(ev[keep])), dim


def theta_squared(g: SymplecticElement, method: str = "restricted") -> complex:
    """xi^2 = i^{dim (g-1)W} det(J_g)^{-1}_{J_g W}.

    ``method``: "restricted" (orthonormal basis of the image), "eigen"
    (product of nonzero eigenvalues) or "unitary" (for g commuting with J:
    det(J_g) = i^{dim} det(u-1)^2 det(u)^{-1} on (g-1) W_C^+).
    """
    if method == "restricted":
        det, dim = _det_Jg(g)
    elif method == "eigen":
        det, dim = _det_Jg_eigen(g)
    elif method == "unitary":
        u = g.unitary_part()
        basis = _image(u - np.eye(g.n))
        dim = 2 * basis.shape[1]
        du1 = _restricted_det(u - np.eye(g.n), basis)
        det = (1j ** dim) * du1 ** 2 / complex(np.linalg.det(u))
    else:
        raise ValueError(f"unknown method {method}")
    return complex((1j ** dim) / det)


def cocycle_modulus(g1: SymplecticElement, g2: SymplecticElement) -> float:
    """sqrt|det(J_g1) det(J_g2) / det(J_g1g2)| (restricted determinants)."""
    d1, _ = _det_Jg(g1)
    d2, _ = _det_Jg(g2)
    d12, _ = _det_Jg(g1 @ g2)
    return math.sqrt(abs(d1 * d2 / d12))


# --------------------------------------------------------------------------
# signatures and phases
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SignatureForm:
    """Gram matrix of a form on a computed basis, with its signature."""

    gram: np.ndarray
    signature: int

    @property
    def dim(self) -> int:
        return self.gram.shape[0]

    def to_json(self) -> dict:
        return {"dim": self.dim, "signature": self.signature}


def q_form(g1: SymplecticElement, g2: SymplecticElement) -> SignatureForm:
    """q(u', u'') = 1/2 <c(g1) u', u''> + 1/2 <c(g2) u', u''> on the
    intersection of the images of g1 - 1 and g2 - 1."""
    n2 = 2 * g1.n
    one = np.eye(n2)
    basis = _intersection(_image(g1.matrix - one), _image(g2.matrix - one))
    if basis.shape[1] == 0:
        return SignatureForm(np.zeros((0, 0)), 0)
    om = omega(g1.n)
    c = (_cayley_on_image(g1.matrix) + _cayley_on_image(g2.matrix)) / 2
    gram = (c @ basis).T @ om @ basis
    asym = np.abs(gram - gram.T).max()
    if asym > 1e-8 * max(1.0, np.abs(gram).max()):
        raise ConditioningError(f"q is not symmetric (residual {asym:.2e})")
    gram = (gram + gram.T) / 2
    return SignatureForm(gram, _signature(gram))


def h_form(g1: SymplecticElement, g2: SymplecticElement) -> SignatureForm:
    """h(w', w'') = H(-i c(g1) w', w'') + H(-i c(g2) w', w'') on
    (g1-1) W_C^+ cap (g2-1) W_C^+; H is twice the standard form in the
    coordinates v -> (v, iv)."""
    u1, u2 = g1.unitary_part(), g2.unitary_part()
    one = np.eye(g1.n)
    basis = _intersection(_image(u1 - one), _image(u2 - one))
    if basis.shape[1] == 0:
        return SignatureForm(np.zeros((0, 0), dtype=complex), 0)
    m = -1j * (_cayley_on_image(u1) + _cayley_on_image(u2))
    gram = 2 * basis.conj().T @ m @ basis
    gram = gram.T  # entry (k, l) = H(M b_k, b_l)
    herm = np.abs(gram - gram.conj().T).max()
    if herm > 1e-8 * max(1.0, np.abs(gram).max()):
        raise ConditioningError(f"h is not hermitian (residual {herm:.2e})")
    gram = (gram + gram.conj().T) / 2
    return SignatureForm(gram, _signature(gram))


def cocycle_phase(g1: SymplecticElement, g2: SymplecticElement) -> complex:
    """chi(sgn q / 8) = exp(i pi sgn q / 4)."""
    return cmath.exp(1j * math.pi * q_form(g1, g2).signature / 4)


def _unitary_ratio(u1: np.ndarray, u2: np.ndarray) -> complex:
    one = np.eye(u1.shape[0])

    def rdet(u):
        return _restricted_det(u - one, _image(u - one))

    return rdet(u1) * rdet(u2) / rdet(u1 @ u2)


def unitary_cocycle_plus(g1: SymplecticElement, g2: SymplecticElement) -> complex:
    """det(g1-1) det(g2-1) / det(g1g2-1), restricted to the images in W_C^+."""
    return _unitary_ratio(g1.unitary_part(), g2.unitary_part())


def unitary_cocycle(g1: SymplecticElement, g2: SymplecticElement) -> complex:
    """Cocycle on Sp^J from restricted determinants of g - 1.

    Evaluated with the conjugate action u -> conj(u) (the (-i)-eigenspace of
    J), which is the orientation that reproduces
    cocycle_modulus * cocycle_phase; the W_C^+ ratio is its complex
    conjugate (see :func:`unitary_cocycle_plus`).
    """
    return _unitary_ratio(g1.unitary_part().conj(), g2.unitary_part().conj())


# --------------------------------------------------------------------------
# determinant identity and signature halving
# --------------------------------------------------------------------------


def det_identity_sides(g1: SymplecticElement, g2: SymplecticElement) -> Tuple[complex, complex]:
    """Both sides of the determinant identity on W_C^+ (requires Ker(g1-1) = 0).

    lhs = det(g1g2-1)_{U12} / (det(g1-1) det(g2-1)_U)
    rhs = det H(1/2 (c(g1)+c(g2)) ., .)_{U/V} / |det(g2-1 : K12 -> V)|^2
    with U = Im(g2-1), K12 = Ker(g1g2-1), V = (g2-1) K12 the radical.
    """
    u1, u2 = g1.unitary_part(), g2.unitary_part()
    n = g1.n
    one = np.eye(n)
    if _kernel(u1 - one).shape[1]:
        raise ConditioningError("g1 has eigenvalue 1; resample")
    u12 = u1 @ u2
    U = _image(u2 - one)
    U12 = _image(u12 - one)
    K12 = _kernel(u12 - one)
    lhs = (_restricted_det(u12 - one, U12)
           / (complex(np.linalg.det(u1 - one)) * _restricted_det(u2 - one, U)))
    if K12.shape[1]:
        V = _image((u2 - one) @ K12)
        if V.shape[1] != K12.shape[1]:
            raise ConditioningError("dim V != dim K12")
        vol = abs(complex(np.linalg.det(V.conj().T @ (u2 - one) @ K12)))
    else:
        V = np.zeros((n, 0), dtype=complex)
        vol = 1.0
    m = (_cayley_on_image(u1) + _cayley_on_image(u2)) / 2
    # radical check: H(M v, u) = H(M u, v) = 0 for v in V, u in U
    if V.shape[1]:
        rad = max(np.abs(U.conj().T @ m @ V).max(), np.abs(V.conj().T @ m @ U).max())
        if rad > 1e-8:
            raise ConditioningError(f"V is not the radical (residual {rad:.2e})")
    # complement of V inside U, orthonormal
    if V.shape[1]:
        coeff = U.conj().T @ V
        comp = U @ null_space(coeff.conj().T)
    else:
        comp = U
    if comp.shape[1]:
        # H = 2 <.,.>_std; with H-orthonormal vectors b/sqrt(2) the factor cancels
        rhs_det = complex(np.linalg.det((comp.conj().T @ m @ comp).T))
    else:
        rhs_det = 1.0
    # the volume factor is measured with H-orthonormal bases as well
    return lhs, rhs_det / vol ** 2


@dataclass
class CheckReport:
    name: str
    cases: int = 0
    rejected: int = 0
    worst: float = 0.0
    tol: float = 0.0
    failures: List[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and self.cases > 0

    def record(self, residual: float, **info):
        self.cases += 1
        self.worst = max(self.worst, residual)
        if not residual <= self.tol:
            self.failures.append(dict(residual=residual, **info))

    def to_json(self) -> dict:
        return {"check": self.name, "cases": self.cases, "rejected": self.rejected,
                "worst_residual": self.worst, "tol": self.tol,
                "failures": self.failures[:5], "ok": self.ok}


def det_identity_check(g1: SymplecticElement, g2: SymplecticElement,
                       tol: float = 1e-8) -> CheckReport:
    rep = CheckReport("det-identity", tol=tol)
    lhs, rhs = det_identity_sides(g1, g2)
    rep.record(abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300),
               lhs=[lhs.real, lhs.imag], rhs=[rhs.real, rhs.imag])
    return rep


def signature_halving_check(g1: SymplecticElement, g2: SymplecticElement) -> CheckReport:
    rep = CheckReport("signature-halving", tol=0.0)
    sh = h_form(g1, g2).signature
    sq = q_form(g1, g2).signature
    rep.record(float(abs(2 * sh - sq)), sgn_h=sh, sgn_q=sq)
    return rep


# --------------------------------------------------------------------------
# Monte-Carlo driver
# --------------------------------------------------------------------------


def _sample_pair(n: int, rng: np.random.Generator, kind: int):
    """Pairs in Sp^J with Ker(g1-1) = 0; kind 1 forces K2 != 0, kind 2 K12 != 0."""
    g1 = random_unitary_element(n, rng)
    if kind == 1 and n >= 2:
        g2 = random_unitary_element(n, rng, fixed=1)
    elif kind == 2:
        w = random_unitary_element(n, rng, fixed=1).unitary_part()
        g2 = SymplecticElement.from_unitary(g1.unitary_part().conj().T @ w)
    else:
        g2 = random_unitary_element(n, rng)
    return g1, g2


def cocycle_lab_report(max_dim: int = 5, samples: int = 200, seed: int = 0) -> dict:
    """Run the cocycle checks on random samples; returns a JSON-ready dict."""
    rng = np.random.default_rng(seed)
    det_rep = CheckReport("det-identity", tol=1e-8)
    half_rep = CheckReport("signature-halving", tol=0.0)
    prod_rep = CheckReport("unitary = modulus x phase", tol=1e-8)
    theta_rep = CheckReport("theta^2 two routes", tol=1e-9)
    mod_rep = CheckReport("modulus(-1,-1) = 2^{2n}", tol=1e-9)
    for n in range(1, max_dim + 1):
        m1 = SymplecticElement.minus_one(n)
        mod_rep.record(abs(cocycle_modulus(m1, m1) - 2.0 ** (2 * n)) / 2.0 ** (2 * n), n=n)
        done = 0
        while done < samples:
            kind = done % 3
            try:
                g1, g2 = _sample_pair(n, rng, kind)
                lhs, rhs = det_identity_sides(g1, g2)
                sh, sq = h_form(g1, g2).signature, q_form(g1, g2).signature
                uc = unitary_cocycle(g1, g2)
                mp = cocycle_modulus(g1, g2) * cocycle_phase(g1, g2)
                gs = random_symplectic(n, rng)
                t1, t2 = theta_squared(gs, "restricted"), theta_squared(gs, "eigen")
                t3 = theta_squared(g1, "unitary")
                t4 = theta_squared(g1, "restricted")
            except ConditioningError:
                det_rep.rejected += 1
                continue
            det_rep.record(abs(lhs - rhs) / max(abs(lhs), 1e-300), n=n)
            half_rep.record(float(abs(2 * sh - sq)), n=n, sgn_h=sh, sgn_q=sq)
            prod_rep.record(abs(uc - mp) / max(abs(mp), 1e-300), n=n)
            theta_rep.record(max(abs(t1 - t2) / abs(t1), abs(t3 - t4) / abs(t4)), n=n)
            done += 1
    reps = [mod_rep, det_rep, half_rep, prod_rep, theta_rep]
    return {"max_dim": max_dim, "samples": samples, "seed": seed,
            "checks": [r.to_json() for r in reps], "ok": all(r.ok for r in reps)}
