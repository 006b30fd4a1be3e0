"""Matrix model of the symplectic space W = Hom(V0, V1) of a dual pair.

V0 = D^d carries the positive definite hermitian form, V1 = D^{d'} carries the
skew-hermitian form with Gram matrix F. Elements of W are d' x d matrices,
``w* = conj(w)^t F`` and the moment maps are ``tau(w) = w* w`` (values in g)
and ``tau'(w) = w w*`` (values in g'). The quaternions are realized by
``a + b j -> [[a, b], [-conj(b), conj(a)]]``, so a d' x d quaternionic matrix
is stored as a 2d' x 2d complex array.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np
from scipy.linalg import expm

from .root_data import DualPair, cartan_signs

__all__ = [
    "MatrixOverD",
    "CartanSpec",
    "OrbitDescriptor",
    "form_matrix",
    "tau",
    "tau_prime",
    "cartan_element",
    "cartan_J",
    "is_in_Wg",
    "is_in_Wg_rank",
    "orbit_dim",
    "orbit_dim_general",
    "orbit_dim_numeric",
    "orbit_table",
    "max_orbit_index",
    "dim_SH",
    "stable_range_equality",
    "stable_range_predicate",
    "homogeneity_gap",
    "homogeneity_gap_listed",
    "gt_dilation_det",
    "derivative_order_bound",
    "lie_algebra_basis",
    "random_group_element",
    "random_W",
    "equivariance_residual",
]

_QJ = np.array([[0, 1], [-1, 0]], dtype=complex)


@dataclass(frozen=True)
class MatrixOverD:
    """A matrix over R, C or H.

    ``data`` is a real (R), complex (C) or 2x-blown-up complex (H) array;
    ``shape`` is the shape over the division algebra.
    """

    algebra: str
    data: np.ndarray

    @property
    def factor(self) -> int:
        return 2 if self.algebra == "H" else 1

    @property
    def shape(self):
        r, c = self.data.shape
        return r // self.factor, c // self.factor

    def H(self) -> "MatrixOverD":
        """Conjugate transpose over D."""
        return MatrixOverD(self.algebra, self.data.conj().T)

    def __matmul__(self, other: "MatrixOverD") -> "MatrixOverD":
        return MatrixOverD(self.algebra, self.data @ other.data)

    def __add__(self, other: "MatrixOverD") -> "MatrixOverD":
        return MatrixOverD(self.algebra, self.data + other.data)

    def __sub__(self, other: "MatrixOverD") -> "MatrixOverD":
        return MatrixOverD(self.algebra, self.data - other.data)

    def scale(self, c: float) -> "MatrixOverD":
        return MatrixOverD(self.algebra, c * self.data)

    def norm(self) -> float:
        """Frobenius norm over D (the H blow-up counts every entry twice)."""
        return float(np.linalg.norm(self.data)) / math.sqrt(self.factor)

    def realify(self) -> np.ndarray:
        """Real coordinate vector (dim_R D entries per D-entry)."""
        a = self.data
        if self.algebra == "R":
            return np.real(a).ravel().copy()
        if self.algebra == "C":
            return np.concatenate([a.real.ravel(), a.imag.ravel()])
        top = a[0::2, :]  # rows [a, b] of each 2x2 block
        return np.concatenate([top.real.ravel(), top.imag.ravel()])

    @classmethod
    def from_real_vector(cls, algebra: str, shape, vec: np.ndarray) -> "MatrixOverD":
        r, c = shape
        if algebra == "R":
            return cls("R", np.asarray(vec, dtype=float).reshape(r, c))
        if algebra == "C":
            n = r * c
            return cls("C", (vec[:n] + 1j * vec[n:]).reshape(r, c))
        n = r * 2 * c
        top = (vec[:n] + 1j * vec[n:]).reshape(r, 2 * c)
        out = np.zeros((2 * r, 2 * c), dtype=complex)
        for i in range(r):
            for j in range(c):
                a, b = top[i, 2 * j], top[i, 2 * j + 1]
                out[2 * i:2 * i + 2, 2 * j:2 * j + 2] = [[a, b], [-np.conj(b), np.conj(a)]]
        return cls("H", out)

    def is_quaternionic(self, tol: float = 1e-12) -> bool:
        if self.algebra != "H":
            return True
        r, c = self.data.shape
        jr = np.kron(np.eye(r // 2), _QJ)
        jc = np.kron(np.eye(c // 2), _QJ)
        return bool(np.allclose(self.data.conj(), jr @ self.data @ np.linalg.inv(jc), atol=tol))

    def to_json(self) -> dict:
        a = self.data
        return {"algebra": self.algebra, "shape": list(self.shape),
                "re": np.real(a).tolist(), "im": np.imag(a).tolist()}

    @classmethod
    def from_json(cls, d: dict) -> "MatrixOverD":
        re = np.asarray(d["re"], dtype=float)
        im = np.asarray(d.get("im", np.zeros_like(re)), dtype=float)
        alg = d.get("algebra", "C")
        data = re if alg == "R" else re + 1j * im
        return cls(alg, data)


def _dtype(algebra):
    return float if algebra == "R" else complex


def _embed_scalar(algebra: str, z) -> np.ndarray:
    """A scalar of D (complex for C/H) as a 1x1 (or 2x2) block."""
    if algebra == "H":
        return np.array([[z, 0], [0, np.conj(z)]], dtype=complex)
    return np.array([[z]], dtype=_dtype(algebra))


def _eye(algebra: str, n: int) -> np.ndarray:
    f = 2 if algebra == "H" else 1
    return np.eye(f * n, dtype=_dtype(algebra))


def _kron_D(algebra: str, m: np.ndarray) -> np.ndarray:
    """Lift a real/complex matrix of D-scalars (complex ones only in C, H)."""
    if algebra != "H":
        return m.astype(_dtype(algebra))
    r, c = m.shape
    out = np.zeros((2 * r, 2 * c), dtype=complex)
    for i in range(r):
        for j in range(c):
            out[2 * i:2 * i + 2, 2 * j:2 * j + 2] = _embed_scalar("H", m[i, j])
    return out


def form_matrix(pair: DualPair, k: int = 0) -> MatrixOverD:
    """Gram matrix F of the skew-hermitian form on V1 in the block form.

    F = [[0, 0, I_k], [0, F', 0], [-I_k, 0, 0]] where F' is the standard
    symplectic matrix (R), i diag(I_{p-k}, -I_{q-k}) (C) or i I (H).
    """
    dp, alg = pair.d_prime, pair.algebra
    if k < 0 or 2 * k > dp:
        raise ValueError("k out of range for the form")
    n = dp - 2 * k
    if alg == "R":
        h = n // 2
        Fp = np.block([[np.zeros((h, h)), np.eye(h)], [-np.eye(h), np.zeros((h, h))]]) if n else np.zeros((0, 0))
    elif alg == "C":
        p, q = pair.signature
        if k > min(p, q):
            raise ValueError("k exceeds the Witt index")
        Fp = 1j * np.diag([1.0] * (p - k) + [-1.0] * (q - k)) if n else np.zeros((0, 0))
    else:
        if k > dp // 2:
            raise ValueError("k exceeds the Witt index")
        Fp = 1j * np.eye(n)
    F = np.zeros((dp, dp), dtype=complex)
    F[:k, dp - k:] = np.eye(k)
    F[k:k + n, k:k + n] = Fp
    F[dp - k:, :k] = -np.eye(k)
    if alg == "R":
        return MatrixOverD("R", F.real)
    return MatrixOverD(alg, _kron_D(alg, F))


def _check_shape(w: MatrixOverD, pair: DualPair):
    if w.algebra != pair.algebra or w.shape != (pair.d_prime, pair.d):
        raise ValueError(f"expected a {pair.d_prime}x{pair.d} matrix over {pair.algebra}, "
                         f"got {w.shape} over {w.algebra}")


def tau(w: MatrixOverD, pair: DualPair, F: Optional[MatrixOverD] = None) -> MatrixOverD:
    """Moment map for G: tau(w) = conj(w)^t F w, a skew-hermitian d x d matrix."""
    _check_shape(w, pair)
    F = form_matrix(pair) if F is None else F
    return w.H() @ F @ w


def tau_prime(w: MatrixOverD, pair: DualPair, F: Optional[MatrixOverD] = None) -> MatrixOverD:
    """Moment map for G': tau'(w) = w conj(w)^t F, an element of g'."""
    _check_shape(w, pair)
    F = form_matrix(pair) if F is None else F
    return w @ w.H() @ F


# --------------------------------------------------------------------------
# Cartan subspaces
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CartanSpec:
    """A point sum_j w_j u_j of the Cartan subspace with m positive deltas."""

    pair: DualPair
    coords: Sequence[float]
    m: Optional[int] = None

    def __post_init__(self):
        if len(self.coords) != self.pair.l_doubleprime:
            raise ValueError("need l'' = min(l, l') coordinates")
        cartan_signs(self.pair, self.m)  # validates m

    @property
    def deltas(self) -> List[int]:
        return cartan_signs(self.pair, self.m)


def _cartan_targets(pair: DualPair, deltas: Sequence[int]) -> List[int]:
    """Index in V1 (k = 0 form) used by u_j for D = C."""
    p, q = pair.signature
    pos = iter(range(p))
    neg = iter(range(p, p + q))
    return [next(pos) if dl > 0 else next(neg) for dl in deltas]


def cartan_element(spec: CartanSpec) -> MatrixOverD:
    """sum_j w_j u_j as an explicit d' x d matrix (form F with k = 0).

    The u_j satisfy tau(sum w_j u_j) = sum w_j^2 delta_j J_j and
    tau'(sum w_j u_j) = sum w_j^2 delta_j J'_j.
    """
    pair = spec.pair
    alg = pair.algebra
    w = np.zeros((pair.d_prime, pair.d), dtype=complex)
    if alg == "C":
        for j, (x, dl, f) in enumerate(zip(spec.coords, spec.deltas,
                                           _cartan_targets(pair, spec.deltas))):
            w[f, j] = x * np.exp(-1j * dl * math.pi / 4)
        return MatrixOverD("C", w)
    if alg == "H":
        for j, x in enumerate(spec.coords):
            w[j, j] = x * np.exp(1j * math.pi / 4)
        return MatrixOverD("H", _kron_D("H", w))
    half = pair.d_prime // 2
    wr = np.zeros((pair.d_prime, pair.d))
    s = 1 / math.sqrt(2)
    for j, x in enumerate(spec.coords):
        v0, v0p = 2 * j, 2 * j + 1
        v1, v1p = j, half + j
        wr[v1, v0], wr[v1p, v0] = x * s, -x * s
        wr[v1, v0p], wr[v1p, v0p] = x * s, x * s
    return MatrixOverD("R", wr)


def cartan_J(pair: DualPair, m: Optional[int] = None):
    """The complex structures J_j on V0 and J'_j on V1 (lists of matrices)."""
    alg = pair.algebra
    l2 = pair.l_doubleprime
    Js, Jps = [], []
    deltas = cartan_signs(pair, m)
    if alg == "R":
        half = pair.d_prime // 2
        for j in range(l2):
            J = np.zeros((pair.d, pair.d))
            J[2 * j + 1, 2 * j], J[2 * j, 2 * j + 1] = -1, 1
            Jp = np.zeros((pair.d_prime, pair.d_prime))
            Jp[half + j, j], Jp[j, half + j] = -1, 1
            Js.append(MatrixOverD("R", J))
            Jps.append(MatrixOverD("R", Jp))
        return Js, Jps
    targets = _cartan_targets(pair, deltas) if alg == "C" else list(range(l2))
    for j in range(l2):
        J = np.zeros((pair.d, pair.d), dtype=complex)
        J[j, j] = 1j
        Jp = np.zeros((pair.d_prime, pair.d_prime), dtype=complex)
        Jp[targets[j], targets[j]] = 1j
        Js.append(MatrixOverD(alg, _kron_D(alg, J)))
        Jps.append(MatrixOverD(alg, _kron_D(alg, Jp)))
    return Js, Jps


# --------------------------------------------------------------------------
# Lie algebras and random elements
# --------------------------------------------------------------------------


def _real_basis_M(algebra: str, r: int, c: int) -> List[MatrixOverD]:
    n = r * c * {"R": 1, "C": 2, "H": 4}[algebra]
    out = []
    for k in range(n):
        v = np.zeros(n)
        v[k] = 1.0
        out.append(MatrixOverD.from_real_vector(algebra, (r, c), v))
    return out


def _orthonormal_span(mats: List[MatrixOverD], tol: float = 1e-10) -> List[MatrixOverD]:
    if not mats:
        return []
    A = np.array([m.realify() for m in mats])
    u, s, vt = np.linalg.svd(A, full_matrices=False)
    rank = int(np.sum(s > tol * max(1.0, s[0])))
    shape, alg = mats[0].shape, mats[0].algebra
    return [MatrixOverD.from_real_vector(alg, shape, vt[i]) for i in range(rank)]


def lie_algebra_basis(pair: DualPair, which: str = "g", k: int = 0) -> List[MatrixOverD]:
    """Real basis of g (skew-hermitian d x d) or g' ({X : X^H F + F X = 0})."""
    alg = pair.algebra
    if which == "g":
        mats = [MatrixOverD(alg, (E.data - E.data.conj().T) / 2)
                for E in _real_basis_M(alg, pair.d, pair.d)]
    else:
        F = form_matrix(pair, k).data
        Finv = np.linalg.inv(F)
        mats = [MatrixOverD(alg, (E.data - Finv @ E.data.conj().T @ F) / 2)
                for E in _real_basis_M(alg, pair.d_prime, pair.d_prime)]
    return _orthonormal_span(mats)


def random_W(pair: DualPair, rng: np.random.Generator) -> MatrixOverD:
    n = pair.d * pair.d_prime * pair.dim_R_D
    return MatrixOverD.from_real_vector(pair.algebra, (pair.d_prime, pair.d),
                                        rng.standard_normal(n))


def random_group_element(pair: DualPair, which: str, rng: np.random.Generator,
                         scale: float = 1.0, k: int = 0) -> MatrixOverD:
    """exp of a random Lie algebra element (G compact, G' near the identity)."""
    basis = lie_algebra_basis(pair, which, k)
    n = pair.d if which == "g" else pair.d_prime
    if not basis:
        return MatrixOverD(pair.algebra, _eye(pair.algebra, n))
    X = sum((b.data * c for b, c in zip(basis, rng.standard_normal(len(basis)) * scale)),
            start=np.zeros_like(basis[0].data))
    g = expm(X)
    if pair.algebra == "R":
        g = g.real
    return MatrixOverD(pair.algebra, g)


def equivariance_residual(pair: DualPair, rng: np.random.Generator) -> float:
    """max relative residual of tau, tau' equivariance at one random sample."""
    w = random_W(pair, rng)
    g = random_group_element(pair, "g", rng)
    gp = random_group_element(pair, "g_prime", rng, scale=0.3)
    ginv = MatrixOverD(pair.algebra, np.linalg.inv(g.data))
    gpinv = MatrixOverD(pair.algebra, np.linalg.inv(gp.data))
    moved = gp @ w @ ginv
    r1 = tau(moved, pair) - g @ tau(w, pair) @ ginv
    r2 = tau_prime(moved, pair) - gp @ tau_prime(w, pair) @ gpinv
    scale = 1.0 + w.norm() ** 2 * (1 + gp.norm()) ** 2
    return max(r1.norm(), r2.norm()) / scale


# --------------------------------------------------------------------------
# W_g
# --------------------------------------------------------------------------


def is_in_Wg(w: MatrixOverD, pair: DualPair, tol: float = 1e-9) -> bool:
    """True iff x w = 0 (x in g acting on V0) forces x = 0.

    In the matrix model g acts on W by w -> -w x; the test checks that
    x -> w x is injective on g.
    """
    _check_shape(w, pair)
    basis = lie_algebra_basis(pair, "g")
    if not basis:
        return True
    A = np.array([(w @ x).realify() for x in basis]).T
    s = np.linalg.svd(A, compute_uv=False)
    return bool(np.sum(s > tol * max(1.0, s[0] if len(s) else 1.0)) == len(basis))


def is_in_Wg_rank(w: MatrixOverD, pair: DualPair, tol: float = 1e-9) -> bool:
    """Rank criterion: w surjective onto V0 (rank d), or G orthogonal and rank >= d - 1."""
    s = np.linalg.svd(w.data, compute_uv=False)
    rank = int(np.sum(s > tol * max(1.0, s[0] if len(s) else 1.0))) // w.factor
    if rank == pair.d:
        return True
    return pair.algebra == "R" and rank >= pair.d - 1


# --------------------------------------------------------------------------
# nilpotent orbits
# --------------------------------------------------------------------------


def dim_SH(algebra: str, k: int) -> int:
    """Real dimension of the k x k skew-hermitian matrices over D."""
    return {"R": k * (k - 1) // 2, "C": k * k, "H": k * (2 * k + 1)}[algebra]


def max_orbit_index(pair: DualPair) -> int:
    """m = min(d, Witt index)."""
    return min(pair.d, pair.witt_index)


def _check_k(pair: DualPair, k: int):
    if not 0 <= k <= max_orbit_index(pair):
        raise ValueError(f"k must lie in [0, {max_orbit_index(pair)}]")


def orbit_dim(pair: DualPair, k: int) -> int:
    """dim O'_k from the specialized table."""
    _check_k(pair, k)
    dp = pair.d_prime
    if pair.algebra == "R":
        return k * dp - k * (k - 1)
    if pair.algebra == "C":
        return 2 * k * dp - 2 * k * k
    return 4 * k * dp - 2 * k * (2 * k + 1)


def orbit_dim_general(algebra: str, d_prime: int, k: int) -> int:
    """dim O'_k = d' k dim_R D - 2 dim_R SH_k(D)."""
    return d_prime * k * {"R": 1, "C": 2, "H": 4}[algebra] - 2 * dim_SH(algebra, k)


def _nilpotent(pair: DualPair, k: int) -> MatrixOverD:
    N = np.zeros((pair.d_prime, pair.d))
    N[:k, :k] = np.eye(k)
    if pair.algebra == "R":
        return MatrixOverD("R", N)
    return MatrixOverD(pair.algebra, _kron_D(pair.algebra, N.astype(complex)))


def orbit_dim_numeric(pair: DualPair, k: int) -> int:
    """dim of the G'-orbit of tau'(N_k), as the rank of X -> [X, tau'(N_k)]."""
    _check_k(pair, k)
    F = form_matrix(pair, k)
    y = tau_prime(_nilpotent(pair, k), pair, F)
    basis = lie_algebra_basis(pair, "g_prime", k)
    A = np.array([(X @ y - y @ X).realify() for X in basis]).T
    s = np.linalg.svd(A, compute_uv=False)
    return int(np.sum(s > 1e-9 * max(1.0, s[0] if len(s) else 1.0)))


@dataclass(frozen=True)
class OrbitDescriptor:
    pair: DualPair
    k: int
    dim: int
    degree: int

    def to_json(self) -> dict:
        return {"k": self.k, "dim": self.dim, "degree": self.degree}


def orbit_table(pair: DualPair) -> List[OrbitDescriptor]:
    """(k, dim O'_k, deg mu_{O_k} = dim O'_k - dim W) for k = 0..m."""
    dimW = pair.d * pair.d_prime * pair.dim_R_D
    out = []
    for k in range(max_orbit_index(pair) + 1):
        dk = orbit_dim(pair, k)
        out.append(OrbitDescriptor(pair, k, dk, dk - dimW))
    return out


def _dim_g(pair: DualPair) -> int:
    d = pair.d
    return {"R": d * (d - 1) // 2, "C": d * d, "H": d * (2 * d + 1)}[pair.algebra]


def stable_range_equality(pair: DualPair) -> bool:
    """dim O'_m == dim W - 2 dim g, evaluated directly."""
    dimW = pair.d * pair.d_prime * pair.dim_R_D
    return orbit_dim(pair, max_orbit_index(pair)) == dimW - 2 * _dim_g(pair)


def stable_range_predicate(pair: DualPair) -> bool:
    """Stable range (d <= Witt index) or one of the two exceptional families:
    (O_{m+1}, Sp_{2m}(R)) and (U_{d'-m}, U_{m,d'-m}) with 2m < d'."""
    if pair.d <= pair.witt_index:
        return True
    if pair.algebra == "R":
        m = pair.d_prime // 2
        return pair.d == m + 1
    if pair.algebra == "C":
        m = min(pair.signature)
        return 2 * m < pair.d_prime and pair.d == pair.d_prime - m
    return False


def homogeneity_gap(pair: DualPair) -> int:
    """dim W - dim O'_m - dim g - dim h (may be negative outside l <= l')."""
    dimW = pair.d * pair.d_prime * pair.dim_R_D
    return dimW - orbit_dim(pair, max_orbit_index(pair)) - _dim_g(pair) - pair.l


def homogeneity_gap_listed(pair: DualPair) -> bool:
    """Membership in the listed equality cases: (O_2, Sp), (O_3, Sp),
    (U_1, U_{p,q}) with 1 <= p <= q."""
    if pair.algebra == "R":
        return pair.d in (2, 3)
    if pair.algebra == "C":
        p, q = sorted(pair.signature)
        return pair.d == 1 and p >= 1
    return False


def _slice_basis(pair: DualPair, k: int) -> List[MatrixOverD]:
    """Basis of the slice directions [[0,0],[0,w5],[w3,w6]], w3 skew-hermitian."""
    alg, dp, d = pair.algebra, pair.d_prime, pair.d
    out = []
    for E in _real_basis_M(alg, dp, d):
        f = E.factor
        full = E.data
        r, c = np.nonzero(np.abs(full) > 0)
        rr, cc = r[0] // f, c[0] // f
        mid = k <= rr < dp - k and cc >= k
        low6 = rr >= dp - k and cc >= k
        if mid or low6:
            out.append(E)
    # skew-hermitian w3 block (rows dp-k.., cols 0..k)
    if k:
        for E in _real_basis_M(alg, k, k):
            S = (E.data - E.data.conj().T) / 2
            if np.linalg.norm(S) < 1e-14:
                continue
            big = np.zeros((dp * (2 if alg == "H" else 1), d * (2 if alg == "H" else 1)),
                           dtype=S.dtype)
            f = 2 if alg == "H" else 1
            big[(dp - k) * f:, :k * f] = S
            out.append(MatrixOverD(alg, big))
    return _orthonormal_span(out)


@dataclass
class DilationReport:
    exponent_slice: int
    exponent_full: int
    expected_slice: int
    expected_full: int
    slice_dim: int
    tangent_dim: int
    transversal: bool
    invariant: bool
    tau_scaling_residual: float

    @property
    def ok(self) -> bool:
        return (self.exponent_slice == self.expected_slice
                and self.exponent_full == self.expected_full
                and self.transversal and self.invariant
                and self.tau_scaling_residual < 1e-10)

    def to_json(self) -> dict:
        out = dict(self.__dict__)
        out["ok"] = self.ok
        return out


def gt_dilation_det(pair: DualPair, k: int, t=Fraction(2),
                    rng: Optional[np.random.Generator] = None) -> DilationReport:
    """Determinant exponents of g_t(w) = t s_t w on the slice and on W.

    The slice N_k + [s0, N_k]^perp is spanned by the blocks w5, w6 and the
    skew-hermitian w3; it is checked to be transversal to the tangent space
    {X' N - N X} of the G x G'-orbit through N_k and to be g_t-stable. The
    exponent is read off as log det / log t from the restricted matrix.
    """
    _check_k(pair, k)
    t = float(t)
    if t <= 0 or t == 1:
        raise ValueError("need t > 0, t != 1")
    rng = np.random.default_rng(0) if rng is None else rng
    alg, dp, d = pair.algebra, pair.d_prime, pair.d
    f = 2 if alg == "H" else 1
    F = form_matrix(pair, k)
    N = _nilpotent(pair, k)
    st = np.ones(dp)
    st[:k] = 1 / t
    st[dp - k:] = t
    S = np.diag(np.repeat(st, f)).astype(F.data.dtype)

    def g_t(w: MatrixOverD) -> MatrixOverD:
        return MatrixOverD(alg, t * (S @ w.data))

    dimW = d * dp * pair.dim_R_D
    full = np.array([g_t(E).realify() for E in _real_basis_M(alg, dp, d)]).T
    exp_full = int(round(math.log(abs(np.linalg.det(full))) / math.log(t))) if dimW else 0

    sl = _slice_basis(pair, k)
    gb = lie_algebra_basis(pair, "g")
    gpb = lie_algebra_basis(pair, "g_prime", k)
    tangent = [X @ N for X in gpb] + [N @ x for x in gb]
    tangent = _orthonormal_span(tangent)
    both = np.array([v.realify() for v in tangent + sl]) if (tangent or sl) else np.zeros((0, dimW))
    rank = np.linalg.matrix_rank(both, tol=1e-9) if len(both) else 0
    transversal = rank == dimW and len(tangent) + len(sl) == dimW

    if sl:
        B = np.array([v.realify() for v in sl]).T          # dimW x s, orthonormal cols
        img = np.array([g_t(v).realify() for v in sl]).T
        coeffs, *_ = np.linalg.lstsq(B, img, rcond=None)
        invariant = bool(np.allclose(B @ coeffs, img, atol=1e-10 * max(1.0, t * t)))
        exp_slice = int(round(math.log(abs(np.linalg.det(coeffs))) / math.log(t)))
        # g_t fixes N, and tau(g_t w) = t^2 tau(w) at a random slice point
        v = MatrixOverD.from_real_vector(alg, (dp, d), B @ rng.standard_normal(len(sl)))
        w = N + v
        res = (tau(g_t(w), pair, F) - tau(w, pair, F).scale(t * t)).norm()
        res /= max(1.0, tau(w, pair, F).norm() * t * t)
        res = max(res, (g_t(N) - N).norm())
    else:
        invariant, exp_slice, res = True, 0, (g_t(N) - N).norm()
    return DilationReport(exp_slice, exp_full, dimW - orbit_dim(pair, k), dimW,
                          len(sl), len(tangent), bool(transversal), invariant, float(res))


def derivative_order_bound(pair: DualPair) -> int:
    """d' - r - 1 for D = R, C and 2(d' - r) for D = H (case l <= l')."""
    if pair.l > pair.l_prime:
        raise ValueError("derivative_order_bound needs l <= l'")
    if pair.algebra == "H":
        return int(2 * (pair.d_prime - pair.r))
    return int(pair.d_prime - pair.r - 1)
