"""Generalized Heisenberg algebras built from Clifford-module generators.

The two-step nilpotent algebra n = v (+) z is stored through the matrices
J_1..J_m of the skew maps J_{z_r} acting on v; the bracket of two
v-vectors is recovered by duality, <[U, W], z_r> = <J_r U, W>.  Supported
families are the classical low-dimensional Clifford modules (complex,
quaternionic with one/two/three generators, octonionic) replicated
block-diagonally, which is enough to exercise every dimension-generic
claim the verification suite checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "SUPPORTED_M",
    "GeneralizedHeisenbergAlgebra",
    "IdentityReport",
    "build_clifford_generators",
    "make_algebra",
    "bracket_n",
    "j_map",
    "check_gh_identities",
    "decompose_v",
    "complete_orthonormal",
]

SUPPORTED_M = (1, 2, 3, 7)

# minimal Clifford-module dimension per supported number of generators
_BASE_DIM = {1: 2, 2: 4, 3: 4, 7: 8}

_MAX_DIM = 4096

# Left multiplication by i, j, k on R^4 = H with basis (1, i, j, k).
_QUAT_LEFT = np.array(
    [
        [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]],
        [[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]],
        [[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]],
    ],
    dtype=float,
)


def _quat_mult(p, q):
    w1, x1, y1, z1 = p
    w2, x2, y2, z2 = q
    return np.array(
        [
            w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
            w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
            w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
            w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
        ]
    )


def _quat_conj(p):
    return np.array([p[0], -p[1], -p[2], -p[3]])


def _octonion_mult(p, q):
    # Cayley-Dickson doubling of the quaternions: (a,b)(c,d) = (ac - d*b, da + bc*)
    a, b = p[:4], p[4:]
    c, d = q[:4], q[4:]
    return np.concatenate(
        [
            _quat_mult(a, c) - _quat_mult(_quat_conj(d), b),
            _quat_mult(d, a) + _quat_mult(b, _quat_conj(c)),
        ]
    )


def _octonion_left_mults():
    mats = np.empty((7, 8, 8))
    basis = np.eye(8)
    for r in range(7):
        unit = basis[r + 1]
        for col in range(8):
            mats[r, :, col] = _octonion_mult(unit, basis[col])
    return mats


def build_clifford_generators(m: int, multiplicity: int) -> np.ndarray:
    """Return the stack J_1..J_m of k x k generators, k = multiplicity * d(m).

    The base representations are the 2x2 rotation generator (m=1), left
    multiplication by the first one/two/three quaternion units on R^4
    (m=2, 3) and left multiplication by the seven imaginary octonion
    units on R^8 (m=7); higher multiplicity replicates the base module
    block-diagonally, which preserves all Clifford relations.
    """
    if m not in SUPPORTED_M:
        raise ValueError("unsupported Clifford signature")
    if multiplicity < 1:
        raise ValueError("multiplicity must be a positive integer")
    base_dim = _BASE_DIM[m]
    k = base_dim * multiplicity
    if k > _MAX_DIM:
        raise ValueError(f"algebra dimension too large (k={k} > {_MAX_DIM})")
    if m == 1:
        base = np.array([[[0.0, -1.0], [1.0, 0.0]]])
    elif m in (2, 3):
        base = _QUAT_LEFT[:m].copy()
    else:
        base = _octonion_left_mults()
    if multiplicity == 1:
        return base
    J = np.zeros((m, k, k))
    for r in range(m):
        for blk in range(multiplicity):
            lo = blk * base_dim
            J[r, lo:lo + base_dim, lo:lo + base_dim] = base[r]
    return J


@dataclass(frozen=True, eq=False)
class GeneralizedHeisenbergAlgebra:
    """Immutable container for one generalized Heisenberg algebra.

    Attributes
    ----------
    m : int
        Dimension of the center z.
    multiplicity : int
        Number of block-diagonal copies of the base Clifford module.
    J : ndarray, shape (m, k, k)
        Matrices of J_{z_r} in the orthonormal basis of v.
    A : ndarray, shape (m, k, k)
        Structure constants A[r, i, j] = <J_r e_i, e_j> = <[e_i, e_j], z_r>.
    """

    m: int
    multiplicity: int
    J: np.ndarray
    A: np.ndarray = field(init=False)

    def __post_init__(self):
        J = np.ascontiguousarray(self.J, dtype=float)
        A = np.ascontiguousarray(np.transpose(J, (0, 2, 1)))
        J.setflags(write=False)
        A.setflags(write=False)
        object.__setattr__(self, "J", J)
        object.__setattr__(self, "A", A)

    @property
    def k(self) -> int:
        return self.J.shape[1]

    @property
    def dim_n(self) -> int:
        return self.k + self.m

    @property
    def dim_s(self) -> int:
        """Dimension of the solvable extension S = v x z x R+."""
        return self.k + self.m + 1

    def descriptor(self) -> dict:
        return {"m": self.m, "multiplicity": self.multiplicity}

    def export_j_matrices(self) -> list:
        """J matrices as row-major nested lists (debugging aid)."""
        return [mat.tolist() for mat in self.J]


def make_algebra(m: int, multiplicity: int = 1) -> GeneralizedHeisenbergAlgebra:
    """Construct the generalized Heisenberg algebra for (m, multiplicity)."""
    J = build_clifford_generators(m, multiplicity)
    return GeneralizedHeisenbergAlgebra(m=m, multiplicity=multiplicity, J=J)


def algebra_from_descriptor(desc: dict) -> GeneralizedHeisenbergAlgebra:
    return make_algebra(int(desc["m"]), int(desc["multiplicity"]))


def _check_v(alg, U):
    U = np.asarray(U, dtype=float)
    if U.shape != (alg.k,):
        raise ValueError(f"expected v-vector of length {alg.k}, got shape {U.shape}")
    return U


def _check_z(alg, Z):
    Z = np.asarray(Z, dtype=float)
    if Z.shape != (alg.m,):
        raise ValueError(f"expected z-vector of length {alg.m}, got shape {Z.shape}")
    return Z


def bracket_n(alg: GeneralizedHeisenbergAlgebra, U, W) -> np.ndarray:
    """Central part of the bracket: [U, W] = sum_r <J_r U, W> z_r."""
    U = _check_v(alg, U)
    W = _check_v(alg, W)
    return np.einsum("rcb,b,c->r", alg.J, U, W)


def j_map(alg: GeneralizedHeisenbergAlgebra, Z, U) -> np.ndarray:
    """Apply J_Z = sum_r Z^r J_r to U."""
    Z = _check_z(alg, Z)
    U = _check_v(alg, U)
    return np.einsum("r,rcb,b->c", Z, alg.J, U)


#: names of the nine defining identities checked by `check_gh_identities`
IDENTITY_NAMES = (
    "anticommutation",      # J_X J_Y + J_Y J_X = -2<X,Y> id
    "skew_adjoint",         # <J_X U, V> = -<U, J_X V>
    "isometry",             # <J_X U, J_X V> = |X|^2 <U, V>
    "mixed_isometry",       # <J_X U, J_Y V> + <J_Y U, J_X V> = 2<U,V><X,Y>
    "center_pairing",       # <J_X U, J_Y U> = |U|^2 <X, Y>
    "bracket_transfer",     # [J_X U, V] - [U, J_X V] = -2<U,V> X
    "bracket_iterate",      # [J_X U, J_Y U] = [U, J_X J_Y U]
    "bracket_conjugate",    # [J_X U, J_X V] = -|X|^2 [U,V] - 2<U, J_X V> X
    "norm_square",          # [U, J_X U] = |U|^2 X
)


@dataclass(frozen=True)
class IdentityReport:
    residuals: dict
    trials: int
    tol: float

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values())

    @property
    def passed(self) -> bool:
        return self.max_residual < self.tol


def _draw(rng, dim, scale=2.0):
    u = rng.uniform(-1.0, 1.0, dim)
    norm = np.linalg.norm(u)
    if norm == 0.0:
        return u
    return u * (rng.uniform(0.0, scale) / norm)


def check_gh_identities(alg, trials: int = 100, tol: float = 1e-10,
                        rng_seed: int = 0) -> IdentityReport:
    """Evaluate the nine defining identities on random inputs of norm <= 2.

    Returns the maximum absolute residual per identity; the report passes
    iff every residual stays below `tol`.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    rng = np.random.default_rng(rng_seed)
    worst = dict.fromkeys(IDENTITY_NAMES, 0.0)

    def track(name, residual):
        worst[name] = max(worst[name], float(np.max(np.abs(residual))))

    for _ in range(trials):
        U = _draw(rng, alg.k)
        V = _draw(rng, alg.k)
        X = _draw(rng, alg.m)
        Y = _draw(rng, alg.m)
        jxu = j_map(alg, X, U)
        jxv = j_map(alg, X, V)
        jyu = j_map(alg, Y, U)
        jyv = j_map(alg, Y, V)
        track("anticommutation",
              j_map(alg, X, jyu) + j_map(alg, Y, jxu) + 2.0 * (X @ Y) * U)
        track("skew_adjoint", jxu @ V + U @ jxv)
        track("isometry", jxu @ jxv - (X @ X) * (U @ V))
        track("mixed_isometry", jxu @ jyv + jyu @ jxv - 2.0 * (U @ V) * (X @ Y))
        track("center_pairing", jxu @ jyu - (U @ U) * (X @ Y))
        track("bracket_transfer",
              bracket_n(alg, jxu, V) - bracket_n(alg, U, jxv) + 2.0 * (U @ V) * X)
        track("bracket_iterate",
              bracket_n(alg, jxu, jyu) - bracket_n(alg, U, j_map(alg, X, jyu)))
        track("bracket_conjugate",
              bracket_n(alg, jxu, jxv) + (X @ X) * bracket_n(alg, U, V)
              + 2.0 * (U @ jxv) * X)
        track("norm_square", bracket_n(alg, U, jxu) - (U @ U) * X)
    return IdentityReport(residuals=worst, trials=trials, tol=tol)


def complete_orthonormal(rows, dim: int, pivot_tol: float = 1e-8) -> np.ndarray:
    """Extend orthonormal `rows` to an orthonormal basis of R^dim.

    Gram-Schmidt against standard-basis seeds in index order, keeping a
    candidate only when its residual norm exceeds `pivot_tol`; one
    re-orthogonalization pass keeps the Gram matrix at machine precision.
    Returns only the new vectors, shape (dim - len(rows), dim).
    """
    have = [np.asarray(r, dtype=float) for r in rows]
    needed = dim - len(have)
    new = []
    for seed_idx in range(dim):
        if len(new) == needed:
            break
        w = np.zeros(dim)
        w[seed_idx] = 1.0
        for _ in range(2):
            for b in have:
                w = w - (b @ w) * b
            for b in new:
                w = w - (b @ w) * b
        norm = np.linalg.norm(w)
        if norm > pivot_tol:
            new.append(w / norm)
    if len(new) != needed:
        raise RuntimeError("orthonormal completion failed to find enough pivots")
    return np.array(new).reshape(needed, dim)


def decompose_v(alg, V, tol: float = 1e-8):
    """Split v into ker(ad V) and J_z V for a nonzero V.

    Returns (kernel_basis, j_basis): an orthonormal basis of ker(ad V)
    as rows of a (k-m, k) array and the orthonormal basis {J_r V / |V|}
    of J_z V as rows of an (m, k) array.
    """
    V = _check_v(alg, V)
    norm = np.linalg.norm(V)
    if norm <= tol:
        raise ValueError("degenerate vector")
    j_basis = np.einsum("rcb,b->rc", alg.J, V) / norm
    kernel = complete_orthonormal(j_basis, alg.k, pivot_tol=tol)
    return kernel, j_basis
