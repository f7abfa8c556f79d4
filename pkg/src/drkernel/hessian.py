"""Closed-form Hessian of the Busemann function and its block analysis.

Entries b_{alpha,beta} are taken in the left-invariant orthonormal frame
{E_0, E_i, E_{k+r}}.  The general finite-theta entries are

    b_00      = 2a (fF + aF - 2af^2) / F^2
    b_0i      = -(sqrt(a)/2F^2) {(fF + 2aF - 4af^2) <cal_v, e_i>
                                 + (4af - F) <J_{cal_y} cal_v, e_i>}
    b_0,k+r   = (2a/F^2)(2af - F) <cal_y, e_{k+r}>
    b_ij      = (a/2F)(<cal_v,e_i><cal_v,e_j> + <[e_i,cal_v],[e_j,cal_v]>)
                - (a/F^2) w_i w_j + delta_ij/2,   w = f cal_v - J_{cal_y} cal_v
    b_i,k+r   = -(2a sqrt(a)/F^2) w_i <cal_y, e_{k+r}>
                - (sqrt(a)/2F) <[e_i, (f-2a) cal_v - J_{cal_y} cal_v], e_{k+r}>
    b_k+r,k+l = -(4a^2/F^2) <cal_y,e_{k+r}><cal_y,e_{k+l}>
                + (F - 2af + 2a^2)/F delta_rl

with degenerate limits handled by dedicated closed forms.  In a basis
adapted to cal_v and cal_y the matrix splits into the blocks analysed by
`block_decomposition`, whose identities and determinant chain certify
positive definiteness on the orthogonal complement of the gradient.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import _kernels
from .algebra import complete_orthonormal, j_map
from .busemann import (
    ANNULUS_FACTOR,
    DEGENERACY_RTOL,
    BoundaryPoint,
    classify_case,
    gradient,
    is_degenerate_v,
    is_degenerate_y,
    vy_state,
)
from .group import GroupPoint

__all__ = [
    "HessianMatrix",
    "AdaptedBasis",
    "BlockDecomposition",
    "BlockIdentityReport",
    "B1SpectrumReport",
    "HessianReport",
    "CheckThresholds",
    "spectrum",
    "cluster_eigenvalues",
    "expected_special_spectrum",
    "hessian_closed_form",
    "special_case_hessian",
    "adapted_basis",
    "block_decomposition",
    "verify_block_identities",
    "b1_spectrum_check",
    "det_B_closed",
    "restricted_positivity",
]


@dataclass(frozen=True)
class HessianMatrix:
    """Symmetric (k+m+1)^2 matrix of frame components b_{alpha,beta}."""

    entries: np.ndarray
    basis_tag: str = "standard"
    asymmetry: Optional[float] = None


def spectrum(matrix, with_vectors: bool = False):
    """Eigenvalues (ascending) of a symmetric matrix via cyclic Jacobi.

    The input must be symmetric within 1e-9; it is symmetrized before the
    rotation sweeps.  Pass `with_vectors=True` to also get the orthonormal
    eigenvector columns.
    """
    M = np.asarray(matrix, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("spectrum expects a square matrix")
    if M.size and float(np.max(np.abs(M - M.T))) > 1e-9:
        raise ValueError("matrix is not symmetric")
    sym = 0.5 * (M + M.T)
    w, vecs = _kernels.jacobi_eigh(sym)
    if with_vectors:
        return w, vecs
    return w


def cluster_eigenvalues(values, gap: float = 1e-6):
    """Group sorted eigenvalues into (mean, multiplicity) clusters."""
    w = np.sort(np.asarray(values, dtype=float))
    clusters = []
    start = 0
    for i in range(1, len(w) + 1):
        if i == len(w) or w[i] - w[i - 1] > gap:
            clusters.append((float(np.mean(w[start:i])), i - start))
            start = i
    return clusters


def expected_special_spectrum(k: int, m: int) -> np.ndarray:
    """Eigenvalue multiset {0 x1, 1/2 xk, 1 xm} in ascending order."""
    return np.concatenate([[0.0], np.full(k, 0.5), np.ones(m)])


def _exact_diag(k: int, m: int) -> np.ndarray:
    return np.diag(np.concatenate([[0.0], np.full(k, 0.5), np.ones(m)]))


def _assemble_general(alg, a, state, vb, zb):
    """General-case entries in the orthonormal basis (rows of vb, zb)."""
    k, m = alg.k, alg.m
    n = k + m + 1
    f, F = state.f, state.F
    sqrt_a = np.sqrt(a)
    cal_v, cal_y = state.cal_v, state.cal_y
    jyv = j_map(alg, cal_y, cal_v)
    w = f * cal_v - jyv
    Vi = vb @ cal_v
    Wi = vb @ w
    Ji = vb @ jyv
    Yr = zb @ cal_y
    # z-components of [vb_i, cal_v] and [vb_i, (f-2a) cal_v - J_{cal_y} cal_v]
    br_v = np.einsum("scb,ib,c->is", alg.J, vb, cal_v, optimize=True)
    u = (f - 2.0 * a) * cal_v - jyv
    br_u = np.einsum("scb,ib,c->is", alg.J, vb, u, optimize=True)
    F2 = F * F
    H = np.zeros((n, n))
    H[0, 0] = 2.0 * a * (f * F + a * F - 2.0 * a * f * f) / F2
    H[0, 1:k + 1] = -(sqrt_a / (2.0 * F2)) * (
        (f * F + 2.0 * a * F - 4.0 * a * f * f) * Vi + (4.0 * a * f - F) * Ji)
    H[0, k + 1:] = (2.0 * a / F2) * (2.0 * a * f - F) * Yr
    H[1:k + 1, 1:k + 1] = ((a / (2.0 * F)) * (np.outer(Vi, Vi) + br_v @ br_v.T)
                           - (a / F2) * np.outer(Wi, Wi) + 0.5 * np.eye(k))
    H[1:k + 1, k + 1:] = (-(2.0 * a * sqrt_a / F2) * np.outer(Wi, Yr)
                          - (sqrt_a / (2.0 * F)) * (br_u @ zb.T))
    H[k + 1:, k + 1:] = (-(4.0 * a * a / F2) * np.outer(Yr, Yr)
                         + ((F - 2.0 * a * f + 2.0 * a * a) / F) * np.eye(m))
    H[1:k + 1, 0] = H[0, 1:k + 1]
    H[k + 1:, 0] = H[0, k + 1:]
    H[k + 1:, 1:k + 1] = H[1:k + 1, k + 1:].T
    return H


def _assemble_v_degenerate(alg, a, state, vb, zb):
    """cal_v = 0: only the b_00, b_0,k+r and z-block entries deviate."""
    k, m = alg.k, alg.m
    n = k + m + 1
    ny2 = float(state.cal_y @ state.cal_y)
    F = a * a + ny2
    F2 = F * F
    Yr = zb @ state.cal_y
    H = np.zeros((n, n))
    H[0, 0] = 4.0 * a * a * ny2 / F2
    H[0, k + 1:] = (2.0 * a / F2) * (2.0 * a * a - F) * Yr
    H[k + 1:, 0] = H[0, k + 1:]
    H[1:k + 1, 1:k + 1] = 0.5 * np.eye(k)
    H[k + 1:, k + 1:] = -(4.0 * a * a / F2) * np.outer(Yr, Yr) + np.eye(m)
    return H


def _assemble_y_degenerate(alg, a, state, vb, zb):
    """cal_y = 0 (so F = f^2): v-block coupling with the center survives."""
    k, m = alg.k, alg.m
    n = k + m + 1
    f = state.f
    f2 = f * f
    sqrt_a = np.sqrt(a)
    cal_v = state.cal_v
    Vi = vb @ cal_v
    br_v = np.einsum("scb,ib,c->is", alg.J, vb, cal_v, optimize=True)
    # <vb_i, J_{z_r} cal_v> for the adapted z-basis rows z_r
    jz_v = np.einsum("rs,scb,b->rc", zb, alg.J, cal_v, optimize=True)
    H = np.zeros((n, n))
    H[0, 0] = 2.0 * a * (f - a) / f2
    H[0, 1:k + 1] = -(sqrt_a * (f - 2.0 * a) / (2.0 * f2)) * Vi
    H[1:k + 1, 0] = H[0, 1:k + 1]
    H[1:k + 1, 1:k + 1] = ((a / (2.0 * f2)) * (-np.outer(Vi, Vi) + br_v @ br_v.T)
                           + 0.5 * np.eye(k))
    H[1:k + 1, k + 1:] = (sqrt_a * (f - 2.0 * a) / (2.0 * f2)) * (vb @ jz_v.T)
    H[k + 1:, 1:k + 1] = H[1:k + 1, k + 1:].T
    H[k + 1:, k + 1:] = ((f2 - 2.0 * a * f + 2.0 * a * a) / f2) * np.eye(m)
    return H


_CASES = ("inf", "VY0", "V0", "Y0", "general")


def special_case_hessian(alg, x: GroupPoint, theta: BoundaryPoint,
                         case: str) -> HessianMatrix:
    """Closed form for a designated degenerate case ("VY0", "V0" or "Y0").

    Raises if the pair (x, theta) does not actually satisfy the case's
    degeneracy within the dispatch thresholds.
    """
    if case not in ("VY0", "V0", "Y0"):
        raise ValueError(f"not a degenerate case: {case!r}")
    actual = classify_case(alg, x, theta)
    if actual != case:
        raise ValueError(f"case mismatch: requested {case!r} but point is {actual!r}")
    state = vy_state(alg, x, theta)
    k, m = alg.k, alg.m
    if case == "VY0":
        return HessianMatrix(_exact_diag(k, m))
    vb = np.eye(k)
    zb = np.eye(m)
    if case == "V0":
        return HessianMatrix(_assemble_v_degenerate(alg, x.a, state, vb, zb))
    return HessianMatrix(_assemble_y_degenerate(alg, x.a, state, vb, zb))


def hessian_closed_form(alg, x: GroupPoint, theta: BoundaryPoint) -> HessianMatrix:
    """Closed-form Hessian in the standard basis, with degenerate dispatch.

    Near the dispatch threshold (within a factor of 10) both the general
    and the degenerate formulas are evaluated and cross-checked; a
    disagreement beyond 1e-6 only warns, since the general entries are
    continuous across the degeneracy.
    """
    case = classify_case(alg, x, theta)
    k, m = alg.k, alg.m
    if case in ("inf", "VY0"):
        return HessianMatrix(_exact_diag(k, m))
    state = vy_state(alg, x, theta)
    vb = np.eye(k)
    zb = np.eye(m)
    if case == "V0":
        return HessianMatrix(_assemble_v_degenerate(alg, x.a, state, vb, zb))
    if case == "Y0":
        return HessianMatrix(_assemble_y_degenerate(alg, x.a, state, vb, zb))
    H = _assemble_general(alg, x.a, state, vb, zb)
    _annulus_cross_check(alg, x, theta, state, H)
    return HessianMatrix(H)


def _annulus_cross_check(alg, x, theta, state, H_general, tol=1e-6):
    near_v = is_degenerate_v(x, theta, state, rtol=ANNULUS_FACTOR * DEGENERACY_RTOL)
    near_y = is_degenerate_y(x, theta, state, rtol=ANNULUS_FACTOR * DEGENERACY_RTOL)
    if not (near_v or near_y):
        return
    vb, zb = np.eye(alg.k), np.eye(alg.m)
    if near_v and near_y:
        other = _exact_diag(alg.k, alg.m)
    elif near_v:
        other = _assemble_v_degenerate(alg, x.a, state, vb, zb)
    else:
        other = _assemble_y_degenerate(alg, x.a, state, vb, zb)
    diff = float(np.max(np.abs(H_general - other)))
    if diff > tol:
        warnings.warn(
            f"general/degenerate closed forms differ by {diff:.3e} "
            "inside the dispatch annulus", RuntimeWarning)


@dataclass(frozen=True)
class AdaptedBasis:
    """Orthonormal bases aligned with cal_v and cal_y.

    Rows of `v_basis` are ordered (cal_v/|cal_v|; completion of
    ker(ad cal_v); J_{z_r} cal_v/|cal_v| for the adapted z-basis rows z_r).
    Row 0 of `z_basis` is cal_y/|cal_y|.
    """

    v_basis: np.ndarray
    z_basis: np.ndarray


def adapted_basis(alg, x: GroupPoint, theta: BoundaryPoint,
                  allow_degenerate: bool = False) -> AdaptedBasis:
    """Construct the adapted bases for a pair (x, theta).

    Degenerate cal_v or cal_y raises (naming the offender) unless
    `allow_degenerate` is set, in which case the corresponding basis is
    the standard one.
    """
    state = vy_state(alg, x, theta)
    k, m = alg.k, alg.m
    deg_v = is_degenerate_v(x, theta, state)
    deg_y = is_degenerate_y(x, theta, state)
    if (deg_v or deg_y) and not allow_degenerate:
        which = "cal_v and cal_y" if (deg_v and deg_y) else ("cal_v" if deg_v else "cal_y")
        raise ValueError(f"degenerate {which}: adapted basis undefined")
    if deg_y:
        zb = np.eye(m)
    else:
        z1 = state.cal_y / np.linalg.norm(state.cal_y)
        zb = np.vstack([z1[None, :], complete_orthonormal([z1], m)])
    if deg_v:
        vb = np.eye(k)
    else:
        e1 = state.cal_v / np.linalg.norm(state.cal_v)
        jp = np.einsum("rs,scb,b->rc", zb, alg.J, e1, optimize=True)
        kernel = complete_orthonormal([e1, *jp], k)
        vb = np.vstack([e1[None, :], kernel, jp])
    return AdaptedBasis(v_basis=vb, z_basis=zb)


@dataclass(frozen=True)
class BlockDecomposition:
    """Adapted-basis Hessian reorganised into its invariant blocks.

    `B1` couples (E_0, cal_v, J_{z_1}cal_v, cal_y); `B2` couples the
    kernel directions to the trailing center directions; `B3` is the skew
    part of the center/J-part coupling; `cal_b` is the positive-definite
    submatrix whose determinant the product formula evaluates.
    """

    B1: np.ndarray
    B2: np.ndarray
    B3: np.ndarray
    b1: float
    b2: float
    b3: float
    b4: float
    cal_b: np.ndarray
    hessian_adapted: HessianMatrix
    basis: AdaptedBasis
    extraction_residual: float


def _closed_b1(a: float, f: float, F: float, nv: float, ny: float) -> np.ndarray:
    """The 4x4 block in closed form; nv = |cal_v|, ny = |cal_y|."""
    F2 = F * F
    saf = 0.5 * np.sqrt(a) * nv          # sqrt(a(f-a)) with f-a = nv^2/4
    b00 = 2.0 * a * (f * F + a * F - 2.0 * a * f * f) / F2
    b10 = -saf * (f * F + 2.0 * a * F - 4.0 * a * f * f) / F2
    bj0 = -saf * ny * (4.0 * a * f - F) / F2
    bz0 = 2.0 * a * (2.0 * a * f - F) * ny / F2
    fa_term = 0.5 * a * nv * nv * (2.0 * f * f - F) / F2   # 2a(f-a)(2f^2-F)/F^2
    b11 = 0.5 - fa_term
    bj1 = a * f * nv * nv * ny / F2                        # 4af(f-a) ny / F^2
    bjj = 0.5 + fa_term
    bzz = 1.0 - b00
    return np.array([
        [b00, b10, bj0, bz0],
        [b10, b11, bj1, bj0],
        [bj0, bj1, bjj, -b10],
        [bz0, bj0, -b10, bzz],
    ])


def block_decomposition(alg, x: GroupPoint, theta: BoundaryPoint,
                        tol: float = 1e-9) -> BlockDecomposition:
    """Extract the adapted-basis block structure (general case only).

    Every extracted entry is cross-checked against its closed form; a
    disagreement beyond `tol` raises "block extraction mismatch" since it
    can only come from an implementation bug.
    """
    case = classify_case(alg, x, theta)
    if case != "general":
        raise ValueError(f"block decomposition requires the general case, got {case!r}")
    state = vy_state(alg, x, theta)
    k, m = alg.k, alg.m
    if k < m + 1:
        raise ValueError("block decomposition needs k >= m + 1")
    basis = adapted_basis(alg, x, theta)
    vb, zb = basis.v_basis, basis.z_basis
    H = _assemble_general(alg, x.a, state, vb, zb)

    a, f, F = x.a, state.f, state.F
    nv2 = float(state.cal_v @ state.cal_v)
    ny2 = float(state.cal_y @ state.cal_y)
    nv, ny = np.sqrt(nv2), np.sqrt(ny2)

    idx_b1 = [0, 1, k - m + 1, k + 1]
    idx_ker = list(range(2, k - m + 1))
    idx_jp = list(range(k - m + 2, k + 1))
    idx_z = list(range(k + 2, k + m + 1))

    B1 = H[np.ix_(idx_b1, idx_b1)]
    B2 = H[np.ix_(idx_ker, idx_z)]
    zj = H[np.ix_(idx_z, idx_jp)]

    half = a * nv2 / (2.0 * F)                  # 2a(f-a)/F
    b1 = 0.5 + half
    b2 = 1.0 - half
    b3 = (f - 2.0 * a) * 0.5 * np.sqrt(a) * nv / F
    b4 = -(a / (4.0 * F * F)) * ny2 * nv2
    B3 = zj - b3 * np.eye(m - 1)

    residuals = [float(np.max(np.abs(B1 - _closed_b1(a, f, F, nv, ny))))]
    if idx_ker:
        residuals.append(float(np.max(np.abs(
            H[np.ix_(idx_ker, idx_ker)] - 0.5 * np.eye(k - m - 1)))))
    if idx_jp:
        residuals.append(float(np.max(np.abs(
            H[np.ix_(idx_jp, idx_jp)] - b1 * np.eye(m - 1)))))
        residuals.append(float(np.max(np.abs(
            H[np.ix_(idx_z, idx_z)] - b2 * np.eye(m - 1)))))
    jyv = j_map(alg, state.cal_y, state.cal_v)
    if idx_ker and idx_jp:
        # B2 closed form: (sqrt(a)/2F) <[e_i, J_{cal_y} cal_v], z_r>, i in kernel
        ker_rows = vb[1:k - m]
        br = np.einsum("scb,ib,c->is", alg.J, ker_rows, jyv, optimize=True)
        B2_closed = (np.sqrt(a) / (2.0 * F)) * (br @ zb[1:].T)
        residuals.append(float(np.max(np.abs(B2 - B2_closed))))
    if idx_jp:
        # B3 closed form entry (r, l): coef <[J_{z_l} cal_v, J_{cal_y} cal_v], z_r>
        zr = zb[1:]
        P = np.einsum("rs,scb,b->rc", zr, alg.J, state.cal_v, optimize=True)
        wl = np.einsum("scb,lb,c->ls", alg.J, P, jyv, optimize=True)
        coef = 0.25 / F * np.sqrt(a / (0.25 * nv2))
        B3_closed = coef * (zr @ wl.T)
        residuals.append(float(np.max(np.abs(B3 - B3_closed))))
        residuals.append(float(np.max(np.abs(B3 + B3.T))))
    # off-blocks forced to vanish by the adapted layout
    rest = idx_ker + idx_jp + idx_z
    if rest:
        residuals.append(float(np.max(np.abs(H[np.ix_(idx_b1, rest)]))))
    if idx_ker and idx_jp:
        residuals.append(float(np.max(np.abs(H[np.ix_(idx_ker, idx_jp)]))))
    extraction_residual = max(residuals)
    if extraction_residual > tol:
        raise ValueError(
            f"block extraction mismatch: residual {extraction_residual:.3e} > {tol:.1e}")

    cal_b = H[np.ix_(rest, rest)]
    return BlockDecomposition(
        B1=B1, B2=B2, B3=B3, b1=float(b1), b2=float(b2), b3=float(b3),
        b4=float(b4), cal_b=cal_b,
        hessian_adapted=HessianMatrix(H, basis_tag="adapted"),
        basis=basis, extraction_residual=extraction_residual)


@dataclass(frozen=True)
class BlockIdentityReport:
    quadratic_residual: float
    scalar_residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.quadratic_residual < self.tol and self.scalar_residual < self.tol


def _identities_from_blocks(bd: BlockDecomposition, tol: float) -> BlockIdentityReport:
    mm = bd.B3.shape[0]
    if mm:
        quad = bd.B3 @ bd.B3 - bd.B2.T @ bd.B2 - bd.b4 * np.eye(mm)
        quad_res = float(np.max(np.abs(quad)))
    else:
        quad_res = 0.0
    scal_res = abs(bd.b1 * bd.b2 - bd.b3 ** 2 + bd.b4 - 0.5)
    return BlockIdentityReport(quadratic_residual=quad_res,
                               scalar_residual=scal_res, tol=tol)


def verify_block_identities(alg, x: GroupPoint, theta: BoundaryPoint,
                            tol: float = 1e-10) -> BlockIdentityReport:
    """Residuals of B3^2 - B2^T B2 = b4 I and b1 b2 - b3^2 + b4 = 1/2."""
    bd = block_decomposition(alg, x, theta)
    return _identities_from_blocks(bd, tol)


@dataclass(frozen=True)
class B1SpectrumReport:
    det_at_zero: float
    det_at_half: float
    det_at_one: float
    trace: float
    eigenvalues: np.ndarray
    passed: bool


def _b1_report_from_blocks(bd: BlockDecomposition, det_tol, trace_tol,
                           spectrum_tol) -> B1SpectrumReport:
    w = spectrum(bd.B1)
    det0 = float(np.prod(w))
    det_half = float(np.prod(w - 0.5))
    det1 = float(np.prod(w - 1.0))
    trace = float(np.trace(bd.B1))
    expected = np.array([0.0, 0.5, 0.5, 1.0])
    ok = (abs(det0) < det_tol and abs(det_half) < det_tol and abs(det1) < det_tol
          and abs(trace - 2.0) < trace_tol
          and float(np.max(np.abs(np.sort(w) - expected))) < spectrum_tol)
    return B1SpectrumReport(det_at_zero=det0, det_at_half=det_half,
                            det_at_one=det1, trace=trace, eigenvalues=w,
                            passed=bool(ok))


def b1_spectrum_check(alg, x: GroupPoint, theta: BoundaryPoint,
                      det_tol: float = 1e-9, trace_tol: float = 1e-10,
                      spectrum_tol: float = 1e-8) -> B1SpectrumReport:
    """Check that the 4x4 block has eigenvalues {0, 1/2, 1/2, 1} and trace 2."""
    bd = block_decomposition(alg, x, theta)
    return _b1_report_from_blocks(bd, det_tol, trace_tol, spectrum_tol)


def _det_chain_from_blocks(alg, a, state, bd, mu_slack=1e-10):
    k = alg.k
    F = state.F
    nv2 = float(state.cal_v @ state.cal_v)
    ny2 = float(state.cal_y @ state.cal_y)
    btb = bd.B2.T @ bd.B2
    gram = (4.0 * F * F / a) * btb
    mu = spectrum(gram) if gram.size else np.zeros(gram.shape[0])
    upper = nv2 * ny2
    if mu.size and (float(mu[0]) < -mu_slack or float(mu[-1]) > upper + mu_slack):
        raise ArithmeticError(
            f"Gram eigenvalue outside [0, |cal_v|^2 |cal_y|^2]: {mu}")
    factors = 1.0 - (2.0 * a * a * (0.25 * nv2) / F ** 3) * mu
    lower = 1.0 - a * a * nv2 * nv2 * ny2 / (2.0 * F ** 3)
    if factors.size and (float(np.min(factors)) < lower - mu_slack
                         or float(np.min(factors)) <= 0.0):
        raise ArithmeticError(f"determinant factor bound violated: {factors}")
    closed = 0.5 ** (k - 2) * float(np.prod(factors))
    return closed, factors, mu


def det_B_closed(alg, x: GroupPoint, theta: BoundaryPoint):
    """Product formula for det of the positive block.

    Returns (closed_value, factor_list) where
    closed_value = (1/2)^(k-2) * prod_r (1 - 2a^2(f-a) mu_r / F^3) and the
    mu_r are the eigenvalues of the Gram matrix (4F^2/a) B2^T B2.  The
    eigenvalue and factor bounds that force positivity are asserted.
    """
    state = vy_state(alg, x, theta)
    bd = block_decomposition(alg, x, theta)
    closed, factors, _ = _det_chain_from_blocks(alg, x.a, state, bd)
    return closed, factors


def _householder_complement(g: np.ndarray) -> np.ndarray:
    """Orthonormal basis (columns) of the hyperplane orthogonal to g."""
    n = g.shape[0]
    gn = g / np.linalg.norm(g)
    sign = 1.0 if gn[0] >= 0.0 else -1.0
    u = gn.copy()
    u[0] += sign
    u /= np.linalg.norm(u)
    house = np.eye(n) - 2.0 * np.outer(u, u)
    return house[:, 1:]


def restricted_positivity(alg, x: GroupPoint, theta: BoundaryPoint):
    """Smallest Hessian eigenvalue on the complement of the gradient.

    Returns (min_eigenvalue_on_complement, |H grad b|); the second value
    certifies that the gradient spans the kernel direction.
    """
    H = hessian_closed_form(alg, x, theta).entries
    g = gradient(alg, x, theta)
    residual = float(np.linalg.norm(H @ g))
    Q = _householder_complement(g)
    w = spectrum(Q.T @ H @ Q)
    return float(w[0]), residual


@dataclass(frozen=True)
class CheckThresholds:
    """Per-point pass/fail tolerances used by the verification driver."""

    symmetry: float = 1e-10
    eigenvalue_floor: float = -1e-8
    kernel_residual: float = 1e-7
    grad_norm: float = 1e-8
    quadratic_identity: float = 1e-10
    scalar_identity: float = 1e-12
    b1_det: float = 1e-9
    b1_trace: float = 1e-10
    b1_spectrum: float = 1e-8
    det_rel: float = 1e-8
    spectrum_multiset: float = 1e-8
    min_eig_degenerate: float = 0.5 - 1e-8


@dataclass
class HessianReport:
    """Per-point verification record (see `to_json_dict` for the schema)."""

    point: GroupPoint
    theta: BoundaryPoint
    case: str
    spectrum: np.ndarray
    min_on_complement: float
    grad_residual: float
    grad_norm_dev: float
    max_oracle_diff: float
    oracle_asymmetry: float
    identities: Optional[dict]
    checks: dict = field(default_factory=dict)
    passed: bool = False

    def to_json_dict(self) -> dict:
        return {
            "point": self.point.to_json_dict(),
            "theta": self.theta.to_json_dict(),
            "case": self.case,
            "spectrum": [float(v) for v in self.spectrum],
            "min_on_complement": self.min_on_complement,
            "grad_residual": self.grad_residual,
            "grad_norm_dev": self.grad_norm_dev,
            "max_oracle_diff": self.max_oracle_diff,
            "oracle_asymmetry": self.oracle_asymmetry,
            "identities": self.identities,
            "checks": self.checks,
            "pass": self.passed,
        }
