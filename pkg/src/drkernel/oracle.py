"""Finite-difference oracle for gradients and Hessians.

All differencing happens in the chart (V, Y, s) with a = e^s, where the
frame field E_0 is exactly the unit s-shift, so the positivity constraint
on a can never be violated by a step.  Hessian entries follow the frame
definition: nested central differences for E_alpha(E_beta b) minus the
connection correction sum_gamma c^gamma_{alpha,beta} E_gamma b.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .busemann import BoundaryPoint, gradient
from .group import GroupPoint, connection_coeffs, frame_at
from .hessian import HessianMatrix, spectrum

__all__ = [
    "FDConfig",
    "ComparisonReport",
    "directional_derivative",
    "numeric_gradient",
    "numeric_hessian",
    "compare",
    "richardson_gradient_ratio",
]


@dataclass(frozen=True)
class FDConfig:
    """Step size and tolerances for the central-difference scheme."""

    h: float = 1e-4
    scheme: str = "central"
    tol_grad: float = 1e-6
    tol_hess: float = 1e-5

    def __post_init__(self):
        if self.h <= 0:
            raise ValueError("step size must be positive")
        if self.tol_grad <= 0 or self.tol_hess <= 0:
            raise ValueError("tolerances must be positive")
        if self.scheme != "central":
            raise ValueError("only the central scheme is implemented")


def _to_chart(x: GroupPoint) -> np.ndarray:
    return np.concatenate([x.V, x.Y, [np.log(x.a)]])


def _from_chart(coords, k: int, m: int) -> GroupPoint:
    return GroupPoint(coords[:k], coords[k:k + m], float(np.exp(coords[k + m])))


def _frame_chart(alg, coords) -> np.ndarray:
    """Frame rows over (V, Y, s): the a-column of `frame_at` divided by a."""
    k, m = alg.k, alg.m
    x = _from_chart(coords, k, m)
    fr = frame_at(alg, x)
    fr = fr.copy()
    fr[:, k + m] /= x.a
    return fr


def directional_derivative(alg, scalar_field, x: GroupPoint, alpha: int,
                           cfg: FDConfig = FDConfig()) -> float:
    """Central difference of `scalar_field` along the frame vector E_alpha."""
    n = alg.k + alg.m + 1
    if not 0 <= alpha < n:
        raise IndexError("frame index out of range")
    c0 = _to_chart(x)
    direction = _frame_chart(alg, c0)[alpha]
    xp = _from_chart(c0 + cfg.h * direction, alg.k, alg.m)
    xm = _from_chart(c0 - cfg.h * direction, alg.k, alg.m)
    return (scalar_field(xp) - scalar_field(xm)) / (2.0 * cfg.h)


def _batch_values(alg, coords, theta: BoundaryPoint) -> np.ndarray:
    if theta.is_infinity:
        return -coords[:, alg.k + alg.m]
    return _kernels.busemann_batch(alg.J, coords, theta.v, theta.y)


def numeric_gradient(alg, x: GroupPoint, theta: BoundaryPoint,
                     cfg: FDConfig = FDConfig()) -> np.ndarray:
    """Frame components E_alpha b by central differences."""
    n = alg.k + alg.m + 1
    c0 = _to_chart(x)
    fr = _frame_chart(alg, c0)
    pts = np.empty((2 * n, n))
    pts[0::2] = c0[None, :] + cfg.h * fr
    pts[1::2] = c0[None, :] - cfg.h * fr
    vals = _batch_values(alg, pts, theta)
    return (vals[0::2] - vals[1::2]) / (2.0 * cfg.h)


def numeric_hessian(alg, x: GroupPoint, theta: BoundaryPoint,
                    cfg: FDConfig = FDConfig()) -> HessianMatrix:
    """Frame Hessian from nested central differences plus connection terms.

    The raw matrix is symmetrized as (M + M^T)/2; the discarded asymmetry
    is recorded on the returned `HessianMatrix` as a diagnostic.
    """
    k, m = alg.k, alg.m
    n = k + m + 1
    h = cfg.h
    c0 = _to_chart(x)
    fr0 = _frame_chart(alg, c0)

    # first 2n rows: x +- h E_gamma (also the outer shift points);
    # then for each alpha four blocks of n rows: the inner shifts at x+-
    pts = np.empty((2 * n + 4 * n * n, n))
    pts[0:2 * n:2] = c0[None, :] + h * fr0
    pts[1:2 * n:2] = c0[None, :] - h * fr0
    base = 2 * n
    for alpha in range(n):
        cp = pts[2 * alpha]
        cm = pts[2 * alpha + 1]
        frp = _frame_chart(alg, cp)
        frm = _frame_chart(alg, cm)
        o = base + 4 * n * alpha
        pts[o:o + n] = cp[None, :] + h * frp
        pts[o + n:o + 2 * n] = cp[None, :] - h * frp
        pts[o + 2 * n:o + 3 * n] = cm[None, :] + h * frm
        pts[o + 3 * n:o + 4 * n] = cm[None, :] - h * frm

    vals = _batch_values(alg, pts, theta)
    grad = (vals[0:2 * n:2] - vals[1:2 * n:2]) / (2.0 * h)

    M = np.empty((n, n))
    for alpha in range(n):
        o = base + 4 * n * alpha
        eb_plus = (vals[o:o + n] - vals[o + n:o + 2 * n]) / (2.0 * h)
        eb_minus = (vals[o + 2 * n:o + 3 * n] - vals[o + 3 * n:o + 4 * n]) / (2.0 * h)
        M[alpha] = (eb_plus - eb_minus) / (2.0 * h)
    for alpha in range(n):
        for beta in range(n):
            M[alpha, beta] -= connection_coeffs(alg, alpha, beta) @ grad

    asymmetry = float(np.max(np.abs(M - M.T))) if n else 0.0
    return HessianMatrix(0.5 * (M + M.T), basis_tag="standard",
                         asymmetry=asymmetry)


@dataclass(frozen=True)
class ComparisonReport:
    max_abs_diff: float
    spectrum_diff: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_abs_diff < self.tol


def compare(closed: HessianMatrix, numeric: HessianMatrix,
            cfg: FDConfig = FDConfig()) -> ComparisonReport:
    """Entrywise and spectral distance between two Hessian evaluations."""
    A = closed.entries
    B = numeric.entries
    if A.shape != B.shape:
        raise ValueError("hessian shapes do not match")
    max_diff = float(np.max(np.abs(A - B)))
    spec_diff = float(np.max(np.abs(spectrum(A) - spectrum(B))))
    return ComparisonReport(max_abs_diff=max_diff, spectrum_diff=spec_diff,
                            tol=cfg.tol_hess)


def richardson_gradient_ratio(alg, pairs, cfg: FDConfig = FDConfig()):
    """Ratio of worst-case gradient FD errors at step h versus h/2.

    `pairs` is an iterable of (x, theta).  A second-order scheme drives
    the ratio to ~4 whenever truncation dominates rounding.
    """
    pairs = list(pairs)

    def worst(h):
        sub = FDConfig(h=h, tol_grad=cfg.tol_grad, tol_hess=cfg.tol_hess)
        err = 0.0
        for x, theta in pairs:
            diff = numeric_gradient(alg, x, theta, sub) - gradient(alg, x, theta)
            err = max(err, float(np.max(np.abs(diff))))
        return err

    e_h = worst(cfg.h)
    e_half = worst(0.5 * cfg.h)
    if e_half == 0.0:
        return np.inf
    return e_h / e_half
