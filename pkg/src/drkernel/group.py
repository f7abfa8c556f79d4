"""The solvable group S = v x z x R+ carrying the left-invariant metric.

Points are written x = (V, Y, a) with a > 0.  Frame indices run
alpha = 0, 1..k, k+1..k+m where index 0 is the E_0 = a d/da direction;
coordinate vectors are ordered (V^1..V^k, Y^1..Y^m, a).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import bracket_n

__all__ = [
    "GroupPoint",
    "AlgebraElement",
    "identity_point",
    "multiply",
    "inverse",
    "lie_bracket_s",
    "frame_at",
    "connection_coeffs",
]


@dataclass(frozen=True)
class GroupPoint:
    """A point (V, Y, a) of S; requires a > 0 and finite components."""

    V: np.ndarray
    Y: np.ndarray
    a: float

    def __post_init__(self):
        V = np.asarray(self.V, dtype=float)
        Y = np.asarray(self.Y, dtype=float)
        a = float(self.a)
        if not (np.all(np.isfinite(V)) and np.all(np.isfinite(Y)) and np.isfinite(a)):
            raise ValueError("group point components must be finite")
        if a <= 0.0:
            raise ValueError("the R+ coordinate must be strictly positive")
        object.__setattr__(self, "V", V)
        object.__setattr__(self, "Y", Y)
        object.__setattr__(self, "a", a)

    def to_json_dict(self) -> dict:
        return {"V": self.V.tolist(), "Y": self.Y.tolist(), "a": self.a}

    @classmethod
    def from_json_dict(cls, data: dict) -> "GroupPoint":
        return cls(np.asarray(data["V"], dtype=float),
                   np.asarray(data["Y"], dtype=float), float(data["a"]))


@dataclass(frozen=True)
class AlgebraElement:
    """Element v + y + t A of the solvable Lie algebra s = n (+) R A."""

    v: np.ndarray
    y: np.ndarray
    t: float

    def __post_init__(self):
        object.__setattr__(self, "v", np.asarray(self.v, dtype=float))
        object.__setattr__(self, "y", np.asarray(self.y, dtype=float))
        object.__setattr__(self, "t", float(self.t))


def _check_point(alg, x: GroupPoint):
    if x.V.shape != (alg.k,) or x.Y.shape != (alg.m,):
        raise ValueError("point dimensions do not match the algebra")


def identity_point(alg) -> GroupPoint:
    return GroupPoint(np.zeros(alg.k), np.zeros(alg.m), 1.0)


def multiply(alg, x: GroupPoint, y: GroupPoint) -> GroupPoint:
    """Group law (V,Y,a)(V',Y',a') = (V + sqrt(a)V', Y + aY' + (sqrt(a)/2)[V,V'], aa')."""
    _check_point(alg, x)
    _check_point(alg, y)
    sqrt_a = np.sqrt(x.a)
    return GroupPoint(
        x.V + sqrt_a * y.V,
        x.Y + x.a * y.Y + 0.5 * sqrt_a * bracket_n(alg, x.V, y.V),
        x.a * y.a,
    )


def inverse(alg, x: GroupPoint) -> GroupPoint:
    """Group inverse (-V/sqrt(a), -Y/a, 1/a); the bracket term drops since [V,V]=0."""
    _check_point(alg, x)
    sqrt_a = np.sqrt(x.a)
    return GroupPoint(-x.V / sqrt_a, -x.Y / x.a, 1.0 / x.a)


def lie_bracket_s(alg, xi: AlgebraElement, eta: AlgebraElement) -> AlgebraElement:
    """Bracket on s: [(v,y,t),(v',y',t')] = ((t/2)v'-(t'/2)v, ty'-t'y+[v,v'], 0)."""
    return AlgebraElement(
        0.5 * xi.t * eta.v - 0.5 * eta.t * xi.v,
        xi.t * eta.y - eta.t * xi.y + bracket_n(alg, xi.v, eta.v),
        0.0,
    )


def frame_at(alg, x: GroupPoint) -> np.ndarray:
    """Coordinate coefficients of the left-invariant orthonormal frame at x.

    Row alpha of the returned (k+m+1, k+m+1) array expands E_alpha over
    the coordinate fields (d/dV^1..d/dV^k, d/dY^1..d/dY^m, d/da):

        E_0     = a d/da
        E_i     = sqrt(a) d/dV^i - (sqrt(a)/2) sum_r <J_r e_i, V> d/dY^r
        E_{k+r} = a d/dY^r
    """
    _check_point(alg, x)
    k, m = alg.k, alg.m
    n = k + m + 1
    out = np.zeros((n, n))
    sqrt_a = np.sqrt(x.a)
    out[0, k + m] = x.a
    out[1:k + 1, :k] = sqrt_a * np.eye(k)
    # row i, column k+r: -(sqrt(a)/2) A[r, i, :] @ V
    out[1:k + 1, k:k + m] = -0.5 * sqrt_a * np.einsum("rij,j->ir", alg.A, x.V)
    out[k + 1:, k:k + m] = x.a * np.eye(m)
    return out


def connection_coeffs(alg, alpha: int, beta: int) -> np.ndarray:
    """Frame components of the covariant derivative of E_beta along E_alpha.

    The nonzero entries of the table are

        D_{E_i}E_j       = (1/2) sum_r A_ij^r E_{k+r} + (1/2) delta_ij E_0
        D_{E_i}E_{k+r}   = D_{E_{k+r}}E_i = -(1/2) sum_j A_ij^r E_j
        D_{E_i}E_0       = -(1/2) E_i
        D_{E_{k+r}}E_{k+l} = delta_rl E_0
        D_{E_{k+r}}E_0   = -E_{k+r}
        D_{E_0}E_alpha   = 0
    """
    k, m = alg.k, alg.m
    n = k + m + 1
    if not (0 <= alpha < n and 0 <= beta < n):
        raise IndexError("frame index out of range")
    out = np.zeros(n)
    if alpha == 0:
        return out
    a_is_v = alpha <= k
    b_is_v = 0 < beta <= k
    if a_is_v:
        i = alpha - 1
        if beta == 0:
            out[alpha] = -0.5
        elif b_is_v:
            j = beta - 1
            out[k + 1:] = 0.5 * alg.A[:, i, j]
            if i == j:
                out[0] = 0.5
        else:
            r = beta - k - 1
            out[1:k + 1] = -0.5 * alg.A[r, i, :]
    else:
        r = alpha - k - 1
        if beta == 0:
            out[alpha] = -1.0
        elif b_is_v:
            j = beta - 1
            out[1:k + 1] = -0.5 * alg.A[r, j, :]
        else:
            if beta == alpha:
                out[0] = 1.0
    return out
