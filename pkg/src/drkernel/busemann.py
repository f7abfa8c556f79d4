"""Busemann functions on S: closed-form values, state, derivatives, gradient.

For a finite boundary point theta = (v, y) and x = (V, Y, a) the value is

    b_theta(x) = log( (a + |v-V|^2/4)^2 + |y - Y - [V,v]/2|^2 )
                 - log a - log( (1 + |v|^2/4)^2 + |y|^2 ),

where the last term is the normalization constant that makes b vanish at
the identity; it cancels in every derivative.  For theta at infinity,
b(x) = -log a.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .algebra import bracket_n, j_map
from .group import GroupPoint

__all__ = [
    "BoundaryPoint",
    "BusemannState",
    "vy_state",
    "busemann_value",
    "frame_derivatives",
    "gradient",
    "classify_case",
    "DEGENERACY_RTOL",
]

#: relative threshold below which cal_v / cal_y count as vanishing
DEGENERACY_RTOL = 1e-9

#: width multiplier of the annulus where general/special forms are cross-checked
ANNULUS_FACTOR = 10.0


@dataclass(frozen=True)
class BoundaryPoint:
    """A point of the ideal boundary: finite (v, y) or the point at infinity."""

    v: Optional[np.ndarray]
    y: Optional[np.ndarray]

    def __post_init__(self):
        if (self.v is None) != (self.y is None):
            raise ValueError("finite boundary points need both v and y")
        if self.v is not None:
            v = np.asarray(self.v, dtype=float)
            y = np.asarray(self.y, dtype=float)
            if not (np.all(np.isfinite(v)) and np.all(np.isfinite(y))):
                raise ValueError("boundary point components must be finite")
            object.__setattr__(self, "v", v)
            object.__setattr__(self, "y", y)

    @classmethod
    def finite(cls, v, y) -> "BoundaryPoint":
        return cls(np.asarray(v, dtype=float), np.asarray(y, dtype=float))

    @classmethod
    def infinity(cls) -> "BoundaryPoint":
        return cls(None, None)

    @property
    def is_infinity(self) -> bool:
        return self.v is None

    def to_json_dict(self) -> dict:
        if self.is_infinity:
            return {"type": "infinity"}
        return {"type": "finite", "v": self.v.tolist(), "y": self.y.tolist()}

    @classmethod
    def from_json_dict(cls, data: dict) -> "BoundaryPoint":
        if data["type"] == "infinity":
            return cls.infinity()
        if data["type"] == "finite":
            return cls.finite(data["v"], data["y"])
        raise ValueError(f"unknown boundary point type {data['type']!r}")


@dataclass(frozen=True)
class BusemannState:
    """Auxiliary quantities at a pair (x, theta) with theta finite.

    cal_v = v - V, cal_y = y - Y - [V, v]/2, f = a + |cal_v|^2/4,
    F = f^2 + |cal_y|^2.  Always f >= a > 0 and F >= f^2 > 0.
    """

    cal_v: np.ndarray
    cal_y: np.ndarray
    f: float
    F: float


def _require_finite(theta: BoundaryPoint):
    if theta.is_infinity:
        raise ValueError("state undefined at infinity")


def _check_pair(alg, x: GroupPoint, theta: BoundaryPoint):
    if x.V.shape != (alg.k,) or x.Y.shape != (alg.m,):
        raise ValueError("point dimensions do not match the algebra")
    if not theta.is_infinity:
        if theta.v.shape != (alg.k,) or theta.y.shape != (alg.m,):
            raise ValueError("boundary point dimensions do not match the algebra")


def vy_state(alg, x: GroupPoint, theta: BoundaryPoint) -> BusemannState:
    """Compute (cal_v, cal_y, f, F) for a finite boundary point."""
    _check_pair(alg, x, theta)
    _require_finite(theta)
    cal_v = theta.v - x.V
    cal_y = theta.y - x.Y - 0.5 * bracket_n(alg, x.V, theta.v)
    f = x.a + 0.25 * float(cal_v @ cal_v)
    F = f * f + float(cal_y @ cal_y)
    return BusemannState(cal_v=cal_v, cal_y=cal_y, f=f, F=F)


def _norm_const(theta: BoundaryPoint) -> float:
    return float(np.log((1.0 + 0.25 * float(theta.v @ theta.v)) ** 2
                        + float(theta.y @ theta.y)))


def busemann_value(alg, x: GroupPoint, theta: BoundaryPoint,
                   form: str = "quotient") -> float:
    """Evaluate b_theta(x).

    `form` picks between the single-log quotient ("quotient") and the
    expanded normalization log F - log a + C(theta) ("normalized"); the
    two agree up to rounding and differ by no derivative at all.
    """
    _check_pair(alg, x, theta)
    if theta.is_infinity:
        return -float(np.log(x.a))
    state = vy_state(alg, x, theta)
    denom = (1.0 + 0.25 * float(theta.v @ theta.v)) ** 2 + float(theta.y @ theta.y)
    if form == "quotient":
        return float(np.log(state.F / (x.a * denom)))
    if form == "normalized":
        return float(np.log(state.F) - np.log(x.a) - np.log(denom))
    raise ValueError(f"unknown form {form!r}")


def frame_derivatives(alg, x: GroupPoint, theta: BoundaryPoint):
    """Frame derivatives (E_alpha f) and (E_alpha F) as length-(k+m+1) arrays.

        E_0 f = a,          E_i f = -(sqrt(a)/2) <cal_v, e_i>,    E_{k+r} f = 0
        E_0 F = 2 a f,      E_i F = -sqrt(a) <f cal_v - J_{cal_y} cal_v, e_i>,
        E_{k+r} F = -2 a <cal_y, e_{k+r}>
    """
    _check_pair(alg, x, theta)
    _require_finite(theta)
    state = vy_state(alg, x, theta)
    k, m = alg.k, alg.m
    sqrt_a = np.sqrt(x.a)
    df = np.zeros(k + m + 1)
    dF = np.zeros(k + m + 1)
    df[0] = x.a
    df[1:k + 1] = -0.5 * sqrt_a * state.cal_v
    w = state.f * state.cal_v - j_map(alg, state.cal_y, state.cal_v)
    dF[0] = 2.0 * x.a * state.f
    dF[1:k + 1] = -sqrt_a * w
    dF[k + 1:] = -2.0 * x.a * state.cal_y
    return df, dF


def gradient(alg, x: GroupPoint, theta: BoundaryPoint) -> np.ndarray:
    """Frame components of grad b_theta; always a unit vector.

    E_alpha b = E_alpha F / F for alpha > 0 and E_0 b = E_0 F / F - 1;
    for theta at infinity the gradient is (-1, 0, ..., 0).
    """
    _check_pair(alg, x, theta)
    n = alg.k + alg.m + 1
    if theta.is_infinity:
        out = np.zeros(n)
        out[0] = -1.0
        return out
    state = vy_state(alg, x, theta)
    _, dF = frame_derivatives(alg, x, theta)
    out = dF / state.F
    out[0] -= 1.0
    return out


def is_degenerate_v(x: GroupPoint, theta: BoundaryPoint, state: BusemannState,
                    rtol: float = DEGENERACY_RTOL) -> bool:
    scale = 1.0 + np.linalg.norm(theta.v) + np.linalg.norm(x.V)
    return bool(np.linalg.norm(state.cal_v) < rtol * scale)


def is_degenerate_y(x: GroupPoint, theta: BoundaryPoint, state: BusemannState,
                    rtol: float = DEGENERACY_RTOL) -> bool:
    scale = 1.0 + np.linalg.norm(theta.y) + np.linalg.norm(x.Y)
    return bool(np.linalg.norm(state.cal_y) < rtol * scale)


def classify_case(alg, x: GroupPoint, theta: BoundaryPoint,
                  state: Optional[BusemannState] = None) -> str:
    """Dispatch label: "inf", "VY0", "V0", "Y0" or "general".

    "V0" means cal_v vanishes (within the relative threshold) while cal_y
    does not; "Y0" the other way around; "VY0" both.
    """
    if theta.is_infinity:
        return "inf"
    if state is None:
        state = vy_state(alg, x, theta)
    deg_v = is_degenerate_v(x, theta, state)
    deg_y = is_degenerate_y(x, theta, state)
    if deg_v and deg_y:
        return "VY0"
    if deg_v:
        return "V0"
    if deg_y:
        return "Y0"
    return "general"
