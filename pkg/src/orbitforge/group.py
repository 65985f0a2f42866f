"""Closed-form PSL(2,R) arithmetic.

One-parameter exponentials in the half-trace basis

    sigma1 = [[0, 1/2], [1/2, 0]]    (hyperbolic: unit-speed geodesic at i)
    sigma2 = [[-1/2, 0], [0, 1/2]]   (diagonal: y-axis dilation)
    sigma3 = [[0, 1/2], [-1/2, 0]]   (elliptic: rotation fixing i)

with brackets [s1,s2] = s3, [s2,s3] = -s1, [s3,s1] = -s2, the Moebius action
on the upper half-plane, hyperbolic distance, and the two-factor
(horocyclic, then diagonal) word reaching an arbitrary point from i.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_POLE_GUARD = 1e-300


@dataclass(frozen=True)
class Sl2Element:
    """a*sigma1 + b*sigma2 + c*sigma3 in the half-trace basis."""

    a: float
    b: float
    c: float

    def matrix(self) -> np.ndarray:
        return np.array(
            [
                [-0.5 * self.b, 0.5 * (self.a + self.c)],
                [0.5 * (self.a - self.c), 0.5 * self.b],
            ]
        )

    def coefficients(self) -> tuple[float, float, float]:
        return (self.a, self.b, self.c)


SIGMA1 = Sl2Element(1.0, 0.0, 0.0)
SIGMA2 = Sl2Element(0.0, 1.0, 0.0)
SIGMA3 = Sl2Element(0.0, 0.0, 1.0)
HOROCYCLIC = Sl2Element(1.0, 0.0, 1.0)  # sigma1 + sigma3 = [[0,1],[0,0]]


@dataclass(frozen=True)
class HalfPlanePoint:
    """x + i y with y > 0; the metric (dx^2 + dy^2)/y^2 has curvature -1."""

    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y) and self.y > 0):
            raise ValueError(f"point ({self.x}, {self.y}) is not in the upper half-plane")

    @property
    def z(self) -> complex:
        return complex(self.x, self.y)


def sl2_exp(elem: Sl2Element, t: float) -> np.ndarray:
    """exp(t * elem) in closed form.

    For traceless 2x2 matrices A, A^2 = -det(A) * I, so the exponential is
    cosh(sqrt(delta)) I + sinhc(sqrt(delta)) A with delta = -det(A), which
    covers the hyperbolic / elliptic / parabolic cases in one formula.
    """
    A = t * elem.matrix()
    delta = float(A[0, 1] * A[1, 0] - A[0, 0] * A[1, 1])
    if delta > 1e-8:
        r = math.sqrt(delta)
        ch, sc = math.cosh(r), math.sinh(r) / r
    elif delta < -1e-8:
        r = math.sqrt(-delta)
        ch, sc = math.cos(r), math.sin(r) / r
    else:
        # series in delta; error O(delta^3) ~ 1e-24 at the branch cut
        ch = 1.0 + delta / 2.0 + delta * delta / 24.0
        sc = 1.0 + delta / 6.0 + delta * delta / 120.0
    return ch * np.eye(2) + sc * A


def psl_canonicalize(mat: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Fix the global sign so the first nonzero entry of the top row is positive."""
    pivot = mat[0, 0] if abs(mat[0, 0]) > tol else mat[0, 1]
    return -mat if pivot < 0 else mat


@dataclass(frozen=True)
class GroupWord:
    """Ordered list of one-parameter exponential factors and its 2x2 realization.

    The matrix is the product of the factor exponentials in list order, so the
    last factor acts first on a representation vector.
    """

    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple((e, float(t)) for e, t in self.factors))

    @classmethod
    def identity(cls) -> "GroupWord":
        return cls(())

    @classmethod
    def single(cls, elem: Sl2Element, t: float) -> "GroupWord":
        return cls(((elem, t),))

    def matrix(self) -> np.ndarray:
        out = np.eye(2)
        for elem, t in self.factors:
            out = out @ sl2_exp(elem, t)
        return out

    def psl_matrix(self) -> np.ndarray:
        return psl_canonicalize(self.matrix())

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.factors + other.factors)

    def to_json(self) -> list:
        return [{"basis": [e.a, e.b, e.c], "t": t} for e, t in self.factors]

    @classmethod
    def from_json(cls, data: list) -> "GroupWord":
        return cls(tuple((Sl2Element(*item["basis"]), float(item["t"])) for item in data))


def mobius_apply(mat: np.ndarray, p: HalfPlanePoint) -> HalfPlanePoint:
    """z -> (az + b)/(cz + d); preserves the upper half-plane when det = 1."""
    det = mat[0, 0] * mat[1, 1] - mat[0, 1] * mat[1, 0]
    if abs(det - 1.0) > 1e-9:
        raise ValueError(f"matrix must have determinant 1, got {det}")
    denom = mat[1, 0] * p.z + mat[1, 1]
    if abs(denom) < _POLE_GUARD:
        raise ValueError("point maps too close to the pole of the Moebius map")
    w = (mat[0, 0] * p.z + mat[0, 1]) / denom
    return HalfPlanePoint(w.real, w.imag)


def hyperbolic_distance(p: HalfPlanePoint, q: HalfPlanePoint) -> float:
    """arccosh(1 + |p - q|^2 / (2 y_p y_q)) for the curvature -1 metric."""
    d2 = (p.x - q.x) ** 2 + (p.y - q.y) ** 2
    return math.acosh(max(1.0, 1.0 + d2 / (2.0 * p.y * q.y)))


def iwasawa_word(p: HalfPlanePoint) -> GroupWord:
    """Two-factor word exp(x * (sigma1+sigma3)) exp(-ln(y) * sigma2) sending i to p.

    sigma1 + sigma3 = [[0,1],[0,0]] translates horocyclically; sigma2
    exponentiates to diag(e^{-t/2}, e^{t/2}).  Trivial factors are dropped.
    """
    factors = []
    if p.x != 0.0:
        factors.append((HOROCYCLIC, p.x))
    log_y = math.log(p.y)
    if log_y != 0.0:
        factors.append((SIGMA2, -log_y))
    return GroupWord(tuple(factors))
