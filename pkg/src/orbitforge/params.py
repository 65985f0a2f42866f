"""Classification parameter and the coefficient recursions everything else consumes.

Constant-negative-curvature minimal surfaces in the unit sphere of a Hilbert
space form a one-parameter family indexed by a number ``s`` that is either
purely imaginary (the *principal* range, stored as ``s = i*tau``) or real in
``(-1/2, 1/2)`` (the *complementary* range, stored as ``s = sigma``).  The
derived constants are

    lambda = 1/4 - s^2          eigenvalue of the hyperbolic Laplacian
    c      = lambda / 2         conformal factor against curvature -1
    K      = -1/c = -8/(1-4s^2) Gaussian curvature of the surface

together with the coefficient recursion

    A_0 = 1,   A_{k+1} = (1 - binom(k+1, 2) * K) * A_k / 2

and its ratios ``c_p = A_p / A_{p-1}`` that populate the ladder operators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

PRINCIPAL = "principal"
COMPLEMENTARY = "complementary"


@dataclass(frozen=True)
class SeriesParam:
    """The classification parameter.

    ``kind`` selects the branch: principal stores ``tau >= 0`` with
    ``s = i*tau``; complementary stores ``sigma in (-1/2, 1/2)`` with
    ``s = sigma``.
    """

    kind: str
    value: float

    def __post_init__(self):
        if self.kind not in (PRINCIPAL, COMPLEMENTARY):
            raise ValueError(f"kind must be {PRINCIPAL!r} or {COMPLEMENTARY!r}, got {self.kind!r}")
        if not math.isfinite(self.value):
            raise ValueError("parameter value must be finite")
        if self.kind == PRINCIPAL and self.value < 0:
            raise ValueError("principal parameter stores tau >= 0")
        if self.kind == COMPLEMENTARY and not -0.5 < self.value < 0.5:
            raise ValueError("complementary parameter requires |sigma| < 1/2")

    @classmethod
    def principal(cls, tau: float) -> "SeriesParam":
        return cls(PRINCIPAL, float(tau))

    @classmethod
    def complementary(cls, sigma: float) -> "SeriesParam":
        return cls(COMPLEMENTARY, float(sigma))

    @property
    def s_squared(self) -> float:
        """s^2: nonpositive on the principal branch, in [0, 1/4) otherwise."""
        v2 = self.value * self.value
        return -v2 if self.kind == PRINCIPAL else v2

    @property
    def eigenvalue(self) -> float:
        """lambda = 1/4 - s^2 > 0."""
        return 0.25 - self.s_squared

    @property
    def conformal_factor(self) -> float:
        """c = lambda / 2, the scale of the pullback metric."""
        return 0.5 * self.eigenvalue

    @property
    def curvature(self) -> float:
        """K = -1/c = -8/(1 - 4 s^2) < 0."""
        return -1.0 / self.conformal_factor

    @property
    def label(self) -> str:
        return f"{self.kind}({self.value:g})"


@dataclass(frozen=True)
class CurvatureCoefficients:
    """The sequence A_0..A_kmax for a fixed curvature K.

    ``a_seq`` holds floats, or exact ``Fraction`` values when built with
    ``exact=True``.
    """

    K: float
    a_seq: tuple
    kmax: int

    def ratio(self, p: int):
        """c_p = A_p / A_{p-1} for p >= 1."""
        if not 1 <= p <= self.kmax:
            raise ValueError(f"p must lie in 1..{self.kmax}")
        return self.a_seq[p] / self.a_seq[p - 1]


def series_from_curvature(K: float) -> SeriesParam:
    """Invert K = -8/(1 - 4 s^2) for the unique parameter with that curvature.

    |K| < 8 lands on the principal branch, |K| > 8 on the complementary one;
    K = -8 is canonicalized as complementary(0).
    """
    K = float(K)
    if not math.isfinite(K) or K >= 0:
        raise ValueError(f"classification applies to negative curvature only, got K={K}")
    s2 = (abs(K) - 8.0) / (4.0 * abs(K))
    if s2 < 0:
        return SeriesParam.principal(math.sqrt(-s2))
    return SeriesParam.complementary(math.sqrt(s2))


def curvature_from_series(param: SeriesParam) -> tuple[float, float, float]:
    """Return (lambda, c, K) for the parameter."""
    return param.eigenvalue, param.conformal_factor, param.curvature


def c_coeff(K: float, p: int, exact: bool = False):
    """c_p = (1 - binom(p, 2) K) / 2 for p >= 1."""
    if p < 1:
        raise ValueError(f"p must be a positive integer, got {p}")
    if exact:
        return (1 - Fraction(p * (p - 1), 2) * Fraction(K)) / 2
    return 0.5 * (1.0 - (p * (p - 1) / 2.0) * K)


def a_sequence(K: float, kmax: int, exact: bool = False) -> CurvatureCoefficients:
    """Evaluate the recursion A_0..A_kmax.

    Floating evaluation raises ``OverflowError`` as soon as a coefficient
    leaves the double range; saturating to inf would poison every exponential
    downstream.  ``exact=True`` runs the recursion over rationals instead
    (every float K is an exact rational, so this is always available).
    """
    if kmax < 0:
        raise ValueError(f"kmax must be nonnegative, got {kmax}")
    if exact:
        values = [Fraction(1)]
        for k in range(kmax):
            values.append(c_coeff(K, k + 1, exact=True) * values[-1])
    else:
        values = [1.0]
        for k in range(kmax):
            nxt = c_coeff(K, k + 1) * values[-1]
            if not math.isfinite(nxt):
                raise OverflowError(
                    f"A_{k + 1} exceeds the floating range for K={K}; "
                    "use exact=True or reduce kmax"
                )
            values.append(nxt)
    if K < 0:
        assert all(v > 0 for v in values)
    return CurvatureCoefficients(K=float(K), a_seq=tuple(values), kmax=kmax)
