"""The radial eigenfunction of the hyperbolic Laplacian and its orbit twin.

In geodesic polar coordinates the eigenvalue problem reads

    phi'' + coth(t) phi' + lambda phi = 0,   phi(0) = 1, phi'(0) = 0,

whose regular solution is the radial matrix coefficient of the class-one
representation.  The coordinate singularity at t = 0 is crossed with an even
Frobenius series (degree 6 by default), and the solution is continued by
fixed-step fourth-order Runge-Kutta.  ``compare_spherical`` plays this ODE
pipeline against the completely independent operator pipeline: the inner
product of the orbit of e_0 along exp(t sigma1) with e_0 must reproduce
phi(t) because t is exactly the hyperbolic distance travelled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._validation import check_int_at_least, check_positive
from .operators import IndexWindow
from .orbit import OrbitEmbedding, _embedding
from .params import PRINCIPAL, SeriesParam

# even-series coefficients of t*coth(t) = 1 + sum b_j t^{2j}
_COTH_B = (1.0 / 3.0, -1.0 / 45.0, 2.0 / 945.0)


def _frobenius_coefficients(lam: float, degree: int = 6) -> list:
    """Even series phi = sum a_m t^{2m} solving the radial equation at t = 0."""
    a = [1.0]
    for m in range(1, degree // 2 + 1):
        acc = lam * a[m - 1]
        for j in range(1, m):
            acc += 2.0 * (m - j) * a[m - j] * _COTH_B[j - 1]
        a.append(-acc / (4.0 * m * m))
    return a


def _eval_series(a: list, t: float) -> tuple[float, float]:
    t2 = t * t
    val = a[-1]
    for m in range(len(a) - 2, -1, -1):
        val = val * t2 + a[m]
    dval = 0.0
    for m in range(len(a) - 1, 0, -1):
        dval = dval * t2 + 2 * m * a[m]
    return val, dval * t


@dataclass
class RadialProfile:
    """Samples (t_j, phi(t_j)) on a uniform grid starting at 0."""

    series: SeriesParam
    ts: np.ndarray
    values: np.ndarray
    step: float

    def value_at(self, t: float) -> float:
        j = int(round(t / self.step))
        if not 0 <= j < len(self.ts) or abs(self.ts[j] - t) > 1e-9 * max(1.0, abs(t)):
            raise ValueError(f"t={t} is not on the sampled grid")
        return float(self.values[j])


def phi_radial(series: SeriesParam, t_max: float, steps: int,
               handoff: float = 1e-2) -> RadialProfile:
    """Integrate the radial eigenfunction up to t_max on steps+1 grid points.

    Grid points at or below the handoff come from the Frobenius series; the
    rest from RK4 with the series value and slope as initial data.
    """
    check_positive("t_max", t_max)
    check_int_at_least("steps", steps, 1)
    lam = series.eigenvalue
    a = _frobenius_coefficients(lam)
    h = t_max / steps
    ts = np.arange(steps + 1) * h
    vals = np.empty(steps + 1)
    vals[0] = 1.0
    j0 = max(1, math.ceil(handoff / h - 1e-12))
    j0 = min(j0, steps)
    for j in range(1, j0 + 1):
        vals[j] = _eval_series(a, ts[j])[0]
    y = np.array(_eval_series(a, ts[j0]))

    def rhs(t, state):
        return np.array([state[1], -state[1] / math.tanh(t) - lam * state[0]])

    for j in range(j0, steps):
        t = ts[j]
        k1 = rhs(t, y)
        k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1)
        k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2)
        k4 = rhs(t + h, y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        vals[j + 1] = y[0]
    profile = RadialProfile(series=series, ts=ts, values=vals, step=h)
    assert profile.values[0] == 1.0
    if series.kind == PRINCIPAL:
        assert np.all(np.abs(profile.values) <= 1.0 + 1e-12)
    return profile


@dataclass
class SphericalComparison:
    """Orbit coordinate against the radial ODE on a shared t grid."""

    series: SeriesParam
    ts: np.ndarray
    phi: np.ndarray
    orbit_coordinate: np.ndarray
    abs_error: np.ndarray
    max_abs_error: float
    max_imag: float

    def csv_lines(self):
        yield "t,phi,orbit_coordinate,abs_error"
        for t, p, o, e in zip(self.ts, self.phi, self.orbit_coordinate, self.abs_error):
            yield f"{t:.12g},{p:.17g},{o:.17g},{e:.6g}"


def compare_spherical(series: SeriesParam, window: IndexWindow, t_max: float,
                      steps: int, embedding: OrbitEmbedding = None) -> SphericalComparison:
    """Max |<u(exp(t sigma1)), e_0> - phi(t)| over the grid.

    The two pipelines share nothing but the parameter: one is a truncated
    unitary exponential, the other a scalar ODE, so agreement validates both.
    """
    profile = phi_radial(series, t_max, steps)
    emb = embedding if embedding is not None else _embedding(series, window)
    coords = np.array([emb.spherical_coordinate(float(t)) for t in profile.ts])
    abs_err = np.abs(coords.real - profile.values)
    return SphericalComparison(
        series=series,
        ts=profile.ts,
        phi=profile.values,
        orbit_coordinate=coords.real,
        abs_error=abs_err,
        max_abs_error=float(abs_err.max()),
        max_imag=float(np.abs(coords.imag).max()),
    )
