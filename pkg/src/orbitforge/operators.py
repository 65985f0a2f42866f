"""Truncated ladder operators on a symmetric index window.

The raising / lowering / grading trio (t_x, t_y, t_z) acts on the chain
{e_k : -N <= k <= N} with the band values

    t_x e_k = alpha_k e_{k+1},  alpha_k = -sqrt(c_{-k}), -1/sqrt2, 1/sqrt2, sqrt(c_{k+1})
                                 for k <= -2, k = -1, k = 0, k >= 1
    t_y e_k = beta_k  e_{k-1},  beta_k  =  sqrt(c_{-k+1}), 1/sqrt2, -1/sqrt2, -sqrt(c_k)
                                 for k <= -1, k = 0, k = 1, k >= 2
    t_z e_k = k e_k

and entries that would leave the window are dropped.  The skew-Hermitian
combinations f1 = t_x + t_y, f2 = i(t_x - t_y), f3 = -i t_z close the
sl(2,R) bracket relations at curvature scale |K|, and a/|K|^(1/2) rescaling
of f1, f2 realizes the Lie-algebra representation.

Every band value is +-sqrt(rational), so the bracket identities are certified
in exact radical arithmetic (module ``_radical``): truncation, confined to
declared boundary columns, is the only error source, never rounding.  The
float operators handed to the rest of the pipeline are materialized from the
same exact values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ._radical import CR_ZERO, ComplexRadical, Radical
from .group import Sl2Element


@dataclass(frozen=True)
class IndexWindow:
    """Symmetric index window {-N..N} with an interior buffer.

    ``margin`` declares how many boundary indices operator-identity tests
    exclude; every commutator consumes one band, so bracket tests require
    margin >= 1 and the Casimir commutators require margin >= 2.
    """

    half_width: int
    margin: int = 1

    def __post_init__(self):
        if self.half_width < 1:
            raise ValueError(f"half_width must be positive, got {self.half_width}")
        if not 0 <= self.margin <= self.half_width:
            raise ValueError(f"margin must lie in 0..{self.half_width}, got {self.margin}")

    @property
    def size(self) -> int:
        return 2 * self.half_width + 1

    def indices(self) -> np.ndarray:
        return np.arange(-self.half_width, self.half_width + 1)

    @property
    def interior_half_width(self) -> int:
        return self.half_width - self.margin

    def boundary_columns(self) -> tuple:
        n, m = self.half_width, self.margin
        return tuple(k for k in range(-n, n + 1) if abs(k) > n - m)


@dataclass
class BandedOperator:
    """Tridiagonal operator on the window; bands indexed by source column k.

    ``upper[k]`` is the entry at (k+1, k), ``lower[k]`` at (k-1, k); the last
    upper slot and the first lower slot are structurally zero (dropped by
    truncation).  Arrays are indexed by k + half_width.
    """

    window: IndexWindow
    diag: np.ndarray
    upper: np.ndarray
    lower: np.ndarray

    def to_dense(self) -> np.ndarray:
        n = self.window.size
        out = np.zeros((n, n), dtype=complex)
        out[np.arange(n), np.arange(n)] = self.diag
        out[np.arange(1, n), np.arange(n - 1)] = self.upper[:-1]
        out[np.arange(n - 1), np.arange(1, n)] = self.lower[1:]
        return out

    def apply(self, v: np.ndarray) -> np.ndarray:
        out = self.diag * v
        out[1:] += self.upper[:-1] * v[:-1]
        out[:-1] += self.lower[1:] * v[1:]
        return out

    def __add__(self, other: "BandedOperator") -> "BandedOperator":
        return BandedOperator(
            self.window, self.diag + other.diag, self.upper + other.upper, self.lower + other.lower
        )

    def __sub__(self, other: "BandedOperator") -> "BandedOperator":
        return BandedOperator(
            self.window, self.diag - other.diag, self.upper - other.upper, self.lower - other.lower
        )

    def __mul__(self, scalar) -> "BandedOperator":
        return BandedOperator(self.window, scalar * self.diag, scalar * self.upper, scalar * self.lower)

    __rmul__ = __mul__

    def skew_defect(self) -> float:
        """Max deviation from entry(j,k) = -conj(entry(k,j)) on the stored bands."""
        d = np.abs(self.diag + np.conj(self.diag)).max()
        u = np.abs(self.upper[:-1] + np.conj(self.lower[1:])).max()
        return max(float(d), float(u))

    def real_structure_defect(self) -> float:
        """Max entrywise deviation from J A J = A for the index-flip conjugation J."""
        dd = np.abs(self.diag - np.conj(self.diag[::-1])).max()
        du = np.abs(self.upper - np.conj(self.lower[::-1])).max()
        dl = np.abs(self.lower - np.conj(self.upper[::-1])).max()
        return max(float(dd), float(du), float(dl))


# ---------------------------------------------------------------------------
# exact band values (single source for both the certifier and the float path)


def _c_exact(K: Fraction, p: int) -> Fraction:
    return (1 - Fraction(p * (p - 1), 2) * K) / 2


def _exact_bands(K: Fraction, n: int) -> tuple[list, list]:
    half = Fraction(1, 2)
    alpha, beta = [], []
    for k in range(-n, n + 1):
        if k <= -2:
            alpha.append(Radical.sqrt(_c_exact(K, -k), -1))
        elif k == -1:
            alpha.append(Radical.sqrt(half, -1))
        elif k == 0:
            alpha.append(Radical.sqrt(half))
        else:
            alpha.append(Radical.sqrt(_c_exact(K, k + 1)))
        if k <= -1:
            beta.append(Radical.sqrt(_c_exact(K, -k + 1)))
        elif k == 0:
            beta.append(Radical.sqrt(half))
        elif k == 1:
            beta.append(Radical.sqrt(half, -1))
        else:
            beta.append(Radical.sqrt(_c_exact(K, k), -1))
    return alpha, beta


class _ExactBanded:
    """Banded operator with ComplexRadical entries, keyed by band offset.

    ``bands[o][i]`` is the entry at (k + o, k) for k = i - half_width; entries
    whose target row leaves the window are kept at zero (truncation).
    """

    def __init__(self, n: int, bands: dict = None):
        self.n = n
        self.size = 2 * n + 1
        self.bands = bands if bands is not None else {}

    @classmethod
    def from_band(cls, n, offset, entries) -> "_ExactBanded":
        op = cls(n)
        op.bands[offset] = list(entries)
        op._truncate()
        return op

    def _truncate(self):
        for o, band in self.bands.items():
            for i in range(self.size):
                k = i - self.n
                if not -self.n <= k + o <= self.n:
                    band[i] = CR_ZERO

    def entry(self, offset, i):
        band = self.bands.get(offset)
        return band[i] if band is not None else CR_ZERO

    def __matmul__(self, other: "_ExactBanded") -> "_ExactBanded":
        out = _ExactBanded(self.n)
        for o2, b2 in other.bands.items():
            for o1, b1 in self.bands.items():
                o = o1 + o2
                target = out.bands.setdefault(o, [CR_ZERO] * self.size)
                for i in range(self.size):
                    k = i - self.n
                    if not -self.n <= k + o2 <= self.n or not -self.n <= k + o <= self.n:
                        continue
                    e2 = b2[i]
                    if e2.is_zero():
                        continue
                    e1 = b1[i + o2]
                    if e1.is_zero():
                        continue
                    target[i] = target[i] + e1 * e2
        return out

    def __add__(self, other: "_ExactBanded") -> "_ExactBanded":
        out = _ExactBanded(self.n)
        for o in set(self.bands) | set(other.bands):
            out.bands[o] = [self.entry(o, i) + other.entry(o, i) for i in range(self.size)]
        return out

    def __sub__(self, other: "_ExactBanded") -> "_ExactBanded":
        return self + (-1 * other)

    def __mul__(self, scalar) -> "_ExactBanded":
        out = _ExactBanded(self.n)
        for o, band in self.bands.items():
            out.bands[o] = [e * scalar for e in band]
        return out

    __rmul__ = __mul__

    def commutator(self, other: "_ExactBanded") -> "_ExactBanded":
        return (self @ other) - (other @ self)

    def max_abs_on_columns(self, kmax: int) -> float:
        worst = 0.0
        for o, band in self.bands.items():
            for i in range(self.size):
                k = i - self.n
                if abs(k) > kmax:
                    continue
                e = band[i]
                if not e.is_zero():
                    worst = max(worst, abs(e))
        return worst


def _exact_suite(K: float, window: IndexWindow) -> dict:
    """Exact t_x, t_y, t_z, f1, f2, f3 and the represented basis on the window."""
    n = window.half_width
    Kf = Fraction(K)
    alpha, beta = _exact_bands(Kf, n)
    tx = _ExactBanded.from_band(n, +1, [ComplexRadical(a) for a in alpha])
    ty = _ExactBanded.from_band(n, -1, [ComplexRadical(b) for b in beta])
    tz = _ExactBanded.from_band(
        n, 0, [ComplexRadical.rational(k) for k in range(-n, n + 1)]
    )
    f1 = tx + ty
    f2 = ComplexRadical.rational(0, 1) * (tx + (-1 * ty))
    f3 = ComplexRadical.rational(0, -1) * tz
    inv_sqrt_k = ComplexRadical.real_sqrt(1 / abs(Kf))
    return {
        "tx": tx, "ty": ty, "tz": tz,
        "f1": f1, "f2": f2, "f3": f3,
        "rep1": inv_sqrt_k * f1, "rep2": inv_sqrt_k * f2, "rep3": f3,
        "K": Kf,
    }


# ---------------------------------------------------------------------------
# public builders


def _require_negative(K: float):
    if not (math.isfinite(K) and K < 0):
        raise ValueError(f"curvature must be negative, got K={K}")


def build_generators(K: float, window: IndexWindow):
    """Float t_x, t_y, t_z on the window (materialized from exact band values)."""
    _require_negative(K)
    if window.half_width < 2:
        raise ValueError("window must have half_width >= 2")
    n = window.half_width
    alpha, beta = _exact_bands(Fraction(K), n)
    zeros = np.zeros(window.size, dtype=complex)
    a = np.array([float(x) for x in alpha], dtype=complex)
    b = np.array([float(x) for x in beta], dtype=complex)
    a[-1] = 0.0  # raising out of the window is dropped
    b[0] = 0.0
    tx = BandedOperator(window, zeros.copy(), a, zeros.copy())
    ty = BandedOperator(window, zeros.copy(), zeros.copy(), b)
    tz = BandedOperator(window, window.indices().astype(complex), zeros.copy(), zeros.copy())
    return tx, ty, tz


def build_skew_basis(K: float, window: IndexWindow):
    """f1 = t_x + t_y, f2 = i(t_x - t_y), f3 = -i t_z; exactly skew-Hermitian."""
    tx, ty, tz = build_generators(K, window)
    return tx + ty, 1j * (tx - ty), -1j * tz


def sl2_rep(K: float, window: IndexWindow, elem: Sl2Element) -> BandedOperator:
    """The represented element a*f1/sqrt|K| + b*f2/sqrt|K| + c*f3."""
    _require_negative(K)
    f1, f2, f3 = build_skew_basis(K, window)
    scale = 1.0 / math.sqrt(abs(K))
    return (elem.a * scale) * f1 + (elem.b * scale) * f2 + elem.c * f3


# ---------------------------------------------------------------------------
# identity certification


@dataclass
class ResidualReport:
    """Max interior absolute entry error per identity, plus the excluded columns."""

    curvature: float
    window: IndexWindow
    residuals: dict = field(default_factory=dict)
    interior_half_width: int = 0
    excluded_columns: tuple = ()

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values())

    def as_dict(self) -> dict:
        return {
            "curvature": self.curvature,
            "half_width": self.window.half_width,
            "margin": self.window.margin,
            "interior_half_width": self.interior_half_width,
            "excluded_columns": list(self.excluded_columns),
            "residuals": dict(self.residuals),
        }


def commutator_residuals(K: float, window: IndexWindow) -> ResidualReport:
    """Certify the bracket relations on interior columns.

    Checked, in exact arithmetic so a correct band case analysis reports 0.0:

        [t_z, t_x] = t_x       [f1, f2] = |K| f3     [rep1, rep2] = rep3
        [t_z, t_y] = -t_y      [f2, f3] = -f1        [rep2, rep3] = -rep1
        [t_x, t_y] = -(K/2) t_z  [f3, f1] = -f2      [rep3, rep1] = -rep2
    """
    _require_negative(K)
    if window.margin < 1:
        raise ValueError("bracket tests consume one band; margin >= 1 required")
    ops = _exact_suite(K, window)
    Kf = ops["K"]
    half_k = ComplexRadical.rational(Fraction(Kf, 2))
    abs_k = ComplexRadical.rational(abs(Kf))
    checks = {
        "[t_z, t_x] - t_x": ops["tz"].commutator(ops["tx"]) - ops["tx"],
        "[t_z, t_y] + t_y": ops["tz"].commutator(ops["ty"]) + ops["ty"],
        "[t_x, t_y] + (K/2) t_z": ops["tx"].commutator(ops["ty"]) + half_k * ops["tz"],
        "[f1, f2] - |K| f3": ops["f1"].commutator(ops["f2"]) - abs_k * ops["f3"],
        "[f2, f3] + f1": ops["f2"].commutator(ops["f3"]) + ops["f1"],
        "[f3, f1] + f2": ops["f3"].commutator(ops["f1"]) + ops["f2"],
        "[rep1, rep2] - rep3": ops["rep1"].commutator(ops["rep2"]) - ops["rep3"],
        "[rep2, rep3] + rep1": ops["rep2"].commutator(ops["rep3"]) + ops["rep1"],
        "[rep3, rep1] + rep2": ops["rep3"].commutator(ops["rep1"]) + ops["rep2"],
    }
    interior = window.interior_half_width
    return ResidualReport(
        curvature=float(K),
        window=window,
        residuals={name: op.max_abs_on_columns(interior) for name, op in checks.items()},
        interior_half_width=interior,
        excluded_columns=window.boundary_columns(),
    )


def graded_laplacian_check(K: float, window: IndexWindow) -> ResidualReport:
    """Certify the graded Laplacian and the Casimir on interior columns.

    delta = 2(t_x t_y + t_y t_x) sends e_0 to -2 e_0; the Casimir
    phi = delta - K t_z^2 is the scalar -2 and commutes with t_x, t_y, t_z.
    """
    _require_negative(K)
    if window.margin < 2:
        raise ValueError("Casimir commutators consume two bands; margin >= 2 required")
    ops = _exact_suite(K, window)
    two = ComplexRadical.rational(2)
    delta = two * ((ops["tx"] @ ops["ty"]) + (ops["ty"] @ ops["tx"]))
    phi = delta - ComplexRadical.rational(ops["K"]) * (ops["tz"] @ ops["tz"])
    n = window.half_width
    identity = _ExactBanded.from_band(
        n, 0, [ComplexRadical.rational(1)] * window.size
    )
    phi_plus_2 = phi + two * identity
    delta_col0 = max(abs(band[n]) for band in (delta + two * identity).bands.values())
    interior = window.interior_half_width
    residuals = {
        "delta e_0 + 2 e_0": delta_col0,
        "phi + 2 I": phi_plus_2.max_abs_on_columns(interior),
        "[phi, t_x]": phi.commutator(ops["tx"]).max_abs_on_columns(interior),
        "[phi, t_y]": phi.commutator(ops["ty"]).max_abs_on_columns(interior),
        "[phi, t_z]": phi.commutator(ops["tz"]).max_abs_on_columns(interior),
    }
    return ResidualReport(
        curvature=float(K),
        window=window,
        residuals=residuals,
        interior_half_width=interior,
        excluded_columns=window.boundary_columns(),
    )


# ---------------------------------------------------------------------------
# Carleman divergence scan


@dataclass
class CarlemanScan:
    """Partial sums of 1/b_k for the off-diagonal growth b_k = sqrt(c_k).

    Divergence of the sums certifies essential self-adjointness of the
    tridiagonal symmetric operator -i f2 = t_x - t_y (Carleman's criterion);
    the ratio column compares against the asymptote (2/sqrt|K|) ln N.
    """

    curvature: float
    rows: tuple  # (N, partial_sum, ratio)
    gauge_half_width: int
    gauge_positive: bool

    def csv_lines(self):
        yield "N,partial_sum,ratio"
        for n, s, ratio in self.rows:
            yield f"{n},{s:.12g},{ratio:.12g}"


def _checkpoints(nmax: int) -> list:
    pts = []
    n = 100
    while n < nmax:
        pts.append(n)
        n *= 10
    pts.append(nmax)
    return pts


def gauged_offdiagonals(K: float, half_width: int) -> np.ndarray:
    """Off-diagonals of t_x - t_y after the sign flip e_{1-2k} -> -e_{1-2k}, k >= 1.

    t_x - t_y is real symmetric tridiagonal with entry alpha_j between levels
    j and j+1; flipping every odd-negative basis vector makes all of them
    positive, which is the Jacobi normal form Carleman's criterion needs.
    """
    n = half_width
    alpha, _ = _exact_bands(Fraction(K), n)
    offdiag = np.array([float(a) for a in alpha[:-1]])
    ks = np.arange(-n, n + 1)
    signs = np.where((ks < 0) & (ks % 2 == 1), -1.0, 1.0)
    return signs[:-1] * signs[1:] * offdiag


def carleman_scan(K: float, nmax: int, gauge_half_width: int = 1000) -> CarlemanScan:
    """Tabulate S(N) = sum_{2<=k<=N} 1/sqrt(c_k) at decade checkpoints up to nmax."""
    _require_negative(K)
    if nmax < 100:
        raise ValueError(f"nmax must be at least 100, got {nmax}")
    ks = np.arange(2, nmax + 1, dtype=np.float64)
    c = 0.5 * (1.0 - ks * (ks - 1.0) / 2.0 * K)
    partial = np.cumsum(1.0 / np.sqrt(c))
    scale = 2.0 / math.sqrt(abs(K))
    rows = tuple(
        (n, float(partial[n - 2]), float(partial[n - 2] / (scale * math.log(n))))
        for n in _checkpoints(nmax)
    )
    gauged = gauged_offdiagonals(K, min(gauge_half_width, nmax))
    return CarlemanScan(
        curvature=float(K),
        rows=rows,
        gauge_half_width=min(gauge_half_width, nmax),
        gauge_positive=bool((gauged > 0).all()),
    )
