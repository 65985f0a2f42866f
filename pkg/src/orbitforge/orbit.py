"""The orbit immersion and the moving-frame flow, built two independent ways.

A point of the upper half-plane is sent to the unit sphere of the truncated
coordinate space by applying, factor by factor, the unitary exponentials of
the represented generators to the distinguished basis vector e_0.  The same
vector is obtained a second way by integrating the frame transport

    d(col_k)/dt = alpha_k col_{k+1} omega + beta_k col_{k-1} conj(omega)
                  - i k col_k rho,        omega = omega^1 + i omega^2,

with a fixed-step fourth-order Runge-Kutta scheme; ``cross_validate``
measures the gap between the two pipelines.

Exponentials are applied through a Hermitian eigendecomposition of
i * generator, so orbit points are unit vectors to machine precision and
commute with the index-flip conjugation x_k -> conj(x_{-k}) structurally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from . import operators as ops
from ._validation import as_halfplane_array, as_point, check_int_at_least, check_positive
from .group import SIGMA1, SIGMA2, GroupWord, Sl2Element, iwasawa_word
from .operators import BandedOperator, IndexWindow
from .params import SeriesParam, series_from_curvature


class TailMassError(RuntimeError):
    """Raised when coordinate mass reaches the window boundary.

    Carries the measured tail and a workable window size so callers can retry.
    """

    def __init__(self, tail_mass, tail_eps, half_width, point=None):
        self.tail_mass = tail_mass
        self.tail_eps = tail_eps
        self.half_width = half_width
        self.suggested_half_width = 2 * half_width
        self.point = point
        at = f" at point ({point.x:g}, {point.y:g})" if point is not None else ""
        super().__init__(
            f"tail mass {tail_mass:.3e} exceeds {tail_eps:.1e} on window "
            f"half_width={half_width}{at}; retry with half_width>={self.suggested_half_width}"
        )


@dataclass
class OsculatingVector:
    """Coordinates over the chain basis {e_k}, k in {-N..N}."""

    coords: np.ndarray
    window: IndexWindow

    def coordinate(self, k: int) -> complex:
        return complex(self.coords[k + self.window.half_width])

    @property
    def hermitian_norm(self) -> float:
        return float(np.linalg.norm(self.coords))

    @property
    def real_structure_defect(self) -> float:
        """max |x_k - conj(x_{-k})|."""
        return float(np.abs(self.coords - np.conj(self.coords[::-1])).max())

    def tail_mass(self, buffer: int) -> float:
        inner = self.window.half_width - buffer
        mask = np.abs(self.window.indices()) > inner
        return float((np.abs(self.coords[mask]) ** 2).sum())


@dataclass
class FrameState:
    """All osculating columns transported to parameter t along a constant coframe.

    Column k (array index k + N) holds the coordinates of the k-th frame
    vector in the fixed start basis.  ``unitarity_drift`` is measured on the
    block |k| <= frame_half_width: columns evolve independently under the
    right-multiplication flow, so the block is unaffected by the unresolvable
    fast boundary columns.
    """

    columns: np.ndarray
    t: float
    coframe: tuple
    window: IndexWindow
    series: SeriesParam
    frame_half_width: int
    unitarity_drift: float


def hermitian_inner(v: np.ndarray, w: np.ndarray) -> complex:
    """<v, w> = sum v_k conj(w_k)."""
    return complex(np.dot(v, np.conj(w)))

def bilinear_inner(v: np.ndarray, w: np.ndarray) -> complex:
    """Complex bilinear pairing sum_k v_k w_{-k}."""
    return complex(np.dot(v, w[::-1]))

def conjugation_flip(v: np.ndarray) -> np.ndarray:
    """The antilinear involution (J v)_k = conj(v_{-k})."""
    return np.conj(v[::-1])


class OrbitEmbedding(BaseEstimator, TransformerMixin):
    """Embed upper half-plane points into the truncated Hilbert sphere.

    The transform sends each point (x, y) with y > 0 to the complex
    coordinate vector of the minimal immersion of curvature K over the
    orthonormal chain basis, a unit vector of length 2 * truncation + 1.

    Parameters
    ----------
    curvature : float, optional
        Gaussian curvature K < 0; mutually exclusive with ``series``.
    series : SeriesParam, optional
        Explicit classification parameter; mutually exclusive with
        ``curvature``.
    truncation : int, default=256
        Window half-width N.
    margin : int, default=2
        Interior buffer declared on the window, for operator identity tests.
    tail_buffer : int, optional
        Boundary band whose coordinate mass is monitored; defaults to
        ceil(N / 8).
    tail_eps : float, default=1e-10
        Largest acceptable tail mass.
    auto_grow : bool, default=True
        Double the window (up to ``max_truncation``) instead of failing when
        the tail check trips.
    max_truncation : int, default=4096
        Growth cap.

    Attributes
    ----------
    series_ : SeriesParam
        Resolved classification parameter.
    window_ : IndexWindow
        Effective window (may exceed ``truncation`` after auto-growth).
    eigenvalue_, conformal_factor_, curvature_ : float
        The derived constants lambda, c, K.
    """

    def __init__(self, curvature=None, series=None, truncation=256, margin=2,
                 tail_buffer=None, tail_eps=1e-10, auto_grow=True, max_truncation=4096):
        self.curvature = curvature
        self.series = series
        self.truncation = truncation
        self.margin = margin
        self.tail_buffer = tail_buffer
        self.tail_eps = tail_eps
        self.auto_grow = auto_grow
        self.max_truncation = max_truncation

    # -- fitting ------------------------------------------------------------

    def fit(self, X=None, y=None):
        if (self.curvature is None) == (self.series is None):
            raise ValueError("exactly one of curvature and series must be given")
        if self.series is not None:
            self.series_ = self.series
        else:
            self.series_ = series_from_curvature(self.curvature)
        check_int_at_least("truncation", self.truncation, 2)
        check_positive("tail_eps", self.tail_eps)
        self.eigenvalue_ = self.series_.eigenvalue
        self.conformal_factor_ = self.series_.conformal_factor
        self.curvature_ = self.series_.curvature
        self._build(self.truncation)
        return self

    def _build(self, half_width: int):
        self.window_ = IndexWindow(half_width, self.margin)
        self.tail_buffer_ = self.tail_buffer or math.ceil(half_width / 8)
        f1, f2, f3 = ops.build_skew_basis(self.curvature_, self.window_)
        scale = 1.0 / math.sqrt(abs(self.curvature_))
        self._rep = {"sigma1": scale * f1, "sigma2": scale * f2, "sigma3": f3}
        self._skew_basis = (f1, f2, f3)
        self._eig_cache = {}
        self.n_features_out_ = self.window_.size

    def _check_fitted(self):
        if not hasattr(self, "window_"):
            raise NotFittedError("this OrbitEmbedding instance is not fitted yet")

    def rep_operator(self, elem: Sl2Element) -> BandedOperator:
        """The represented Lie-algebra element on the current window."""
        self._check_fitted()
        r = self._rep
        return elem.a * r["sigma1"] + elem.b * r["sigma2"] + elem.c * r["sigma3"]

    def _eig(self, elem: Sl2Element):
        key = elem.coefficients()
        hit = self._eig_cache.get(key)
        if hit is None:
            herm = 1j * self.rep_operator(elem).to_dense()
            hit = np.linalg.eigh(herm)
            self._eig_cache[key] = hit
        return hit

    def _apply_exp(self, elem: Sl2Element, t: float, v: np.ndarray) -> np.ndarray:
        # skew generator G: i G = V diag(w) V^H, so exp(t G) = V e^{-i t w} V^H
        w, V = self._eig(elem)
        return V @ (np.exp(-1j * t * w) * (V.conj().T @ v))

    # -- orbit construction --------------------------------------------------

    def basis_vector(self, k: int = 0) -> np.ndarray:
        self._check_fitted()
        v = np.zeros(self.window_.size, dtype=complex)
        v[k + self.window_.half_width] = 1.0
        return v

    def _tail_mass(self, v: np.ndarray) -> float:
        inner = self.window_.half_width - self.tail_buffer_
        idx = np.abs(self.window_.indices()) > inner
        return float((np.abs(v[idx]) ** 2).sum())

    def orbit_point(self, word: GroupWord, point=None) -> np.ndarray:
        """Apply the word's factor exponentials (last factor first) to e_0."""
        self._check_fitted()
        while True:
            v = self.basis_vector(0)
            for elem, t in reversed(word.factors):
                if t == 0.0:
                    continue
                v = self._apply_exp(elem, t, v)
            tail = self._tail_mass(v)
            if tail <= self.tail_eps:
                return v
            if self.auto_grow and 2 * self.window_.half_width <= self.max_truncation:
                self._build(2 * self.window_.half_width)
                continue
            raise TailMassError(tail, self.tail_eps, self.window_.half_width, point)

    def point_vector(self, p) -> np.ndarray:
        p = as_point(p)
        return self.orbit_point(iwasawa_word(p), point=p)

    def transform(self, X) -> np.ndarray:
        """Map an (n, 2) array of half-plane points to orbit coordinates."""
        self._check_fitted()
        pts = as_halfplane_array(X)
        vectors = [self.point_vector((x, y)) for x, y in pts]
        while any(v.shape != (self.window_.size,) for v in vectors):
            # the window grew mid-pass; redo earlier points on the final window
            vectors = [self.point_vector((x, y)) for x, y in pts]
        return np.array(vectors)

    def spherical_coordinate(self, t: float) -> complex:
        """<u(exp(t sigma1)) , e_0>, the radial matrix coefficient."""
        v = self.orbit_point(GroupWord.single(SIGMA1, t))
        return complex(v[self.window_.half_width])

    # -- frame transport ------------------------------------------------------

    def _flow_bands(self, coframe) -> tuple:
        w1, w2, rho = (float(c) for c in coframe)
        omega = complex(w1, w2)
        f1, f2, f3 = self._skew_basis
        # alpha/beta bands live in f1's bands; t_x = upper part, t_y = lower part
        alpha = f1.upper
        beta = f1.lower
        diag = -1j * rho * self.window_.indices()
        return diag.astype(complex), omega * alpha, np.conj(omega) * beta

    def frame_flow(self, coframe, t_end: float, steps: int,
                   frame_half_width=None, drift_tol: float = 1e-6) -> FrameState:
        """Transport the full frame matrix by fixed-step RK4.

        ``frame_half_width`` bounds the block |k| <= b whose unitarity is
        checked; boundary columns oscillate at frequencies ~ band(N) that no
        fixed step resolves, but they do not couple back into the block.
        """
        self._check_fitted()
        check_int_at_least("steps", steps, 1)
        if frame_half_width is None:
            frame_half_width = min(16, self.window_.half_width - self.tail_buffer_)
        diag, upper, lower = self._flow_bands(coframe)
        U = np.eye(self.window_.size, dtype=complex)
        U = _rk4(U, diag, upper, lower, t_end, steps)
        n = self.window_.half_width
        sel = slice(n - frame_half_width, n + frame_half_width + 1)
        block = U[:, sel]
        gram = block.conj().T @ block
        drift = float(np.abs(gram - np.eye(gram.shape[0])).max())
        if drift > drift_tol:
            raise RuntimeError(
                f"unitarity drift {drift:.3e} on columns |k| <= {frame_half_width} "
                f"exceeds {drift_tol:.1e}; increase steps (or shrink the frame block)"
            )
        return FrameState(
            columns=U, t=float(t_end), coframe=tuple(float(c) for c in coframe),
            window=self.window_, series=self.series_,
            frame_half_width=int(frame_half_width), unitarity_drift=drift,
        )

    def flow_vector(self, coframe, v0: np.ndarray, t_end: float, steps: int) -> np.ndarray:
        """RK4-transport a single coordinate vector (same scheme as frame_flow)."""
        diag, upper, lower = self._flow_bands(coframe)
        return _rk4(v0.astype(complex), diag, upper, lower, t_end, steps)


def _banded_matvec(v, diag, upper, lower):
    out = diag * v
    out[1:] += upper[:-1] * v[:-1]
    out[:-1] += lower[1:] * v[1:]
    return out


def _banded_right_mul(U, diag, upper, lower):
    # (U M) column k = upper_k U[:,k+1] + lower_k U[:,k-1] + diag_k U[:,k]
    out = U * diag
    out[:, :-1] += U[:, 1:] * upper[:-1]
    out[:, 1:] += U[:, :-1] * lower[1:]
    return out


def _rk4(state, diag, upper, lower, t_end, steps):
    mul = _banded_right_mul if state.ndim == 2 else _banded_matvec
    h = t_end / steps
    y = state
    for _ in range(steps):
        k1 = mul(y, diag, upper, lower)
        k2 = mul(y + 0.5 * h * k1, diag, upper, lower)
        k3 = mul(y + 0.5 * h * k2, diag, upper, lower)
        k4 = mul(y + h * k3, diag, upper, lower)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return y


# ---------------------------------------------------------------------------
# functional surface


def _embedding(series: SeriesParam, window: IndexWindow, tail_eps=1e-10, buffer=None) -> OrbitEmbedding:
    emb = OrbitEmbedding(
        series=series, truncation=window.half_width, margin=window.margin,
        tail_buffer=buffer, tail_eps=tail_eps, auto_grow=False,
    )
    return emb.fit()


def orbit_point(series: SeriesParam, window: IndexWindow, word: GroupWord,
                tail_eps: float = 1e-10) -> OsculatingVector:
    """The orbit of e_0 under the word, on the given window (no auto-growth)."""
    emb = _embedding(series, window, tail_eps)
    return OsculatingVector(emb.orbit_point(word), window)


def orbit_grid(series: SeriesParam, window: IndexWindow, grid,
               tail_eps: float = 1e-10) -> list:
    """Orbit points over half-plane samples, in grid order."""
    emb = _embedding(series, window, tail_eps)
    return [OsculatingVector(emb.point_vector(as_point(p)), window) for p in grid]


def frame_flow(series: SeriesParam, window: IndexWindow, coframe, t_end: float,
               steps: int, frame_half_width=None, drift_tol: float = 1e-6) -> FrameState:
    """Fixed-step RK4 transport of the osculating frame along a constant coframe."""
    emb = _embedding(series, window)
    return emb.frame_flow(coframe, t_end, steps, frame_half_width, drift_tol)


@dataclass
class CrossValidation:
    """Gap between the flow pipeline and the exponential pipeline on column 0."""

    series: SeriesParam
    t_grid: np.ndarray
    sigma1_discrepancy: float
    sigma2_discrepancy: float

    @property
    def max_discrepancy(self) -> float:
        return max(self.sigma1_discrepancy, self.sigma2_discrepancy)


def cross_validate(series: SeriesParam, window: IndexWindow, t_max: float,
                   steps: int, checkpoints: int = 20) -> CrossValidation:
    """Compare RK4 frame transport against unitary exponentials on a t grid.

    The sigma1 route pairs the coframe (1/sqrt|K|, 0, 0) with the word
    exp(t sigma1); the sigma2 route pairs (0, 1/sqrt|K|, 0) with exp(t sigma2).
    """
    check_positive("t_max", t_max)
    check_int_at_least("steps", steps, 1)
    emb = _embedding(series, window)
    scale = 1.0 / math.sqrt(abs(emb.curvature_))
    t_grid = np.linspace(0.0, t_max, checkpoints + 1)
    worst = {}
    for name, elem, coframe in (
        ("sigma1", SIGMA1, (scale, 0.0, 0.0)),
        ("sigma2", SIGMA2, (0.0, scale, 0.0)),
    ):
        v = emb.basis_vector(0)
        worst[name] = 0.0
        sub = max(1, steps // checkpoints)
        for j in range(1, checkpoints + 1):
            v = emb.flow_vector(coframe, v, t_grid[j] - t_grid[j - 1], sub)
            ref = emb.orbit_point(GroupWord.single(elem, float(t_grid[j])))
            worst[name] = max(worst[name], float(np.linalg.norm(v - ref)))
    return CrossValidation(
        series=series, t_grid=t_grid,
        sigma1_discrepancy=worst["sigma1"], sigma2_discrepancy=worst["sigma2"],
    )
