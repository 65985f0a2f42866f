import math

import numpy as np
import pytest
from scipy.integrate import quad

from orbitforge.group import HalfPlanePoint, Sl2Element, mobius_apply, sl2_exp
from orbitforge.operators import IndexWindow
from orbitforge.orbit import OrbitEmbedding, frame_flow
from orbitforge.params import SeriesParam, a_sequence
from orbitforge.verify import (
    Report,
    _octagon_geometry,
    area_rigidity,
    gauss_curvature_fd,
    gram_pairings,
    minimality_residual,
    octagon_area_quadrature,
    pullback_metric,
)

S0 = SeriesParam.complementary(0.0)
W = IndexWindow(256, 2)


@pytest.fixture(scope="module")
def emb_s0():
    return OrbitEmbedding(series=S0, truncation=256, auto_grow=False).fit()


@pytest.fixture(scope="module")
def emb_tau_half():
    return OrbitEmbedding(series=SeriesParam.principal(0.5), truncation=256, auto_grow=False).fit()


def test_metric_is_one_eighth_at_base_point(emb_s0):
    m = pullback_metric(S0, W, (0.0, 1.0), 1e-3, embedding=emb_s0)
    assert m.g11 == pytest.approx(0.125, abs=1e-5)
    assert m.g22 == pytest.approx(0.125, abs=1e-5)
    assert abs(m.g12) <= 1e-5


def test_metric_scale_for_other_parameter(emb_tau_half):
    sp = SeriesParam.principal(0.5)
    m = pullback_metric(sp, W, (0.0, 1.0), 1e-3, embedding=emb_tau_half)
    assert m.g11 == pytest.approx(0.25, abs=1e-5)  # c = lambda/2 = 1/4


def test_metric_conformal_scaling_in_y(emb_s0):
    m = pullback_metric(S0, W, (0.0, 2.0), 1e-3, embedding=emb_s0)
    assert m.g11 == pytest.approx(0.125 / 4.0, abs=1e-5)
    assert m.g22 == pytest.approx(0.125 / 4.0, abs=1e-5)


def test_metric_transports_isometrically(emb_s0):
    # pullback at p equals the Jacobian transport of the pullback at A p
    p = HalfPlanePoint(0.2, 1.1)
    mat = sl2_exp(Sl2Element(0.4, -0.3, 0.6), 1.0)
    q = mobius_apply(mat, p)
    m_p = pullback_metric(S0, W, p, 1e-3, embedding=emb_s0)
    m_q = pullback_metric(S0, W, q, 1e-3, embedding=emb_s0)
    # derivative of the Moebius map as a C-linear map: 1/(cz+d)^2
    dz = 1.0 / (mat[1, 0] * p.z + mat[1, 1]) ** 2
    a, b = dz.real, dz.imag  # real Jacobian [[a, -b], [b, a]]
    J = np.array([[a, -b], [b, a]])
    G_q = np.array([[m_q.g11, m_q.g12], [m_q.g12, m_q.g22]])
    G_transported = J.T @ G_q @ J
    G_p = np.array([[m_p.g11, m_p.g12], [m_p.g12, m_p.g22]])
    assert np.abs(G_transported - G_p).max() < 1e-6


@pytest.mark.parametrize(
    "sp,expected",
    [
        (S0, -8.0),
        (SeriesParam.principal(0.5), -4.0),
        (SeriesParam.complementary(math.sqrt(0.125)), -16.0),
    ],
    ids=("K=-8", "K=-4", "K=-16"),
)
def test_gauss_curvature_matches_dictionary(sp, expected):
    est = gauss_curvature_fd(sp, W, (0.0, 1.0), 1e-2)
    assert abs(est - expected) <= 1e-2 * abs(expected)


def test_curvature_estimate_converges_at_second_order(emb_s0):
    errs = [abs(gauss_curvature_fd(S0, W, (0.0, 1.0), h, embedding=emb_s0) + 8.0)
            for h in (4e-2, 2e-2)]
    assert errs[1] < errs[0] / 3.0  # ~4x per halving


def test_minimality_residual_and_rescaling(emb_s0):
    r1, r2 = minimality_residual(S0, W, (0.0, 1.0), 1e-2, embedding=emb_s0)
    assert r1 <= 1e-3
    assert r2 == r1 / S0.conformal_factor  # algebraic identity, not a tolerance
    r1h, _ = minimality_residual(S0, W, (0.0, 1.0), 5e-3, embedding=emb_s0)
    assert r1h < r1 / 3.0  # second-order stencil


def test_minimality_residual_other_parameters(emb_tau_half):
    sp = SeriesParam.principal(0.5)
    r1, _ = minimality_residual(sp, W, (0.0, 1.0), 1e-2, embedding=emb_tau_half)
    assert r1 <= 1e-3


# ---------------------------------------------------------------------------
# gram pairings


def test_gram_pairings_at_identity_frame():
    state = frame_flow(S0, IndexWindow(32, 2), (0.0, 0.0, 0.0), 1.0, 10, frame_half_width=12)
    report = gram_pairings(state, kmax=8)
    assert report.max_residual == 0.0  # delta-exact at the start frame


def test_gram_pairings_after_unit_time_flow():
    scale = 1.0 / math.sqrt(8.0)
    state = frame_flow(S0, W, (scale, 0.0, 0.0), 1.0, 1000, frame_half_width=12)
    report = gram_pairings(state, kmax=8)
    assert report.diagonal_residual <= 1e-8
    assert report.offdiagonal_residual <= 1e-8
    assert report.recursion_residual <= 1e-8
    assert report.real_structure_residual <= 1e-8
    assert report.pairing_equivalence_residual <= 1e-8
    assert report.coefficient_ratio_residual == 0.0


def test_gram_residuals_measure_structure_not_truncation():
    scale = 1.0 / math.sqrt(8.0)
    r_small = gram_pairings(
        frame_flow(S0, IndexWindow(64, 2), (scale, 0, 0), 0.5, 500, frame_half_width=10),
        kmax=6,
    ).max_residual
    r_large = gram_pairings(
        frame_flow(S0, IndexWindow(128, 2), (scale, 0, 0), 0.5, 500, frame_half_width=10),
        kmax=6,
    ).max_residual
    assert r_large <= 2.0 * max(r_small, 1e-12)


def test_gram_matches_coefficient_sequence():
    # A_k bookkeeping: beta_k * sqrt(A_k) = -c_k * sqrt(A_{k-1}) exactly over Q
    coeffs = a_sequence(-8.0, 8, exact=True)
    for k in range(1, 9):
        assert coeffs.ratio(k) == coeffs.a_seq[k] / coeffs.a_seq[k - 1]


def test_gram_window_guard():
    state = frame_flow(S0, IndexWindow(16, 2), (0.0, 0.0, 0.0), 1.0, 5, frame_half_width=8)
    with pytest.raises(ValueError):
        gram_pairings(state, kmax=12)


# ---------------------------------------------------------------------------
# area constants


def test_area_rigidity_values():
    bound, hyp = area_rigidity(2)
    assert bound == math.pi / 2.0
    assert hyp == 4.0 * math.pi
    bound3, hyp3 = area_rigidity(3)
    assert bound3 == math.pi
    assert hyp3 == 8.0 * math.pi


def test_area_ratio_is_exactly_one_eighth():
    for genus in range(2, 11):
        bound, hyp = area_rigidity(genus)
        assert bound / hyp == 0.125
        assert bound / (2 * genus - 2) == pytest.approx(math.pi / 4.0, rel=1e-15)


def test_area_rigidity_rejects_low_genus():
    for genus in (-1, 0, 1):
        with pytest.raises(ValueError):
            area_rigidity(genus)


def test_octagon_area_equals_gauss_bonnet_value():
    # Gauss-Bonnet polygon oracle: (n-2) pi - sum(angles) = 6 pi - 8 pi/4 = 4 pi
    expected = (8 - 2) * math.pi - 8 * (math.pi / 4.0)
    assert expected == 4.0 * math.pi
    value = octagon_area_quadrature(1e-6)
    assert abs(value - 4.0 * math.pi) <= 1e-6
    assert value / 8.0 == pytest.approx(area_rigidity(2)[0], abs=1e-6)


def test_octagon_quadrature_against_midpoint_refinement():
    # independent oracle: midpoint rule on the same angular integrand
    D, _ = _octagon_geometry()

    def f(theta):
        rb = D * math.cos(theta) - math.sqrt((D * math.cos(theta)) ** 2 - 1.0)
        return 2.0 / (1.0 - rb * rb) - 2.0

    n = 20000
    h = (math.pi / 4.0) / n
    midpoint = 8.0 * h * sum(f(-math.pi / 8.0 + (j + 0.5) * h) for j in range(n))
    assert octagon_area_quadrature(1e-8) == pytest.approx(midpoint, abs=1e-7)


def test_octagon_vertex_radius_is_consistent():
    # the boundary arc must reach the circumradius at the sector edge
    D, r_m = _octagon_geometry()
    cosh_R = (1.0 / math.tan(math.pi / 8.0)) ** 2  # cot^2(pi/8) = cosh(circumradius)
    r_vertex = math.sqrt((cosh_R - 1.0) / (cosh_R + 1.0))  # tanh(R/2)
    theta = math.pi / 8.0
    rb = D * math.cos(theta) - math.sqrt((D * math.cos(theta)) ** 2 - 1.0)
    assert rb == pytest.approx(r_vertex, rel=1e-12)


# ---------------------------------------------------------------------------
# report plumbing


def test_report_pass_fail():
    rep = Report(suite="demo", params={})
    rep.add("ok", "x = 0", 1e-9, 0.0, 1e-6)
    assert rep.passed
    rep.add("bad", "y = 1", 2.0, 1.0, 0.5)
    assert not rep.passed
    payload = rep.as_dict()
    assert payload["checks"][1]["pass"] is False
    assert payload["checks"][0]["statement"] == "x = 0"
