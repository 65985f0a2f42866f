import cmath
import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import expm

from orbitforge.group import (
    HOROCYCLIC,
    SIGMA1,
    SIGMA2,
    SIGMA3,
    GroupWord,
    HalfPlanePoint,
    Sl2Element,
    hyperbolic_distance,
    iwasawa_word,
    mobius_apply,
    psl_canonicalize,
    sl2_exp,
)

coeffs = st.floats(min_value=-3.0, max_value=3.0)
times = st.floats(min_value=-4.0, max_value=4.0)
I2 = np.eye(2)


def test_basis_brackets():
    s1, s2, s3 = SIGMA1.matrix(), SIGMA2.matrix(), SIGMA3.matrix()
    assert np.allclose(s1 @ s2 - s2 @ s1, s3)
    assert np.allclose(s2 @ s3 - s3 @ s2, -s1)
    assert np.allclose(s3 @ s1 - s1 @ s3, -s2)


def test_exp_sigma1_closed_form():
    for t in (-1.7, 0.3, 2.0):
        expected = np.array(
            [[math.cosh(t / 2), math.sinh(t / 2)], [math.sinh(t / 2), math.cosh(t / 2)]]
        )
        assert np.abs(sl2_exp(SIGMA1, t) - expected).max() < 1e-14


def test_exp_zero_is_identity():
    assert np.array_equal(sl2_exp(Sl2Element(0.3, -0.2, 1.0), 0.0), I2)


def test_projective_full_rotation():
    # exp(2 pi sigma3) = -I, which is the identity of PSL(2, R)
    m = sl2_exp(SIGMA3, 2 * math.pi)
    assert np.abs(m + I2).max() < 1e-12
    assert np.abs(psl_canonicalize(m) - psl_canonicalize(I2)).max() < 1e-12


@settings(max_examples=150, deadline=None)
@given(coeffs, coeffs, coeffs, times)
def test_exp_matches_scaling_and_squaring(a, b, c, t):
    elem = Sl2Element(a, b, c)
    ours = sl2_exp(elem, t)
    oracle = expm(t * elem.matrix())
    assert np.abs(ours - oracle).max() < 1e-12 * max(1.0, np.abs(oracle).max())


@settings(max_examples=100, deadline=None)
@given(coeffs, coeffs, coeffs, times, times)
def test_one_parameter_subgroup_law(a, b, c, s, t):
    elem = Sl2Element(a, b, c)
    lhs = sl2_exp(elem, s + t)
    first, second = sl2_exp(elem, s), sl2_exp(elem, t)
    # cancellation in the product scales with the factor magnitudes
    cond = max(1.0, np.abs(first).max() * np.abs(second).max())
    assert np.abs(lhs - first @ second).max() < 1e-12 * cond


def test_commutator_reproduces_structure_constants():
    # exp(t s1) exp(t s2) exp(-t s1) exp(-t s2) = exp(t^2 s3) + O(t^3)
    def defect(t):
        m = (sl2_exp(SIGMA1, t) @ sl2_exp(SIGMA2, t)
             @ sl2_exp(SIGMA1, -t) @ sl2_exp(SIGMA2, -t))
        return np.abs(m - sl2_exp(SIGMA3, t * t)).max()

    for t in (1e-1, 1e-2):
        assert defect(t) <= 1.0 * t**3
    # third-order decay: halving t shrinks the defect at least 4x
    assert defect(0.05) <= defect(0.1) / 4.0


def test_mobius_identity_and_geodesic():
    i = HalfPlanePoint(0.0, 1.0)
    assert mobius_apply(I2, i) == i
    for t in (0.5, 1.5, -2.0):
        p = mobius_apply(sl2_exp(SIGMA1, t), i)
        # complex-arithmetic oracle: (sinh t + i)/cosh t
        w = (cmath.sinh(t) + 1j) / cmath.cosh(t)
        assert p.x == pytest.approx(w.real, abs=1e-14)
        assert p.y == pytest.approx(w.imag, abs=1e-14)
        assert p.x == pytest.approx(math.tanh(t), abs=1e-14)
        assert p.y == pytest.approx(1.0 / math.cosh(t), abs=1e-14)


def test_horocyclic_translation():
    # sigma1 + sigma3 = [[0,1],[0,0]]: nilpotent exponential oracle
    assert np.array_equal(HOROCYCLIC.matrix(), np.array([[0.0, 1.0], [0.0, 0.0]]))
    for x in (0.25, -3.0):
        m = sl2_exp(HOROCYCLIC, x)
        assert np.abs(m - np.array([[1.0, x], [0.0, 1.0]])).max() < 1e-15
        p = mobius_apply(m, HalfPlanePoint(0.0, 1.0))
        assert (p.x, p.y) == (pytest.approx(x), pytest.approx(1.0))


def test_mobius_requires_unit_determinant():
    with pytest.raises(ValueError):
        mobius_apply(2.0 * I2, HalfPlanePoint(0.0, 1.0))


def test_distance_values():
    i = HalfPlanePoint(0.0, 1.0)
    assert hyperbolic_distance(i, i) == 0.0
    assert hyperbolic_distance(i, HalfPlanePoint(0.0, 2.0)) == pytest.approx(math.log(2), rel=1e-14)
    for t in (0.1, 1.0, 3.3):
        q = mobius_apply(sl2_exp(SIGMA1, t), i)
        assert hyperbolic_distance(i, q) == pytest.approx(t, rel=1e-12)


points = st.builds(
    HalfPlanePoint,
    st.floats(min_value=-5.0, max_value=5.0),
    st.floats(min_value=0.05, max_value=20.0),
)


@settings(max_examples=150, deadline=None)
@given(points, points, points)
def test_distance_symmetry_and_triangle(p, q, r):
    assert hyperbolic_distance(p, q) == hyperbolic_distance(q, p)
    assert hyperbolic_distance(p, r) <= hyperbolic_distance(p, q) + hyperbolic_distance(q, r) + 1e-10


@settings(max_examples=100, deadline=None)
@given(points, points, coeffs, coeffs, coeffs, st.floats(-1.5, 1.5))
def test_mobius_action_is_isometric(p, q, a, b, c, t):
    m = sl2_exp(Sl2Element(a, b, c), t)
    d_before = hyperbolic_distance(p, q)
    d_after = hyperbolic_distance(mobius_apply(m, p), mobius_apply(m, q))
    assert abs(d_after - d_before) < 1e-10 * max(1.0, d_before)


def test_iwasawa_examples():
    assert iwasawa_word(HalfPlanePoint(0.0, 1.0)).factors == ()
    w = iwasawa_word(HalfPlanePoint(0.0, 4.0))
    assert len(w.factors) == 1
    assert np.abs(w.matrix() - np.diag([2.0, 0.5])).max() < 1e-14
    w = iwasawa_word(HalfPlanePoint(3.0, 1.0))
    assert len(w.factors) == 1
    assert np.abs(w.matrix() - np.array([[1.0, 3.0], [0.0, 1.0]])).max() < 1e-15


@settings(max_examples=150, deadline=None)
@given(points)
def test_iwasawa_roundtrip(p):
    w = iwasawa_word(p)
    image = mobius_apply(w.matrix(), HalfPlanePoint(0.0, 1.0))
    assert abs(image.x - p.x) < 1e-12 * max(1.0, abs(p.x))
    assert abs(image.y - p.y) < 1e-12 * max(1.0, p.y)
    assert abs(np.linalg.det(w.matrix()) - 1.0) < 1e-12


def test_word_composition_and_determinant():
    w1 = GroupWord.single(SIGMA1, 0.7)
    w2 = iwasawa_word(HalfPlanePoint(1.0, 3.0))
    combined = w1 * w2
    assert np.abs(combined.matrix() - w1.matrix() @ w2.matrix()).max() < 1e-13
    assert abs(np.linalg.det(combined.matrix()) - 1.0) < 1e-12


def test_word_json_wire_format():
    w = GroupWord(((SIGMA1, 0.5), (SIGMA2, -1.25)))
    data = w.to_json()
    assert data == [
        {"basis": [1.0, 0.0, 0.0], "t": 0.5},
        {"basis": [0.0, 1.0, 0.0], "t": -1.25},
    ]
    back = GroupWord.from_json(json.loads(json.dumps(data)))
    assert np.abs(back.matrix() - w.matrix()).max() == 0.0


def test_halfplane_validation():
    with pytest.raises(ValueError):
        HalfPlanePoint(0.0, 0.0)
    with pytest.raises(ValueError):
        HalfPlanePoint(0.0, -1.0)
    with pytest.raises(ValueError):
        HalfPlanePoint(float("inf"), 1.0)
