"""Group structure of the upper half-space."""
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from solsurf import (
    IDENTITY,
    HalfSpacePoint,
    ParameterError,
    SemidirectPoint,
    hyperbolic_inner,
    lie_inverse,
    lie_product,
    rotation_about_vertical,
    semidirect_product,
    semidirect_to_halfspace,
)
from solsurf.lie_halfspace import rotation_matrix

# coordinate strategies: heights bounded away from 0 and infinity so products
# of three points stay in a well-conditioned range
coords = st.floats(-3.0, 3.0)
heights = st.floats(-1.6, 1.6).map(math.exp)


def points(draw_x, draw_y, draw_z):
    return st.builds(HalfSpacePoint, draw_x, draw_y, draw_z)


pts = points(coords, coords, heights)


def close(a, b, tol=1e-12):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return np.all(np.abs(a - b) <= tol * np.maximum(np.maximum(np.abs(a), np.abs(b)), 0.01))


def test_product_hand_example():
    # (1,2,2)*(3,4,1/2) = (2*3+1, 2*4+2, 2*1/2) = (7, 10, 1)
    p = lie_product(HalfSpacePoint(1.0, 2.0, 2.0), HalfSpacePoint(3.0, 4.0, 0.5))
    assert p.as_array().tolist() == [7.0, 10.0, 1.0]


def test_inverse_hand_example():
    # (1,2,2)^{-1} = (-1/2, -2/2, 1/2)
    q = lie_inverse(HalfSpacePoint(1.0, 2.0, 2.0))
    assert q.as_array().tolist() == [-0.5, -1.0, 0.5]


def test_identity_element():
    p = HalfSpacePoint(0.7, -1.3, 2.4)
    assert lie_product(p, IDENTITY).as_array().tolist() == [0.7, -1.3, 2.4]
    assert lie_product(IDENTITY, p).as_array().tolist() == [0.7, -1.3, 2.4]


def test_semidirect_isomorphism_hand_example():
    # (1,0,ln 2) . (0,1,ln 3) = (1, 2, ln 6), and the same product through
    # the exponential chart: (1,0,2)*(0,1,3) = (1, 2, 6)
    u = SemidirectPoint(1.0, 0.0, math.log(2.0))
    v = SemidirectPoint(0.0, 1.0, math.log(3.0))
    w = semidirect_product(u, v)
    assert math.isclose(w.x, 1.0) and math.isclose(w.y, 2.0)
    assert math.isclose(w.w, math.log(6.0))
    assert close(semidirect_to_halfspace(w).as_array(), [1.0, 2.0, 6.0])


@given(pts, pts, pts)
def test_associativity(p, q, r):
    lhs = lie_product(lie_product(p, q), r).as_array()
    rhs = lie_product(p, lie_product(q, r)).as_array()
    assert close(lhs, rhs)


@given(pts)
def test_inverse_both_sides(p):
    e = IDENTITY.as_array()
    assert close(lie_product(p, lie_inverse(p)).as_array(), e)
    assert close(lie_product(lie_inverse(p), p).as_array(), e)


@given(pts, pts)
def test_isomorphism_is_homomorphism(p, q):
    u = SemidirectPoint(p.x, p.y, math.log(p.z))
    v = SemidirectPoint(q.x, q.y, math.log(q.z))
    lhs = semidirect_to_halfspace(semidirect_product(u, v)).as_array()
    rhs = lie_product(p, q).as_array()
    assert close(lhs, rhs)


@given(pts, pts, st.floats(-math.pi, math.pi))
def test_rotation_is_automorphism(p, q, theta):
    lhs = rotation_about_vertical(theta, lie_product(p, q)).as_array()
    rhs = lie_product(
        rotation_about_vertical(theta, p), rotation_about_vertical(theta, q)
    ).as_array()
    assert close(lhs, rhs)


def test_rotation_preserves_height_and_inner_product():
    rng = np.random.default_rng(7)
    for _ in range(50):
        p = HalfSpacePoint(*rng.uniform(-2, 2, 2), float(rng.uniform(0.3, 4.0)))
        u, v = rng.uniform(-1, 1, 3), rng.uniform(-1, 1, 3)
        th = float(rng.uniform(-3, 3))
        A = rotation_matrix(th)
        q = rotation_about_vertical(th, p)
        assert q.z == p.z
        assert abs(hyperbolic_inner(p, u, v) - hyperbolic_inner(q, A @ u, A @ v)) <= 1e-13


def test_rotation_matrix_fixes_vertical():
    A = rotation_matrix(1.234)
    assert np.allclose(A @ np.array([0.0, 0.0, 1.0]), [0.0, 0.0, 1.0])
    assert np.allclose(A @ A.T, np.eye(3), atol=1e-15)


def test_inner_product_scaling():
    # the metric divides the Euclidean product by z^2
    u = np.array([1.0, 2.0, 3.0])
    v = np.array([-1.0, 0.5, 2.0])
    p = HalfSpacePoint(0.0, 0.0, 2.0)
    assert hyperbolic_inner(p, u, v) == (u @ v) / 4.0


@pytest.mark.parametrize("z", [0.0, -1.0, float("nan")])
def test_rejects_bad_heights(z):
    with pytest.raises(ParameterError):
        HalfSpacePoint(0.0, 0.0, z)


def test_rejects_nonfinite_semidirect():
    with pytest.raises(ParameterError):
        SemidirectPoint(0.0, float("inf"), 0.0)


def test_exponential_chart_overflow_is_loud():
    with pytest.raises(OverflowError):
        semidirect_to_halfspace(SemidirectPoint(0.0, 0.0, 1e4))
