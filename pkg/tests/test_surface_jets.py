"""Jets, fundamental forms, mean curvature, and the finite-difference oracle."""
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from solsurf import (
    CurveJet2,
    DegenerateJetError,
    DomainError,
    ParameterError,
    ScalarJet2,
    SurfaceJet2,
    finite_difference_jet,
    first_kind_jet,
    fundamental_forms,
    hyperbolic_mean_curvature,
    mean_curvature,
    product_surface_jet,
    rotate_jet,
    second_kind_jet,
    unit_normal,
)

FJ = ScalarJet2(0.25, -0.5, 1.5)   # f, f', f''  at some s
GJ = ScalarJet2(1.25, 0.75, -2.0)  # g, g', g''  at some t


def test_first_kind_slots():
    j = first_kind_jet(FJ, GJ, 0.3, -0.4)
    assert j.X.tolist() == [0.3, -0.4 + 0.25, 1.25]
    assert j.Xs.tolist() == [1.0, -0.5, 0.0]
    assert j.Xt.tolist() == [0.0, 1.0, 0.75]
    assert j.Xss.tolist() == [0.0, 1.5, 0.0]
    assert j.Xst.tolist() == [0.0, 0.0, 0.0]
    assert j.Xtt.tolist() == [0.0, 0.0, -2.0]


def test_second_kind_slots():
    j = second_kind_jet(FJ, 2.0, 0.3, 0.9)
    assert j.X.tolist() == [0.3, 2.25, 0.9]
    assert j.Xs.tolist() == [1.0, -0.5, 0.0]
    assert j.Xt.tolist() == [0.0, 0.0, 1.0]
    assert j.Xss.tolist() == [0.0, 1.5, 0.0]
    assert j.Xst.tolist() == [0.0, 0.0, 0.0]
    assert j.Xtt.tolist() == [0.0, 0.0, 0.0]


def test_product_jet_matches_first_kind_bitwise():
    """The group-product sweep specializes to the first-kind shape when
    alpha runs in the unit-height slice and beta in the vertical slice."""
    s, t = 0.7, -1.1
    alpha = CurveJet2.horospherical(ScalarJet2(s, 1.0, 0.0), FJ)
    beta = CurveJet2.vertical(ScalarJet2(t, 1.0, 0.0), GJ)
    jp = product_surface_jet(alpha, beta)
    jd = first_kind_jet(FJ, GJ, s, t)
    for name in ("X", "Xs", "Xt", "Xss", "Xst", "Xtt"):
        assert getattr(jp, name).tolist() == getattr(jd, name).tolist()


def test_product_jet_matches_second_kind_bitwise():
    s, t, b = 0.7, 1.3, -0.6
    alpha = CurveJet2.horospherical(ScalarJet2(s, 1.0, 0.0), FJ)
    beta = CurveJet2.vertical(ScalarJet2(b, 0.0, 0.0), ScalarJet2(t, 1.0, 0.0))
    jp = product_surface_jet(alpha, beta)
    jd = second_kind_jet(FJ, b, s, t)
    for name in ("X", "Xs", "Xt", "Xss", "Xst", "Xtt"):
        assert getattr(jp, name).tolist() == getattr(jd, name).tolist()


def test_unit_normal_first_kind_closed_form():
    # Xs x Xt = (f'g', -g', 1), so N = (f'g', -g', 1)/W with
    # W^2 = g'^2 (f'^2 + 1) + 1
    j = first_kind_jet(FJ, GJ, 0.0, 0.0)
    fp, gp = FJ.d1, GJ.d1
    W = math.sqrt(gp * gp * (fp * fp + 1.0) + 1.0)
    assert np.allclose(unit_normal(j), [fp * gp / W, -gp / W, 1.0 / W], atol=1e-15)


def test_unit_normal_is_unit_and_orthogonal():
    j = first_kind_jet(FJ, GJ, 0.2, 0.4)
    N = unit_normal(j)
    assert abs(N @ N - 1.0) <= 1e-14
    assert abs(N @ j.Xs) <= 1e-14
    assert abs(N @ j.Xt) <= 1e-14


def test_mean_curvature_extruded_graph():
    # X = (s, f(s)+b, t) extrudes the plane curve y = f(x); its mean
    # curvature is half the signed curvature: H = -f'' / (2 (1+f'^2)^{3/2}).
    s = 0.3
    fj = ScalarJet2(math.cos(s), -math.sin(s), -math.cos(s))
    H = mean_curvature(second_kind_jet(fj, 0.0, s, 1.7))
    expected = math.cos(s) / (2.0 * (1.0 + math.sin(s) ** 2) ** 1.5)
    assert abs(H - expected) <= 1e-14


def test_mean_curvature_profile_cylinder():
    # X = (s, t, g(t)) with g = cosh: H = g''/(2 W^3) with W = cosh t,
    # so H = 1/(2 cosh^2 t).
    t = 0.4
    gj = ScalarJet2(math.cosh(t), math.sinh(t), math.cosh(t))
    H = mean_curvature(first_kind_jet(ScalarJet2(0.0, 0.0, 0.0), gj, 0.0, t))
    assert abs(H - 1.0 / (2.0 * math.cosh(t) ** 2)) <= 1e-14


def test_orientation_flip_is_exact_negation():
    j = first_kind_jet(FJ, GJ, 0.6, -0.2)
    assert np.all(unit_normal(j, -1) == -unit_normal(j, 1))
    assert mean_curvature(j, -1) == -mean_curvature(j, 1)
    f1 = fundamental_forms(j, 1)
    f2 = fundamental_forms(j, -1)
    assert (f2.l, f2.m, f2.n) == (-f1.l, -f1.m, -f1.n)
    assert (f2.E, f2.F, f2.G, f2.W) == (f1.E, f1.F, f1.G, f1.W)


def test_hyperbolic_mean_curvature_basics():
    assert hyperbolic_mean_curvature(0.0, 1.0, 2.0) == 1.0
    assert hyperbolic_mean_curvature(0.5, -0.25, 2.0) == 0.75
    with pytest.raises(ParameterError):
        hyperbolic_mean_curvature(0.0, 1.0, 0.0)


scalar_jets = st.builds(
    ScalarJet2, st.floats(-2, 2), st.floats(-2, 2), st.floats(-2, 2)
)
pos_jets = st.builds(
    ScalarJet2, st.floats(0.2, 3.0), st.floats(-2, 2), st.floats(-2, 2)
)


@given(scalar_jets, pos_jets, st.floats(-2, 2), st.floats(-2, 2))
def test_area_density_identity(fj, gj, s, t):
    # W^2 = E G - F^2 for every jet
    f = fundamental_forms(first_kind_jet(fj, gj, s, t))
    lhs = f.W * f.W
    rhs = f.E * f.G - f.F * f.F
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs), abs(rhs))


def test_rotation_preserves_forms_and_curvature():
    j = first_kind_jet(FJ, GJ, 0.5, 0.3)
    f0 = fundamental_forms(j)
    for theta in (0.3, 2.0, -1.2):
        f1 = fundamental_forms(rotate_jet(theta, j))
        for name in ("E", "F", "G", "l", "m", "n", "W"):
            assert abs(getattr(f1, name) - getattr(f0, name)) <= 1e-12
        assert abs(mean_curvature(rotate_jet(theta, j)) - mean_curvature(j)) <= 1e-12


def test_degenerate_jet_rejected():
    # a constant beta curve collapses Xt
    alpha = CurveJet2.horospherical(ScalarJet2(0.0, 1.0, 0.0), FJ)
    beta = CurveJet2(np.array([0.0, 1.0, 1.0]), np.zeros(3), np.zeros(3))
    with pytest.raises(DegenerateJetError):
        product_surface_jet(alpha, beta)


def test_domain_guards():
    with pytest.raises(DomainError):
        first_kind_jet(FJ, ScalarJet2(-1.0, 0.0, 0.0), 0.0, 0.0)  # g < 0
    with pytest.raises(DomainError):
        second_kind_jet(FJ, 0.0, 0.0, -0.1)  # t < 0
    with pytest.raises(DomainError):
        CurveJet2.vertical(ScalarJet2(0.0, 0.0, 0.0), ScalarJet2(0.0, 1.0, 0.0))
    with pytest.raises(ParameterError):
        SurfaceJet2(
            X=np.array([0.0, 0.0, 1.0, 2.0]),  # wrong shape
            Xs=np.zeros(3), Xt=np.zeros(3),
            Xss=np.zeros(3), Xst=np.zeros(3), Xtt=np.zeros(3),
        )


def test_jet_arrays_are_read_only():
    j = first_kind_jet(FJ, GJ, 0.0, 0.0)
    with pytest.raises(ValueError):
        j.X[0] = 99.0


# --- finite differences --------------------------------------------------


def _wavy_position(s, t):
    return np.array([s, t + math.sin(s), 2.0 + 0.5 * math.cos(t)])


def _wavy_jet(s, t):
    return first_kind_jet(
        ScalarJet2(math.sin(s), math.cos(s), -math.sin(s)),
        ScalarJet2(2.0 + 0.5 * math.cos(t), -0.5 * math.sin(t), -0.5 * math.cos(t)),
        s,
        t,
    )


def test_finite_difference_converges_quadratically():
    s, t = 0.4, 0.7
    H_exact = mean_curvature(_wavy_jet(s, t))
    errs = []
    for h in (1e-2, 5e-3, 2.5e-3):
        H_fd = mean_curvature(finite_difference_jet(_wavy_position, s, t, h))
        errs.append(abs(H_fd - H_exact))
    orders = [math.log2(e0 / e1) for e0, e1 in zip(errs, errs[1:])]
    assert all(1.7 <= o <= 2.3 for o in orders), orders


def test_finite_difference_slots_agree():
    s, t = -0.9, 1.3
    jd = finite_difference_jet(_wavy_position, s, t, 1e-4)
    je = _wavy_jet(s, t)
    for name in ("X", "Xs", "Xt", "Xss", "Xst", "Xtt"):
        assert np.allclose(getattr(jd, name), getattr(je, name), atol=5e-7)


def test_finite_difference_stencil_leaves_domain():
    def pos(s, t):
        if t <= 0.0:
            raise DomainError("below the boundary")
        return np.array([s, s + t, t])

    with pytest.raises(DomainError):
        finite_difference_jet(pos, 0.0, 0.005, 1e-2)


def test_finite_difference_rejects_bad_step():
    with pytest.raises(ParameterError):
        finite_difference_jet(_wavy_position, 0.0, 0.0, 0.0)
