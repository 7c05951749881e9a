"""Family constructors, grids, and the residual cross-family matrix."""
import math

import numpy as np
import pytest

from solsurf import (
    FamilyTag,
    GridSpec,
    ParameterError,
    SolitonMode,
    grid_axes,
    make_conformal_cylinder,
    make_grim_reaper,
    make_horosphere,
    make_minimal_cylinder,
    make_vertical_plane,
    perturb_profile,
    residual_report,
    rotate_jet,
    residual,
    sample_grid,
)

GRID = GridSpec(21, 21, margin=1e-3)


@pytest.fixture(scope="module")
def minimal_cyl():
    return make_minimal_cylinder(0.0, 1.0)


@pytest.fixture(scope="module")
def reaper():
    return make_grim_reaper(0.5, span=(-5.0, 5.0))


@pytest.fixture(scope="module")
def conformal_cyl():
    return make_conformal_cylinder(0.0, 1.0)


def test_own_mode_residuals_vanish(minimal_cyl, reaper, conformal_cyl):
    cases = [
        (make_horosphere(1.0), SolitonMode.TRANSLATOR),
        (make_vertical_plane(1.0, -1.0, b=1.0), SolitonMode.TRANSLATOR),
        (make_vertical_plane(1.0, -1.0), SolitonMode.MINIMAL),
        (minimal_cyl, SolitonMode.MINIMAL),
        (reaper, SolitonMode.TRANSLATOR),
        (conformal_cyl, SolitonMode.CONFORMAL),
    ]
    for fam, mode in cases:
        rep = residual_report(fam, mode, GRID)
        assert rep.max_abs <= 1e-6, (fam.name, mode, rep.max_abs)
        assert not rep.failures


def test_off_mode_residuals_do_not_vanish(minimal_cyl, reaper, conformal_cyl):
    """Each curved family solves exactly one of the three equations."""
    cases = [
        (minimal_cyl, SolitonMode.TRANSLATOR, 1e-2),
        (minimal_cyl, SolitonMode.CONFORMAL, 1e-2),
        (reaper, SolitonMode.MINIMAL, 1e-2),
        (conformal_cyl, SolitonMode.MINIMAL, 1e-3),
        (conformal_cyl, SolitonMode.TRANSLATOR, 1e-2),
    ]
    for fam, mode, floor in cases:
        rep = residual_report(fam, mode, GRID)
        assert rep.max_abs > floor, (fam.name, mode, rep.max_abs)


def test_rotation_preserves_all_residuals(minimal_cyl):
    for fam in (make_horosphere(0.8), minimal_cyl):
        j = fam.jet(0.4, 0.1)
        for theta in (0.7, 2.4):
            jr = rotate_jet(theta, j)
            for mode in SolitonMode:
                assert abs(residual(mode, jr) - residual(mode, j)) <= 1e-10


def test_family_tags_and_params(minimal_cyl):
    assert make_horosphere(2.0).tag is FamilyTag.HOROSPHERE
    assert minimal_cyl.tag is FamilyTag.MINIMAL_CYLINDER
    assert minimal_cyl.params == {"c": 0.0, "y0": 1.0, "d": 0.0}
    assert minimal_cyl.blowup_limited
    assert not make_horosphere(2.0).blowup_limited


def test_cylinder_t_range_covers_blowup_interval(minimal_cyl):
    lo, hi = minimal_cyl.t_range
    r = minimal_cyl.profile.events.right_blowup_t
    assert lo < 0.0 < hi
    assert hi <= r and hi >= r - 1e-3


def test_grid_margin_applies_only_to_blowup_limited(minimal_cyl):
    g = GridSpec(5, 5, margin=0.1)
    s_axis, t_axis = grid_axes(minimal_cyl, g)
    lo, hi = minimal_cyl.t_range
    pad = 0.1 * (hi - lo)
    assert t_axis[0] == pytest.approx(lo + pad)
    assert t_axis[-1] == pytest.approx(hi - pad)
    hs, ht = grid_axes(make_horosphere(1.0), g)
    assert ht[0] == -2.0 and ht[-1] == 2.0
    assert hs[0] == -2.0 and hs[-1] == 2.0


def test_sample_grid_row_major_order():
    fam = make_horosphere(1.0, s_range=(0.0, 1.0), t_range=(0.0, 3.0))
    nodes, failures = sample_grid(fam, GridSpec(2, 4, margin=0.0))
    assert len(nodes) == 8 and not failures
    ss = [s for s, _, _ in nodes]
    ts = [t for _, t, _ in nodes]
    assert ss == [0.0] * 4 + [1.0] * 4
    assert ts[:4] == sorted(ts[:4])


def test_sampling_is_deterministic(minimal_cyl):
    n1, _ = sample_grid(minimal_cyl, GRID)
    n2, _ = sample_grid(minimal_cyl, GRID)
    for (s1, t1, j1), (s2, t2, j2) in zip(n1, n2):
        assert (s1, t1) == (s2, t2)
        assert np.array_equal(j1.X, j2.X)


def test_reaper_shift_reindexes_t(reaper):
    shifted = make_grim_reaper(0.5, a_shift=1.0, span=(-3.0, 3.0))
    assert shifted.t_range == (-4.0, 2.0)
    # the surface profile at t is the curve at v = 1 + t
    assert shifted.jet(0.0, 0.0).X[2] == shifted.profile.eval_g(1.0)
    assert reaper.t_range == (-5.0, 5.0)


def test_reaper_drift_slope_sets_k():
    fam = make_grim_reaper(0.5, b_slope=1.0, span=(-2.0, 2.0))
    assert fam.params["k"] == 0.5
    rep = residual_report(fam, SolitonMode.TRANSLATOR, GridSpec(11, 11))
    assert rep.max_abs <= 1e-6


def test_perturbation_breaks_each_family(minimal_cyl, reaper, conformal_cyl):
    for fam, mode in (
        (minimal_cyl, SolitonMode.MINIMAL),
        (reaper, SolitonMode.TRANSLATOR),
        (conformal_cyl, SolitonMode.CONFORMAL),
    ):
        rep = residual_report(perturb_profile(fam, 1e-2), mode, GRID)
        assert rep.max_abs > 1e-4, (fam.name, rep.max_abs)


def test_perturbation_needs_profile_backing():
    with pytest.raises(ParameterError):
        perturb_profile(make_vertical_plane(1.0, 0.0), 1e-2)


def test_constructor_validation():
    with pytest.raises(ParameterError):
        make_horosphere(0.0)
    with pytest.raises(ParameterError):
        make_horosphere(1.0, s_range=(2.0, -2.0))
    with pytest.raises(ParameterError):
        make_vertical_plane(1.0, 0.0, t_range=(-1.0, 1.0))
    with pytest.raises(ParameterError):
        GridSpec(1, 5)
    with pytest.raises(ParameterError):
        GridSpec(5, 5, margin=0.5)


def test_position_matches_jet(minimal_cyl):
    j = minimal_cyl.jet(0.3, 0.2)
    assert np.array_equal(minimal_cyl.position(0.3, 0.2), j.X)
