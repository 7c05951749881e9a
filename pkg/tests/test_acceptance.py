"""Acceptance gate: every numbered claim, one pass/fail line each.

Runs the full built-in verification battery once and partitions the
results by criterion number, so a failure pinpoints which guarantee
broke without re-deriving any tolerances here.
"""
import pytest

from solsurf.verify import run_checks


@pytest.fixture(scope="module")
def summary():
    return run_checks()


def _assert_criterion(summary, number, expect_names):
    picked = [r for r in summary.results if r.criterion == number]
    assert {r.name for r in picked} == set(expect_names)
    for r in picked:
        status = "PASS" if r.passed else "FAIL"
        print(
            f"criterion {number}: {status} — {r.name} "
            f"defect={r.defect:.3e} (tol {r.tolerance:.1e}, {r.sense})"
        )
    failed = [r.name for r in picked if not r.passed]
    assert not failed, f"criterion {number} failed: {failed}"


def test_c01_group_laws(summary):
    _assert_criterion(summary, 1, ["lie.group_laws"])


def test_c02_horosphere_soliton(summary):
    _assert_criterion(summary, 2, ["horosphere.soliton"])


def test_c03_plane_residuals(summary):
    _assert_criterion(summary, 3, ["plane.residuals"])


def test_c04_minimal_cylinder(summary):
    _assert_criterion(
        summary,
        4,
        [
            "minimal_cylinder.residual",
            "minimal_cylinder.first_integral",
            "minimal_cylinder.symmetry",
            "minimal_cylinder.halfwidth",
        ],
    )


def test_c05_grim_reaper(summary):
    _assert_criterion(
        summary,
        5,
        ["grim_reaper.constant", "grim_reaper.shape", "grim_reaper.residual"],
    )


def test_c06_conformal_cylinder(summary):
    _assert_criterion(
        summary,
        6,
        ["conformal.residual", "conformal.first_integral", "conformal.not_minimal"],
    )


def test_c07_reduced_forms(summary):
    _assert_criterion(summary, 7, ["reduced.first_kind", "reduced.second_kind"])


def test_c08_fd_convergence(summary):
    _assert_criterion(summary, 8, ["fd.convergence"])


def test_c09_falsification(summary):
    _assert_criterion(summary, 9, ["falsify.profiles"])


def test_c10_determinism(summary):
    _assert_criterion(summary, 10, ["determinism.mesh", "determinism.profile"])
