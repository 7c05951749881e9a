import pytest

from solsurf import (
    ConformalProfileParams,
    GrimReaperParams,
    MinimalProfileParams,
    integrate_conformal_profile,
    integrate_grim_reaper,
    integrate_minimal_profile,
)


@pytest.fixture(scope="session")
def minimal_sol():
    return integrate_minimal_profile(MinimalProfileParams(c=0.0, y0=1.0))


@pytest.fixture(scope="session")
def minimal_sol_c1():
    return integrate_minimal_profile(MinimalProfileParams(c=1.0, y0=2.0))


@pytest.fixture(scope="session")
def conformal_sol():
    return integrate_conformal_profile(ConformalProfileParams(a=0.0, y0=1.0))


@pytest.fixture(scope="session")
def reaper_sol():
    return integrate_grim_reaper(GrimReaperParams(lam=0.5, k=1.0), span=(-50.0, 50.0))


@pytest.fixture(scope="session")
def reaper_const_sol():
    return integrate_grim_reaper(GrimReaperParams(lam=0.0, k=1.0), span=(-10.0, 10.0))
