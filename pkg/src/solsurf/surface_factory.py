"""Constructors for the concrete surface families and grid sampling.

Every family is packaged as a :class:`SurfaceFamily`: a rectangle of
parameters ``(s, t)``, a callable producing the full second-order jet at a
point, and bookkeeping (parameter dict, the profile solution where one is
involved, and whether the ``t`` extent is limited by profile collapse).

Families whose ``t`` extent ends at a collapse abscissa are flagged
``blowup_limited``; grids on those shrink the ``t`` interval by a relative
margin (default 1e-3 of the extent per side) so that sampled nodes stay away
from the near-vertical ends where jets degrade.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

import numpy as np

from .errors import DomainError, DegenerateJetError, ParameterError, SamplingError
from .profile_odes import (
    ConformalProfileParams,
    GrimReaperParams,
    MinimalProfileParams,
    ProfileSolution,
    integrate_conformal_profile,
    integrate_grim_reaper,
    integrate_minimal_profile,
)
from .surface_jets import ScalarJet2, SurfaceJet2, first_kind_jet, second_kind_jet

__all__ = [
    "FamilyTag",
    "GridSpec",
    "SurfaceFamily",
    "make_horosphere",
    "make_vertical_plane",
    "make_minimal_cylinder",
    "make_grim_reaper",
    "make_conformal_cylinder",
    "make_generic_first_kind",
    "make_generic_second_kind",
    "perturb_profile",
    "grid_axes",
    "sample_grid",
]


class FamilyTag(enum.Enum):
    HOROSPHERE = "horosphere"
    VERTICAL_PLANE = "vertical_plane"
    MINIMAL_CYLINDER = "minimal_cylinder"
    GRIM_REAPER = "grim_reaper"
    CONFORMAL_CYLINDER = "conformal_cylinder"
    GENERIC_FIRST_KIND = "generic_first_kind"
    GENERIC_SECOND_KIND = "generic_second_kind"


@dataclass(frozen=True, slots=True)
class GridSpec:
    """A sampling grid: ``ns`` nodes across ``s``, ``nt`` across ``t``.

    ``margin`` is the fraction of the ``t`` extent clipped from each end
    before sampling, applied only to blow-up-limited families.
    """

    ns: int
    nt: int
    margin: float = 1e-3

    def __post_init__(self) -> None:
        if self.ns < 2 or self.nt < 2:
            raise ParameterError(f"grid needs at least 2x2 nodes, got {self.ns}x{self.nt}")
        if not 0.0 <= self.margin < 0.5:
            raise ParameterError(f"margin must be in [0, 0.5), got {self.margin!r}")


@dataclass(eq=False)
class SurfaceFamily:
    """A parametrized surface with second-order jet access.

    ``jet(s, t)`` returns the full :class:`SurfaceJet2`; ``position`` is the
    bare embedding, convenient for finite-difference cross-checks.  Families
    built from scalar profile curves keep their factor jets around
    (``_f_jet_fn``/``_g_jet_fn``) so controlled perturbations can be applied.
    """

    tag: FamilyTag
    params: dict
    s_range: Tuple[float, float]
    t_range: Tuple[float, float]
    jet: Callable[[float, float], SurfaceJet2]
    blowup_limited: bool = False
    profile: Optional[ProfileSolution] = None
    _f_jet_fn: Optional[Callable[[float], ScalarJet2]] = field(default=None, repr=False)
    _g_jet_fn: Optional[Callable[[float], ScalarJet2]] = field(default=None, repr=False)

    def position(self, s: float, t: float) -> np.ndarray:
        return self.jet(s, t).X

    @property
    def name(self) -> str:
        return self.tag.value


def _check_range(name: str, rng: Tuple[float, float]) -> Tuple[float, float]:
    lo, hi = float(rng[0]), float(rng[1])
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise ParameterError(f"{name} must be a finite increasing pair, got {rng!r}")
    return lo, hi


def _first_kind_family(
    tag: FamilyTag,
    params: dict,
    f_jet_fn: Callable[[float], ScalarJet2],
    g_jet_fn: Callable[[float], ScalarJet2],
    s_range: Tuple[float, float],
    t_range: Tuple[float, float],
    blowup_limited: bool = False,
    profile: Optional[ProfileSolution] = None,
) -> SurfaceFamily:
    def jet(s: float, t: float) -> SurfaceJet2:
        return first_kind_jet(f_jet_fn(s), g_jet_fn(t), s, t)

    return SurfaceFamily(
        tag=tag,
        params=params,
        s_range=s_range,
        t_range=t_range,
        jet=jet,
        blowup_limited=blowup_limited,
        profile=profile,
        _f_jet_fn=f_jet_fn,
        _g_jet_fn=g_jet_fn,
    )


def _linear_jet(slope: float, intercept: float) -> Callable[[float], ScalarJet2]:
    def fn(s: float) -> ScalarJet2:
        return ScalarJet2(slope * s + intercept, slope, 0.0)

    return fn


def _constant_jet(value: float) -> Callable[[float], ScalarJet2]:
    def fn(t: float) -> ScalarJet2:
        return ScalarJet2(value, 0.0, 0.0)

    return fn


def make_horosphere(
    a: float,
    s_range: Tuple[float, float] = (-2.0, 2.0),
    t_range: Tuple[float, float] = (-2.0, 2.0),
) -> SurfaceFamily:
    """The flat slice at height ``a > 0``: X(s, t) = (s, t, a)."""
    if not a > 0.0:
        raise ParameterError(f"height must be positive, got {a!r}")
    return _first_kind_family(
        FamilyTag.HOROSPHERE,
        {"a": a},
        _linear_jet(0.0, 0.0),
        _constant_jet(a),
        _check_range("s_range", s_range),
        _check_range("t_range", t_range),
    )


def make_vertical_plane(
    c: float,
    d: float,
    b: float = 0.0,
    s_range: Tuple[float, float] = (-2.0, 2.0),
    t_range: Tuple[float, float] = (0.5, 4.5),
) -> SurfaceFamily:
    """The vertical plane y = c*x + d + b: X(s, t) = (s, c*s + d + b, t).

    ``d`` is the intercept of the generating line and ``b`` the transverse
    offset of the construction; only their sum moves the plane, but they play
    different roles in the reduced residual equations, so both are kept.
    """
    t_lo, t_hi = _check_range("t_range", t_range)
    if not t_lo > 0.0:
        raise ParameterError(f"t_range must stay above the boundary plane, got {t_range!r}")
    f_jet_fn = _linear_jet(c, d)

    def jet(s: float, t: float) -> SurfaceJet2:
        return second_kind_jet(f_jet_fn(s), b, s, t)

    return SurfaceFamily(
        tag=FamilyTag.VERTICAL_PLANE,
        params={"c": c, "d": d, "b": b},
        s_range=_check_range("s_range", s_range),
        t_range=(t_lo, t_hi),
        jet=jet,
    )


def _profile_g_jet(sol: ProfileSolution, shift: float = 0.0) -> Callable[[float], ScalarJet2]:
    def fn(t: float) -> ScalarJet2:
        v = shift + t
        return ScalarJet2(sol.eval_g(v), sol.eval_gp(v), sol.eval_gpp(v))

    return fn


def make_minimal_cylinder(
    c: float,
    y0: float,
    d: float = 0.0,
    s_range: Tuple[float, float] = (-2.0, 2.0),
) -> SurfaceFamily:
    """Minimal surface generated by the collapsing even profile: first-kind
    construction with f(s) = c*s + d and g the integrated minimal profile."""
    params = MinimalProfileParams(c=c, y0=y0, d=d)
    sol = integrate_minimal_profile(params)
    return _first_kind_family(
        FamilyTag.MINIMAL_CYLINDER,
        {"c": c, "y0": y0, "d": d},
        _linear_jet(c, d),
        _profile_g_jet(sol),
        _check_range("s_range", s_range),
        (float(sol.t[0]), float(sol.t[-1])),
        blowup_limited=True,
        profile=sol,
    )


def make_grim_reaper(
    lam: float,
    b_slope: float = 0.0,
    a_shift: float = 0.0,
    span: Tuple[float, float] = (-5.0, 5.0),
    s_range: Tuple[float, float] = (-2.0, 2.0),
) -> SurfaceFamily:
    """Translating surface: f(s) = b_slope*s + a_shift and g(t) the reaper
    profile evaluated at v = a_shift + t, with k = 1/(b_slope^2 + 1)."""
    k = 1.0 / (b_slope * b_slope + 1.0)
    params = GrimReaperParams(lam=lam, k=k, t_shift=a_shift)
    sol = integrate_grim_reaper(params, span=span)
    t_lo = float(sol.t[0]) - a_shift
    t_hi = float(sol.t[-1]) - a_shift
    return _first_kind_family(
        FamilyTag.GRIM_REAPER,
        {"lam": lam, "b_slope": b_slope, "a_shift": a_shift, "k": k},
        _linear_jet(b_slope, a_shift),
        _profile_g_jet(sol, shift=a_shift),
        _check_range("s_range", s_range),
        (t_lo, t_hi),
        profile=sol,
    )


def make_conformal_cylinder(
    a_slope: float,
    y0: float,
    s_range: Tuple[float, float] = (-2.0, 2.0),
) -> SurfaceFamily:
    """Conformal-soliton surface generated by the collapsing conformal
    profile: first-kind construction with f(s) = a_slope*s."""
    params = ConformalProfileParams(a=a_slope, y0=y0)
    sol = integrate_conformal_profile(params)
    return _first_kind_family(
        FamilyTag.CONFORMAL_CYLINDER,
        {"a_slope": a_slope, "y0": y0},
        _linear_jet(a_slope, 0.0),
        _profile_g_jet(sol),
        _check_range("s_range", s_range),
        (float(sol.t[0]), float(sol.t[-1])),
        blowup_limited=True,
        profile=sol,
    )


def _coerce_scalar_jet(v) -> ScalarJet2:
    if isinstance(v, ScalarJet2):
        return v
    return ScalarJet2(float(v[0]), float(v[1]), float(v[2]))


def make_generic_first_kind(
    f_fn: Callable[[float], object],
    g_fn: Callable[[float], object],
    s_range: Tuple[float, float],
    t_range: Tuple[float, float],
    params: Optional[dict] = None,
) -> SurfaceFamily:
    """First-kind surface from user scalar jets: X = (s, t + f(s), g(t)).

    ``f_fn``/``g_fn`` return a ScalarJet2 or a (value, d1, d2) triple.
    """

    def f_jet_fn(s: float) -> ScalarJet2:
        return _coerce_scalar_jet(f_fn(s))

    def g_jet_fn(t: float) -> ScalarJet2:
        return _coerce_scalar_jet(g_fn(t))

    return _first_kind_family(
        FamilyTag.GENERIC_FIRST_KIND,
        dict(params or {}),
        f_jet_fn,
        g_jet_fn,
        _check_range("s_range", s_range),
        _check_range("t_range", t_range),
    )


def make_generic_second_kind(
    f_fn: Callable[[float], object],
    b: float,
    s_range: Tuple[float, float],
    t_range: Tuple[float, float],
    params: Optional[dict] = None,
) -> SurfaceFamily:
    """Second-kind surface from a user scalar jet: X = (s, f(s) + b, t)."""
    t_lo, t_hi = _check_range("t_range", t_range)
    if not t_lo > 0.0:
        raise ParameterError(f"t_range must stay above the boundary plane, got {t_range!r}")

    def jet(s: float, t: float) -> SurfaceJet2:
        return second_kind_jet(_coerce_scalar_jet(f_fn(s)), b, s, t)

    return SurfaceFamily(
        tag=FamilyTag.GENERIC_SECOND_KIND,
        params=dict(params or {}, b=b),
        s_range=_check_range("s_range", s_range),
        t_range=(t_lo, t_hi),
        jet=jet,
    )


def perturb_profile(fam: SurfaceFamily, amplitude: float) -> SurfaceFamily:
    """Additively perturb the profile of a first-kind family by
    ``amplitude * cos(t)``, with honestly perturbed derivatives.

    The result should *fail* residual checks: it is the falsification probe
    that guards the evaluation pipeline against vacuous passes.
    """
    if fam._g_jet_fn is None or fam._f_jet_fn is None:
        raise ParameterError(f"family {fam.name!r} does not expose a profile to perturb")
    if not math.isfinite(amplitude):
        raise ParameterError(f"amplitude must be finite, got {amplitude!r}")
    base = fam._g_jet_fn

    def g_jet_fn(t: float) -> ScalarJet2:
        j = base(t)
        return ScalarJet2(
            j.value + amplitude * math.cos(t),
            j.d1 - amplitude * math.sin(t),
            j.d2 - amplitude * math.cos(t),
        )

    return _first_kind_family(
        fam.tag,
        dict(fam.params, perturb_amplitude=amplitude),
        fam._f_jet_fn,
        g_jet_fn,
        fam.s_range,
        fam.t_range,
        blowup_limited=fam.blowup_limited,
        profile=fam.profile,
    )


def grid_axes(fam: SurfaceFamily, grid: GridSpec) -> Tuple[np.ndarray, np.ndarray]:
    """Node coordinates for a grid on the family's rectangle.  Blow-up
    limited families get their ``t`` interval clipped by ``grid.margin``
    (a fraction of the extent, per side)."""
    s_lo, s_hi = fam.s_range
    t_lo, t_hi = fam.t_range
    if fam.blowup_limited and grid.margin > 0.0:
        pad = grid.margin * (t_hi - t_lo)
        t_lo += pad
        t_hi -= pad
    return np.linspace(s_lo, s_hi, grid.ns), np.linspace(t_lo, t_hi, grid.nt)


def sample_grid(
    fam: SurfaceFamily, grid: GridSpec
) -> Tuple[List[Tuple[float, float, SurfaceJet2]], List[Tuple[float, float, str]]]:
    """Evaluate jets on the grid, row-major (s varies slowest).

    Nodes where the jet cannot be evaluated are collected as failures
    ``(s, t, reason)`` instead of aborting the sweep; if *every* node fails,
    :class:`SamplingError` is raised.
    """
    s_axis, t_axis = grid_axes(fam, grid)
    nodes: List[Tuple[float, float, SurfaceJet2]] = []
    failures: List[Tuple[float, float, str]] = []
    for s in s_axis:
        for t in t_axis:
            try:
                nodes.append((float(s), float(t), fam.jet(float(s), float(t))))
            except (DomainError, DegenerateJetError) as exc:
                failures.append((float(s), float(t), str(exc)))
    if not nodes:
        raise SamplingError(
            f"no grid node of {fam.name!r} could be evaluated "
            f"({len(failures)} failures)"
        )
    return nodes, failures
