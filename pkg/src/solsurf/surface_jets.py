"""Second-order jets of translation surfaces and their curvature data.

A translation surface is swept as the group product ``X(s, t) = alpha(s) * beta(t)``
of two curves in the upper half-space.  Everything downstream (fundamental
forms, mean curvature, soliton residuals) consumes the second-order jet of
``X`` at a point: the position together with ``Xs, Xt, Xss, Xst, Xtt``.

Two canonical shapes are supported directly:

* first kind:  ``X(s, t) = (s, t + f(s), g(t))`` with ``g > 0``;
* second kind: ``X(s, t) = (s, f(s) + b, t)`` on the half ``t > 0``.

Mean curvature uses the letter convention ``l = <Xss, N>``, ``m = <Xtt, N>``,
``n = <Xst, N>``, so

    H = (l*G - 2*n*F + E*m) / (2*(E*G - F^2)).

The curvature of the rescaled (hyperbolic) metric, for the fixed orientation,
is ``X3*H + N3``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DegenerateJetError, DomainError, ParameterError
from .lie_halfspace import rotation_matrix

__all__ = [
    "DEGENERACY_THRESHOLD",
    "ScalarJet2",
    "CurveJet2",
    "SurfaceJet2",
    "FundamentalForms",
    "first_kind_jet",
    "second_kind_jet",
    "product_surface_jet",
    "unit_normal",
    "fundamental_forms",
    "mean_curvature",
    "hyperbolic_mean_curvature",
    "finite_difference_jet",
    "rotate_jet",
]

# |Xs x Xt| at or below this is treated as a collapsed (non-immersed) jet.
DEGENERACY_THRESHOLD = 1e-300


def _normal_direction(xs: np.ndarray, xt: np.ndarray):
    """Cross product Xs x Xt and its length, in scalar arithmetic.

    Grid sweeps hit this per node; generic ufunc dispatch on 3-vectors costs
    an order of magnitude more than the unrolled formula.
    """
    xs0, xs1, xs2 = xs.tolist()
    xt0, xt1, xt2 = xt.tolist()
    cx = xs1 * xt2 - xs2 * xt1
    cy = xs2 * xt0 - xs0 * xt2
    cz = xs0 * xt1 - xs1 * xt0
    return cx, cy, cz, math.sqrt(cx * cx + cy * cy + cz * cz)


@dataclass(frozen=True, slots=True)
class ScalarJet2:
    """Value and first two derivatives of a scalar function at a point."""

    value: float
    d1: float
    d2: float


def _vec3(v, name: str) -> np.ndarray:
    a = np.asarray(v, dtype=float)
    if a.shape != (3,):
        raise ParameterError(f"{name} must be a 3-vector, got shape {a.shape}")
    a = a.copy()
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class CurveJet2:
    """Second-order jet of a curve in the half-space: value, d1, d2."""

    value: np.ndarray
    d1: np.ndarray
    d2: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", _vec3(self.value, "value"))
        object.__setattr__(self, "d1", _vec3(self.d1, "d1"))
        object.__setattr__(self, "d2", _vec3(self.d2, "d2"))

    @classmethod
    def horospherical(cls, x: ScalarJet2, y: ScalarJet2) -> "CurveJet2":
        """Curve constrained to the unit-height slice: ``(x(s), y(s), 1)``."""
        return cls(
            np.array([x.value, y.value, 1.0]),
            np.array([x.d1, y.d1, 0.0]),
            np.array([x.d2, y.d2, 0.0]),
        )

    @classmethod
    def vertical(cls, y: ScalarJet2, z: ScalarJet2) -> "CurveJet2":
        """Curve constrained to the vertical slice x = 0: ``(0, y(t), z(t))``."""
        if not z.value > 0.0:
            raise DomainError(f"curve height must be positive, got {z.value!r}")
        return cls(
            np.array([0.0, y.value, z.value]),
            np.array([0.0, y.d1, z.d1]),
            np.array([0.0, y.d2, z.d2]),
        )


@dataclass(frozen=True)
class SurfaceJet2:
    """Second-order jet of a parametrized surface at one point.

    Construction rejects points at or below the boundary (``X[2] <= 0``) and
    collapsed jets (``|Xs x Xt| <= DEGENERACY_THRESHOLD``).  Arrays are
    read-only once stored.
    """

    X: np.ndarray
    Xs: np.ndarray
    Xt: np.ndarray
    Xss: np.ndarray
    Xst: np.ndarray
    Xtt: np.ndarray

    def __post_init__(self) -> None:
        for name in ("X", "Xs", "Xt", "Xss", "Xst", "Xtt"):
            object.__setattr__(self, name, _vec3(getattr(self, name), name))
        if not self.X[2] > 0.0:
            raise DomainError(f"surface point has non-positive height {self.X[2]!r}")
        _, _, _, w = _normal_direction(self.Xs, self.Xt)
        if not w > DEGENERACY_THRESHOLD:
            raise DegenerateJetError("jet is not an immersion: |Xs x Xt| ~ 0")


@dataclass(frozen=True, slots=True)
class FundamentalForms:
    """First/second fundamental form coefficients and the area density W.

    ``W = |Xs x Xt|`` satisfies ``W^2 = E*G - F^2`` up to rounding.
    """

    E: float
    F: float
    G: float
    l: float
    m: float
    n: float
    W: float


def first_kind_jet(fj: ScalarJet2, gj: ScalarJet2, s: float, t: float) -> SurfaceJet2:
    """Jet of ``X(s, t) = (s, t + f(s), g(t))``; requires ``g(t) > 0``."""
    if not gj.value > 0.0:
        raise DomainError(f"profile value must be positive, got {gj.value!r}")
    return SurfaceJet2(
        X=np.array([s, t + fj.value, gj.value]),
        Xs=np.array([1.0, fj.d1, 0.0]),
        Xt=np.array([0.0, 1.0, gj.d1]),
        Xss=np.array([0.0, fj.d2, 0.0]),
        Xst=np.zeros(3),
        Xtt=np.array([0.0, 0.0, gj.d2]),
    )


def second_kind_jet(fj: ScalarJet2, b: float, s: float, t: float) -> SurfaceJet2:
    """Jet of ``X(s, t) = (s, f(s) + b, t)`` on the half ``t > 0``."""
    if not t > 0.0:
        raise DomainError(f"second-kind surfaces live on t > 0, got t={t!r}")
    return SurfaceJet2(
        X=np.array([s, fj.value + b, t]),
        Xs=np.array([1.0, fj.d1, 0.0]),
        Xt=np.array([0.0, 0.0, 1.0]),
        Xss=np.array([0.0, fj.d2, 0.0]),
        Xst=np.zeros(3),
        Xtt=np.zeros(3),
    )


def product_surface_jet(aj: CurveJet2, bj: CurveJet2) -> SurfaceJet2:
    """Jet of the swept surface ``X(s, t) = alpha(s) * beta(t)``.

    With ``P`` the horizontal projection ``(v1, v2, 0)`` and ``a3`` the height
    slot of ``alpha``:

        X   = a3*beta   + P(alpha)      Xs  = a3'*beta  + P(alpha')
        Xt  = a3*beta'                  Xss = a3''*beta + P(alpha'')
        Xst = a3'*beta'                 Xtt = a3*beta''

    Both curve heights must be positive.
    """
    a3 = aj.value[2]
    if not a3 > 0.0:
        raise DomainError(f"alpha height must be positive, got {a3!r}")
    if not bj.value[2] > 0.0:
        raise DomainError(f"beta height must be positive, got {bj.value[2]!r}")
    a3_1 = aj.d1[2]
    a3_2 = aj.d2[2]

    def hor(v: np.ndarray) -> np.ndarray:
        return np.array([v[0], v[1], 0.0])

    return SurfaceJet2(
        X=a3 * bj.value + hor(aj.value),
        Xs=a3_1 * bj.value + hor(aj.d1),
        Xt=a3 * bj.d1,
        Xss=a3_2 * bj.value + hor(aj.d2),
        Xst=a3_1 * bj.d1,
        Xtt=a3 * bj.d2,
    )


def unit_normal(j: SurfaceJet2, orientation: int = 1) -> np.ndarray:
    """Unit normal ``Xs x Xt / |Xs x Xt|`` for the fixed global orientation.

    ``orientation=-1`` returns the exact negation (every component flips
    sign bit-exactly), which is the hook used by orientation-flip checks.
    """
    cx, cy, cz, w = _normal_direction(j.Xs, j.Xt)
    n = np.array([cx / w, cy / w, cz / w])
    return -n if orientation == -1 else n


def fundamental_forms(j: SurfaceJet2, orientation: int = 1) -> FundamentalForms:
    """First and second fundamental forms of the jet.

    ``l, m, n`` pair with ``Xss, Xtt, Xst`` respectively.
    """
    xs0, xs1, xs2 = j.Xs.tolist()
    xt0, xt1, xt2 = j.Xt.tolist()
    cx, cy, cz, w = _normal_direction(j.Xs, j.Xt)
    nx, ny, nz = cx / w, cy / w, cz / w
    if orientation == -1:
        nx, ny, nz = -nx, -ny, -nz
    a0, a1, a2 = j.Xss.tolist()
    b0, b1, b2 = j.Xtt.tolist()
    c0, c1, c2 = j.Xst.tolist()
    return FundamentalForms(
        E=xs0 * xs0 + xs1 * xs1 + xs2 * xs2,
        F=xs0 * xt0 + xs1 * xt1 + xs2 * xt2,
        G=xt0 * xt0 + xt1 * xt1 + xt2 * xt2,
        l=a0 * nx + a1 * ny + a2 * nz,
        m=b0 * nx + b1 * ny + b2 * nz,
        n=c0 * nx + c1 * ny + c2 * nz,
        W=w,
    )


def mean_curvature(j: SurfaceJet2, orientation: int = 1) -> float:
    """Euclidean mean curvature ``(l*G - 2*n*F + E*m) / (2*(E*G - F^2))``."""
    f = fundamental_forms(j, orientation)
    return (f.l * f.G - 2.0 * f.n * f.F + f.E * f.m) / (2.0 * (f.E * f.G - f.F * f.F))


def hyperbolic_mean_curvature(H: float, N3: float, X3: float) -> float:
    """Mean curvature of the rescaled metric: ``X3*H + N3``; needs ``X3 > 0``."""
    if not X3 > 0.0:
        raise ParameterError(f"height must be positive, got {X3!r}")
    return X3 * H + N3


def finite_difference_jet(
    evaluator: Callable[[float, float], np.ndarray],
    s: float,
    t: float,
    h: float,
) -> SurfaceJet2:
    """Second-order central-difference jet of a position-only surface map.

    ``evaluator(s, t)`` must return the position as a 3-vector.  The stencil
    uses the four axis neighbours at distance ``h`` plus the four corners
    (for ``Xst``); all nine probed points must stay in the domain, otherwise
    a ``DomainError`` is raised.  Truncation error is O(h^2) per slot.
    """
    if not h > 0.0:
        raise ParameterError(f"step must be positive, got {h!r}")

    def ev(ss: float, tt: float) -> np.ndarray:
        try:
            p = np.asarray(evaluator(ss, tt), dtype=float)
        except (DomainError, ArithmeticError, ValueError) as exc:
            raise DomainError(
                f"stencil point (s={ss!r}, t={tt!r}) left the surface domain"
            ) from exc
        if p.shape != (3,):
            raise ParameterError(f"evaluator must return a 3-vector, got shape {p.shape}")
        if not p[2] > 0.0:
            raise DomainError(
                f"stencil point (s={ss!r}, t={tt!r}) has non-positive height {p[2]!r}"
            )
        return p

    X = ev(s, t)
    Xe, Xw = ev(s + h, t), ev(s - h, t)
    Xn, Xo = ev(s, t + h), ev(s, t - h)
    Xen, Xeo = ev(s + h, t + h), ev(s + h, t - h)
    Xwn, Xwo = ev(s - h, t + h), ev(s - h, t - h)
    return SurfaceJet2(
        X=X,
        Xs=(Xe - Xw) / (2.0 * h),
        Xt=(Xn - Xo) / (2.0 * h),
        Xss=(Xe - 2.0 * X + Xw) / (h * h),
        Xst=(Xen - Xeo - Xwn + Xwo) / (4.0 * h * h),
        Xtt=(Xn - 2.0 * X + Xo) / (h * h),
    )


def rotate_jet(theta: float, j: SurfaceJet2) -> SurfaceJet2:
    """Apply the vertical-axis rotation to every slot of the jet.

    Rotation acts linearly on positions and derivatives alike, so the
    rotated jet is the jet of the rotated surface.
    """
    A = rotation_matrix(theta)
    return SurfaceJet2(
        X=A @ j.X,
        Xs=A @ j.Xs,
        Xt=A @ j.Xt,
        Xss=A @ j.Xss,
        Xst=A @ j.Xst,
        Xtt=A @ j.Xtt,
    )
