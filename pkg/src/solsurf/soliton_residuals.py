"""Pointwise soliton residuals and grid residual reports.

The three defining equations, written as residuals that vanish on exact
solutions (X is the embedding, N the unit normal for the canonical
orientation, H the Euclidean mean curvature):

    minimal:     X3*H + N3
    translator:  X3^2*H - (X1*N1 + X2*N2)
    conformal:   X3^2*H + (X3 + 1)*N3

``X3*H + N3`` is also the mean curvature of the surface measured in the
rescaled ambient metric, exposed here as ``hyperbolic_mean_curvature`` via
the jets module.

For the two product constructions the residuals reduce, after clearing the
positive factor ``2*W^3``, to polynomial expressions in the factor-curve
jets; those reduced forms are implemented independently of the jet pipeline
and serve as its cross-check.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from .errors import DegenerateJetError, DomainError, SamplingError
from .surface_jets import (
    ScalarJet2,
    SurfaceJet2,
    mean_curvature,
    unit_normal,
)

__all__ = [
    "SolitonMode",
    "minimal_residual",
    "translator_residual",
    "conformal_residual",
    "residual",
    "reduced_residual_first_kind",
    "reduced_residual_second_kind",
    "ResidualReport",
    "residual_report",
]


class SolitonMode(enum.Enum):
    MINIMAL = "minimal"
    TRANSLATOR = "translator"
    CONFORMAL = "conformal"


def minimal_residual(j: SurfaceJet2, orientation: int = 1) -> float:
    N = unit_normal(j, orientation)
    H = mean_curvature(j, orientation)
    return j.X[2] * H + N[2]


def translator_residual(j: SurfaceJet2, orientation: int = 1) -> float:
    N = unit_normal(j, orientation)
    H = mean_curvature(j, orientation)
    return (j.X[2] * j.X[2]) * H - (j.X[0] * N[0] + j.X[1] * N[1])


def conformal_residual(j: SurfaceJet2, orientation: int = 1) -> float:
    N = unit_normal(j, orientation)
    H = mean_curvature(j, orientation)
    return (j.X[2] * j.X[2]) * H + (j.X[2] + 1.0) * N[2]


_GENERAL = {
    SolitonMode.MINIMAL: minimal_residual,
    SolitonMode.TRANSLATOR: translator_residual,
    SolitonMode.CONFORMAL: conformal_residual,
}


def residual(mode: SolitonMode, j: SurfaceJet2, orientation: int = 1) -> float:
    """Evaluate one soliton residual at a jet."""
    return _GENERAL[SolitonMode(mode)](j, orientation)


def reduced_residual_first_kind(
    mode: SolitonMode, fj: ScalarJet2, gj: ScalarJet2, s: float, t: float
) -> float:
    """Residual of X = (s, t + f(s), g(t)) with the 2*W^3 factor cleared.

    Equals ``2*W^3`` times the general residual at the same jet (canonical
    orientation), with ``W^2 = g'^2*(f'^2 + 1) + 1``.
    """
    mode = SolitonMode(mode)
    fp, fpp = fj.d1, fj.d2
    g, gp, gpp = gj.value, gj.d1, gj.d2
    w2 = gp * gp * (fp * fp + 1.0) + 1.0
    bend = -fpp * gp * (1.0 + gp * gp)  # curvature of the drift curve, weighted
    stretch = gpp * (1.0 + fp * fp)
    if mode is SolitonMode.MINIMAL:
        return g * bend + g * stretch + 2.0 * w2
    if mode is SolitonMode.TRANSLATOR:
        drift = (s * fp - fj.value) - t
        return g * g * bend + g * g * stretch - 2.0 * gp * w2 * drift
    return g * g * bend + g * g * stretch + 2.0 * (g + 1.0) * w2


def reduced_residual_second_kind(
    mode: SolitonMode, fj: ScalarJet2, b: float, s: float, t: float
) -> float:
    """Residual of X = (s, f(s) + b, t) with the 2*W^3 factor cleared,
    ``W^2 = f'^2 + 1``."""
    mode = SolitonMode(mode)
    fp, fpp = fj.d1, fj.d2
    if mode is SolitonMode.MINIMAL:
        return -t * fpp
    if mode is SolitonMode.TRANSLATOR:
        return -t * t * fpp - 2.0 * (fp * fp + 1.0) * (s * fp - fj.value - b)
    return -t * t * fpp


@dataclass
class ResidualReport:
    """Residuals sampled over a grid.  ``samples`` has columns (s, t, value),
    sorted by (s, t); evaluation failures are kept separately."""

    mode: SolitonMode
    family: str
    ns: int
    nt: int
    margin: float
    samples: np.ndarray
    failures: List[Tuple[float, float, str]]

    @property
    def max_abs(self) -> float:
        return float(np.max(np.abs(self.samples[:, 2])))

    @property
    def mean_abs(self) -> float:
        return float(np.mean(np.abs(self.samples[:, 2])))


def residual_report(fam, mode: SolitonMode, grid) -> ResidualReport:
    """Sweep one residual over a family grid (margins per the family's
    blow-up flag) and collect the values.

    Raises :class:`SamplingError` if no node can be evaluated at all.
    """
    from .surface_factory import sample_grid  # deferred: factory imports are heavy

    mode = SolitonMode(mode)
    nodes, failures = sample_grid(fam, grid)
    fn = _GENERAL[mode]
    rows = []
    for s, t, j in nodes:
        try:
            rows.append((s, t, fn(j)))
        except (DomainError, DegenerateJetError, ZeroDivisionError) as exc:
            failures.append((s, t, str(exc)))
    if not rows:
        raise SamplingError(
            f"no residual of {fam.name!r} could be evaluated ({len(failures)} failures)"
        )
    arr = np.asarray(rows, dtype=float)
    order = np.lexsort((arr[:, 1], arr[:, 0]))
    arr = arr[order]
    arr.setflags(write=False)
    return ResidualReport(
        mode=mode,
        family=fam.name,
        ns=grid.ns,
        nt=grid.nt,
        margin=grid.margin,
        samples=arr,
        failures=failures,
    )
