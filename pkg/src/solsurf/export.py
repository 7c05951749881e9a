"""Deterministic text export: residual CSV + summary, profile CSV + events,
and OBJ meshes.

Every number is written with :func:`fmt` (scientific, 13 significant digits,
locale independent), and no file contains timestamps or environment detail,
so identical inputs produce byte-identical files.
"""
from __future__ import annotations

from typing import TYPE_CHECKING

from .soliton_residuals import ResidualReport

if TYPE_CHECKING:  # pragma: no cover
    from .profile_odes import ProfileSolution
    from .surface_factory import GridSpec, SurfaceFamily

__all__ = [
    "fmt",
    "write_residual_csv",
    "write_residual_summary",
    "write_profile_csv",
    "write_profile_events",
    "write_obj_mesh",
]


def fmt(x: float) -> str:
    """Fixed numeric format for all exports: 0.123456789012e+00 style."""
    return format(float(x), ".12e")


def _open_w(path):
    return open(path, "w", encoding="utf-8", newline="\n")


def write_residual_csv(path, report: ResidualReport) -> int:
    """One row per sampled node: ``s,t,residual``.  Returns the row count."""
    with _open_w(path) as fh:
        fh.write("s,t,residual\n")
        for s, t, r in report.samples:
            fh.write(f"{fmt(s)},{fmt(t)},{fmt(r)}\n")
    return len(report.samples)


def write_residual_summary(path, report: ResidualReport) -> None:
    """Key=value summary of a residual sweep; the last line is always
    ``MAX_ABS=<value>`` so shell pipelines can grab it."""
    with _open_w(path) as fh:
        fh.write(f"family={report.family}\n")
        fh.write(f"mode={report.mode.value}\n")
        fh.write(f"grid={report.ns}x{report.nt}\n")
        fh.write(f"margin={fmt(report.margin)}\n")
        fh.write(f"nodes={len(report.samples)}\n")
        fh.write(f"failures={len(report.failures)}\n")
        fh.write(f"mean_abs={fmt(report.mean_abs)}\n")
        fh.write(f"MAX_ABS={fmt(report.max_abs)}\n")


def write_profile_csv(path, sol: "ProfileSolution") -> int:
    """One row per integration node: ``t,g,gp,first_integral_defect``.
    The defect column is the normalized conservation monitor (zeros for the
    family without a conserved quantity).  Returns the row count."""
    with _open_w(path) as fh:
        fh.write("t,g,gp,first_integral_defect\n")
        for t, g, gp, dd in zip(sol.t, sol.g, sol.gp, sol.node_defect):
            fh.write(f"{fmt(t)},{fmt(g)},{fmt(gp)},{fmt(dd)}\n")
    return len(sol.t)


def write_profile_events(path, sol: "ProfileSolution") -> None:
    """Key=value sidecar with the blow-up abscissae and truncation flag."""

    def opt(v) -> str:
        return "none" if v is None else fmt(v)

    ev = sol.events
    with _open_w(path) as fh:
        fh.write(f"family={sol.family}\n")
        fh.write(f"left_blowup_t={opt(ev.left_blowup_t)}\n")
        fh.write(f"right_blowup_t={opt(ev.right_blowup_t)}\n")
        fh.write(f"truncated={'true' if ev.truncated else 'false'}\n")
        fh.write(f"nodes={len(sol.t)}\n")
        fh.write(f"conserved_max_defect={fmt(sol.conserved_max_defect)}\n")


def write_obj_mesh(path, fam: "SurfaceFamily", grid: "GridSpec") -> tuple:
    """Triangulated grid mesh in Wavefront OBJ.

    Vertices are row-major over (s, t) — the node (i, j) is OBJ index
    ``i*nt + j + 1`` — and each grid cell is split into the two triangles
    ``(i,j) (i+1,j) (i+1,j+1)`` and ``(i,j) (i+1,j+1) (i,j+1)``.
    Returns (vertex_count, face_count).
    """
    from .surface_factory import grid_axes

    s_axis, t_axis = grid_axes(fam, grid)
    ns, nt = len(s_axis), len(t_axis)

    def idx(i: int, j: int) -> int:
        return i * nt + j + 1

    with _open_w(path) as fh:
        for s in s_axis:
            for t in t_axis:
                x, y, z = fam.position(float(s), float(t))
                fh.write(f"v {fmt(x)} {fmt(y)} {fmt(z)}\n")
        n_faces = 0
        for i in range(ns - 1):
            for j in range(nt - 1):
                fh.write(f"f {idx(i, j)} {idx(i + 1, j)} {idx(i + 1, j + 1)}\n")
                fh.write(f"f {idx(i, j)} {idx(i + 1, j + 1)} {idx(i, j + 1)}\n")
                n_faces += 2
    return ns * nt, n_faces
