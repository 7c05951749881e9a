"""Implementations of the CLI subcommands.

Each ``cmd_*`` takes the parsed argument namespace and returns the process
exit status: 0 success, 1 verification failure (verify only); parameter and
I/O errors are raised as exceptions and mapped to 2 and 3 by the entry
point.
"""
from __future__ import annotations

from typing import Optional, Tuple

from .errors import ParameterError
from .export import (
    fmt,
    write_obj_mesh,
    write_profile_csv,
    write_profile_events,
    write_residual_csv,
    write_residual_summary,
)
from .profile_odes import (
    EPS_G_DEFAULT,
    M_STOP_DEFAULT,
    ConformalProfileParams,
    GrimReaperParams,
    MinimalProfileParams,
    integrate_conformal_profile,
    integrate_grim_reaper,
    integrate_minimal_profile,
)
from .soliton_residuals import SolitonMode, residual_report
from .surface_factory import (
    GridSpec,
    make_conformal_cylinder,
    make_grim_reaper,
    make_horosphere,
    make_minimal_cylinder,
    make_vertical_plane,
)

FAMILIES = (
    "horosphere",
    "vertical-plane",
    "minimal-cylinder",
    "grim-reaper",
    "conformal-cylinder",
)
ODES = ("minimal", "grim-reaper", "conformal")


def canonical(name: str) -> str:
    return name.strip().lower().replace("_", "-")


def parse_grid(txt: str) -> Tuple[int, int]:
    """``'NSxNT'`` → (ns, nt)."""
    parts = txt.lower().split("x")
    try:
        ns, nt = (int(p) for p in parts)
    except (TypeError, ValueError):
        raise ParameterError(f"grid must look like 51x51, got {txt!r}") from None
    return ns, nt


def parse_pair(txt: str, flag: str) -> Tuple[float, float]:
    """``'LO:HI'`` → (lo, hi)."""
    parts = txt.split(":")
    if len(parts) != 2:
        raise ParameterError(f"{flag} must look like LO:HI, got {txt!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError:
        raise ParameterError(f"{flag} must be numeric LO:HI, got {txt!r}") from None
    return lo, hi


def _val(v, default):
    return default if v is None else v


def _ranges(args) -> Tuple[Optional[Tuple[float, float]], Optional[Tuple[float, float]]]:
    s_range = parse_pair(args.s_range, "--s-range") if args.s_range else None
    t_range = parse_pair(args.t_range, "--t-range") if args.t_range else None
    return s_range, t_range


def build_family(args):
    name = canonical(args.family)
    s_range, t_range = _ranges(args)
    if name == "horosphere":
        return make_horosphere(
            _val(args.a, 1.0),
            s_range or (-2.0, 2.0),
            t_range or (-2.0, 2.0),
        )
    if name == "vertical-plane":
        return make_vertical_plane(
            _val(args.c, 1.0),
            _val(args.d, 0.0),
            _val(args.b, 0.0),
            s_range or (-2.0, 2.0),
            t_range or (0.5, 4.5),
        )
    if t_range is not None:
        raise ParameterError(
            f"--t-range does not apply to {name!r}: its t extent comes from the profile"
        )
    if getattr(args, "k", None) is not None:
        raise ParameterError(
            "--k applies to the bare profile command; for assembled surfaces it is "
            "derived from the drift slope --b"
        )
    if name == "minimal-cylinder":
        return make_minimal_cylinder(
            _val(args.c, 0.0),
            _val(args.y0, 1.0),
            _val(args.d, 0.0),
            s_range or (-2.0, 2.0),
        )
    if name == "grim-reaper":
        span = parse_pair(args.span, "--span") if args.span else (-5.0, 5.0)
        return make_grim_reaper(
            _val(args.lam, 0.5),
            _val(args.b, 0.0),
            _val(args.a, 0.0),
            span,
            s_range or (-2.0, 2.0),
        )
    if name == "conformal-cylinder":
        return make_conformal_cylinder(
            _val(args.a, 0.0),
            _val(args.y0, 1.0),
            s_range or (-2.0, 2.0),
        )
    raise ParameterError(f"unknown family {args.family!r}; choose from {', '.join(FAMILIES)}")


def build_grid(args) -> GridSpec:
    ns, nt = parse_grid(_val(args.grid, "51x51"))
    return GridSpec(ns, nt, margin=_val(args.margin, 1e-3))


def cmd_residual(args) -> int:
    fam = build_family(args)
    try:
        mode = SolitonMode(canonical(args.mode))
    except ValueError:
        raise ParameterError(
            f"unknown mode {args.mode!r}; choose minimal, translator, or conformal"
        ) from None
    rep = residual_report(fam, mode, build_grid(args))
    out = _val(args.out, f"residual_{fam.name}_{mode.value}")
    n = write_residual_csv(out + ".csv", rep)
    write_residual_summary(out + ".summary.txt", rep)
    print(f"wrote {out}.csv ({n} rows)")
    print(f"wrote {out}.summary.txt")
    print(f"MAX_ABS={fmt(rep.max_abs)}")
    return 0


def _integrate_ode(args):
    ode = canonical(args.ode)
    eps_g = _val(args.eps_g, EPS_G_DEFAULT)
    m_stop = _val(args.m_stop, M_STOP_DEFAULT)
    if ode == "minimal":
        p = MinimalProfileParams(
            c=_val(args.c, 0.0), y0=_val(args.y0, 1.0), d=_val(args.d, 0.0)
        )
        return ode, integrate_minimal_profile(p, eps_g=eps_g, m_stop=m_stop)
    if ode == "grim-reaper":
        p = GrimReaperParams(lam=_val(args.lam, 0.5), k=_val(args.k, 1.0))
        span = parse_pair(args.span, "--span") if args.span else (-5.0, 5.0)
        return ode, integrate_grim_reaper(p, span=span, eps_g=eps_g)
    if ode == "conformal":
        p = ConformalProfileParams(a=_val(args.a, 0.0), y0=_val(args.y0, 1.0))
        return ode, integrate_conformal_profile(p, eps_g=eps_g, m_stop=m_stop)
    raise ParameterError(f"unknown ode {args.ode!r}; choose from {', '.join(ODES)}")


def cmd_profile(args) -> int:
    ode, sol = _integrate_ode(args)
    out = _val(args.out, f"profile_{ode.replace('-', '_')}")
    n = write_profile_csv(out + ".csv", sol)
    write_profile_events(out + ".events.txt", sol)
    print(f"wrote {out}.csv ({n} rows)")
    print(f"wrote {out}.events.txt")
    return 0


def cmd_mesh(args) -> int:
    fam = build_family(args)
    out = _val(args.out, f"mesh_{fam.name}")
    nv, nf = write_obj_mesh(out + ".obj", fam, build_grid(args))
    print(f"wrote {out}.obj ({nv} vertices, {nf} triangles)")
    return 0


def cmd_verify(args) -> int:
    from .verify import run_checks

    summary = run_checks(only=args.only)
    print(summary.format_table())
    return 0 if summary.all_passed else 1
