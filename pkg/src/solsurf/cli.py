"""Argument parsing and exit-code mapping for the ``solsurf`` tool.

    solsurf residual --family horosphere --a 1 --mode translator --grid 101x101
    solsurf profile  --ode minimal --c 0 --y0 1
    solsurf mesh     --family grim-reaper --lambda 0.5 --grid 41x41
    solsurf verify   [--only lie]

Exit codes: 0 success, 1 verification failure, 2 usage or parameter error,
3 I/O error.
"""
from __future__ import annotations

import argparse
import sys
from typing import List, Optional, Sequence

from . import commands
from .errors import DomainError, ParameterError, SamplingError

_PAIR_FLAGS = ("--span", "--s-range", "--t-range")


def _merge_pair_flags(argv: Sequence[str]) -> List[str]:
    """Allow ``--span -10:10``: argparse would read the value as an option,
    so glue ``flag value`` pairs into ``flag=value`` when the value leads
    with a minus sign and contains a colon."""
    out: List[str] = []
    i = 0
    while i < len(argv):
        a = argv[i]
        if (
            a in _PAIR_FLAGS
            and i + 1 < len(argv)
            and argv[i + 1].startswith("-")
            and ":" in argv[i + 1]
        ):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
        else:
            out.append(a)
            i += 1
    return out


def _add_family_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", required=True,
                   help="one of: " + ", ".join(commands.FAMILIES))
    p.add_argument("--a", type=float, default=None,
                   help="height (horosphere), drift slope (conformal-cylinder), "
                        "or profile shift (grim-reaper)")
    p.add_argument("--b", type=float, default=None,
                   help="transverse offset (vertical-plane) or drift slope (grim-reaper)")
    p.add_argument("--c", type=float, default=None,
                   help="drift slope (vertical-plane, minimal-cylinder)")
    p.add_argument("--d", type=float, default=None,
                   help="drift intercept (vertical-plane, minimal-cylinder)")
    p.add_argument("--y0", type=float, default=None,
                   help="initial profile height (cylinders)")
    p.add_argument("--lambda", dest="lam", type=float, default=None,
                   help="initial profile slope (grim-reaper)")
    p.add_argument("--k", type=float, default=None,
                   help="only for the bare profile command (grim-reaper)")
    p.add_argument("--span", default=None, help="profile span LO:HI (grim-reaper)")
    p.add_argument("--s-range", dest="s_range", default=None, help="s interval LO:HI")
    p.add_argument("--t-range", dest="t_range", default=None,
                   help="t interval LO:HI (horosphere, vertical-plane)")


def _add_grid_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--grid", default=None, help="sampling grid NSxNT (default 51x51)")
    p.add_argument("--margin", type=float, default=None,
                   help="fraction of the t extent clipped per side on "
                        "blow-up-limited families (default 1e-3)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="solsurf",
        description="Translation surfaces in the upper half-space: soliton "
                    "residuals, profile curves, meshes, and self-verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_res = sub.add_parser("residual", help="sample a soliton residual over a grid")
    _add_family_flags(p_res)
    _add_grid_flags(p_res)
    p_res.add_argument("--mode", required=True,
                       help="minimal, translator, or conformal")
    p_res.add_argument("--out", default=None, help="output prefix (two files)")
    p_res.set_defaults(func=commands.cmd_residual)

    p_pro = sub.add_parser("profile", help="integrate a profile curve to CSV")
    p_pro.add_argument("--ode", required=True,
                       help="one of: " + ", ".join(commands.ODES))
    p_pro.add_argument("--a", type=float, default=None, help="drift slope (conformal)")
    p_pro.add_argument("--c", type=float, default=None, help="drift slope (minimal)")
    p_pro.add_argument("--d", type=float, default=None, help="drift intercept (minimal)")
    p_pro.add_argument("--y0", type=float, default=None, help="initial height")
    p_pro.add_argument("--lambda", dest="lam", type=float, default=None,
                       help="initial slope (grim-reaper)")
    p_pro.add_argument("--k", type=float, default=None,
                       help="drift constant (grim-reaper, default 1)")
    p_pro.add_argument("--span", default=None, help="integration span LO:HI (grim-reaper)")
    p_pro.add_argument("--eps-g", dest="eps_g", type=float, default=None,
                       help="stop once g drops below this (default 1e-6)")
    p_pro.add_argument("--m-stop", dest="m_stop", type=float, default=None,
                       help="stop once |g'| exceeds this (default 1e6)")
    p_pro.add_argument("--out", default=None, help="output prefix (two files)")
    p_pro.set_defaults(func=commands.cmd_profile)

    p_mesh = sub.add_parser("mesh", help="triangulate a family to Wavefront OBJ")
    _add_family_flags(p_mesh)
    _add_grid_flags(p_mesh)
    p_mesh.add_argument("--out", default=None, help="output prefix (.obj)")
    p_mesh.set_defaults(func=commands.cmd_mesh)

    p_ver = sub.add_parser("verify", help="run the acceptance checks")
    p_ver.add_argument("--only", default=None,
                       help="run only checks whose name contains this substring")
    p_ver.set_defaults(func=commands.cmd_verify)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    try:
        args = parser.parse_args(_merge_pair_flags(argv))
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        code = exc.code
        if code is None:
            return 0
        return code if isinstance(code, int) else 2
    try:
        return args.func(args)
    except (ParameterError, DomainError, SamplingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
