"""Batch command-line interface.

Verbs:
    run            integrate a registered problem and write dumps
    converge       refinement study on a problem with an exact solution
    list-problems  show the registry
    inspect-dump   print a dump header and per-variable ranges

Exit codes: 0 success, 2 configuration error, 3 run aborted (non-finite
or inadmissible state).  The default output directory may be set with the CURVMHD_OUT
environment variable.
"""

from __future__ import annotations

import argparse
import logging
import sys

from . import dumpio
from .harness import OUT_DIR_ENV, RunConfig, convergence, \
    format_convergence, run
from .problems import register_problems

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NAN = 3


def _split_problem(text):
    """'name' or 'name/variant' -> (name, variant or None)."""
    if "/" in text:
        name, variant = text.split("/", 1)
        return name, variant
    return text, None


def _add_run_flags(p):
    p.add_argument("--problem", required=True,
                   help="registered problem, optionally 'name/variant'")
    p.add_argument("--nx", type=int, default=None)
    p.add_argument("--ny", type=int, default=None)
    p.add_argument("--flux", default=None,
                   choices=["lf", "llf", "hll", "hllc", "hlld"])
    p.add_argument("--cfl", type=float, default=None)
    p.add_argument("--tfinal", type=float, default=None)
    p.add_argument("--no-ct", action="store_true",
                   help="disable constrained transport")
    p.add_argument("--no-pp", action="store_true",
                   help="disable the positivity-preserving limiter")
    p.add_argument("--no-sigma", action="store_true",
                   help="disable limiting of the high-order corrections")
    p.add_argument("--metric", default="discrete",
                   choices=["analytic", "discrete"])
    p.add_argument("--out", default=None,
                   help=f"output directory (default ${OUT_DIR_ENV})")
    p.add_argument("--dump-every", type=int, default=0, metavar="N",
                   help="dump every N steps (0: final state only)")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for randomized grids")


def _config_from_args(args, name, variant):
    return RunConfig(
        problem=name, variant=variant, nx=args.nx, ny=args.ny,
        solver=args.flux, cfl=args.cfl, t_final=args.tfinal,
        ct_on=False if args.no_ct else None,
        pp_on=False if args.no_pp else None,
        sigma_on=not args.no_sigma,
        metric=args.metric, out_dir=args.out,
        dump_every=args.dump_every, seed=args.seed)


def _cmd_run(args):
    name, variant = _split_problem(args.problem)
    res = run(_config_from_args(args, name, variant))
    s = res.summary
    print(f"{name}/{res.setup.variant}: {s['status']} t={s['t']:.6g} "
          f"steps={s['steps']} mass_drift={s['mass_drift']:.3e} "
          f"min_rho={s['min_rho']:.3e} min_p={s['min_p']:.3e} "
          f"wall={s['wall_seconds']:.1f}s")
    for path in res.dumps:
        print(f"  wrote {path}")
    return EXIT_OK if s["status"] == "ok" else EXIT_NAN


def _cmd_converge(args):
    name, variant = _split_problem(args.problem)
    rows = convergence(name, args.sizes, solver=args.flux, variant=variant,
                       metric=args.metric, sigma_on=not args.no_sigma,
                       out_dir=args.out)
    print(format_convergence(rows))
    return EXIT_OK


def _cmd_list(_args):
    for d in register_problems().values():
        variants = ", ".join(d.variants)
        print(f"{d.name:12s} [{variants}]  {d.summary}")
    return EXIT_OK


def _cmd_inspect(args):
    for path in args.paths:
        print(dumpio.inspect_dump(path))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="curvmhd", description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="integrate a problem")
    _add_run_flags(p)
    p.set_defaults(fn=_cmd_run)

    p = sub.add_parser("converge", help="refinement study")
    _add_run_flags(p)
    p.add_argument("--sizes", type=int, nargs="+", default=[32, 64, 128])
    p.set_defaults(fn=_cmd_converge)

    p = sub.add_parser("list-problems", help="show the registry")
    p.set_defaults(fn=_cmd_list)

    p = sub.add_parser("inspect-dump", help="describe dump files")
    p.add_argument("paths", nargs="+")
    p.set_defaults(fn=_cmd_inspect)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.fn(args)
    except (KeyError, ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
