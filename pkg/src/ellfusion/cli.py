"""Command line entry point: ``verify``, ``eval theta`` and ``print``."""

import argparse
import os
import sys

import numpy as np

from . import fusion, verify
from .elliptic import DEFAULT_CUTOFF, EllipticContext, theta
from .errors import EllFusionError
from .vertex import baxter_r

# config-file key -> (SuiteConfig field, converter)
_KEYS = {
    "r": ("r", float),
    "tau-im": ("tau_im", float),
    "tau_im": ("tau_im", float),
    "cutoff": ("cutoff", int),
    "points": ("points", int),
    "seed": ("seed", int),
    "tol": ("tol", float),
    "json": ("json_path", str),
    "stable": ("stable", lambda s: s.strip().lower() in ("1", "true", "yes", "on")),
    "suite": ("suites", str),
}


class UsageError(Exception):
    pass


def read_config(path):
    """Parse ``key = value`` lines; ``#`` starts a comment.  Repeated suite keys accumulate."""
    values = {}
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    for n, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or key not in _KEYS:
            raise UsageError(f"{path}:{n}: expected 'key = value' with a known key, got {raw.strip()!r}")
        name, conv = _KEYS[key]
        try:
            converted = conv(value)
        except ValueError:
            raise UsageError(f"{path}:{n}: bad value {value!r} for {key}") from None
        if name == "suites":
            values.setdefault("suites", []).extend(s.strip() for s in value.split(",") if s.strip())
        else:
            values[name] = converted
    return values


def parse_complex(text):
    """'RE' or 'RE,IM'."""
    parts = text.split(",")
    if len(parts) > 2:
        raise argparse.ArgumentTypeError(f"expected RE or RE,IM, got {text!r}")
    try:
        nums = [float(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected RE or RE,IM, got {text!r}") from None
    return complex(nums[0], nums[1] if len(nums) == 2 else 0.0)


def _add_context_flags(p, with_tau=True):
    p.add_argument("--r", type=float, help="modulus parameter r (default 6)")
    if with_tau:
        p.add_argument("--tau-im", type=float, help="tau = i * TAU_IM (default 1.2)")
    p.add_argument("--cutoff", type=int, help=f"product truncation (default {DEFAULT_CUTOFF})")


def build_parser():
    parser = argparse.ArgumentParser(prog="ellfusion", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run identity suites at sampled points")
    v.add_argument("--suite", action="append", metavar="NAME",
                   help=f"suite to run (repeatable); one of: {', '.join(verify.SUITES)}")
    _add_context_flags(v)
    v.add_argument("--points", type=int, help="sampled points per identity (default 25)")
    v.add_argument("--seed", type=int, help="sampling seed (default 42; VERIFY_SEED overrides)")
    v.add_argument("--tol", type=float, help="base threshold (default 1e-9)")
    v.add_argument("--json", metavar="PATH", help="also write a json report ('-' for stdout)")
    v.add_argument("--stable", action="store_true", help="omit timings from the json report")
    v.add_argument("--config", metavar="PATH", help="key = value file mirroring the flags")
    v.add_argument("--list", action="store_true", help="list identities and exit")

    e = sub.add_parser("eval", help="evaluate a special function")
    e_sub = e.add_subparsers(dest="function", required=True)
    t = e_sub.add_parser("theta", help="theta_k(u | i TAU_IM)")
    t.add_argument("--k", type=int, required=True, choices=(0, 1, 2, 3))
    t.add_argument("--u", type=parse_complex, required=True, metavar="RE[,IM]")
    t.add_argument("--tau-im", type=float, required=True)
    t.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF)

    pr = sub.add_parser("print", help="print an R-matrix")
    pr.add_argument("which", choices=("rmatrix", "rmatrix22", "fateev"))
    pr.add_argument("--u", type=parse_complex, required=True, metavar="RE[,IM]")
    _add_context_flags(pr)
    return parser


def _suite_config(args):
    values = read_config(args.config) if args.config else {}
    for flag, name in (("r", "r"), ("tau_im", "tau_im"), ("cutoff", "cutoff"), ("points", "points"),
                       ("seed", "seed"), ("tol", "tol"), ("json", "json_path")):
        given = getattr(args, flag)
        if given is not None:
            values[name] = given
    if args.suite:
        values["suites"] = list(args.suite)
    if args.stable:
        values["stable"] = True
    env_seed = os.environ.get("VERIFY_SEED")
    if env_seed:
        try:
            values["seed"] = int(env_seed)
        except ValueError:
            raise UsageError(f"VERIFY_SEED must be an integer, got {env_seed!r}") from None
    values["suites"] = tuple(values.get("suites", ()))
    try:
        return verify.SuiteConfig(**values)
    except EllFusionError as exc:
        raise UsageError(str(exc)) from None


def _fmt(z):
    z = complex(z)
    return f"{z.real:.12g}{z.imag:+.12g}j"


def _print_matrix(m):
    for row in np.asarray(m):
        print("  ".join(_fmt(z) for z in row))


def _context(args):
    kw = {}
    if args.r is not None:
        kw["r"] = args.r
    if args.tau_im is not None:
        kw["tau"] = 1j * args.tau_im
    if args.cutoff is not None:
        kw["cutoff"] = args.cutoff
    return EllipticContext(**kw)


def cmd_verify(args):
    if args.list:
        for ident in verify.CATALOGUE:
            print(f"{ident.suite:13s} {ident.name:36s} {ident.doc}")
        return 0
    config = _suite_config(args)
    reports = verify.run_suite(config)
    verify.emit_report(reports, "text")
    if verify.exclusion_fraction(reports) > verify.EXCLUSION_WARNING:
        print("warning: more than 10% of sampled points were excluded", file=sys.stderr)
    if config.json_path:
        try:
            verify.emit_report(reports, "json", config.json_path, config.stable)
        except OSError as exc:
            print(f"error: cannot write {config.json_path}: {exc}", file=sys.stderr)
            return 2
    return verify.exit_code(reports)


def cmd_eval(args):
    print(_fmt(theta(args.k, args.u, 1j * args.tau_im, args.cutoff)))
    return 0


def cmd_print(args):
    ctx = _context(args)
    if args.which == "rmatrix":
        _print_matrix(baxter_r(args.u, ctx))
    elif args.which == "rmatrix22":
        _print_matrix(fusion.fuse22(args.u, ctx))
    else:
        _print_matrix(fusion.fateev_r(args.u, ctx))
    return 0


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"verify": cmd_verify, "eval": cmd_eval, "print": cmd_print}
    try:
        return handlers[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except EllFusionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
