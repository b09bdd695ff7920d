"""Command line interface.

Exit codes: 0 success, 1 geometrically invalid configuration, 2 usage or
parse error, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from contextlib import contextmanager

import numpy as np

from .configfile import ConfigParseError, dump_config, load_config
from .errors import ConfigurationError, DomainError, ResourceError, StructuralError
from .markov import CONVENTIONS
from .schottky import FAMILIES, family
from .spectral import dimension
from .wordtree import DEFAULT_NODE_CAP, build_level

log = logging.getLogger("cyganhdim")

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3
SWEEP_HEADER = ("theta", "alpha", "residual", "matrix_dim", "converged")
LIMIT_SET_HEADER = ("word", "zeta_re", "zeta_im", "v")


class UsageError(Exception):
    pass


def fmt(x: float) -> str:
    return format(float(x), ".12g")


def _round12(x: float) -> float:
    return float(fmt(x))


def _positive_int(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {n}")
    return n


def _positive_float(text):
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}") from None
    if not (x > 0 and math.isfinite(x)):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return x


@contextmanager
def _output(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _csv_writer(fh):
    return csv.writer(fh, lineterminator="\n")


# -- commands ------------------------------------------------------------------


def cmd_check(args) -> int:
    cfg = load_config(args.config)
    rep = cfg.validity
    out = sys.stdout
    for p in rep.pairs:
        out.write(
            f"pair {p.i}-{p.j}: distance={fmt(p.distance)} radius_sum={fmt(p.radius_sum)} margin={fmt(p.margin)}\n"
        )
    out.write(f"min_margin={fmt(rep.min_margin)}\n")
    out.write("valid\n" if rep.valid else "invalid\n")
    return EXIT_OK if rep.valid else EXIT_INVALID


def dim_report(cfg, depth, tol, convention, cap=DEFAULT_NODE_CAP) -> dict:
    s = dimension(cfg, depth, tol, convention, cap=cap)
    return {
        "alpha": _round12(s.alpha),
        "depth": depth,
        "convention": convention,
        "matrix_dim": s.matrix_dim,
        "iterations": s.iterations,
        "rho_residual": _round12(s.residual),
        "converged": s.converged,
    }


def render_dim(report: dict, as_json: bool) -> str:
    if as_json:
        return json.dumps(report, indent=2) + "\n"
    lines = []
    for k, v in report.items():
        if isinstance(v, bool):
            v = "true" if v else "false"
        elif isinstance(v, float):
            v = fmt(v)
        lines.append(f"{k}={v}")
    return "\n".join(lines) + "\n"


def cmd_dim(args) -> int:
    cfg = load_config(args.config)
    if not cfg.valid:
        raise ConfigurationError(
            f"configuration fails the separation test (minimal margin {fmt(cfg.validity.min_margin)})"
        )
    report = dim_report(cfg, args.depth, args.tol, args.convention, args.max_nodes)
    with _output(args.out) as fh:
        fh.write(render_dim(report, args.json))
    return EXIT_OK


def sweep_rows(name, theta_min, theta_max, steps, depth, tol=1e-8, convention="det", cap=DEFAULT_NODE_CAP):
    """Rows of a parameter sweep over a built-in family, in ascending theta."""
    lo, hi = FAMILIES[name]
    if not (lo < theta_min < theta_max < hi):
        raise UsageError(
            f"theta range [{theta_min}, {theta_max}] must be increasing and inside the open interval "
            f"({fmt(lo)}, {fmt(hi)}) of the {name} family"
        )
    if steps < 2:
        raise UsageError("steps must be at least 2")
    rows = []
    for theta in np.linspace(theta_min, theta_max, steps):
        cfg = family(name, float(theta))
        if not cfg.valid:
            log.warning("theta=%s fails the conservative separation test; using the family range", fmt(theta))
        s = dimension(cfg, depth, tol, convention, cap=cap, check_valid=False)
        rows.append((float(theta), s.alpha, s.residual, s.matrix_dim, s.converged))
    return rows


def render_sweep(rows) -> str:
    buf = io.StringIO()
    w = _csv_writer(buf)
    w.writerow(SWEEP_HEADER)
    for theta, alpha, res, dim, conv in rows:
        w.writerow((fmt(theta), fmt(alpha), fmt(res), dim, "true" if conv else "false"))
    return buf.getvalue()


def cmd_sweep(args) -> int:
    rows = sweep_rows(
        args.family, args.theta_min, args.theta_max, args.steps, args.depth, args.tol, args.convention, args.max_nodes
    )
    with _output(args.out) as fh:
        fh.write(render_sweep(rows))
    return EXIT_OK


def render_limit_set(cfg, depth, cap=DEFAULT_NODE_CAP) -> str:
    level = build_level(cfg, depth, cap=cap)
    buf = io.StringIO()
    w = _csv_writer(buf)
    w.writerow(LIMIT_SET_HEADER)
    for word, z, v in zip(level.words.tolist(), level.zeta.tolist(), level.v.tolist()):
        w.writerow(("-".join(map(str, word)), fmt(z.real), fmt(z.imag), fmt(v)))
    return buf.getvalue()


def cmd_limit_set(args) -> int:
    cfg = load_config(args.config)
    text = render_limit_set(cfg, args.depth, args.max_nodes)
    with _output(args.out) as fh:
        fh.write(text)
    return EXIT_OK


def cmd_family(args) -> int:
    try:
        cfg = family(args.family, args.theta)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    text = dump_config(cfg)
    with _output(args.out) as fh:
        fh.write(text)
    return EXIT_OK


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="cyganhdim",
        description="Hausdorff dimension of limit sets of complex Schottky groups.",
    )
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, with_config=True):
        if with_config:
            sp.add_argument("config", help="configuration JSON file")
        sp.add_argument("--max-nodes", type=_positive_int, default=DEFAULT_NODE_CAP, help="word tree size cap")

    def solver(sp):
        sp.add_argument("--depth", type=_positive_int, default=4, help="refinement depth (default 4)")
        sp.add_argument("--tol", type=_positive_float, default=1e-8, help="tolerance on |rho - 1| (default 1e-8)")
        sp.add_argument("--convention", choices=CONVENTIONS, default="det", help="matrix entry convention")

    sp = sub.add_parser("check", help="check the separation of the isometric balls")
    sp.add_argument("config", help="configuration JSON file")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("dim", help="compute the dimension estimate")
    common(sp)
    solver(sp)
    sp.add_argument("--json", action="store_true", help="emit JSON")
    sp.add_argument("--out", help="output file (default stdout)")
    sp.set_defaults(func=cmd_dim)

    sp = sub.add_parser("sweep", help="sweep a built-in family over theta, write CSV")
    common(sp, with_config=False)
    sp.add_argument("--family", choices=sorted(FAMILIES), required=True)
    sp.add_argument("--theta-min", type=float, required=True)
    sp.add_argument("--theta-max", type=float, required=True)
    sp.add_argument("--steps", type=int, default=50)
    solver(sp)
    sp.add_argument("--out", help="output CSV (default stdout)")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("limit-set", help="export depth-k tagpoints as CSV")
    common(sp)
    sp.add_argument("--depth", type=_positive_int, default=4)
    sp.add_argument("--out", help="output CSV (default stdout)")
    sp.set_defaults(func=cmd_limit_set)

    sp = sub.add_parser("family", help="write a built-in family member as a configuration file")
    sp.add_argument("family", choices=sorted(FAMILIES))
    sp.add_argument("--theta", type=float, required=True)
    sp.add_argument("--out", help="output file (default stdout)")
    sp.set_defaults(func=cmd_family)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, ConfigParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ConfigurationError, StructuralError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
