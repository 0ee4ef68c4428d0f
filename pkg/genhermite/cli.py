"""
Command line front end.

    genhermite eval    --n 2 --delta 10 --x 0.5
    genhermite table   --n 3 --delta 0 --delta 100 --xmin -3 --xmax 3 --points 7
    genhermite figure  [--n 3] [--delta D]... [--out figure1.csv] [--plot figure1.png]
    genhermite verify  [--profile default] [--delta D]... [--gamma G]... [--n N]
    genhermite partner [--gamma 2] [--out partner.csv]

Exit codes: 0 success, 1 verification failure, 2 invalid parameters or
profile, 3 I/O failure.
"""

import argparse
import json
import logging
import os
import sys
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from .config import load_profile
from .errors import GenHermiteError, ParameterError
from .export import (
    FIGURE_DELTAS,
    FIGURE_GRID,
    FIGURE_N_MAX,
    FLOAT_FORMAT,
    figure_table,
    partner_table,
    render_figure,
    write_csv,
    write_json,
)
from .factorization import MielnikFactorization, check_delta, check_gamma, normalized_partner_state, partner_potential
from .functions import GenHermiteFunction, gen_hermite
from .grid import Grid
from .logs import setup_logging
from .numerics import discretized_spectrum, discretized_states
from .special_fn import check_index
from .verify import INJECTABLE_BUGS, format_report, run_suite

logger = logging.getLogger(__name__)

COMMANDS = ("eval", "table", "verify", "figure", "partner")
INJECT_ENV = "GENHERMITE_INJECT_BUG"

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INVALID = 2
EXIT_IO = 3

DEFAULT_GAMMA = 2.0
PARTNER_GRID = Grid(-5.0, 5.0, 1001)
TABLE_GRID = Grid(-5.0, 5.0, 11)


@dataclass(frozen=True)
class CliConfig:
    """Validated command line parameters."""

    command: str
    n: Optional[int] = None
    deltas: tuple = ()
    gammas: tuple = ()
    x: Optional[float] = None
    grid: Optional[Grid] = None
    out: Optional[str] = None
    plot: Optional[str] = None
    fmt: str = "csv"
    profile: str = "default"
    profile_file: Optional[str] = None
    verbosity: int = 0

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ParameterError(f"unknown command {self.command!r}")
        if self.n is not None:
            object.__setattr__(self, "n", check_index(self.n))
        object.__setattr__(self, "deltas", tuple(check_delta(d) for d in self.deltas))
        object.__setattr__(self, "gammas", tuple(check_gamma(g) for g in self.gammas))
        if self.command == "eval":
            if self.n is None or self.x is None:
                raise ParameterError("eval needs --n and --x")
            if len(self.deltas) > 1:
                raise ParameterError("eval takes a single --delta")
            if not np.isfinite(self.x):
                raise ParameterError(f"x must be finite, got {self.x}")
        if self.command == "partner" and len(self.gammas) > 1:
            raise ParameterError("partner takes a single --gamma")

    @property
    def delta(self):
        return self.deltas[0] if self.deltas else 0.0

    @property
    def gamma(self):
        return self.gammas[0] if self.gammas else DEFAULT_GAMMA


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=None,
                        help="Hermite index (eval) or highest index (table, figure, verify)")
    common.add_argument("--delta", type=float, action="append", default=None,
                        help="Deformation parameter delta >= 0 (repeatable)")
    common.add_argument("--gamma", type=float, action="append", default=None,
                        help="Mielnik parameter gamma > sqrt(pi)/2 (repeatable for verify)")
    common.add_argument("--xmin", type=float, default=None, help="Grid lower bound")
    common.add_argument("--xmax", type=float, default=None, help="Grid upper bound")
    common.add_argument("--points", type=int, default=None, help="Number of grid points")
    common.add_argument("--out", type=str, default=None, help="Output file")
    common.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv",
                        help="Output format (default: csv)")
    common.add_argument("-v", "--verbose", action="count", default=0,
                        help="Log progress to stderr (-vv for debug)")

    parser = argparse.ArgumentParser(
        prog="genhermite",
        description="Generalized Hermite functions, their factorization and verification suite",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="Print H_n^delta(x)")
    p.add_argument("--x", type=float, required=True, help="Evaluation point")

    sub.add_parser("table", parents=[common], help="Tabulate H_k^delta, k <= n, on a grid")

    p = sub.add_parser("figure", parents=[common], help="Export the generalized Hermite family as CSV")
    p.add_argument("--plot", type=str, default=None, help="Also render a PNG to this path")

    p = sub.add_parser("verify", parents=[common], help="Run the residual suite")
    p.add_argument("--profile", type=str, default="default", help="Tolerance profile name")
    p.add_argument("--profile-file", type=str, default=None, help="YAML file with tolerance profiles")

    p = sub.add_parser("partner", parents=[common], help="Mielnik partner potential and its spectrum")
    p.add_argument("--profile", type=str, default="default", help="Profile supplying the box parameters")
    p.add_argument("--profile-file", type=str, default=None, help="YAML file with tolerance profiles")
    return parser


def _grid(args, default):
    if args.xmin is None and args.xmax is None and args.points is None:
        return None
    return Grid(
        default.x_min if args.xmin is None else args.xmin,
        default.x_max if args.xmax is None else args.xmax,
        default.count if args.points is None else args.points,
    )


def config_from_args(args):
    defaults = {"figure": FIGURE_GRID, "partner": PARTNER_GRID, "table": TABLE_GRID}
    return CliConfig(
        command=args.command,
        n=args.n,
        deltas=tuple(args.delta or ()),
        gammas=tuple(args.gamma or ()),
        x=getattr(args, "x", None),
        grid=_grid(args, defaults.get(args.command, Grid())),
        out=args.out,
        plot=getattr(args, "plot", None),
        fmt=args.fmt,
        profile=getattr(args, "profile", "default"),
        profile_file=getattr(args, "profile_file", None),
        verbosity=args.verbose,
    )


# =============================================================================
# Commands
# =============================================================================
def cmd_eval(config):
    g = GenHermiteFunction(config.n, config.delta)
    value = float(gen_hermite(g, config.x))
    if config.fmt == "json":
        print(json.dumps({"n": g.n, "delta": g.delta, "x": config.x, "value": value}))
    else:
        print(f"{value:.15g}")
    return EXIT_OK


def cmd_table(config):
    n_max = 3 if config.n is None else config.n
    frame = figure_table(n_max, config.deltas or (0.0,), config.grid or TABLE_GRID)
    if config.out:
        _write_frame(frame, config)
        print(f"Saved: {config.out}")
    elif config.fmt == "json":
        print(frame.to_json(orient="records", double_precision=15))
    else:
        sys.stdout.write(frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n"))
    return EXIT_OK


def cmd_figure(config):
    n_max = FIGURE_N_MAX if config.n is None else config.n
    frame = figure_table(n_max, config.deltas or FIGURE_DELTAS, config.grid or FIGURE_GRID)
    out = config.out or "figure1.csv"
    _write_frame(frame, config, out)
    print(f"Saved: {out} ({len(frame)} rows)")
    if config.plot:
        render_figure(frame, config.plot)
        print(f"Saved: {config.plot}")
    return EXIT_OK


def _load_profile(config):
    return load_profile(config.profile, config.profile_file)


def _injected_bug():
    inject = os.environ.get(INJECT_ENV) or None
    if inject is not None and inject not in INJECTABLE_BUGS:
        raise ParameterError(f"{INJECT_ENV} must be one of {', '.join(INJECTABLE_BUGS)}, got {inject!r}")
    return inject


def cmd_verify(config):
    profile = _load_profile(config)
    inject = _injected_bug()
    results = run_suite(
        profile,
        deltas=config.deltas or None,
        gammas=config.gammas or None,
        n_max=config.n,
        inject=inject,
    )
    payload = [asdict(r) | {"passed": r.passed} for r in results]
    if config.fmt == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(format_report(results))
    if config.out:
        write_json(payload, config.out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY_FAILED


def cmd_partner(config):
    profile = _load_profile(config)
    f = MielnikFactorization(config.gamma)
    grid = config.grid or PARTNER_GRID
    out = config.out or "partner.csv"
    write_csv(partner_table(f, grid), out)

    box = profile.box
    half_width, count, levels = float(box["half_width"]), int(box["count"]), int(box["levels"])
    spectrum = discretized_spectrum(lambda x: partner_potential(f, x), half_width, count, levels)
    exact = np.arange(levels) + 0.5
    _, x_box, states = discretized_states(lambda x: partner_potential(f, x), half_width, count, 1)
    ground_error = float(np.max(np.abs(states[0] - normalized_partner_state(f, 0, x_box))))

    if config.fmt == "json":
        print(json.dumps({
            "gamma": f.gamma,
            "csv": out,
            "discretized": spectrum.tolist(),
            "exact": exact.tolist(),
            "ground_state_max_error": ground_error,
        }, indent=2))
        return EXIT_OK

    print("=" * 70)
    print(f"PARTNER POTENTIAL  gamma = {f.gamma:g}")
    print("=" * 70)
    print(f"Saved: {out}")
    print(f"Box: [-{half_width:g}, {half_width:g}], {count} interior points")
    print(f"{'level':>5}  {'discretized':>14}  {'exact':>6}  {'difference':>11}")
    for level, (e, ref) in enumerate(zip(spectrum, exact)):
        print(f"{level:>5}  {e:>14.8f}  {ref:>6.1f}  {e - ref:>+11.2e}")
    print(f"Ground state, discrete vs analytic: max |diff| = {ground_error:.2e}")
    return EXIT_OK


def _write_frame(frame, config, out=None):
    out = out or config.out
    if config.fmt == "json":
        frame.to_json(out, orient="records", double_precision=15)
    else:
        write_csv(frame, out)


HANDLERS = {
    "eval": cmd_eval,
    "table": cmd_table,
    "verify": cmd_verify,
    "figure": cmd_figure,
    "partner": cmd_partner,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    setup_logging(args.verbose)
    try:
        config = config_from_args(args)
        return HANDLERS[config.command](config)
    except GenHermiteError as e:
        print(f"genhermite: error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as e:
        print(f"genhermite: I/O error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
