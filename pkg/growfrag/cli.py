#!/usr/bin/env python3
"""
growfrag command line

Subcommands:
- profile: CSV of the regular density at one time, atom in the header
- moments: CSV of moments and scaled moments on a (t, r) grid
- blowup: CSV of scaled moments approaching their blow-up limits
- phi: roots of Phi and the global-existence condition
- verify-closedform / verify-mellin / verify-pde / verify-weak / verify-blowup:
  run a verification suite; exit 2 with ``FAIL <check> <value> <tol>`` lines
  on any tolerance breach

Exit codes: 0 success, 1 invalid input, 2 failed check, 64 usage error.
"""

import argparse
import logging
import sys
from typing import Callable, Dict, List, Optional

import pandas as pd
from rich.console import Console
from rich.table import Table

from . import closedform
from .config import RunConfig, load_config
from .errors import ConfigError, GrowFragError, UsageError
from .model import existence_condition, kernel_second_moment
from .suites import (
    run_blowup_checks,
    run_closedform_checks,
    run_mellin_checks,
    run_pde_checks,
    run_weak_checks,
)
from .suites.blowup import blowup_times, moment_table
from .suites.checks import failures

console = Console()
error_console = Console(stderr=True)

logger = logging.getLogger('growfrag.cli')

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_CHECK_FAILED = 2
EXIT_USAGE = 64

FLOAT_FORMAT = "%.17g"


def configure_logging(log_level=logging.WARNING):
    """Route growfrag loggers to stderr at the given level."""
    logging.basicConfig(
        level=log_level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    )
    logging.getLogger("growfrag").setLevel(log_level)


class GrowFragArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting."""

    def error(self, message):
        raise UsageError(message)


def _float_list(text: str) -> List[float]:
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _common_options() -> argparse.ArgumentParser:
    common = GrowFragArgumentParser(add_help=False)
    common.add_argument('--config', help='Run configuration file (default: $GROWFRAG_CONFIG)')
    common.add_argument('--gamma', type=float, help='Growth exponent')
    common.add_argument('--theta', type=float, help='Kernel height')
    common.add_argument('--t', type=_float_list, help='Absolute time(s), comma separated')
    common.add_argument('--t-frac', '--t-list', dest='t_frac', type=_float_list,
                        help='Time(s) as fractions of the blow-up time 1/gamma')
    common.add_argument('--r', type=_float_list, help='Moment order(s), comma separated')
    common.add_argument('--x-min', type=float, help='Lower grid edge')
    common.add_argument('--x-max', type=float, help='Upper grid edge')
    common.add_argument('--cells', type=int, help='Number of grid cells')
    common.add_argument('--spacing', choices=['log-uniform', 'uniform'], help='Grid spacing')
    common.add_argument('--s0', type=float, help='Inversion contour abscissa')
    common.add_argument('--height', type=float, help='Inversion contour half height')
    common.add_argument('--nodes', type=int, help='Inversion contour nodes')
    common.add_argument('--jobs', type=int, help='Worker threads for independent cases')
    common.add_argument('-o', '--output', dest='output_path', help='Output CSV path (default: stdout)')
    common.add_argument('-v', '--verbose', action='count', default=0, help='-v for INFO, -vv for DEBUG')
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = GrowFragArgumentParser(
        prog='growfrag',
        description='Explicit solution of a growth-fragmentation equation and its numerical verification',
    )
    common = _common_options()
    subparsers = parser.add_subparsers(dest='command', required=True)
    for name, help_text in COMMAND_HELP.items():
        subparsers.add_parser(name, parents=[common], help=help_text)
    return parser


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    config = load_config(args.config)
    overrides = {
        key: getattr(args, key)
        for key in ('gamma', 'theta', 'x_min', 'x_max', 'cells', 'spacing',
                    's0', 'height', 'nodes', 'jobs', 'output_path')
    }
    for key in ('t', 't_frac', 'r'):
        value = getattr(args, key)
        overrides[key] = tuple(value) if value is not None else None
    if args.t is not None and args.t_frac is None:
        overrides['t_frac'] = ()
    if args.t_frac is not None and args.t is None:
        overrides['t'] = ()
    return config.with_overrides(**overrides).validate()


def _write_csv(frame: pd.DataFrame, path: Optional[str], header: Optional[str] = None) -> None:
    if path is None:
        if header:
            sys.stdout.write(header + "\n")
        frame.to_csv(sys.stdout, index=False, float_format=FLOAT_FORMAT)
        return
    with open(path, 'w', newline='') as f:
        if header:
            f.write(header + "\n")
        frame.to_csv(f, index=False, float_format=FLOAT_FORMAT)
    logger.info(f"Wrote {len(frame)} rows to {path}")


def _fmt(value: float) -> str:
    return FLOAT_FORMAT % value


def cmd_profile(config: RunConfig) -> int:
    times = config.times()
    if len(times) != 1:
        raise ConfigError(f"profile needs exactly one time, got {len(times)}")
    params = config.params()
    t = times[0]
    snap = closedform.snapshot(params, t, config.grid())
    header = (
        f"# gamma={_fmt(params.gamma)} theta={_fmt(params.theta)} t={_fmt(t)} "
        f"atom_location={_fmt(snap.atom.location)} atom_mass={_fmt(snap.atom.mass)}"
    )
    frame = pd.DataFrame({"x": snap.regular.grid.centers, "u_regular": snap.regular.values})
    _write_csv(frame, config.output_path, header)
    return EXIT_OK


def cmd_moments(config: RunConfig) -> int:
    times = config.times()
    if not times:
        raise ConfigError("moments needs at least one time (--t or --t-frac)")
    frame = moment_table(config.params(), times, config.r, jobs=config.jobs)
    _write_csv(frame, config.output_path)
    return EXIT_OK


def cmd_blowup(config: RunConfig) -> int:
    params = config.params()
    times = config.times() or blowup_times(params)
    frame = moment_table(params, times, config.r, jobs=config.jobs)
    frame = frame.rename(columns={"limit_constant": "blowup_constant"})
    _write_csv(frame[["t", "r", "scaled_moment", "blowup_constant", "rel_err"]], config.output_path)
    return EXIT_OK


def cmd_phi(config: RunConfig) -> int:
    params = config.params()
    report = existence_condition(params)
    console.print(f"theta = {params.theta:g}")
    console.print(f"roots: sigma1 = {params.sigma1:.10g}, sigma2 = {params.sigma2:.10g}")
    console.print(f"inf Phi = {report.infimum:.7f} at s = {report.minimizer:.7f}")
    verdict = "satisfied" if report.satisfied else "not satisfied"
    console.print(f"existence condition inf Phi < 0: {verdict}")
    console.print(f"kernel second moment = {kernel_second_moment(params):.10g} (normalisation target 1)")
    return EXIT_OK


def _run_suite(suite: Callable[[RunConfig], list], config: RunConfig) -> int:
    results = suite(config)
    table = Table(title=suite.__name__)
    table.add_column("check")
    table.add_column("value", justify="right")
    table.add_column("tolerance", justify="right")
    table.add_column("status")
    for result in results:
        status = "[green]ok[/green]" if result.passed else "[bold red]FAIL[/bold red]"
        table.add_row(result.name, f"{result.value:.3e}", f"{result.tolerance:.1e}", status)
    console.print(table)

    if config.output_path:
        frame = pd.DataFrame(
            [(r.name, r.value, r.tolerance, r.passed, r.detail) for r in results],
            columns=["check", "value", "tolerance", "passed", "detail"],
        )
        _write_csv(frame, config.output_path)

    failed = failures(results)
    for result in failed:
        print(result.fail_line())
    return EXIT_CHECK_FAILED if failed else EXIT_OK


COMMAND_HELP = {
    'profile': 'Write the regular density at one time',
    'moments': 'Write moments and scaled moments on a (t, r) grid',
    'blowup': 'Write scaled moments approaching blow-up',
    'phi': 'Report the roots of Phi and the existence condition',
    'verify-closedform': 'Check the explicit solution and its Mellin transform',
    'verify-mellin': 'Check the Mellin functional equation and transforms',
    'verify-pde': 'Check the finite-volume solver against the explicit solution',
    'verify-weak': 'Check the weak formulation with bump test functions',
    'verify-blowup': 'Check moment blow-up rates',
}

COMMANDS: Dict[str, Callable[[RunConfig], int]] = {
    'profile': cmd_profile,
    'moments': cmd_moments,
    'blowup': cmd_blowup,
    'phi': cmd_phi,
    'verify-closedform': lambda config: _run_suite(run_closedform_checks, config),
    'verify-mellin': lambda config: _run_suite(run_mellin_checks, config),
    'verify-pde': lambda config: _run_suite(run_pde_checks, config),
    'verify-weak': lambda config: _run_suite(run_weak_checks, config),
    'verify-blowup': lambda config: _run_suite(run_blowup_checks, config),
}


def run(argv: Optional[List[str]] = None) -> int:
    """
    Parse ``argv`` and run one subcommand.

    Returns:
        Exit code: 0 success, 1 invalid input, 2 failed check, 64 usage error
    """
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        error_console.print(f"[bold red]Usage error:[/bold red] {e}")
        return EXIT_USAGE

    levels = {0: logging.WARNING, 1: logging.INFO}
    configure_logging(levels.get(args.verbose, logging.DEBUG))

    try:
        config = _resolve_config(args)
        return COMMANDS[args.command](config)
    except (GrowFragError, ValueError) as e:
        logger.error(f"{args.command} failed: {e}")
        error_console.print(f"[bold red]Error:[/bold red] {e}")
        return EXIT_INVALID


def main():
    """Console-script entry point."""
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
