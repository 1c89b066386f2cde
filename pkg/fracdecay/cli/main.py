"""
Command-line front door.

    fracdecay run <config>
    fracdecay verify [all|inequalities|dynamics|decay] [--report <json>]
    fracdecay sweep <config> --axis <sigma|q|kernel_family> --values <v1,v2,...> [--jobs N]
    fracdecay fit <csv> --q <q> --window <fraction>

Exit codes: 0 success, 1 verification failure, 2 configuration error,
3 runtime or numerical error.
"""

import argparse
import json
import logging
import os
import sys
from typing import List, Optional

from fracdecay.cli.config import load_config
from fracdecay.cli.experiment import run_experiment
from fracdecay.cli.sweep import SWEEP_AXES, sweep
from fracdecay.cli.verification import SUITES, verify_suite
from fracdecay.decay.fitting import fit_decay, verify_decay
from fracdecay.decay.series import DecaySeries
from fracdecay.exceptions import ConfigurationError, FracDecayError

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_CONFIG_ERROR = 2
EXIT_RUNTIME_ERROR = 3

logger = logging.getLogger('fracdecay.cli')


def configure_logging(log_dir: str, verbose: bool = False) -> None:
    """Log to <log_dir>/fracdecay.log and the console."""
    os.makedirs(log_dir, exist_ok=True)
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format='%(asctime)s %(levelname)s %(name)s %(message)s',
        handlers=[
            logging.FileHandler(os.path.join(log_dir, 'fracdecay.log'), encoding='utf-8'),
            logging.StreamHandler()
        ],
        force=True,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='fracdecay', description='Nonlocal heat equation decay laboratory')
    parser.add_argument('--verbose', action='store_true', help='Debug logging')
    parser.add_argument('--logdir', default=None, help='Log directory (default <output>/logs)')
    verbs = parser.add_subparsers(dest='verb', required=True)

    run = verbs.add_parser('run', help='Run one experiment')
    run.add_argument('config', help='Config file')

    verify = verbs.add_parser('verify', help='Run property suites')
    verify.add_argument('selector', nargs='?', default='all', choices=('all',) + SUITES)
    verify.add_argument('--report', default=None, help='Write the verification report as JSON')

    sw = verbs.add_parser('sweep', help='Sweep one parameter')
    sw.add_argument('config', help='Base config file')
    sw.add_argument('--axis', required=True, choices=SWEEP_AXES)
    sw.add_argument('--values', required=True, help='Comma-separated values')
    sw.add_argument('--jobs', type=int, default=1, help='Parallel runs')

    fit = verbs.add_parser('fit', help='Fit a decay exponent to a recorded CSV')
    fit.add_argument('csv', help='Series CSV written by run')
    fit.add_argument('--q', type=float, default=2.0)
    fit.add_argument('--window', type=float, default=0.5, help='Fraction of log-time')
    fit.add_argument('--dimension', type=int, default=None, help='Space dimension for the predicted exponent')
    fit.add_argument('--sigma', type=float, default=None, help='Kernel tail order (omit for compact kernels)')
    fit.add_argument('--tolerance', type=float, default=0.2)
    return parser


def _split_values(text: str, axis: str) -> list:
    items = [v.strip() for v in text.split(',') if v.strip()]
    if axis == 'kernel_family':
        return items
    try:
        return [float(v) for v in items]
    except ValueError as e:
        raise ConfigurationError(f"--values must be numbers for axis {axis}: {e}", key='values') from e


def _cmd_run(args) -> int:
    config = load_config(args.config)
    configure_logging(args.logdir or os.path.join(config.output.directory, 'logs'), args.verbose)
    result = run_experiment(config)
    for fit in result.summary['fits']:
        print(f"q={fit['q']:g}: slope {fit['slope']:.4f}, theory {fit['theoretical_exponent']}, "
              f"r^2 {fit['r_squared']:.5f}, {'pass' if fit['verdict']['pass'] else 'fail'}")
    print(f"Wrote {result.csv_path} and {result.summary_path}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    configure_logging(args.logdir or os.path.join('results', 'logs'), args.verbose)
    report = verify_suite(args.selector)
    for check in report.checks:
        print(f"[{'PASS' if check.passed else 'FAIL'}] {check.suite}/{check.name}: {check.detail}")
    if args.report:
        with open(args.report, 'w', encoding='utf-8') as f:
            json.dump(report.to_dict(), f, indent=2)
    return EXIT_OK if report.passed else EXIT_VERIFICATION_FAILED


def _cmd_sweep(args) -> int:
    config = load_config(args.config)
    configure_logging(args.logdir or os.path.join(config.output.directory, 'logs'), args.verbose)
    result = sweep(config, args.axis, _split_values(args.values, args.axis), jobs=args.jobs)
    print(result.table.to_string(index=False))
    print(f"Wrote {result.path}")
    return EXIT_OK


def _cmd_fit(args) -> int:
    configure_logging(args.logdir or os.path.join(os.path.dirname(os.path.abspath(args.csv)), 'logs'), args.verbose)
    series = DecaySeries.from_csv(args.csv, args.dimension, args.sigma)
    fit = fit_decay(series, args.q, args.window)
    print(json.dumps(fit.to_dict(), indent=2))
    if series.dimension is None:
        return EXIT_OK
    return EXIT_OK if verify_decay(fit, args.tolerance).passed else EXIT_VERIFICATION_FAILED


COMMANDS = {'run': _cmd_run, 'verify': _cmd_verify, 'sweep': _cmd_sweep, 'fit': _cmd_fit}


def main(argv: Optional[List[str]] = None) -> int:
    """
    Command-line interface for fracdecay.
    """
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.verb](args)
    except ConfigurationError as e:
        logger.error("Configuration error: %s", e)
        print(f"Configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except FracDecayError as e:
        logger.error("%s: %s", type(e).__name__, e)
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_RUNTIME_ERROR
    except OSError as e:
        logger.error("I/O error: %s", e)
        print(f"I/O error: {e}", file=sys.stderr)
        return EXIT_RUNTIME_ERROR


if __name__ == "__main__":
    sys.exit(main())
