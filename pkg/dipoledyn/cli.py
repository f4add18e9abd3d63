"""
Command-line front end.

    dipoledyn <subcommand> [flags] [--config run.json] [--out file.csv|file.xlsx]

Data goes to --out or standard output; logs and errors go to standard
error. Exit codes: 0 success, 1 dipoledyn error, 2 usage error.
"""
import argparse
import logging
import sys

from . import __version__, config
from .commands import cnot, coupling, feasibility, prep_a, prep_s, single_qubit, sweep, truth_table
from .errors import DipoleDynError
from .utils.tables import write_table

logger = logging.getLogger(__name__)

COMMANDS = (coupling, prep_s, prep_a, cnot, single_qubit, truth_table, sweep, feasibility)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2


def _common_flags():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON run configuration; flags override its values")
    common.add_argument("--out", help="output file (.csv or .xlsx); default standard output")
    common.add_argument("--log-level", help="DEBUG, INFO, WARNING (default from DIPOLEDYN_LOG_LEVEL)")
    common.add_argument("--method", choices=("rk45", "rk4"), help="integrator (default rk45)")
    common.add_argument("--decay-a-over-imc", type=float, help="A / Im C; 0 disables decay (default 0)")
    return common


def build_parser():
    parser = argparse.ArgumentParser(
        prog="dipoledyn",
        description="Two dipole-dipole coupled ions: state preparation, CNOT and single-ion gates.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="subcommand")
    sub.required = True
    parents = [_common_flags()]
    for module in COMMANDS:
        module.register(sub, parents).set_defaults(handler=module)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse has already printed usage to stderr
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK

    try:
        config.configure_logging(args.log_level)
        cfg = config.merge_flags(config.load_config(args.config), vars(args))
        logger.info("running %s", args.command)
        df, summary = args.handler.run(cfg, args)
        write_table(df, cfg.output.out, summary)
    except DipoleDynError as exc:
        print(f"dipoledyn: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK
