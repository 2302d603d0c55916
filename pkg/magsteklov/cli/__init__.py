"""
Command-line front end: run configuration, output emitters, the
acceptance suite and the argparse entry point.
"""

from .app import COMMANDS, build_parser, main
from .config import RunConfig, TRange, load_config, parse_polynomial
from .verify import ACCEPTANCE_CHECKS, CheckOutcome, CheckResult, VerifyReport, run_acceptance

__all__ = [
    'ACCEPTANCE_CHECKS',
    'COMMANDS',
    'CheckOutcome',
    'CheckResult',
    'RunConfig',
    'TRange',
    'VerifyReport',
    'build_parser',
    'load_config',
    'main',
    'parse_polynomial',
    'run_acceptance',
]
