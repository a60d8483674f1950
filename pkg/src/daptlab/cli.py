import sys
import logging
import argparse
from pathlib import Path
from typing import Dict, List
from uuid import uuid4
from .services.config import load_config
from .services.experiments import cmd_run, cmd_check, cmd_sweep, verdict_line
from .models.config import SweepField
from .models.exceptions import DaptException, ConfigException
from .utils import logger
from .utils.constants import EXIT_OK, EXIT_CONFIG_ERROR, EXIT_NUMERICAL_ERROR
from .utils.helpers.common import parse_value_list
from .utils.run_context import run_scope

_LOGGER = logging.getLogger(__name__)


def create_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='dapt', description='Degenerate adiabatic perturbation theory experiments')
    parser.add_argument('--log-level', default='INFO',
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'])
    commands = parser.add_subparsers(dest='command', required=True)

    for name, help_text in (('run', 'infidelity of every truncation order against the exact state'),
                            ('check', 'necessary and sufficient adiabaticity conditions'),
                            ('sweep', 'one run per value of a parameter, plus a summary')):
        command = commands.add_parser(name, help=help_text)
        command.add_argument('config', help='experiment file (YAML or key = value) or bundled name')
        command.add_argument('--out', help='output directory')
        command.add_argument('--p-max', type=int, dest='p_max')
        command.add_argument('--n-steps', type=int, dest='n_steps')

        if name == 'sweep':
            command.add_argument('--field', required=True,
                                 help=', '.join(member.value for member in SweepField))
            command.add_argument('--values', required=True, help='comma-separated list')

    return parser


def main(argv: List[str] = None) -> int:
    args = create_parser().parse_args(argv)
    logger.setup(args.log_level)

    with run_scope(uuid4().hex[:8]):
        try:
            return _execute(args)
        except ConfigException as error:
            _LOGGER.error(str(error))
            print(f'error: {error}', file=sys.stderr)
            return EXIT_CONFIG_ERROR
        except DaptException as error:
            _LOGGER.error(f'{type(error).__name__}: {error}')
            print(f'error: {error}', file=sys.stderr)
            return EXIT_NUMERICAL_ERROR


def _execute(args: argparse.Namespace) -> int:
    config = load_config(args.config, _overrides(args))
    out_dir = Path(config.output or '.')

    match args.command:
        case 'run':
            print(cmd_run(config, out_dir))
        case 'check':
            file_path, report = cmd_check(config, out_dir)
            print(file_path)
            print(verdict_line(report))
        case 'sweep':
            print(cmd_sweep(config, args.field, parse_value_list(args.values), out_dir))

    return EXIT_OK


def _overrides(args: argparse.Namespace) -> Dict:
    return {
        'p_max': args.p_max,
        'n_steps': args.n_steps,
        'output': args.out
    }


__all__ = ['create_parser', 'main']
