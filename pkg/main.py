#!/usr/bin/env python3
"""
Artin Hyperbolicity Toolkit - Main Entry Point

This script provides a CLI for classifying Artin groups by hyperbolicity,
tabulating deformed hyperbolic cubes, building finite balls of Cayley,
Deligne and Davis complexes, estimating Gromov delta, fitting
quasi-isometry constants and running the CAT(-1) checklist.
"""

import argparse
import logging
import sys
from pathlib import Path
from dotenv import load_dotenv

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_PARSE = 2
EXIT_CAP = 3
EXIT_CONSISTENCY = 4


def _sample(value: str):
    if value in ('all', 'landmarks'):
        return value
    try:
        return int(value)
    except ValueError:
        raise argparse.ArgumentTypeError("sample must be 'all', 'landmarks' or a positive integer")


def build_parser(defaults) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description='Artin Hyperbolicity Toolkit - verdicts, cube geometry and ball experiments',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Classify a defining graph
  python main.py classify --input graphs/pentagon.graph

  # Dihedral angles of the deformed cube
  python main.py cube-table --epsilon 1 0.5 0.1 0.01 --format csv

  # Deligne ball as DOT
  python main.py ball --input graphs/square.graph --kind deligne --radius 2 --format dot

  # Four-point delta of the free group Cayley ball
  python main.py delta --input graphs/free_rank2.graph --kind cayley --radius 4

  # Relative Milnor-Svarc fit
  python main.py qi --input graphs/free_rank2.graph --radius 4 --interior 2

  # CAT(-1) checklist
  python main.py certify --input graphs/pentagon.graph --epsilon 0.1
        """
    )

    subparsers = parser.add_subparsers(dest='command_type', help='Command to run', required=True)

    def add_common(sub, needs_input=True):
        if needs_input:
            sub.add_argument('--input', required=True, type=Path, help='Defining-graph file')
            sub.add_argument('--strict', action='store_true', help='Require vertex declarations before use')
        sub.add_argument('--out', type=Path, default=None, help='Output file (default: stdout)')

    classify_parser = subparsers.add_parser('classify', help='Hyperbolicity verdict with citations')
    add_common(classify_parser)

    cube_parser = subparsers.add_parser('cube-table', help='theta(eps) and pi/2 - theta(eps) over a grid')
    add_common(cube_parser, needs_input=False)
    cube_parser.add_argument('--epsilon', type=float, nargs='+', default=[defaults.EPSILON],
                             help='Deformation parameters')
    cube_parser.add_argument('--format', dest='fmt', choices=['csv', 'json'], default='csv',
                             help='Output format (default: csv)')

    for name, help_text, formats, default_fmt in (
        ('ball', 'Build a finite ball', ['json', 'csv', 'dot'], 'json'),
        ('delta', 'Four-point delta of a finite ball', ['json'], 'json'),
    ):
        sub = subparsers.add_parser(name, help=help_text)
        add_common(sub)
        sub.add_argument('--kind', choices=['cayley', 'coned', 'deligne', 'davis'], default='cayley',
                         help='Ball kind (default: cayley)')
        sub.add_argument('--oracle', choices=['auto', 'raag', 'coxeter', 'finite'], default='auto',
                         help='Word-problem backend (default: auto)')
        sub.add_argument('--radius', type=int, default=defaults.RADIUS, help='Ball radius')
        sub.add_argument('--cap', type=int, default=None, help='Vertex cap')
        sub.add_argument('--format', dest='fmt', choices=formats, default=default_fmt, help='Output format')
        if name == 'delta':
            sub.add_argument('--sample', type=_sample, default='all',
                             help="'all', 'landmarks' or a number of random quadruples")
            sub.add_argument('--seed', type=int, default=defaults.SEED, help='Random seed')

    qi_parser = subparsers.add_parser('qi', help='Quasi-isometry fit of the orbit map')
    add_common(qi_parser)
    qi_parser.add_argument('--radius', type=int, default=defaults.RADIUS, help='Ball radius')
    qi_parser.add_argument('--interior', type=int, default=None, help='Interior radius (default: radius // 2)')
    qi_parser.add_argument('--cap', type=int, default=None, help='Vertex cap')
    qi_parser.add_argument('--format', dest='fmt', choices=['json', 'csv'], default='json', help='Output format')

    certify_parser = subparsers.add_parser('certify', help='CAT(-1) checklist')
    add_common(certify_parser)
    certify_parser.add_argument('--epsilon', type=float, default=defaults.EPSILON,
                                help='Deformation parameter')

    return parser


def build_run_config(args):
    from src.core.models import RunConfig
    epsilon = getattr(args, 'epsilon', None)
    if epsilon is None:
        epsilons = (0.1,)
    elif isinstance(epsilon, list):
        epsilons = tuple(epsilon)
    else:
        epsilons = (epsilon,)
    return RunConfig(
        command=args.command_type,
        input_path=getattr(args, 'input', None),
        epsilons=epsilons,
        radius=getattr(args, 'radius', 3),
        cap=getattr(args, 'cap', None),
        sample=getattr(args, 'sample', 'all'),
        seed=getattr(args, 'seed', 1729),
        fmt=getattr(args, 'fmt', 'json'),
        out=args.out,
        kind=getattr(args, 'kind', 'cayley'),
        oracle=getattr(args, 'oracle', 'auto'),
        interior=getattr(args, 'interior', None),
        strict=getattr(args, 'strict', False),
    )


def main(argv=None):
    """Main entry point for the Artin Hyperbolicity Toolkit CLI."""
    # Load environment variables
    load_dotenv()

    from src.config import get_config
    settings = get_config()

    logging.basicConfig(
        level=getattr(logging, settings.LOG_LEVEL, logging.WARNING),
        format='%(asctime)s %(levelname)s %(name)s: %(message)s',
        stream=sys.stderr,
    )

    parser = build_parser(settings)
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits with 2 on bad options, which is reserved for parse errors
        return EXIT_OK if e.code in (0, None) else EXIT_INVALID
    return handle_command(args)


def handle_command(args):
    """Validate options, run the command and map failures to exit codes.

    Args:
        args: Parsed command-line arguments

    Returns:
        Exit code (0 success, 1 invalid options, 2 parse error, 3 cap
        exceeded, 4 internal consistency failure)
    """
    from src.core.errors import CapExceededError, ConsistencyError, ParseError
    from src.handlers.commands import CommandHandler
    from src.utils.output_writer import OutputWriter

    try:
        config = build_run_config(args)
    except (ValueError, TypeError) as e:
        print(f"❌ Invalid options: {e}", file=sys.stderr)
        return EXIT_INVALID

    try:
        text = CommandHandler(config).run()
        OutputWriter(config.out).write(text)
        return EXIT_OK
    except ParseError as e:
        print(f"❌ Parse error in {config.input_path}: {e}", file=sys.stderr)
        return EXIT_PARSE
    except CapExceededError as e:
        print(f"❌ Cap exceeded: {e}", file=sys.stderr)
        return EXIT_CAP
    except ConsistencyError as e:
        print(f"❌ Internal consistency failure: {e}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except (ValueError, TypeError, OSError) as e:
        print(f"❌ Invalid input: {e}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as e:
        print(f"❌ Unexpected error: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == '__main__':
    sys.exit(main())
