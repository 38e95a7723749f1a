"""Command-line entry point: ``comtet <command> [options]``.

Exit codes: 0 success, 1 failed verification, 2 invalid input, 3 precondition violation.
"""
import argparse
import json
import logging
import sys
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from modules import bijections as bij
from modules import gentree
from modules.errors import InvalidInputError, PreconditionError, UnsupportedPatternError
from modules.genfun import auxiliary_series, closed_form, closed_form_tilde
from modules.pattern_engine import (
    REFINEMENT_KEYS,
    avoiders,
    count,
    distribution_matrix,
    joint_series,
    refined_matrices,
)
from modules.perm_core import Permutation, as_pattern_set
from modules.verification import aliases_of, list_checks, run_all, run_check

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_PRECONDITION = 0, 1, 2, 3

# name -> (input parser, map, output formatter)
BIJECTIONS: Dict[str, Tuple[Callable[[str], object], Callable, Callable[[object], str]]] = {
    'alpha': (Permutation.parse, bij.alpha, str),
    'alpha_inv': (bij.AdmissibleWord.from_text, bij.alpha_inv, str),
    'beta': (Permutation.parse, bij.beta, str),
    'beta_inv': (bij.AdmissibleWord.from_text, bij.beta_inv, str),
    'xi': (Permutation.parse, bij.xi, str),
    'xi_inv': (Permutation.parse, bij.xi_inv, str),
    'psi': (bij.AdmissibleWord.from_text, bij.psi, str),
    'psi_inv': (bij.AdmissibleWord.from_text, bij.psi_inv, str),
    'phi': (Permutation.parse, bij.phi, str),
    'phi_inv': (Permutation.parse, bij.phi_inv, str),
    'theta': (Permutation.parse, bij.theta, str),
    'theta_inv': (Permutation.parse, bij.theta_inv, str),
    'witness321': (Permutation.parse, bij.symmetry_witness_321, str),
    'witness312': (Permutation.parse, bij.symmetry_witness_312, str),
    'witness132': (Permutation.parse, bij.symmetry_witness_132, str),
}


def _emit(text: str):
    print(text)


def cmd_count(args: argparse.Namespace) -> int:
    if args.threads > 1:
        _emit(str(len(avoiders(args.n, args.patterns, workers=args.threads))))
    else:
        _emit(str(count(args.n, args.patterns)))
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    members = avoiders(args.n, args.patterns, workers=args.threads)
    if args.format == 'json':
        _emit(json.dumps([list(pi.values) for pi in members]))
    else:
        for pi in members:
            _emit(str(pi))
    return EXIT_OK


def _rows_text(rows: Sequence[Sequence[int]]) -> str:
    width = max((len(str(v)) for row in rows for v in row), default=1)
    return '\n'.join(' '.join(str(v).rjust(width) for v in row) for row in rows)


def cmd_matrix(args: argparse.Namespace) -> int:
    if args.refine:
        matrices = refined_matrices(args.n, args.patterns, args.refine)
        if args.format == 'json':
            _emit(json.dumps({str(key): m.as_lists() for key, m in matrices.items()}))
        else:
            for key, matrix in matrices.items():
                _emit(f"{args.refine}={key}")
                _emit(_rows_text(matrix.rows))
        return EXIT_OK
    matrix = distribution_matrix(args.n, args.patterns)
    _emit(json.dumps(matrix.to_json()) if args.format == 'json' else _rows_text(matrix.rows))
    return EXIT_OK


def cmd_gf(args: argparse.Namespace) -> int:
    if args.series == 'closed':
        series = closed_form(args.patterns, args.order)
    elif args.series == 'tilde':
        series = closed_form_tilde(args.patterns, args.order)
    elif args.series == 'brute':
        series = joint_series(args.patterns, args.order)
    else:
        series = auxiliary_series(args.series, args.order)
    _emit(json.dumps(series.to_json()) if args.format == 'json' else str(series))
    return EXIT_OK


def cmd_bijection(args: argparse.Namespace) -> int:
    try:
        parse, mapping, render = BIJECTIONS[args.name]
    except KeyError:
        raise InvalidInputError(f"Unknown bijection {args.name!r}; known: {', '.join(BIJECTIONS)}")
    _emit(render(mapping(parse(args.input))))
    return EXIT_OK


def cmd_tree(args: argparse.Namespace) -> int:
    if args.patterns is None:
        root = gentree.build_tree(gentree.schroder_rule, args.depth)
    else:
        root = gentree.build_pattern_tree(args.patterns, args.depth)
    _emit(gentree.dump_tree(root))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    bounds = dict(nmax=args.nmax, order=args.order, depth=args.depth, perm_nmax=args.perm_nmax)
    if args.all:
        reports = run_all(**bounds)
    else:
        reports = [run_check(args.check, **bounds)]
    if args.format == 'json':
        data = [report.to_json() for report in reports]
        _emit(json.dumps(data if args.all else data[0]))
    else:
        for report in reports:
            _emit(report.summary())
    return EXIT_OK if all(report.passed for report in reports) else EXIT_FAILED


def cmd_checks(args: argparse.Namespace) -> int:
    for name, description in list_checks():
        aliases = aliases_of(name)
        suffix = f" (also: {', '.join(aliases)})" if aliases else ""
        _emit(f"{name:20s} {description}{suffix}")
    return EXIT_OK


def _patterns(text: str):
    try:
        return as_pattern_set(text)
    except InvalidInputError as e:
        raise argparse.ArgumentTypeError(str(e))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='comtet',
        description="Refined Wilf-equivalences by the statistics iar and comp",
    )
    parser.add_argument('--log-level', default='WARNING',
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'])
    commands = parser.add_subparsers(dest='command', required=True)

    def with_class(sub: argparse.ArgumentParser, required: bool = True):
        sub.add_argument('--patterns', type=_patterns, required=required,
                         help="comma-separated patterns, e.g. 2413,3142")

    def with_format(sub: argparse.ArgumentParser):
        sub.add_argument('--format', choices=['text', 'json'], default='text')

    sub = commands.add_parser('count', help="size of S_n(P)")
    with_class(sub)
    sub.add_argument('--n', type=int, required=True)
    sub.add_argument('--threads', type=int, default=1)
    sub.set_defaults(handler=cmd_count)

    sub = commands.add_parser('enumerate', help="list S_n(P)")
    with_class(sub)
    sub.add_argument('--n', type=int, required=True)
    sub.add_argument('--threads', type=int, default=1)
    with_format(sub)
    sub.set_defaults(handler=cmd_enumerate)

    sub = commands.add_parser('matrix', help="(iar, comp) distribution matrix")
    with_class(sub)
    sub.add_argument('--n', type=int, required=True)
    sub.add_argument('--refine', choices=[','.join(key) for key in REFINEMENT_KEYS])
    with_format(sub)
    sub.set_defaults(handler=cmd_matrix)

    sub = commands.add_parser('gf', help="generating function up to z^order")
    sub.add_argument('--patterns', type=_patterns)
    sub.add_argument('--order', type=int, required=True)
    sub.add_argument('--series', default='closed',
                     help="closed, tilde, brute, or an auxiliary series name (H321, A123, ...)")
    with_format(sub)
    sub.set_defaults(handler=cmd_gf)

    sub = commands.add_parser('bijection', help="apply a bijection")
    sub.add_argument('--name', required=True, help=', '.join(BIJECTIONS))
    sub.add_argument('--input', required=True)
    sub.set_defaults(handler=cmd_bijection)

    sub = commands.add_parser('tree', help="dump a generating tree")
    with_class(sub, required=False)
    sub.add_argument('--depth', type=int, required=True)
    sub.set_defaults(handler=cmd_tree)

    sub = commands.add_parser('verify', help="run a named verification suite")
    which = sub.add_mutually_exclusive_group(required=True)
    which.add_argument('--check', help="suite name or alias")
    which.add_argument('--all', action='store_true', help="run every suite")
    sub.add_argument('--nmax', type=int)
    sub.add_argument('--perm-nmax', type=int, help="permutation-side bound of izero-recurrence")
    sub.add_argument('--order', type=int)
    sub.add_argument('--depth', type=int)
    with_format(sub)
    sub.set_defaults(handler=cmd_verify)

    sub = commands.add_parser('checks', help="list verification suites")
    sub.set_defaults(handler=cmd_checks)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=getattr(logging, args.log_level),
                        format='%(asctime)s %(levelname)s %(name)s: %(message)s')
    logger.debug(f"Running {args.command}")
    try:
        if args.command == 'gf' and args.series in ('closed', 'tilde', 'brute') \
                and args.patterns is None:
            raise InvalidInputError("--patterns is required for this series")
        return args.handler(args)
    except PreconditionError as e:
        print(f"precondition violated: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (InvalidInputError, UnsupportedPatternError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
