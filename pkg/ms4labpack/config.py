# MS4LAB - Finite MS4 Frame and Algebra Workbench
# SPDX-License-Identifier: GPL-3.0-or-later
# SPDX-FileCopyrightText: 2026 ms4lab developers

import os

from ms4labpack.cli import add_argument
from ms4labpack.errors import InvalidArgument
from ms4labpack.formula import axiom_from_name, build_axiom, parse


DEFAULT_MAX_VALUATIONS = 1 << 30
DEFAULT_CLUSTER_CAP = 20
DEFAULT_PATH_CAP = 16


def default_threads():
    return int(os.environ.get('MS4LAB_THREADS', os.cpu_count() or 1))


def add_argument_threads(parser_or_func):
    return add_argument(
        parser_or_func,
        '--threads',
        type=int,
        default=default_threads(),
        help='Size of the worker pool (default: $MS4LAB_THREADS or the CPU count).',
    )


def add_argument_max_valuations(parser_or_func, default=DEFAULT_MAX_VALUATIONS):
    return add_argument(
        parser_or_func,
        '--max-valuations',
        dest='max_valuations',
        type=int,
        default=os.environ.get('MS4LAB_MAX_VALUATIONS', str(default)),
        help='Give up brute force validity checking above this many valuations.',
    )


def add_argument_cluster_cap(parser_or_func):
    return add_argument(
        parser_or_func,
        '--cluster-cap',
        dest='cluster_cap',
        type=int,
        default=os.environ.get('MS4LAB_CLUSTER_CAP', str(DEFAULT_CLUSTER_CAP)),
        help='Largest number of E-clusters the M+Cas check enumerates subsets of.',
    )


def add_argument_path_cap(parser_or_func):
    return add_argument(
        parser_or_func,
        '--path-cap',
        dest='path_cap',
        type=int,
        default=os.environ.get('MS4LAB_PATH_CAP', str(DEFAULT_PATH_CAP)),
    )


def add_arguments_frame(parser_or_func):
    parser_or_func = add_argument(
        parser_or_func,
        '--frame',
        required=True,
        metavar='RECIPE',
        help='chain:N, grid:RxC, layered:T+BxC, product:chainN,kK, translate:FILE, '
             'random:n=N,seed=S[,density=D] or file:FILE',
    )

    parser_or_func = add_argument(
        parser_or_func,
        '--human',
        action='store_true',
        help='Print a readable summary instead of JSON.',
    )

    return parser_or_func


def add_arguments_formula(parser_or_func):
    parser_or_func = add_argument(
        parser_or_func,
        '--axiom',
        metavar='NAME',
        help='A named axiom: MS4, bar, mcas, grz, sc, ed, P<n>, P0_<n> or rp<m>.',
    )

    parser_or_func = add_argument(
        parser_or_func,
        '--formula',
        metavar='TEXT',
        help="A formula such as '<>[]p -> []p'.",
    )

    return parser_or_func


def formula_from_args(args):
    """
    The formula selected by exactly one of ``--axiom`` and ``--formula``.
    """
    if (args.axiom is None) == (args.formula is None):
        raise InvalidArgument('give exactly one of --axiom and --formula')
    if args.axiom is not None:
        return build_axiom(axiom_from_name(args.axiom))
    return parse(args.formula)
