# MS4LAB - Finite MS4 Frame and Algebra Workbench
# SPDX-License-Identifier: GPL-3.0-or-later
# SPDX-FileCopyrightText: 2026 ms4lab developers

import argparse

from ms4labpack import suites
from ms4labpack.cli import (
    CliError,
    EXIT_OK,
    add_argument,
    add_arguments_from_decorated_function,
)
from ms4labpack.config import (
    add_argument_cluster_cap,
    add_argument_max_valuations,
    add_argument_threads,
)
from ms4labpack.log import validation
from ms4labpack.report import Timings, emit


def _add_frame_pool_arguments(f):
    f = add_argument('--max-worlds', dest='max_worlds', type=int, default=3,
                     help='Check every frame up to this many worlds.')(f)
    f = add_argument('--random-count', dest='random_count', type=int, default=500,
                     help='Number of random frames added to the exhaustive ones.')(f)
    return f


def _add_valuation_budget(f):
    return add_argument_max_valuations(f, default=suites.SUITE_MAX_VALUATIONS)


@_add_frame_pool_arguments
@_add_valuation_budget
@add_argument_cluster_cap
def _correspondence(args):
    frames = suites.suite_frames(args.max_worlds, args.random_count, seed=args.seed)
    return suites.correspondence(frames, args.max_valuations, args.threads, args.cluster_cap)


@_add_frame_pool_arguments
@add_argument_cluster_cap
def _mcas_structure(args):
    frames = suites.suite_frames(args.max_worlds, args.random_count, seed=args.seed)
    return suites.mcas_structure(frames, args.threads, args.cluster_cap)


@add_argument('--count', type=int, default=100)
@_add_valuation_budget
def _translation(args):
    return suites.translation(args.count, seed=args.seed, max_valuations=args.max_valuations)


@_add_frame_pool_arguments
@add_argument('--count', type=int, default=50)
@_add_valuation_budget
def _fmp(args):
    frames = suites.suite_frames(args.max_worlds, args.random_count, seed=args.seed)
    return suites.fmp(frames, args.count, args.max_valuations)


@add_argument('--count', type=int, default=200)
def _irreducible_path(args):
    return suites.irreducible_path(args.count, seed=args.seed)


def _grid(args):
    return suites.grid()


@_add_frame_pool_arguments
@_add_valuation_budget
def _filtration(args):
    frames = suites.suite_frames(args.max_worlds, args.random_count, seed=args.seed)
    return suites.filtration(frames, args.max_valuations)


@add_argument('--max-chain', dest='max_chain', type=int, default=6)
def _minimal_variety(args):
    return suites.minimal_variety(args.max_chain)


_suite_actions = {
    'correspondence':   _correspondence,
    'mcas_structure':   _mcas_structure,
    'translation':      _translation,
    'fmp':              _fmp,
    'irreducible_path': _irreducible_path,
    'grid':             _grid,
    'filtration':       _filtration,
    'minimal_variety':  _minimal_variety,
}


def run_command(argv):
    aparser = argparse.ArgumentParser(prog='ms4lab verify')
    aparser.add_argument('--seed', type=int, default=0)
    aparser.add_argument('--human', action='store_true',
                         help='Print a readable summary instead of JSON.')
    add_argument_threads(aparser)

    subparsers = aparser.add_subparsers(required=True, dest='suite')

    for name, action in _suite_actions.items():
        action_parser = subparsers.add_parser(name)
        action_parser.set_defaults(func=action)
        add_arguments_from_decorated_function(action_parser, action)

    args = aparser.parse_args(argv)

    timings = Timings()
    with timings.phase(args.suite):
        report = args.func(args)

    validation.info('Suite %s checked %d cases', report.name, report.checked)
    for failure in report.failures:
        validation.error('%s: %s', report.name, failure)

    emit(report.to_json(), args.human, timings)
    if not report.ok:
        raise CliError(message=f'Suite {report.name} failed {len(report.failures)} checks')
    return EXIT_OK
