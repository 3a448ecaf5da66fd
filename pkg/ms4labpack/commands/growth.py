# MS4LAB - Finite MS4 Frame and Algebra Workbench
# SPDX-License-Identifier: GPL-3.0-or-later
# SPDX-FileCopyrightText: 2026 ms4lab developers

import argparse
import sys

from ms4labpack.algebra import growth_probe, staircase_growth
from ms4labpack.constructions import chain_frame, grid_frame
from ms4labpack.errors import InvalidArgument
from ms4labpack.report import Timings, emit


def family_frames(name, size):
    if name == 'chains':
        return [chain_frame(n) for n in range(1, size + 1)]
    if size < 2:
        raise InvalidArgument(f'the grids family needs a size of at least 2, got {size}')
    return [grid_frame(k, k)[1] for k in range(2, size + 1)]


def run_command(argv):
    aparser = argparse.ArgumentParser(prog='ms4lab growth')
    aparser.add_argument('--family', choices=('chains', 'grids', 'staircase'), required=True)
    aparser.add_argument('--k-max', dest='k_max', type=int, default=4,
                         help='Largest number of generators.')
    aparser.add_argument('--trials', type=int, default=20,
                         help='Random generator draws per frame.')
    aparser.add_argument('--seed', type=int, default=0)
    aparser.add_argument('--size', type=int, default=4,
                         help='Longest chain or grid side of the family.')
    aparser.add_argument('--csv', action='store_true',
                         help='Print the curve as CSV.')
    aparser.add_argument('--human', action='store_true',
                         help='Print a readable summary instead of JSON.')

    args = aparser.parse_args(argv)

    timings = Timings()
    with timings.phase('probe'):
        if args.family == 'staircase':
            curve = staircase_growth(args.k_max)
        else:
            curve = growth_probe(family_frames(args.family, args.size), args.k_max,
                                 args.trials, args.seed)

    if args.csv:
        sys.stdout.write(curve.to_csv())
        return 0

    emit({
        'family': args.family,
        'points': [{'k': p.k, 'max_size': p.max_size, 'trials': p.trials}
                   for p in curve.points],
    }, args.human, timings)
    return 0
