# MS4LAB - Finite MS4 Frame and Algebra Workbench
# SPDX-License-Identifier: GPL-3.0-or-later
# SPDX-FileCopyrightText: 2026 ms4lab developers

import argparse

from ms4labpack.conditions import check_rp, longest_irreducible_path
from ms4labpack.config import add_argument_path_cap, add_arguments_frame
from ms4labpack.recipe import parse_recipe
from ms4labpack.report import Timings, emit


def run_command(argv):
    aparser = argparse.ArgumentParser(prog='ms4lab path')
    add_arguments_frame(aparser)
    add_argument_path_cap(aparser)
    aparser.add_argument('--proper', action='store_true',
                         help='Only use steps that are R or E but not both.')
    aparser.add_argument('--rp', type=int, metavar='M',
                         help='Also decide the reducible path property for paths longer than M.')

    args = aparser.parse_args(argv)

    timings = Timings()
    with timings.phase('setup'):
        f = parse_recipe(args.frame)

    with timings.phase('search'):
        length, witness = longest_irreducible_path(f, args.proper, args.path_cap)
        result = {
            'frame': args.frame,
            'worlds': f.n,
            'proper': args.proper,
            'cap': args.path_cap,
            'length': length,
            'at_least': length >= args.path_cap,
            'witness': witness.to_json() if witness else None,
            'witness_labels': [f.labels[x] for x in witness.worlds] if witness else None,
        }
        if args.rp is not None:
            result['rp'] = check_rp(f, args.rp).to_json()

    emit(result, args.human, timings)
    return 0
