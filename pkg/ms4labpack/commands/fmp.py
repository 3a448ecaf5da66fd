# MS4LAB - Finite MS4 Frame and Algebra Workbench
# SPDX-License-Identifier: GPL-3.0-or-later
# SPDX-FileCopyrightText: 2026 ms4lab developers

import argparse

from ms4labpack.algebra import IDENTITY_CHECK_LIMIT, fmp_countermodel
from ms4labpack.config import (
    add_argument_max_valuations,
    add_arguments_formula,
    add_arguments_frame,
    formula_from_args,
)
from ms4labpack.errors import AlreadyValid, BudgetExceeded
from ms4labpack.formula import to_text
from ms4labpack.frame import depth, q_depth
from ms4labpack.recipe import parse_recipe
from ms4labpack.report import Timings, emit


def run_command(argv):
    aparser = argparse.ArgumentParser(prog='ms4lab fmp')
    add_arguments_frame(aparser)
    add_arguments_formula(aparser)
    add_argument_max_valuations(aparser)
    aparser.add_argument('--signature', default='dia',
                         help="Operators closing the generators, 'dia' or 'dia,bdia'.")

    args = aparser.parse_args(argv)

    timings = Timings()
    with timings.phase('setup'):
        f = parse_recipe(args.frame)
        phi = formula_from_args(args)
        signature = tuple(op.strip() for op in args.signature.split(','))

    result = {'frame': args.frame, 'worlds': f.n, 'formula': to_text(phi)}
    try:
        with timings.phase('fmp'):
            fmp = fmp_countermodel(f, phi, signature, args.max_valuations)
    except AlreadyValid:
        fmp = None
    except BudgetExceeded as e:
        result.update({'verdict': 'budget_exceeded', **e.to_json()})
        emit(result, args.human, timings)
        return 0

    if fmp is None:
        result['verdict'] = 'valid'
    else:
        result['verdict'] = 'invalid'
        result['finite'] = fmp.to_json()
        result['depth'] = {'source': depth(f), 'finite': depth(fmp.frame)}
        result['q_depth'] = {'source': q_depth(f), 'finite': q_depth(fmp.frame)}
        if fmp.algebra.size <= IDENTITY_CHECK_LIMIT:
            result['identities_failed'] = fmp.algebra.check_identities()

    emit(result, args.human, timings)
    return 0
