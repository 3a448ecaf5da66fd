# MS4LAB - Finite MS4 Frame and Algebra Workbench
# SPDX-License-Identifier: GPL-3.0-or-later
# SPDX-FileCopyrightText: 2026 ms4lab developers

import argparse

from ms4labpack.config import (
    add_argument_max_valuations,
    add_arguments_formula,
    add_arguments_frame,
    formula_from_args,
)
from ms4labpack.constructions import selective_filtration
from ms4labpack.errors import BudgetExceeded
from ms4labpack.formula import to_text
from ms4labpack.recipe import parse_recipe
from ms4labpack.report import Timings, emit
from ms4labpack.semantics import valid


def run_command(argv):
    aparser = argparse.ArgumentParser(prog='ms4lab filtrate')
    add_arguments_frame(aparser)
    add_arguments_formula(aparser)
    add_argument_max_valuations(aparser)

    args = aparser.parse_args(argv)

    timings = Timings()
    with timings.phase('setup'):
        f = parse_recipe(args.frame)
        phi = formula_from_args(args)

    result = {'frame': args.frame, 'worlds': f.n, 'formula': to_text(phi)}
    try:
        with timings.phase('check'):
            verdict = valid(f, phi, args.max_valuations)
    except BudgetExceeded as e:
        result.update({'verdict': 'budget_exceeded', **e.to_json()})
        emit(result, args.human, timings)
        return 0

    if verdict.valid:
        result['verdict'] = 'valid'
    else:
        with timings.phase('filtrate'):
            filtration = selective_filtration(f, phi, verdict.countermodel.valuation)
        result['verdict'] = 'invalid'
        result['countermodel'] = verdict.countermodel.to_json()
        result['filtration'] = filtration.to_json()

    emit(result, args.human, timings)
    return 0
