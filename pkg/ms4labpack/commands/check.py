# MS4LAB - Finite MS4 Frame and Algebra Workbench
# SPDX-License-Identifier: GPL-3.0-or-later
# SPDX-FileCopyrightText: 2026 ms4lab developers

import argparse

from ms4labpack.config import (
    add_argument_max_valuations,
    add_argument_threads,
    add_arguments_formula,
    add_arguments_frame,
    formula_from_args,
)
from ms4labpack.errors import BudgetExceeded
from ms4labpack.formula import to_text
from ms4labpack.recipe import parse_recipe
from ms4labpack.report import Timings, emit
from ms4labpack.semantics import valid_parallel


def run_command(argv):
    aparser = argparse.ArgumentParser(prog='ms4lab check')
    add_arguments_frame(aparser)
    add_arguments_formula(aparser)
    add_argument_max_valuations(aparser)
    add_argument_threads(aparser)

    args = aparser.parse_args(argv)

    timings = Timings()
    with timings.phase('setup'):
        f = parse_recipe(args.frame)
        phi = formula_from_args(args)

    result = {'frame': args.frame, 'worlds': f.n, 'formula': to_text(phi)}
    with timings.phase('check'):
        try:
            verdict = valid_parallel(f, phi, args.threads, args.max_valuations)
            result.update(verdict.to_json())
        except BudgetExceeded as e:
            result.update({'verdict': 'budget_exceeded', **e.to_json()})

    emit(result, args.human, timings)
    return 0
