# MS4LAB - Finite MS4 Frame and Algebra Workbench
# SPDX-License-Identifier: GPL-3.0-or-later
# SPDX-FileCopyrightText: 2026 ms4lab developers

import argparse

from ms4labpack.conditions import (
    check_barcan,
    check_ed,
    check_flat_clusters,
    check_grz_finite,
    check_mcas_semantic,
    check_s52_layers,
    check_sc,
    classify_frame,
)
from ms4labpack.config import add_argument_cluster_cap, add_arguments_frame
from ms4labpack.recipe import parse_recipe
from ms4labpack.report import Timings, emit


def _conditions(f, classification, cluster_cap):
    reports = [check_barcan(f), check_ed(f), check_sc(f), check_grz_finite(f),
               check_flat_clusters(f), check_s52_layers(f)]
    conditions = [r.to_json() for r in reports]
    if classification.budget is None:
        conditions.append(check_mcas_semantic(f, cluster_cap).to_json())
    else:
        conditions.append({'name': 'mcas', 'verdict': 'budget_exceeded',
                           **classification.budget.to_json()})
    return conditions


def run_command(argv):
    aparser = argparse.ArgumentParser(prog='ms4lab classify')
    add_arguments_frame(aparser)
    add_argument_cluster_cap(aparser)

    args = aparser.parse_args(argv)

    timings = Timings()
    with timings.phase('setup'):
        f = parse_recipe(args.frame)
    with timings.phase('classify'):
        classification = classify_frame(f, args.cluster_cap)
        conditions = _conditions(f, classification, args.cluster_cap)

    emit({
        'frame': args.frame,
        'worlds': f.n,
        'classes': sorted(classification.classes),
        'undecided': sorted(classification.undecided),
        'conditions': conditions,
    }, args.human, timings)
    return 0
