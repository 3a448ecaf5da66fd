# MS4LAB - Finite MS4 Frame and Algebra Workbench
# SPDX-License-Identifier: GPL-3.0-or-later
# SPDX-FileCopyrightText: 2026 ms4lab developers

import argparse

from ms4labpack.config import add_arguments_frame
from ms4labpack.frame import (
    classify_si,
    e_clusters,
    layers,
    members,
    q_depth,
    q_roots,
    r_clusters,
    restrict,
)
from ms4labpack.recipe import parse_recipe
from ms4labpack.report import Timings, emit


def _worlds(f, ws):
    return [f.labels[x] for x in members(ws)]


def run_command(argv):
    aparser = argparse.ArgumentParser(prog='ms4lab layers')
    add_arguments_frame(aparser)

    args = aparser.parse_args(argv)

    timings = Timings()
    with timings.phase('setup'):
        f = parse_recipe(args.frame)

    with timings.phase('layers'):
        decomposition = layers(f)
        result = {
            'frame': args.frame,
            'worlds': f.n,
            'depth': decomposition.depth,
            'q_depth': q_depth(f),
            'layers': [{
                'layer': i + 1,
                'worlds': _worlds(f, layer),
                'restriction': restrict(f, layer).report,
            } for i, layer in enumerate(decomposition.layers)],
            'e_clusters': [_worlds(f, c) for c in e_clusters(f)],
            'r_clusters': [_worlds(f, c) for c in r_clusters(f)],
            'q_roots': _worlds(f, q_roots(f)),
            'si': classify_si(f).value,
        }

    emit(result, args.human, timings)
    return 0
