# MS4LAB - Finite MS4 Frame and Algebra Workbench
# SPDX-License-Identifier: GPL-3.0-or-later
# SPDX-FileCopyrightText: 2026 ms4lab developers

import argparse

from ms4labpack.conditions import check_barcan
from ms4labpack.constructions import translate
from ms4labpack.frame import classify_si, depth
from ms4labpack.framefile import load_s52_frame, save_frame
from ms4labpack.report import Timings, emit


def run_command(argv):
    aparser = argparse.ArgumentParser(prog='ms4lab translate')
    aparser.add_argument('--in', dest='infile', required=True, metavar='FILE',
                         help='S5₂ frame file to translate.')
    aparser.add_argument('--out', dest='outfile', required=True, metavar='FILE',
                         help='Where to write the MS4 frame file.')
    aparser.add_argument('--human', action='store_true',
                         help='Print a readable summary instead of JSON.')

    args = aparser.parse_args(argv)

    timings = Timings()
    with timings.phase('translate'):
        s52 = load_s52_frame(args.infile)
        g = translate(s52)
        save_frame(g, args.outfile)

    emit({
        'in': args.infile,
        'out': args.outfile,
        'source_worlds': s52.n,
        'worlds': g.n,
        'depth': depth(g),
        'barcan': check_barcan(g).verdict,
        'si': classify_si(g).value,
    }, args.human, timings)
    return 0
