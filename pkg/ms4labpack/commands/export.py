# MS4LAB - Finite MS4 Frame and Algebra Workbench
# SPDX-License-Identifier: GPL-3.0-or-later
# SPDX-FileCopyrightText: 2026 ms4lab developers

import argparse
import json
import sys

from ms4labpack.cli import add_argument, add_arguments_from_decorated_function
from ms4labpack.dot import frame_to_dot
from ms4labpack.framefile import frame_to_json
from ms4labpack.recipe import parse_recipe


@add_argument('--frame', required=True, metavar='RECIPE')
@add_argument('--format', choices=('dot', 'json'), default='dot')
@add_argument('--out', metavar='FILE', help='Write here instead of stdout.')
def _export(args):
    f = parse_recipe(args.frame)
    if args.format == 'dot':
        text = frame_to_dot(f, args.frame)
    else:
        text = json.dumps(frame_to_json(f), indent=2) + '\n'

    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, 'w', encoding='utf-8') as fp:
            fp.write(text)
    return 0


def run_command(argv):
    aparser = argparse.ArgumentParser(prog='ms4lab export')
    add_arguments_from_decorated_function(aparser, _export)
    args = aparser.parse_args(argv)
    return _export(args)
