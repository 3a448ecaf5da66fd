# MS4LAB - Finite MS4 Frame and Algebra Workbench
# SPDX-License-Identifier: GPL-3.0-or-later
# SPDX-FileCopyrightText: 2026 ms4lab developers

"""
Frame recipes as given on the command line.

>>> parse_recipe('chain:3').n
3
>>> parse_recipe('product:chain2,k3').n
6
>>> parse_recipe('grid:2x3').labels[:2]
('(0,0)', '(0,1)')
"""

import re

from ms4labpack.constructions import (
    chain_frame,
    grid_frame,
    layered_grid_frame,
    product_frame,
    random_frame,
    translate,
)
from ms4labpack.errors import FrameError
from ms4labpack.framefile import load_ms4_frame, load_s52_frame


_CHAIN_RE = re.compile(r'chain:?(\d+)')
_GRID_RE = re.compile(r'(\d+)x(\d+)')
_LAYERED_RE = re.compile(r'(\d+)\+(\d+)x(\d+)')
_PRODUCT_RE = re.compile(r'(?P<inner>.+),k(?P<k>\d+)')


def _random(args):
    params = {}
    for item in args.split(','):
        key, sep, value = item.partition('=')
        if not sep or key not in ('n', 'seed', 'density'):
            raise FrameError(f'random recipe: cannot use {item!r}')
        params[key] = value
    if 'n' not in params:
        raise FrameError('random recipe needs n=<worlds>')
    try:
        n = int(params['n'])
        density = float(params.get('density', 0.3))
        seed = int(params.get('seed', 0))
    except ValueError as e:
        raise FrameError(f'random recipe: {e}') from e
    return random_frame(n, density=density, seed=seed)


def parse_recipe(text):
    """
    Build the frame described by `text`: ``chain:N``, ``grid:RxC``,
    ``layered:T+BxC``, ``product:chainN,kK``, ``translate:FILE``,
    ``random:n=N,seed=S[,density=D]`` or ``file:FILE``.
    """
    kind, sep, args = text.partition(':')
    if not sep:
        raise FrameError(f'frame recipe {text!r} has no kind')

    if kind == 'chain' and args.isdigit():
        return chain_frame(int(args))

    if kind == 'grid':
        m = _GRID_RE.fullmatch(args)
        if m:
            return grid_frame(int(m[1]), int(m[2]))[1]

    if kind == 'layered':
        m = _LAYERED_RE.fullmatch(args)
        if m:
            return layered_grid_frame(int(m[1]), int(m[2]), int(m[3]))

    if kind == 'product':
        m = _PRODUCT_RE.fullmatch(args)
        if m:
            inner = _CHAIN_RE.fullmatch(m['inner'])
            if inner is None:
                raise FrameError(f'product recipe: unknown S4 frame {m["inner"]!r}')
            return product_frame(chain_frame(int(inner[1])), int(m['k']))

    if kind == 'translate' and args:
        return translate(load_s52_frame(args))

    if kind == 'random' and args:
        return _random(args)

    if kind == 'file' and args:
        return load_ms4_frame(args)

    raise FrameError(f'cannot understand frame recipe {text!r}')
