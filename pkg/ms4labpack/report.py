# MS4LAB - Finite MS4 Frame and Algebra Workbench
# SPDX-License-Identifier: GPL-3.0-or-later
# SPDX-FileCopyrightText: 2026 ms4lab developers

"""
Output of the sub-commands: one JSON document on stdout, or with ``--human``
an indented key/value rendering of the same data.
"""

import contextlib
import json
import sys
import time

from ms4labpack.log import report as report_log


class Timings:
    """
    Wall clock seconds per named phase of a command.
    """

    def __init__(self):
        self.phases = {}

    @contextlib.contextmanager
    def phase(self, name):
        start = time.perf_counter()
        try:
            yield
        finally:
            elapsed = time.perf_counter() - start
            self.phases[name] = round(self.phases.get(name, 0.0) + elapsed, 6)
            report_log.debug('%s took %.3fs', name, elapsed)

    def to_json(self):
        return dict(self.phases)


def _human(value, indent, out):
    pad = '  ' * indent
    if isinstance(value, dict):
        for key, item in value.items():
            if isinstance(item, (dict, list)) and item:
                print(f'{pad}{key}:', file=out)
                _human(item, indent + 1, out)
            else:
                print(f'{pad}{key}: {_scalar(item)}', file=out)
    elif isinstance(value, list):
        if all(not isinstance(item, (dict, list)) for item in value):
            print(pad + ' '.join(_scalar(item) for item in value), file=out)
            return
        for item in value:
            print(f'{pad}-', file=out)
            _human(item, indent + 1, out)
    else:
        print(pad + _scalar(value), file=out)


def _scalar(value):
    if value is None:
        return '-'
    if isinstance(value, list):
        return '[' + ', '.join(_scalar(v) for v in value) + ']'
    if isinstance(value, dict):
        return '{}'
    return str(value)


def emit(data, human=False, timings=None, output=None):
    """
    Write the command result `data` (JSON compatible) to `output`,
    by default stdout, adding ``timings`` when given.
    """
    if output is None:
        output = sys.stdout
    if timings is not None:
        data = {**data, 'timings': timings.to_json()}
    if human:
        _human(data, 0, output)
    else:
        json.dump(data, output, indent=2, ensure_ascii=False)
        output.write('\n')
