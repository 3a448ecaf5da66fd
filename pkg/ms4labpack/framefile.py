# MS4LAB - Finite MS4 Frame and Algebra Workbench
# SPDX-License-Identifier: GPL-3.0-or-later
# SPDX-FileCopyrightText: 2026 ms4lab developers

"""
Reading and writing frames as JSON.

An MS4 frame file lists the worlds count, optional labels and the pairs of
R and E. With ``close_R`` / ``close_E`` set, the listed pairs only generate
the relation. S5₂ frames carry ``"kind": "s52"`` and the pairs of E1 and E2.
Files are checked against the packaged JSON schema before use.
"""

import json

import jsonschema

from ms4labpack.errors import FrameError
from ms4labpack.frame import (
    MS4Frame,
    S52Frame,
    relation_from_pairs,
    relation_pairs,
    validate,
    validate_s52,
)
from ms4labpack.schema import json_schema
from ms4labpack.version import frame_format_version


def _check_schema(data, source):
    validator = jsonschema.Draft202012Validator(json_schema('frame.schema.json'))
    error = jsonschema.exceptions.best_match(validator.iter_errors(data))
    if error is not None:
        where = '/'.join(str(p) for p in error.absolute_path) or 'top level'
        raise FrameError(f'{source}: {where}: {error.message}')


def frame_to_json(f):
    if isinstance(f, S52Frame):
        return {
            'kind': 's52',
            'version': frame_format_version,
            'worlds': f.n,
            'labels': list(f.labels),
            'E1': relation_pairs(f.E1),
            'E2': relation_pairs(f.E2),
            'close': False,
        }
    return {
        'kind': 'ms4',
        'version': frame_format_version,
        'worlds': f.n,
        'labels': list(f.labels),
        'R': relation_pairs(f.R),
        'E': relation_pairs(f.E),
        'close_R': False,
        'close_E': False,
    }


def frame_from_json(data, source='<frame>'):
    _check_schema(data, source)
    n = data['worlds']
    labels = data.get('labels')
    if labels is not None and len(labels) != n:
        raise FrameError(f'{source}: {len(labels)} labels for {n} worlds')

    if data.get('kind') == 's52':
        return validate_s52(relation_from_pairs(n, data['E1']),
                            relation_from_pairs(n, data['E2']),
                            labels, close=data.get('close', False))

    return validate(relation_from_pairs(n, data['R']),
                    relation_from_pairs(n, data['E']),
                    labels,
                    close_R=data.get('close_R', False),
                    close_E=data.get('close_E', False))


def load_frame(fname):
    try:
        with open(fname, encoding='utf-8') as fp:
            data = json.load(fp)
    except json.JSONDecodeError as e:
        raise FrameError(f'{fname}: not valid JSON: {e}') from e
    return frame_from_json(data, str(fname))


def load_ms4_frame(fname):
    f = load_frame(fname)
    if not isinstance(f, MS4Frame):
        raise FrameError(f'{fname}: expected an MS4 frame, found an S5₂ frame')
    return f


def load_s52_frame(fname):
    f = load_frame(fname)
    if not isinstance(f, S52Frame):
        raise FrameError(f'{fname}: expected an S5₂ frame, found an MS4 frame')
    return f


def save_frame(f, fname):
    with open(fname, 'w', encoding='utf-8') as fp:
        json.dump(frame_to_json(f), fp, indent=2)
        fp.write('\n')
