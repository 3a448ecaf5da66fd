# MS4LAB - Finite MS4 Frame and Algebra Workbench
# SPDX-License-Identifier: GPL-3.0-or-later
# SPDX-FileCopyrightText: 2026 ms4lab developers

import functools
import importlib.resources
import json


def json_schema_file(name):
    return importlib.resources.files(__name__).joinpath(name).open('r')


@functools.cache
def json_schema(name):
    with json_schema_file(name) as f:
        return json.load(f)
