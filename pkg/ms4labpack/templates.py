# MS4LAB - Finite MS4 Frame and Algebra Workbench
# SPDX-License-Identifier: GPL-3.0-or-later
# SPDX-FileCopyrightText: 2026 ms4lab developers

import importlib.resources
import logging
import os

from mako import exceptions
from mako.template import Template

import ms4labpack.makofiles


def template(fname, d):
    try:
        return Template(filename=os.fspath(fname)).render(**d)
    except BaseException:
        logging.error(exceptions.text_error_template().render())
        raise


def render_pack_template(fname, d):
    template_dir = importlib.resources.files(ms4labpack.makofiles)

    with importlib.resources.as_file(template_dir / fname) as path:
        return template(path, d)
