# MS4LAB - Finite MS4 Frame and Algebra Workbench
# SPDX-License-Identifier: GPL-3.0-or-later
# SPDX-FileCopyrightText: 2026 ms4lab developers
#
# Sphinx configuration for the ms4lab manual and man pages.

import os
import sys
sys.path.insert(0, os.path.abspath('..'))

import ms4labpack.main  # noqa: E402
from ms4labpack.version import ms4lab_version  # noqa: E402

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.graphviz',
    'sphinx.ext.intersphinx',
]

source_suffix = {
    '.rst': 'restructuredtext',
}

master_doc = 'index'

project = 'ms4lab'
copyright = '2026, ms4lab developers'
author = 'ms4lab developers'

version = ms4lab_version
release = version

language = 'en'

exclude_patterns = ['_build']

pygments_style = 'sphinx'

intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'numpy': ('https://numpy.org/doc/stable', None),
    'networkx': ('https://networkx.org/documentation/stable', None),
}

html_theme = 'sphinx_rtd_theme'

man_pages = [
    ('ms4lab', 'ms4lab', '', [], 1),
] + [
    ('ms4lab-' + cmd, 'ms4lab-' + cmd, '', [], 1)
    for cmd in ms4labpack.main.get_cmdlist()
]

graphviz_output_format = 'svg'
