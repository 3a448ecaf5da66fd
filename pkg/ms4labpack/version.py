# MS4LAB - Finite MS4 Frame and Algebra Workbench
# SPDX-License-Identifier: GPL-3.0-or-later
# SPDX-FileCopyrightText: 2026 ms4lab developers

import pathlib
import sys


is_devel = not pathlib.Path(__file__).is_relative_to(sys.prefix)
ms4lab_version = '0.4'
if is_devel:
    ms4lab_version += '.dev0'

# Version of the frame file format written by ms4labpack.framefile.
frame_format_version = 1
