# MS4LAB - Finite MS4 Frame and Algebra Workbench
# SPDX-License-Identifier: GPL-3.0-or-later
# SPDX-FileCopyrightText: 2026 ms4lab developers

from ms4labpack.main import main

main()
