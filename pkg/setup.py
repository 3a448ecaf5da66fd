#!/usr/bin/env python3

# MS4LAB - Finite MS4 Frame and Algebra Workbench
# SPDX-License-Identifier: GPL-3.0-or-later
# SPDX-FileCopyrightText: 2026 ms4lab developers

from setuptools import setup

from ms4labpack.version import ms4lab_version


setup(name='ms4lab',
      version=ms4lab_version,
      description='Finite MS4 frame and algebra workbench',
      author='ms4lab developers',
      packages=['ms4labpack',
                'ms4labpack.commands',
                'ms4labpack.makofiles',
                'ms4labpack.schema',
                ],
      package_data={'ms4labpack': ['makofiles/*.mako',
                                   'schema/*.json']},
      entry_points={
          'console_scripts': [
              'ms4lab=ms4labpack.main:main',
          ],
      },
      python_requires='>=3.9',
      install_requires=['jsonschema',
                        'Mako',
                        'networkx',
                        'numpy']
      )
