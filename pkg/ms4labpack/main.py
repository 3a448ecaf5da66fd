# MS4LAB - Finite MS4 Frame and Algebra Workbench
# SPDX-License-Identifier: GPL-3.0-or-later
# SPDX-FileCopyrightText: 2026 ms4lab developers

import argparse
import importlib
import logging
import os
import pkgutil
import sys

import ms4labpack
import ms4labpack.commands
from ms4labpack.cli import format_exception
from ms4labpack.log import ms4lab_logging
from ms4labpack.version import ms4lab_version


def get_cmdlist():
    return [x for _, x, _ in pkgutil.iter_modules(ms4labpack.commands.__path__)]


def _import_cmd_module(cmd):
    return importlib.import_module('.' + cmd, ms4labpack.commands.__name__)


def main(argv=sys.argv):
    parser = argparse.ArgumentParser(prog='ms4lab')
    parser.add_argument('--version', action='version', version=f'%(prog)s v{ms4lab_version}')
    parser.add_argument('--stacktrace-on-error', action='store_true', dest='stacktrace_on_error')
    parser.add_argument('--debug', action='store_true',
                        help='Log debug messages to stderr.')
    parser.add_argument('--log', metavar='FILE',
                        help='Also write suite failures to FILE.')

    subparsers = parser.add_subparsers(required=True, dest='cmd')

    for cmd in get_cmdlist():
        subparsers.add_parser(cmd)

    args, cmd_argv = parser.parse_known_args(argv[1:])

    cmdmod = _import_cmd_module(args.cmd)

    level = logging.DEBUG if args.debug else logging.WARNING
    targets = {'streams': sys.stderr}
    if args.log:
        targets['files'] = args.log

    with ms4lab_logging(level=level, **targets):
        try:
            exitcode = cmdmod.run_command(cmd_argv)
        except Exception as e:
            sys.exit(format_exception(e, output=sys.stderr,
                                      base_module=ms4labpack,
                                      verbose=args.stacktrace_on_error))

    sys.exit(exitcode or 0)


def run_ms4lab_subcommand(argv):
    cmdmod = _import_cmd_module(argv[0])
    return cmdmod.run_command([os.fspath(arg) for arg in argv[1:]])
