# MS4LAB - Finite MS4 Frame and Algebra Workbench
# SPDX-License-Identifier: GPL-3.0-or-later
# SPDX-FileCopyrightText: 2026 ms4lab developers

import dataclasses
import inspect
import os.path
import traceback
import types
import typing

from ms4labpack.errors import InputError


EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2

_argparse_attr = '__' + __name__ + '.argparse_calls'


def _record_argument(*args, **kwargs):
    def decorator(f):
        calls = f.__dict__.setdefault(_argparse_attr, [])
        # The bottom decorator is applied first, keep the source order.
        calls.insert(0, (args, kwargs))
        return f

    return decorator


def add_argument(parser_or_func, *args, **kwargs):
    """
    Add an option either directly to an :py:class:`argparse.ArgumentParser`,
    or to a decorated ``run_command`` function, from which
    :py:func:`add_arguments_from_decorated_function` applies it later.
    """
    if hasattr(parser_or_func, 'add_argument'):
        parser_or_func.add_argument(*args, **kwargs)
        return parser_or_func

    if callable(parser_or_func):
        return _record_argument(*args, **kwargs)(parser_or_func)

    return _record_argument(parser_or_func, *args, **kwargs)


def add_arguments_from_decorated_function(parser, f):
    for args, kwargs in getattr(f, _argparse_attr, []):
        parser.add_argument(*args, **kwargs)


@dataclasses.dataclass
class _CliDetails:
    message: typing.Optional[str]
    exitcode: int


_cli_details_attr_name = __name__ + '.__cli_details'


def with_cli_details(exc, exitcode=EXIT_VIOLATION, message=None):
    """
    Attach the exit code (and an optional user facing message) that the
    process ends with when `exc` reaches :py:func:`main`.
    """
    setattr(exc, _cli_details_attr_name, _CliDetails(
        message=message,
        exitcode=exitcode,
    ))
    return exc


def _get_cli_details(exc):
    details = getattr(exc, _cli_details_attr_name, None)
    if details is None and isinstance(exc, InputError):
        details = _CliDetails(message=None, exitcode=EXIT_INPUT)
    return details


class CliError(RuntimeError):
    """
    Exception type for errors not attached to an existing exception.
    """
    def __init__(self, exitcode=EXIT_VIOLATION, message=None):
        with_cli_details(self, exitcode=exitcode, message=message)
        self.args = (message,)


def _last_frame_in_package(tb, package):
    frame = tb.tb_frame

    while tb.tb_next is not None:
        tb = tb.tb_next
        mod = inspect.getmodule(tb)
        if mod is None or mod.__spec__ is None:
            continue
        name = mod.__spec__.name
        if name == package or name.startswith(package + '.'):
            frame = tb.tb_frame

    return frame


class _SupportsStrWrite(typing.Protocol):
    def write(self, value: str): ...


def format_exception(exc: Exception,
                     output: _SupportsStrWrite,
                     verbose: bool,
                     base_module: types.ModuleType) -> int:
    """
    Write `exc` to `output` for the user and return the exit code.

    With `verbose` the whole stack trace is printed, otherwise the message and
    the innermost source location inside `base_module`. Input errors end with
    exit code 2, everything else with the attached code or 1.
    """
    tb = exc.__traceback__
    details = _get_cli_details(exc)

    if details is not None and details.message is not None:
        print(details.message, file=output)

    if verbose:
        traceback.print_exception(None, value=exc, tb=tb, file=output)
    else:
        frame = _last_frame_in_package(tb, base_module.__name__)
        location = f'{os.path.normpath(frame.f_code.co_filename)}:{frame.f_lineno}'
        if isinstance(exc, CliError):
            print(location, file=output)
        else:
            print(f'{location}: {type(exc).__name__}: {exc}', file=output)

    return details.exitcode if details is not None else EXIT_VIOLATION
