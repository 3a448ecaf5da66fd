# MS4LAB - Finite MS4 Frame and Algebra Workbench
# SPDX-License-Identifier: GPL-3.0-or-later
# SPDX-FileCopyrightText: 2026 ms4lab developers

"""
Exception hierarchy of the ms4lab library.

All errors raised deliberately by ms4labpack derive from :py:class:`Ms4labError`.
Errors caused by user input (a malformed formula or frame) additionally derive
from :py:class:`InputError`, which the command line maps to exit code 2.
"""


class Ms4labError(Exception):
    pass


class InputError(Ms4labError):
    pass


class FormulaSyntaxError(InputError):
    def __init__(self, message, position):
        super().__init__(f'{message} at position {position}')
        self.message = message
        self.position = position


class InvalidArgument(InputError):
    pass


class FrameError(InputError):
    pass


class EmptyFrame(FrameError):
    def __init__(self):
        super().__init__('a frame needs at least one world')


class NotQuasiOrder(FrameError):
    """
    R is not reflexive or not transitive.
    `witness` is ``(x,)`` for a reflexivity failure and ``(x, y, z)`` with
    xRy, yRz but not xRz for a transitivity failure.
    """
    def __init__(self, witness):
        if len(witness) == 1:
            msg = f'R is not reflexive at world {witness[0]}'
        else:
            msg = 'R is not transitive: {} R {} R {} but not {} R {}'.format(
                *witness, witness[0], witness[2])
        super().__init__(msg)
        self.witness = tuple(witness)


class NotEquivalence(FrameError):
    def __init__(self, relation, witness):
        super().__init__(f'{relation} is not an equivalence relation (witness {witness})')
        self.relation = relation
        self.witness = tuple(witness)


class CommutationFails(FrameError):
    """
    xEy and yRy2 hold, but there is no x2 with xRx2 and x2Ey2.
    """
    def __init__(self, x, y, y2):
        super().__init__(f'R and E do not commute: {x} E {y} R {y2} '
                         f"has no matching {x} R x' E {y2}")
        self.x = x
        self.y = y
        self.y2 = y2


class UnboundVariable(InputError):
    def __init__(self, name):
        super().__init__(f'variable {name!r} has no value in the valuation')
        self.name = name


class BudgetExceeded(Ms4labError):
    def __init__(self, kind, needed, cap):
        super().__init__(f'{kind} budget exceeded: {needed} needed, cap is {cap}')
        self.kind = kind
        self.needed = needed
        self.cap = cap

    def to_json(self):
        return {'budget': self.kind, 'needed': self.needed, 'cap': self.cap}


class NotSubalgebra(Ms4labError):
    pass


class AlreadyValid(Ms4labError):
    pass


class NotFalsified(Ms4labError):
    pass


class PreconditionFailed(Ms4labError):
    def __init__(self, failed):
        super().__init__('frame conditions not satisfied: ' + ', '.join(failed))
        self.failed = tuple(failed)


class GiveUp(Ms4labError):
    def __init__(self, attempts):
        super().__init__(f'no valid frame found after {attempts} attempts')
        self.attempts = attempts


class ConsistencyError(Ms4labError):
    """
    A result failed one of the checks that are run on every construction.
    """
