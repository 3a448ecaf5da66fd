# MS4LAB - Finite MS4 Frame and Algebra Workbench
# SPDX-License-Identifier: GPL-3.0-or-later
# SPDX-FileCopyrightText: 2026 ms4lab developers

"""
Truth sets of formulas in finite frames and brute force validity.

Valuations are enumerated in a fixed order: with K variables (sorted by
name) over n worlds, valuation number i gives the k-th variable the world
set ``(i >> ((K - 1 - k) * n)) & (2**n - 1)``. The first failing valuation
in this order and the least world it fails at form the countermodel, no
matter how the work is split between processes.
"""

import dataclasses
import enum
import logging
import multiprocessing
import typing

import numpy as np

from ms4labpack.config import DEFAULT_MAX_VALUATIONS
from ms4labpack.errors import BudgetExceeded, InvalidArgument, UnboundVariable
from ms4labpack.formula import And, Bot, Dia, Ex, Imp, Not, Or, Top, Var, subterms, variables
from ms4labpack.frame import BATCH_WORLD_LIMIT, bits, lowest, members


Valuation = typing.Mapping[str, int]

_CHUNK = 1 << 16

_OPCODES = {Not: 'not', And: 'and', Or: 'or', Imp: 'imp', Dia: 'dia', Ex: 'ex'}


@dataclasses.dataclass(frozen=True)
class Program:
    """
    A formula flattened into steps, one per subterm, in subterm order.
    Each step is ``(opcode, a, b)``, where a and b index earlier steps, or
    for ``var`` steps a indexes `names`.
    """
    names: typing.Tuple[str, ...]
    terms: tuple
    steps: typing.Tuple[typing.Tuple[str, int, int], ...]


def compile_formula(phi):
    terms = subterms(phi)
    names = tuple(variables(phi))
    index = {t: i for i, t in enumerate(terms)}
    steps = []
    for t in terms:
        if isinstance(t, Var):
            steps.append(('var', names.index(t.name), 0))
        elif isinstance(t, Top):
            steps.append(('top', 0, 0))
        elif isinstance(t, Bot):
            steps.append(('bot', 0, 0))
        elif isinstance(t, (Not, Dia, Ex)):
            steps.append((_OPCODES[type(t)], index[t.arg], 0))
        else:
            steps.append((_OPCODES[type(t)], index[t.left], index[t.right]))
    return Program(names, terms, tuple(steps))


def _run(f, program, values):
    full = f.full
    regs: typing.List[int] = []
    for op, a, b in program.steps:
        if op == 'var':
            regs.append(values[a])
        elif op == 'top':
            regs.append(full)
        elif op == 'bot':
            regs.append(0)
        elif op == 'not':
            regs.append(full & ~regs[a])
        elif op == 'and':
            regs.append(regs[a] & regs[b])
        elif op == 'or':
            regs.append(regs[a] | regs[b])
        elif op == 'imp':
            regs.append((full & ~regs[a]) | regs[b])
        elif op == 'dia':
            regs.append(f.dia(regs[a]))
        else:
            regs.append(f.ex(regs[a]))
    return regs


def _values_of(f, program, v):
    values = []
    for name in program.names:
        if name not in v:
            raise UnboundVariable(name)
        ws = v[name]
        if ws & ~f.full or ws < 0:
            raise InvalidArgument(f'value of {name!r} is not a set of worlds of this frame')
        values.append(ws)
    return values


def extensions(f, v, phi):
    """
    The truth set of every subterm of `phi`, keyed by subterm.
    """
    program = compile_formula(phi)
    regs = _run(f, program, _values_of(f, program, v))
    return dict(zip(program.terms, regs))


def evaluate(f, v, phi):
    """
    The set of worlds of `f` where `phi` holds under valuation `v`.
    """
    program = compile_formula(phi)
    return _run(f, program, _values_of(f, program, v))[-1]


def decode_valuation(program, n, index):
    k = len(program.names)
    mask = bits(n)
    return {name: (index >> ((k - 1 - j) * n)) & mask
            for j, name in enumerate(program.names)}


def _run_batch(f, program, start, stop):
    n = f.n
    k = len(program.names)
    full = np.uint64(f.full)
    mask = np.uint64(bits(n))
    idx = np.arange(start, stop, dtype=np.uint64)
    regs: typing.List[np.ndarray] = []
    for op, a, b in program.steps:
        if op == 'var':
            regs.append((idx >> np.uint64((k - 1 - a) * n)) & mask)
        elif op == 'top':
            regs.append(np.full(len(idx), full, dtype=np.uint64))
        elif op == 'bot':
            regs.append(np.zeros(len(idx), dtype=np.uint64))
        elif op == 'not':
            regs.append(regs[a] ^ full)
        elif op == 'and':
            regs.append(regs[a] & regs[b])
        elif op == 'or':
            regs.append(regs[a] | regs[b])
        elif op == 'imp':
            regs.append((regs[a] ^ full) | regs[b])
        elif op == 'dia':
            regs.append(f.dia_batch(regs[a]))
        else:
            regs.append(f.ex_batch(regs[a]))
    return regs[-1]


def _first_failure(f, program, start, stop):
    """
    The least valuation index in [start, stop) falsifying the program at
    some world, with the truth set it yields, or None.
    """
    full = f.full
    if f.n > BATCH_WORLD_LIMIT:
        for index in range(start, stop):
            values = list(decode_valuation(program, f.n, index).values())
            ext = _run(f, program, values)[-1]
            if ext != full:
                return index, ext
        return None

    for lo in range(start, stop, _CHUNK):
        hi = min(lo + _CHUNK, stop)
        ext = _run_batch(f, program, lo, hi)
        failing = np.flatnonzero(ext != np.uint64(full))
        if failing.size:
            i = int(failing[0])
            return lo + i, int(ext[i])
    return None


@dataclasses.dataclass(frozen=True)
class Countermodel:
    frame: typing.Any
    valuation: typing.Dict[str, int]
    world: int

    def to_json(self):
        return {
            'valuation': {name: members(ws) for name, ws in self.valuation.items()},
            'world': self.world,
            'label': self.frame.labels[self.world],
        }


@dataclasses.dataclass(frozen=True)
class Verdict:
    valid: bool
    countermodel: typing.Optional[Countermodel]
    checked: int

    def to_json(self):
        return {
            'verdict': 'valid' if self.valid else 'invalid',
            'checked': self.checked,
            'countermodel': self.countermodel.to_json() if self.countermodel else None,
        }


def valuation_count(f, phi):
    return 1 << (len(variables(phi)) * f.n)


def _budget(f, program, max_valuations):
    total = 1 << (len(program.names) * f.n)
    if total > max_valuations:
        raise BudgetExceeded('valuations', total, max_valuations)
    return total


def _verdict(f, program, found, total):
    if found is None:
        return Verdict(True, None, total)
    index, ext = found
    valuation = decode_valuation(program, f.n, index)
    world = lowest(f.full & ~ext)
    return Verdict(False, Countermodel(f, valuation, world), index + 1)


def valid(f, phi, max_valuations=DEFAULT_MAX_VALUATIONS):
    """
    Decide f ⊨ phi by trying every valuation of the variables of `phi`.
    """
    program = compile_formula(phi)
    total = _budget(f, program, max_valuations)
    return _verdict(f, program, _first_failure(f, program, 0, total), total)


def _first_failure_job(args):
    return _first_failure(*args)


def valid_parallel(f, phi, workers, max_valuations=DEFAULT_MAX_VALUATIONS):
    """
    Like :py:func:`valid`, with the valuation index space split into chunks
    checked by a pool of `workers` processes.
    """
    program = compile_formula(phi)
    total = _budget(f, program, max_valuations)
    if workers <= 1 or total <= _CHUNK:
        return _verdict(f, program, _first_failure(f, program, 0, total), total)

    step = max(_CHUNK, -(-total // (workers * 4)))
    jobs = [(f, program, lo, min(lo + step, total)) for lo in range(0, total, step)]
    logging.debug('Checking %d valuations in %d chunks on %d workers',
                  total, len(jobs), workers)
    with multiprocessing.Pool(workers) as pool:
        results = pool.map(_first_failure_job, jobs)

    found = min((r for r in results if r is not None), default=None)
    return _verdict(f, program, found, total)


class Status(enum.Enum):
    VALID = 'valid'
    INVALID = 'invalid'
    BUDGET_EXCEEDED = 'budget_exceeded'
    UNKNOWN = 'unknown'


@dataclasses.dataclass(frozen=True)
class OverItem:
    index: int
    status: Status
    countermodel: typing.Optional[Countermodel] = None


@dataclasses.dataclass(frozen=True)
class OverReport:
    items: typing.Tuple[OverItem, ...]
    aggregate: Status

    def to_json(self):
        return {
            'aggregate': self.aggregate.value,
            'items': [{
                'index': item.index,
                'status': item.status.value,
                'countermodel': item.countermodel.to_json() if item.countermodel else None,
            } for item in self.items],
        }


def valid_over(fs, phi, max_valuations=DEFAULT_MAX_VALUATIONS):
    """
    Check `phi` on every frame of `fs`. The aggregate is VALID when every
    frame validates `phi` (also for no frames), INVALID when some frame
    refutes it and UNKNOWN when budgets prevented a decision.
    """
    items = []
    for i, f in enumerate(fs):
        try:
            verdict = valid(f, phi, max_valuations)
        except BudgetExceeded as e:
            logging.info('Frame %d: %s', i, e)
            items.append(OverItem(i, Status.BUDGET_EXCEEDED))
            continue
        if verdict.valid:
            items.append(OverItem(i, Status.VALID))
        else:
            items.append(OverItem(i, Status.INVALID, verdict.countermodel))

    statuses = {item.status for item in items}
    if Status.INVALID in statuses:
        aggregate = Status.INVALID
    elif Status.BUDGET_EXCEEDED in statuses:
        aggregate = Status.UNKNOWN
    else:
        aggregate = Status.VALID
    return OverReport(tuple(items), aggregate)
