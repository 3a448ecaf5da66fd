# MS4LAB - Finite MS4 Frame and Algebra Workbench
# SPDX-License-Identifier: GPL-3.0-or-later
# SPDX-FileCopyrightText: 2026 ms4lab developers

"""
Finite algebras of world sets and the finite model property construction.

A subalgebra of the powerset of a frame is kept as the partition of the
worlds into its atoms; its elements are the unions of atoms. Operators are
additive, so an operator maps the subalgebra into itself as soon as it maps
every atom to a union of atoms.
"""

import csv
import dataclasses
import functools
import io
import logging
import typing

import numpy as np

from ms4labpack.config import DEFAULT_MAX_VALUATIONS
from ms4labpack.constructions import grid_frame, staircase
from ms4labpack.errors import (
    AlreadyValid,
    BudgetExceeded,
    ConsistencyError,
    FrameError,
    InvalidArgument,
    NotSubalgebra,
)
from ms4labpack.formula import to_text
from ms4labpack.frame import depth, lowest, members, q_depth, validate, worldset
from ms4labpack.semantics import evaluate, extensions, valid


# Largest number of elements materialised or checked element by element.
CARRIER_LIMIT = 1 << 16

# Largest algebra whose identities are checked after construction.
IDENTITY_CHECK_LIMIT = CARRIER_LIMIT

SIGNATURE_OPERATORS = ('dia', 'ex', 'bdia')


def _frame_operator(f, name):
    return getattr(f, name)


class _BlockClosure:
    """
    ∃': the union of the blocks meeting a set.
    """

    def __init__(self, blocks):
        self.blocks = tuple(blocks)

    def __call__(self, ws):
        out = 0
        for block in self.blocks:
            if block & ws:
                out |= block
        return out


class FiniteBAO:
    """
    A finite Boolean algebra of world sets of `frame` with unary operators.
    `atoms` partition the worlds, `ops` maps operator names to functions on
    world sets.
    """

    def __init__(self, frame, atoms, ops, approximate=False):
        self.frame = frame
        self._atoms = tuple(sorted(atoms, key=lowest))
        self.ops = dict(ops)
        self.signature = tuple(self.ops)
        self.approximate = approximate

    def __repr__(self):
        return (f'FiniteBAO(atoms={[members(a) for a in self._atoms]}, '
                f'signature={self.signature})')

    def atoms(self):
        return self._atoms

    @property
    def size(self):
        return 1 << len(self._atoms)

    def contains(self, ws):
        if ws & ~self.frame.full:
            return False
        return all(not ws & a or not a & ~ws for a in self._atoms)

    def atoms_below(self, ws):
        return [i for i, a in enumerate(self._atoms) if a & ws]

    def elements(self):
        """
        Every element, in increasing order of the atom subsets building it.
        """
        for subset in range(self.size):
            ws = 0
            for i in members(subset):
                ws |= self._atoms[i]
            yield ws

    def _check_size(self):
        if self.size > CARRIER_LIMIT:
            raise BudgetExceeded('carrier', self.size, CARRIER_LIMIT)

    @functools.cached_property
    def carrier(self):
        self._check_size()
        return tuple(sorted(self.elements()))

    @functools.cached_property
    def _index(self):
        return {a: i for i, a in enumerate(self.carrier)}

    def index_of(self, ws):
        try:
            return self._index[ws]
        except KeyError:
            raise NotSubalgebra(f'{members(ws)} is not an element') from None

    def apply(self, op, ws):
        return self.ops[op](ws)

    def table(self, op):
        return tuple(self.index_of(self.apply(op, a)) for a in self.carrier)

    def fixpoints(self, op):
        return [a for a in self.carrier if self.apply(op, a) == a]

    def check_identities(self):
        """
        Names of the MS4-algebra identities failing for some element.
        """
        self._check_size()
        full = self.frame.full
        failed = []

        def note(name):
            if name not in failed:
                failed.append(name)

        def atom_union(op, a):
            out = 0
            for atom in self._atoms:
                if atom & a:
                    out |= self.apply(op, atom)
            return out

        closures = [op for op in ('dia', 'ex', 'bdia') if op in self.ops]
        for op in closures:
            if self.apply(op, 0) != 0:
                note(f'{op}(0) = 0')

        for a in self.elements():
            for op in closures:
                c = self.apply(op, a)
                if not self.contains(c):
                    note(f'{op} closed')
                if a & ~c:
                    note(f'a <= {op}(a)')
                if self.apply(op, c) & ~c:
                    note(f'{op}({op}(a)) <= {op}(a)')
                if c != atom_union(op, a):
                    note(f'{op} additive')

            if 'ex' in self.ops:
                ex = self.ops['ex']
                forall = full & ~ex(full & ~a)
                if ex(forall) & ~forall:
                    note('E(A(a)) <= A(a)')
                if 'dia' in self.ops:
                    dia = self.ops['dia']
                    if ex(dia(a)) & ~dia(ex(a)):
                        note('E(<>a) <= <>(E(a))')
                    if ex(dia(ex(a))) != dia(ex(a)):
                        note('E(<>(E(a))) = <>(E(a))')
        return failed


def _signature_ops(f, signature):
    unknown = [op for op in signature if op not in SIGNATURE_OPERATORS]
    if unknown:
        raise InvalidArgument(f'unknown operators {unknown}, use {SIGNATURE_OPERATORS}')
    return {op: _frame_operator(f, op) for op in signature}


def _assert_identities(algebra, what):
    """
    Raise :py:class:`ConsistencyError` when `algebra` breaks an MS4-algebra
    identity. Returns False when the algebra is too large to check.
    """
    if algebra.size > IDENTITY_CHECK_LIMIT:
        logging.warning('Not checking the identities of the %s: %d elements, limit is %d',
                        what, algebra.size, IDENTITY_CHECK_LIMIT)
        return False
    failed = algebra.check_identities()
    if failed:
        raise ConsistencyError(f'{what} violates {failed}')
    return True


def dual_algebra(f):
    """
    The full powerset algebra of `f` with ◊ and ∃.
    """
    algebra = FiniteBAO(f, [1 << x for x in range(f.n)], _signature_ops(f, ('dia', 'ex')))
    _assert_identities(algebra, 'dual algebra')
    return algebra


def _split(atoms, ws):
    """
    Refine the partition `atoms` by `ws`. Returns the new atoms and the
    atoms that were created.
    """
    result = []
    created = []
    for a in atoms:
        inside = a & ws
        outside = a & ~ws
        if inside and outside:
            result += [inside, outside]
            created += [inside, outside]
        else:
            result.append(a)
    return result, created


def generated_subalgebra(f, gens, signature=('dia',)):
    """
    The least subalgebra containing `gens` and closed under the Boolean
    operations and the operators of `signature` (a subset of
    ``('dia', 'ex', 'bdia')``).
    """
    ops = _signature_ops(f, signature)
    atoms = [f.full]
    for g in gens:
        if g & ~f.full or g < 0:
            raise InvalidArgument(f'generator {g:#x} is not a set of worlds')
        atoms, _ = _split(atoms, g)

    queue = sorted(atoms, key=lowest)
    while queue:
        a = queue.pop(0)
        if a not in atoms:
            continue
        for op in ops.values():
            atoms, created = _split(atoms, op(a))
            queue += created

    return FiniteBAO(f, atoms, ops)


def approximate_exists(f, algebra):
    """
    Replace ∃ on a ◊-closed subalgebra B' by ∃'a, the least element of B'
    that is an ∃-fixpoint above a.
    """
    if 'dia' not in algebra.ops:
        raise NotSubalgebra('the subalgebra has no ◊')
    atoms = algebra.atoms()
    for a in atoms:
        if not algebra.contains(f.dia(a)):
            raise NotSubalgebra(f'◊ of atom {members(a)} is not an element')

    # Blocks: the atoms of the ∃-fixpoints in B', atoms joined by E.
    parent = list(range(len(atoms)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, a in enumerate(atoms):
        saturated = f.ex(a)
        for j, b in enumerate(atoms):
            if j > i and saturated & b:
                parent[find(j)] = find(i)

    blocks: typing.Dict[int, int] = {}
    for i, a in enumerate(atoms):
        root = find(i)
        blocks[root] = blocks.get(root, 0) | a

    ops = {'dia': f.dia, 'ex': _BlockClosure(sorted(blocks.values(), key=lowest))}
    result = FiniteBAO(f, atoms, ops, approximate=True)

    if _assert_identities(result, 'approximate algebra'):
        for a in result.elements():
            if algebra.contains(f.ex(a)) and result.apply('ex', a) != f.ex(a):
                raise ConsistencyError(f"∃' and ∃ differ on {members(a)}")
    return result


def _atoms_in(atoms, ws):
    return worldset(i for i, a in enumerate(atoms) if a & ws)


def dual_frame_of_subalgebra(f, algebra):
    """
    The atom structure of `algebra`: one world per atom, atom i seeing atom j
    for an operator iff atom i lies below the operator applied to atom j.
    """
    atoms = algebra.atoms()
    k = len(atoms)
    R = np.zeros((k, k), dtype=bool)
    E = np.zeros((k, k), dtype=bool)
    for j, b in enumerate(atoms):
        seen_by = algebra.apply('dia', b)
        saturated = algebra.apply('ex', b)
        for i, a in enumerate(atoms):
            R[i, j] = not a & ~seen_by
            E[i, j] = not a & ~saturated

    labels = ['{' + ','.join(f.labels[x] for x in members(a)) + '}' for a in atoms]
    try:
        g = validate(R, E, labels)
    except FrameError as e:
        raise ConsistencyError(f'atom structure is not an MS4 frame: {e}') from e

    for op, frame_op in (('dia', g.dia), ('ex', g.ex)):
        for j, b in enumerate(atoms):
            if frame_op(1 << j) != _atoms_in(atoms, algebra.apply(op, b)):
                raise ConsistencyError(f'{op} is not preserved on atom {j}')
    return g, atoms


@dataclasses.dataclass(frozen=True)
class FmpResult:
    frame: typing.Any
    valuation: typing.Dict[str, int]
    world: int
    algebra: FiniteBAO
    atoms: typing.Tuple[int, ...]

    def to_json(self):
        return {
            'worlds': self.frame.n,
            'atoms': [members(a) for a in self.atoms],
            'valuation': {name: members(ws) for name, ws in self.valuation.items()},
            'world': self.world,
        }


def fmp_countermodel(f, phi, signature=('dia',), max_valuations=DEFAULT_MAX_VALUATIONS):
    """
    Turn a countermodel of `phi` on `f` into one on the atom structure of
    the subalgebra generated by the truth sets of the subterms of `phi`,
    with ∃ replaced by its approximation.
    """
    verdict = valid(f, phi, max_valuations)
    if verdict.valid:
        raise AlreadyValid(f'{to_text(phi)} is valid on the frame')
    cm = verdict.countermodel

    ext = extensions(f, cm.valuation, phi)
    closed = generated_subalgebra(f, list(ext.values()), signature)
    algebra = approximate_exists(f, closed)
    g, atoms = dual_frame_of_subalgebra(f, algebra)

    valuation = {name: _atoms_in(atoms, ws) for name, ws in cm.valuation.items()}
    world = next(i for i, a in enumerate(atoms) if a & (1 << cm.world))

    if evaluate(g, valuation, phi) & (1 << world):
        raise ConsistencyError(f'{to_text(phi)} holds at the image of the countermodel')
    if depth(g) > depth(f):
        raise ConsistencyError('the finite frame is deeper than the source frame')
    if 'bdia' in signature and q_depth(f) == 1 and q_depth(g) > 1:
        raise ConsistencyError('the finite frame of a semisimple frame is not semisimple')

    return FmpResult(g, valuation, world, algebra, atoms)


@dataclasses.dataclass(frozen=True)
class GrowthPoint:
    k: int
    max_size: int
    trials: int


@dataclasses.dataclass(frozen=True)
class GrowthCurve:
    points: typing.Tuple[GrowthPoint, ...]

    def to_csv(self):
        out = io.StringIO()
        writer = csv.writer(out, lineterminator='\n')
        writer.writerow(['k', 'max_size', 'trials'])
        for p in self.points:
            writer.writerow([p.k, p.max_size, p.trials])
        return out.getvalue()


def growth_probe(family, k_max, trials, seed):
    """
    For k = 1..k_max, the largest subalgebra generated under ◊ and ∃ by k
    random world sets, over all frames of `family` and `trials` draws each.
    The generators for k extend those for k - 1, so the sizes never shrink.
    """
    if k_max < 1 or trials < 1:
        raise InvalidArgument('k_max and trials must be at least 1')
    frames = list(family)
    best = [0] * k_max
    for i, f in enumerate(frames):
        rng = np.random.default_rng(np.random.SeedSequence([seed, i]))
        for _ in range(trials):
            gens = [worldset(np.flatnonzero(rng.random(f.n) < 0.5)) for _ in range(k_max)]
            for k in range(1, k_max + 1):
                size = generated_subalgebra(f, gens[:k], ('dia', 'ex')).size
                best[k - 1] = max(best[k - 1], size)
    return GrowthCurve(tuple(GrowthPoint(k, best[k - 1], trials) for k in range(1, k_max + 1)))


def staircase_growth(k_max):
    """
    The subalgebra generated under ◊ and ∃ by the cells below the diagonal of
    the k x k grid, for k = 1..k_max. It is the whole powerset every time, so
    a single generator yields 2^(k*k) elements.
    """
    if k_max < 1:
        raise InvalidArgument('k_max must be at least 1')
    points = []
    for k in range(1, k_max + 1):
        f = grid_frame(k, k)[1]
        size = generated_subalgebra(f, [staircase(k)], ('dia', 'ex')).size
        points.append(GrowthPoint(k, size, 1))
    return GrowthCurve(tuple(points))
