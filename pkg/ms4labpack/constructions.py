# MS4LAB - Finite MS4 Frame and Algebra Workbench
# SPDX-License-Identifier: GPL-3.0-or-later
# SPDX-FileCopyrightText: 2026 ms4lab developers

import dataclasses
import itertools
import logging
import typing

import numpy as np

from ms4labpack.conditions import check_ed, check_grz_finite, check_sc
from ms4labpack.errors import (
    ConsistencyError,
    EmptyFrame,
    GiveUp,
    InvalidArgument,
    NotFalsified,
    PreconditionFailed,
)
from ms4labpack.formula import Dia, subterms, to_text, variables
from ms4labpack.frame import (
    S52Frame,
    compose,
    depth,
    equivalence_closure,
    lowest,
    members,
    qmax,
    reflexive_transitive_closure,
    validate,
    validate_s52,
    worldset,
)
from ms4labpack.semantics import evaluate, extensions


def _positive(name, value):
    if value < 1:
        raise InvalidArgument(f'{name} must be at least 1, got {value}')


def chain_frame(n):
    """
    L_n: worlds 0..n-1 with x R y iff x >= y and E the identity.
    World 0 is the top, world n-1 sees everything.
    """
    _positive('n', n)
    return validate(np.tril(np.ones((n, n), dtype=bool)), np.eye(n, dtype=bool))


def grid_frame(rows, cols):
    """
    The rows x cols grid: E1 relates cells of a row, E2 cells of a column.
    Returns the S5₂ frame and its MS4 view with R = E1 and E = E2.
    """
    _positive('rows', rows)
    _positive('cols', cols)
    cells = list(itertools.product(range(rows), range(cols)))
    row = np.array([r for r, _ in cells])
    col = np.array([c for _, c in cells])
    E1 = np.equal.outer(row, row)
    E2 = np.equal.outer(col, col)
    labels = [f'({r},{c})' for r, c in cells]
    return validate_s52(E1, E2, labels), validate(E1, E2, labels)


def layered_grid_frame(top_rows, bottom_rows, cols):
    """
    Two grids sharing their columns as E-classes, every cell of the bottom
    grid seeing every cell of the top grid. A simple Barcan frame of depth 2.
    """
    _positive('top_rows', top_rows)
    _positive('bottom_rows', bottom_rows)
    _positive('cols', cols)
    cells = ([(0, r, c) for r in range(top_rows) for c in range(cols)] +
             [(1, r, c) for r in range(bottom_rows) for c in range(cols)])
    layer = np.array([t for t, _, _ in cells])
    row = np.array([r for _, r, _ in cells])
    col = np.array([c for _, _, c in cells])
    R = (np.equal.outer(layer, layer) & np.equal.outer(row, row)) | \
        np.logical_and.outer(layer == 1, layer == 0)
    E = np.equal.outer(col, col)
    return validate(R, E, [f"{'TB'[t]}({r},{c})" for t, r, c in cells])


def s4_order(R):
    """
    A frame with discrete E on the reflexive-transitive closure of `R`.
    """
    R = np.asarray(R, dtype=bool)
    return validate(R, np.eye(len(R), dtype=bool), close_R=True)


def product_frame(s4, k):
    """
    (X × Y, R1, E2) for an S4 frame X and a k-element S5 frame Y:
    (x, y) R1 (x', y') iff x R x' and y = y', (x, y) E2 (x', y') iff x = x'.
    """
    _positive('k', k)
    n = s4.n
    R = np.kron(s4.R, np.eye(k, dtype=bool)).astype(bool)
    E = np.kron(np.eye(n, dtype=bool), np.ones((k, k), dtype=bool)).astype(bool)
    labels = [f'({s4.labels[x]},{y})' for x in range(n) for y in range(k)]
    return validate(R, E, labels)


def disjoint_union(frames):
    if not frames:
        raise EmptyFrame()
    total = sum(f.n for f in frames)
    R = np.zeros((total, total), dtype=bool)
    E = np.zeros((total, total), dtype=bool)
    labels = []
    offset = 0
    for i, f in enumerate(frames):
        R[offset:offset + f.n, offset:offset + f.n] = f.R
        E[offset:offset + f.n, offset:offset + f.n] = f.E
        labels += [f'{i}:{label}' for label in f.labels]
        offset += f.n
    return validate(R, E, labels)


def translate(s52):
    """
    Turn an S5₂ frame (X, E1, E2) into an MS4 frame of depth 3.

    With L = X/E2, the new worlds are X, a top rail {α^T} and a bottom rail
    {α_B} for α in L. E extends E2 by joining α^T and α_B to the class α.
    R is E1 on X, the bottom rail sees everything, X sees the top rail and
    the top rail is one R-cluster.
    """
    n = s52.n
    if n == 0:
        raise EmptyFrame()
    classes = s52.e2_classes()
    c = len(classes)
    size = n + 2 * c

    def top(a):
        return n + a

    def bottom(a):
        return n + c + a

    E = np.zeros((size, size), dtype=bool)
    E[:n, :n] = s52.E2
    for a, cls in enumerate(classes):
        for x in members(cls):
            E[x, top(a)] = E[x, bottom(a)] = True
    E = equivalence_closure(E)

    R = np.zeros((size, size), dtype=bool)
    R[:n, :n] = s52.E1
    R[n + c:, :] = True
    R[:n, n:n + c] = True
    R[n:n + c, n:n + c] = True

    labels = list(s52.labels)
    for rail in ('T', 'B'):
        labels += [rail + '{' + ','.join(s52.labels[x] for x in members(cls)) + '}'
                   for cls in classes]
    return validate(R, E, labels)


@dataclasses.dataclass(frozen=True)
class Filtration:
    chain: typing.Any
    valuation: typing.Dict[str, int]
    selected: typing.Tuple[int, ...]
    agreement: typing.Tuple[typing.Tuple[str, typing.Tuple[int, ...]], ...]

    def to_json(self):
        return {
            'm': self.chain.n,
            'selected': list(self.selected),
            'valuation': {name: members(ws) for name, ws in self.valuation.items()},
            'agreement': {text: list(worlds) for text, worlds in self.agreement},
        }


def selective_filtration(f, phi, nu):
    """
    Pick from a Grz.sc.ed frame refuting `phi` under `nu` a finite chain of
    worlds on which every subterm of `phi` keeps its truth value.

    The seed is a maximal world of ⟦¬phi⟧ whose E-cluster is a singleton.
    For each chosen x and each ◊psi true but psi false at x, a maximal world
    of ⟦psi⟧ above x with singleton cluster is added. Ties go to the least
    world. The chosen worlds form a chain and are returned as L_m.
    """
    failed = [r.name for r in (check_grz_finite(f), check_sc(f), check_ed(f)) if not r.verdict]
    if failed:
        raise PreconditionFailed(failed)

    ext = extensions(f, nu, phi)
    falsified = f.full & ~ext[phi]
    if not falsified:
        raise NotFalsified(f'{to_text(phi)} holds everywhere under the valuation')

    singletons = worldset(x for x in range(f.n) if f.e_rows[x] == 1 << x)
    diamonds = [t for t in subterms(phi) if isinstance(t, Dia)]

    seed = qmax(f, falsified) & singletons
    if not seed:
        raise ConsistencyError('no maximal refuting world with a singleton cluster')
    chosen = 1 << lowest(seed)
    frontier = [lowest(seed)]

    while frontier:
        added = []
        for x in sorted(frontier):
            here = 1 << x
            for d in diamonds:
                if not ext[d] & here or ext[d.arg] & here:
                    continue
                candidates = qmax(f, ext[d.arg]) & f.r_rows[x] & singletons
                if not candidates:
                    raise ConsistencyError(f'no witness for {to_text(d)} at world {x}')
                y = lowest(candidates)
                if not chosen & (1 << y):
                    chosen |= 1 << y
                    added.append(y)
        frontier = added

    selected = members(chosen)
    position = {}
    for x in selected:
        position[x] = len(members(f.r_rows[x] & chosen)) - 1
    if sorted(position.values()) != list(range(len(selected))):
        raise ConsistencyError('the selected worlds do not form a chain')
    if len(selected) > depth(f):
        raise ConsistencyError('the chain is longer than the frame is deep')

    by_position = tuple(sorted(selected, key=position.__getitem__))
    chain = chain_frame(len(selected))

    def transfer(ws):
        return worldset(position[x] for x in selected if ws & (1 << x))

    valuation = {name: transfer(nu[name]) for name in variables(phi)}
    agreement = []
    for t in subterms(phi):
        on_chain = evaluate(chain, valuation, t)
        if on_chain != transfer(ext[t]):
            raise ConsistencyError(f'{to_text(t)} changes its truth value on the chain')
        agreement.append((to_text(t), tuple(members(on_chain))))

    logging.debug('Filtration of %s keeps worlds %s', to_text(phi), by_position)
    return Filtration(chain, valuation, by_position, tuple(agreement))


def _rng(seed, *params):
    return np.random.default_rng(np.random.SeedSequence([seed, *params]))


def random_frame(n, density=0.3, seed=0, max_attempts=1000):
    """
    Sample R and E pairwise with probability `density`, close them and keep
    the first sample whose closures commute. The same arguments always
    yield the same frame.
    """
    _positive('n', n)
    if not 0.0 <= density <= 1.0:
        raise InvalidArgument(f'density must lie in [0, 1], got {density}')
    rng = _rng(seed, n, int(density * 1_000_000))
    for attempt in range(max_attempts):
        R = reflexive_transitive_closure(rng.random((n, n)) < density)
        E = equivalence_closure(rng.random((n, n)) < density)
        if not (compose(E, R) & ~compose(R, E)).any():
            logging.debug('random frame n=%d seed=%d accepted after %d attempts',
                          n, seed, attempt + 1)
            return validate(R, E)
    raise GiveUp(max_attempts)


def random_s52_frame(n, density=0.3, seed=0):
    _positive('n', n)
    rng = _rng(seed, n, int(density * 1_000_000), 52)
    E1 = equivalence_closure(rng.random((n, n)) < density)
    E2 = equivalence_closure(rng.random((n, n)) < density)
    return S52Frame(E1, E2)


# Exhaustive enumeration gets out of hand quickly above this size.
ENUMERATE_WORLD_LIMIT = 4


def _relations(n, predicate):
    off_diagonal = [(x, y) for x in range(n) for y in range(n) if x != y]
    for pattern in range(1 << len(off_diagonal)):
        rel = np.eye(n, dtype=bool)
        for k, (x, y) in enumerate(off_diagonal):
            if pattern >> (len(off_diagonal) - 1 - k) & 1:
                rel[x, y] = True
        if predicate(rel):
            yield rel


def _transitive(rel):
    return not (compose(rel, rel) & ~rel).any()


def _equivalence(rel):
    return np.array_equal(rel, rel.T) and _transitive(rel)


def enumerate_frames(n):
    """
    Every MS4 frame on worlds 0..n-1, ordered lexicographically by the
    row-major R matrix and then the E matrix.
    """
    _positive('n', n)
    if n > ENUMERATE_WORLD_LIMIT:
        raise InvalidArgument(f'enumerating frames on {n} worlds is not supported '
                              f'(at most {ENUMERATE_WORLD_LIMIT})')
    equivalences = list(_relations(n, _equivalence))
    for R in _relations(n, _transitive):
        for E in equivalences:
            if not (compose(E, R) & ~compose(R, E)).any():
                yield validate(R, E)


def staircase(k):
    """
    The cells (r, c) with c < r of the k x k grid, a single generator whose
    subalgebra grows with k.
    """
    _positive('k', k)
    return worldset(r * k + c for r in range(k) for c in range(r))
