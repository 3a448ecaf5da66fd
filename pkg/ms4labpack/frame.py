# MS4LAB - Finite MS4 Frame and Algebra Workbench
# SPDX-License-Identifier: GPL-3.0-or-later
# SPDX-FileCopyrightText: 2026 ms4lab developers

"""
Finite MS4 frames (X, R, E): R a quasi-order, E an equivalence and every
step xEyRy' matched by some xRx'Ey'.

Relations are dense numpy boolean matrices, ``R[x, y]`` meaning x R y.
Sets of worlds are plain ints used as bitmasks, world i being bit i.

>>> f = validate([[1, 0], [1, 1]], [[1, 0], [0, 1]])
>>> members(f.dia(worldset([0])))
[0, 1]
>>> depth(f), [members(d) for d in layers(f).layers]
(2, [[0], [1]])
"""

import dataclasses
import enum
import functools
import typing

import numpy as np

from ms4labpack.errors import (
    CommutationFails,
    ConsistencyError,
    EmptyFrame,
    FrameError,
    NotEquivalence,
    NotQuasiOrder,
)


WorldSet = int

# Above this many worlds the vectorised operators loop over the bits
# instead of using a lookup table with 2**n entries.
TABLE_WORLD_LIMIT = 16

# Largest frame the vectorised operators work on (world sets are uint64).
BATCH_WORLD_LIMIT = 63


def bits(n):
    return (1 << n) - 1


def worldset(worlds):
    ws = 0
    for x in worlds:
        ws |= 1 << int(x)
    return ws


def members(ws):
    result = []
    x = 0
    while ws:
        if ws & 1:
            result.append(x)
        ws >>= 1
        x += 1
    return result


def popcount(ws):
    return bin(ws).count('1')


def lowest(ws):
    return (ws & -ws).bit_length() - 1


def compose(a, b):
    """
    Relational composition "a then b": x (a;b) z iff x a y and y b z for some y.
    """
    return (a.astype(np.int64) @ b.astype(np.int64)) > 0


def reflexive_transitive_closure(rel):
    closure = np.asarray(rel, dtype=bool) | np.eye(len(rel), dtype=bool)
    while True:
        nxt = closure | compose(closure, closure)
        if np.array_equal(nxt, closure):
            return closure
        closure = nxt


def equivalence_closure(rel):
    rel = np.asarray(rel, dtype=bool)
    return reflexive_transitive_closure(rel | rel.T)


def relation_from_pairs(n, pairs):
    rel = np.zeros((n, n), dtype=bool)
    for x, y in pairs:
        if not (0 <= x < n and 0 <= y < n):
            raise FrameError(f'pair ({x}, {y}) names a world outside 0..{n - 1}')
        rel[x, y] = True
    return rel


def relation_pairs(rel):
    return [(int(x), int(y)) for x, y in np.argwhere(rel)]


def _row_sets(rel):
    return tuple(worldset(np.flatnonzero(row)) for row in rel)


def _frozen(rel):
    rel = np.array(rel, dtype=bool)
    rel.setflags(write=False)
    return rel


def _operator_table(preimages):
    table = np.zeros(1, dtype=np.uint64)
    for p in preimages:
        table = np.concatenate((table, table | np.uint64(p)))
    return table


def _classes(rows):
    seen = 0
    result = []
    for x, row in enumerate(rows):
        if not seen & (1 << x):
            result.append(row)
            seen |= row
    return result


class MS4Frame:
    """
    An immutable finite frame. Use :py:func:`validate` to build one from
    user data, the constructor does not check the frame conditions.
    """

    def __init__(self, R, E, labels=None):
        self.R = _frozen(R)
        self.E = _frozen(E)
        self.n = len(self.R)
        if labels is None:
            labels = [str(x) for x in range(self.n)]
        self.labels = tuple(labels)

    def __repr__(self):
        return f'MS4Frame(n={self.n}, R={relation_pairs(self.R)}, E={relation_pairs(self.E)})'

    def __eq__(self, other):
        if not isinstance(other, MS4Frame):
            return NotImplemented
        return (self.n == other.n and self.labels == other.labels and
                np.array_equal(self.R, other.R) and np.array_equal(self.E, other.E))

    def __hash__(self):
        return hash((self.n, self.labels, self.R.tobytes(), self.E.tobytes()))

    def __getstate__(self):
        return {'R': self.R, 'E': self.E, 'labels': self.labels}

    def __setstate__(self, state):
        self.__init__(state['R'], state['E'], state['labels'])

    @property
    def full(self):
        return bits(self.n)

    @functools.cached_property
    def r_rows(self):
        return _row_sets(self.R)

    @functools.cached_property
    def r_preimages(self):
        return _row_sets(self.R.T)

    @functools.cached_property
    def e_rows(self):
        return _row_sets(self.E)

    def _apply(self, preimages, ws):
        out = 0
        for y in members(ws):
            out |= preimages[y]
        return out

    def dia(self, ws):
        """◊: the worlds that see a member of `ws`."""
        return self._apply(self.r_preimages, ws)

    def ex(self, ws):
        """∃: the E-saturation of `ws`."""
        return self._apply(self.e_rows, ws)

    def bdia(self, ws):
        return self.dia(self.ex(ws))

    def box(self, ws):
        return self.full & ~self.dia(self.full & ~ws)

    @functools.cached_property
    def _dia_table(self):
        return _operator_table(self.r_preimages)

    @functools.cached_property
    def _ex_table(self):
        return _operator_table(self.e_rows)

    def _apply_batch(self, preimages, table_name, sets):
        if self.n <= TABLE_WORLD_LIMIT:
            return getattr(self, table_name)[sets.astype(np.intp)]
        out = np.zeros_like(sets)
        one = np.uint64(1)
        for y, p in enumerate(preimages):
            hit = ((sets >> np.uint64(y)) & one).astype(bool)
            out[hit] |= np.uint64(p)
        return out

    def dia_batch(self, sets):
        """:py:meth:`dia` applied to a uint64 array of world sets."""
        return self._apply_batch(self.r_preimages, '_dia_table', sets)

    def ex_batch(self, sets):
        return self._apply_batch(self.e_rows, '_ex_table', sets)


class S52Frame:
    """
    A finite set with two equivalence relations, not necessarily commuting.
    """

    def __init__(self, E1, E2, labels=None):
        self.E1 = _frozen(E1)
        self.E2 = _frozen(E2)
        self.n = len(self.E1)
        if labels is None:
            labels = [str(x) for x in range(self.n)]
        self.labels = tuple(labels)

    def __repr__(self):
        return (f'S52Frame(n={self.n}, E1={relation_pairs(self.E1)}, '
                f'E2={relation_pairs(self.E2)})')

    def __eq__(self, other):
        if not isinstance(other, S52Frame):
            return NotImplemented
        return (self.n == other.n and self.labels == other.labels and
                np.array_equal(self.E1, other.E1) and np.array_equal(self.E2, other.E2))

    def __hash__(self):
        return hash((self.n, self.labels, self.E1.tobytes(), self.E2.tobytes()))

    def e2_classes(self):
        return _classes(_row_sets(self.E2))


def _first(mat):
    return tuple(int(i) for i in np.argwhere(mat)[0])


def _as_square(rel, name, n=None):
    rel = np.asarray(rel, dtype=bool)
    if rel.ndim != 2 or rel.shape[0] != rel.shape[1]:
        raise FrameError(f'{name} must be a square matrix, got shape {rel.shape}')
    if n is not None and len(rel) != n:
        raise FrameError(f'{name} has {len(rel)} worlds, expected {n}')
    return rel


def _check_quasi_order(R):
    diag = np.diagonal(R)
    if not diag.all():
        raise NotQuasiOrder((int(np.flatnonzero(~diag)[0]),))
    gaps = compose(R, R) & ~R
    if gaps.any():
        x, z = _first(gaps)
        y = int(np.flatnonzero(R[x] & R[:, z])[0])
        raise NotQuasiOrder((x, y, z))


def _check_equivalence(rel, name):
    diag = np.diagonal(rel)
    if not diag.all():
        x = int(np.flatnonzero(~diag)[0])
        raise NotEquivalence(name, (x, x))
    asym = rel & ~rel.T
    if asym.any():
        raise NotEquivalence(name, _first(asym))
    gaps = compose(rel, rel) & ~rel
    if gaps.any():
        x, z = _first(gaps)
        y = int(np.flatnonzero(rel[x] & rel[:, z])[0])
        raise NotEquivalence(name, (x, y, z))


def validate(R, E, labels=None, close_R=False, close_E=False):
    """
    Check the MS4 frame conditions and return the frame.
    With `close_R` / `close_E` the relations are first replaced by their
    reflexive-transitive / equivalence closures.
    """
    if np.size(R) == 0:
        raise EmptyFrame()
    R = _as_square(R, 'R')
    E = _as_square(E, 'E', len(R))
    if labels is not None and len(labels) != len(R):
        raise FrameError(f'{len(labels)} labels for {len(R)} worlds')

    if close_R:
        R = reflexive_transitive_closure(R)
    if close_E:
        E = equivalence_closure(E)

    _check_quasi_order(R)
    _check_equivalence(E, 'E')

    unmatched = compose(E, R) & ~compose(R, E)
    if unmatched.any():
        x, y2 = _first(unmatched)
        y = int(np.flatnonzero(E[x] & R[:, y2])[0])
        raise CommutationFails(x, y, y2)

    return MS4Frame(R, E, labels)


def validate_s52(E1, E2, labels=None, close=False):
    if np.size(E1) == 0:
        raise EmptyFrame()
    E1 = _as_square(E1, 'E1')
    E2 = _as_square(E2, 'E2', len(E1))
    if close:
        E1 = equivalence_closure(E1)
        E2 = equivalence_closure(E2)
    _check_equivalence(E1, 'E1')
    _check_equivalence(E2, 'E2')
    return S52Frame(E1, E2, labels)


# Derived relations

def q_relation(f):
    """
    x Q y iff x R z and z E y for some z. Q is the relation of ◊∃.
    """
    q = compose(f.R, f.E)
    try:
        _check_quasi_order(q)
    except NotQuasiOrder as e:
        raise ConsistencyError(f'Q is not a quasi-order: {e}') from e
    return q


def re_relation(f):
    """
    x (E;R) y iff x E z and z R y for some z. Barcan frames have Q ⊆ E;R.
    """
    return compose(f.E, f.R)


def s_relation(f):
    return f.R | f.E


def er_relation(f):
    return f.R & f.R.T


def eq_relation(f):
    q = q_relation(f)
    return q & q.T


def e_clusters(f):
    return _classes(f.e_rows)


def r_clusters(f):
    return _classes(_row_sets(er_relation(f)))


def q_clusters(f):
    return _classes(_row_sets(eq_relation(f)))


# Layers

@dataclasses.dataclass(frozen=True)
class LayerDecomposition:
    layers: typing.Tuple[WorldSet, ...]
    residue: WorldSet = 0

    @property
    def depth(self):
        return len(self.layers)

    def layer_of(self, x):
        for i, layer in enumerate(self.layers):
            if layer & (1 << x):
                return i + 1
        raise ValueError(f'world {x} is in no layer')


def qmax(f, A):
    """
    The R-maximal points of A: x in A such that x R y with y in A implies y R x.
    """
    result = 0
    for x in members(A):
        above = f.r_rows[x] & A
        if not above & ~f.r_preimages[x]:
            result |= 1 << x
    return result


def layers(f):
    remaining = f.full
    found = []
    while remaining:
        top = qmax(f, remaining)
        if not top:
            raise ConsistencyError('a non-empty set without maximal points')
        found.append(top)
        remaining &= ~top
    return LayerDecomposition(tuple(found))


def depth(f):
    return layers(f).depth


def point_depth(f, x):
    return layers(f).layer_of(x)


def strict_chain(f, x):
    """
    A strictly ascending R-chain from `x` through one point of every layer
    above it, choosing the least world each time.
    """
    decomposition = layers(f)
    k = decomposition.layer_of(x)
    chain = [x]
    while k > 1:
        k -= 1
        above = f.r_rows[chain[-1]] & decomposition.layers[k - 1]
        chain.append(lowest(above))
    return chain


def quotient_map(f):
    class_of = [0] * f.n
    for i, cluster in enumerate(e_clusters(f)):
        for x in members(cluster):
            class_of[x] = i
    return tuple(class_of)


def quotient_frame(f):
    """
    The frame (X/E, R̄) with [x] R̄ [y] iff some member of [x] sees some
    member of [y]. Classes are ordered by their least member.
    """
    clusters = e_clusters(f)
    class_of = quotient_map(f)
    size = len(clusters)
    R = np.zeros((size, size), dtype=bool)
    for x, y in np.argwhere(f.R):
        R[class_of[x], class_of[y]] = True
    labels = ['{' + ','.join(f.labels[x] for x in members(c)) + '}' for c in clusters]
    return validate(R, np.eye(size, dtype=bool), labels), class_of


def q_depth(f):
    return depth(quotient_frame(f)[0])


# Restriction

@dataclasses.dataclass(frozen=True)
class Restriction:
    worlds: typing.Tuple[int, ...]
    R: np.ndarray
    E: np.ndarray
    labels: typing.Tuple[str, ...]
    report: typing.Dict[str, bool]

    def as_frame(self):
        return validate(self.R, self.E, self.labels)


def _is_quasi_order(rel):
    try:
        _check_quasi_order(rel)
    except NotQuasiOrder:
        return False
    return True


def _is_equivalence(rel):
    try:
        _check_equivalence(rel, 'relation')
    except NotEquivalence:
        return False
    return True


def restrict(f, U):
    worlds = tuple(members(U))
    index = np.array(worlds, dtype=np.intp)
    R = f.R[np.ix_(index, index)]
    E = f.E[np.ix_(index, index)]

    r_equiv = _is_equivalence(R)
    e_equiv = _is_equivalence(E)
    commutes = not (compose(E, R) & ~compose(R, E)).any()
    report = {
        'R_quasi_order': _is_quasi_order(R),
        'R_equivalence': r_equiv,
        'E_equivalence': e_equiv,
        'commutes': commutes,
    }
    report['ms4'] = report['R_quasi_order'] and e_equiv and commutes
    report['s5_squared'] = (r_equiv and e_equiv and
                            np.array_equal(compose(R, E), compose(E, R)))

    return Restriction(worlds, R, E, tuple(f.labels[x] for x in worlds), report)


# Roots and subset predicates

class SIKind(enum.Enum):
    SIMPLE = 'simple'
    SI = 'SI'
    NOT_SI = 'NotSI'


def q_roots(f):
    """
    T(F): the worlds that Q-see every world.
    """
    full = f.full
    rows = _row_sets(q_relation(f))
    return worldset(x for x in range(f.n) if rows[x] == full)


def classify_si(f):
    roots = q_roots(f)
    if roots == f.full:
        return SIKind.SIMPLE
    if roots:
        return SIKind.SI
    return SIKind.NOT_SI


def flat(f, A):
    for x in members(A):
        if f.r_rows[x] & A & ~f.r_preimages[x]:
            return False
    return True


def e_saturated(f, A):
    return f.ex(A) == A


def passive_points(f, U):
    """
    Points of U that cannot leave U and come back: x is active iff
    x R y R z for some y outside U and z in U.
    """
    returning = f.dia(U) & ~U
    return worldset(x for x in members(U) if not f.r_rows[x] & returning)


def is_p_morphism(f, g, mapping):
    """
    Whether `mapping` (a sequence sending world x of `f` to mapping[x] in `g`)
    is a p-morphism for both R and E.
    """
    if len(mapping) != f.n or any(not 0 <= y < g.n for y in mapping):
        return False
    for src, dst in ((f.R, g.R), (f.E, g.E)):
        dst_rows = _row_sets(dst)
        for x in range(f.n):
            image = worldset(mapping[y] for y in np.flatnonzero(src[x]))
            if image != dst_rows[mapping[x]]:
                return False
    return True
