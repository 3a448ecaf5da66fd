# MS4LAB - Finite MS4 Frame and Algebra Workbench
# SPDX-License-Identifier: GPL-3.0-or-later
# SPDX-FileCopyrightText: 2026 ms4lab developers

"""
First-order frame conditions matching the named axioms, decided directly
on the relations.
"""

import dataclasses
import logging
import typing

import numpy as np

from ms4labpack.config import DEFAULT_CLUSTER_CAP, DEFAULT_PATH_CAP
from ms4labpack.errors import BudgetExceeded, InvalidArgument
from ms4labpack.formula import (
    AxiomKind,
    AxiomName,
    BAR,
    ED,
    GRZ,
    MCAS_PLUS,
    MS4AX,
    SC,
)
from ms4labpack.frame import (
    SIKind,
    classify_si,
    depth,
    e_clusters,
    flat,
    layers,
    lowest,
    members,
    q_depth,
    q_relation,
    qmax,
    re_relation,
    restrict,
    worldset,
)
from ms4labpack.semantics import Countermodel


@dataclasses.dataclass(frozen=True)
class ConditionReport:
    name: str
    verdict: bool
    witness: typing.Optional[tuple] = None

    def to_json(self):
        witness = None
        if self.witness is not None:
            witness = [sorted(w) if isinstance(w, frozenset) else w for w in self.witness]
        return {'name': self.name, 'verdict': self.verdict, 'witness': witness}


@dataclasses.dataclass(frozen=True)
class PathWitness:
    worlds: typing.Tuple[int, ...]
    tags: typing.Tuple[typing.FrozenSet[str], ...]
    proper: bool

    @property
    def length(self):
        return len(self.worlds) - 1

    def to_json(self):
        return {
            'worlds': list(self.worlds),
            'tags': [sorted(t) for t in self.tags],
            'proper': self.proper,
        }


def check_barcan(f):
    """
    ER ⊆ RE: whenever x R y E y', some x' has x E x' R y'.
    """
    unmatched = q_relation(f) & ~re_relation(f)
    if not unmatched.any():
        return ConditionReport('bar', True)
    x, y2 = (int(i) for i in np.argwhere(unmatched)[0])
    y = int(np.flatnonzero(f.R[x] & f.E[:, y2])[0])
    return ConditionReport('bar', False, (x, y, y2))


def check_ed(f):
    missing = f.E & ~f.R
    if not missing.any():
        return ConditionReport('ed', True)
    x, y = (int(i) for i in np.argwhere(missing)[0])
    return ConditionReport('ed', False, (x, y))


def check_sc(f):
    comparable = f.R | f.R.T
    for x in range(f.n):
        above = np.flatnonzero(f.R[x])
        gaps = ~comparable[np.ix_(above, above)]
        if gaps.any():
            i, j = np.argwhere(gaps)[0]
            return ConditionReport('sc', False, (x, int(above[i]), int(above[j])))
    return ConditionReport('sc', True)


def check_grz_finite(f):
    """
    On finite frames Grz holds iff R is antisymmetric.
    """
    clash = f.R & f.R.T & ~np.eye(f.n, dtype=bool)
    if not clash.any():
        return ConditionReport('grz', True)
    x, y = (int(i) for i in np.argwhere(clash)[0])
    return ConditionReport('grz', False, (x, y))


def check_mcas_semantic(f, cluster_cap=DEFAULT_CLUSTER_CAP):
    """
    For every union U of E-clusters, every R-maximal point of U lies in a
    flat E-cluster. Witness ``(U, x)`` for the first failing U in
    increasing cluster-subset order.
    """
    clusters = e_clusters(f)
    if len(clusters) > cluster_cap:
        raise BudgetExceeded('clusters', len(clusters), cluster_cap)

    bad = 0
    for cluster in clusters:
        if not flat(f, cluster):
            bad |= cluster
    if not bad:
        return ConditionReport('mcas', True)

    for subset in range(1, 1 << len(clusters)):
        U = 0
        for i in members(subset):
            U |= clusters[i]
        top = qmax(f, U) & bad
        if top:
            return ConditionReport('mcas', False, (frozenset(members(U)), lowest(top)))
    return ConditionReport('mcas', True)


def check_flat_clusters(f):
    for cluster in e_clusters(f):
        if not flat(f, cluster):
            return ConditionReport('flat_clusters', False, (frozenset(members(cluster)),))
    return ConditionReport('flat_clusters', True)


def check_s52_layers(f):
    """
    Every layer, restricted to itself, is a frame of two commuting
    equivalences.
    """
    for i, layer in enumerate(layers(f).layers):
        if not restrict(f, layer).report['s5_squared']:
            return ConditionReport('s52_layers', False, (i + 1,))
    return ConditionReport('s52_layers', True)


class _PathSearch:
    """
    Depth first search over irreducible paths, trying successors in
    increasing world order so the first longest path found is the
    lexicographically least one.
    """

    def __init__(self, f, proper, cap):
        self.s_rows = [worldset(np.flatnonzero(row)) for row in f.R | f.E]
        self.both_rows = [worldset(np.flatnonzero(row)) for row in f.R & f.E]
        self.proper = proper
        self.cap = cap
        self.n = f.n
        self.best = 0
        self.best_path = None
        self.path = []

    def _extend(self, forbidden):
        # forbidden: the path itself and everything S-seen from all but its last world
        length = len(self.path) - 1
        if length > self.best:
            self.best = length
            self.best_path = tuple(self.path)
            if length >= self.cap:
                return True
        last = self.path[-1]
        candidates = self.s_rows[last] & ~forbidden
        if self.proper:
            candidates &= ~self.both_rows[last]
        for y in members(candidates):
            self.path.append(y)
            if self._extend(forbidden | self.s_rows[last] | (1 << y)):
                return True
            self.path.pop()
        return False

    def run(self):
        for x in range(self.n):
            self.path = [x]
            if self._extend(1 << x):
                break
        return self.best, self.best_path


def _tags(f, worlds):
    tags = []
    for x, y in zip(worlds, worlds[1:]):
        tag = set()
        if f.R[x, y]:
            tag.add('R')
        if f.E[x, y]:
            tag.add('E')
        tags.append(frozenset(tag))
    return tuple(tags)


def longest_irreducible_path(f, proper=False, cap=DEFAULT_PATH_CAP):
    """
    The length of the longest irreducible S-path (S = R ∪ E), searched up to
    `cap`, and the lexicographically first path of that length.

    A path x0 S x1 ... S xk is irreducible when its worlds are distinct and no
    xi S xj+1 holds for i < j: no later world is reachable in one step from
    a world two or more places back. It is proper when no step is both an R
    and an E step. A single world is a path of length 0.
    """
    length, worlds = _PathSearch(f, proper, cap).run()
    if not length:
        return 0, None
    return length, PathWitness(worlds, _tags(f, worlds), proper)


def check_rp(f, m):
    """
    RP_m: every irreducible path has length at most m.
    """
    if m < 1:
        raise InvalidArgument(f'rp needs m >= 1, got {m}')
    length, witness = longest_irreducible_path(f, proper=False, cap=m + 1)
    name = f'rp{m}'
    if length <= m:
        return ConditionReport(name, True)
    return ConditionReport(name, False, witness.worlds)


def depth_countermodel(f, n, zero=False):
    """
    A valuation refuting P(n) (or P0(n) with `zero`) when the frame (or its
    E-quotient) has depth above n: along a strictly ascending chain
    x(n+1) ... x1, q_k is the set of worlds seen from x_k.
    Returns None when the depth is at most n.
    """
    if n < 1:
        raise InvalidArgument(f'depth needs n >= 1, got {n}')
    relation = q_relation(f) if zero else f.R
    rows = [worldset(np.flatnonzero(row)) for row in relation]
    back = [worldset(np.flatnonzero(col)) for col in relation.T]

    remaining = f.full
    levels = []
    while remaining:
        top = 0
        for x in members(remaining):
            if not rows[x] & remaining & ~back[x]:
                top |= 1 << x
        levels.append(top)
        remaining &= ~top
    if len(levels) <= n:
        return None

    chain = [lowest(levels[n])]
    for k in range(n - 1, -1, -1):
        chain.append(lowest(rows[chain[-1]] & levels[k]))
    # chain[0] is x(n+1), chain[-1] is x1
    valuation = {f'q{k}': rows[chain[n + 1 - k]] for k in range(1, n + 1)}
    return Countermodel(f, valuation, chain[0])


# Correspondence between named axioms and conditions

def condition_holds(name, f, cluster_cap=DEFAULT_CLUSTER_CAP):
    """
    Decide on the relations of `f` the frame condition of the axiom `name`.
    Raises :py:class:`BudgetExceeded` when the M+Cas condition needs more
    than `cluster_cap` E-clusters.
    """
    kind = name.kind
    if kind is AxiomKind.MS4AX:
        return True
    if kind is AxiomKind.BAR:
        return check_barcan(f).verdict
    if kind is AxiomKind.MCAS_PLUS:
        return check_mcas_semantic(f, cluster_cap).verdict
    if kind is AxiomKind.GRZ:
        return check_grz_finite(f).verdict
    if kind is AxiomKind.SC:
        return check_sc(f).verdict
    if kind is AxiomKind.ED:
        return check_ed(f).verdict
    if kind is AxiomKind.P:
        return depth(f) <= name.n
    if kind is AxiomKind.P0:
        return q_depth(f) <= name.n
    return check_rp(f, name.n).verdict


CORRESPONDENCE = (
    (MS4AX, BAR, MCAS_PLUS, GRZ, SC, ED) +
    tuple(AxiomName.p(n) for n in (1, 2, 3)) +
    tuple(AxiomName.p0(n) for n in (1, 2, 3)) +
    tuple(AxiomName.rp(m) for m in (1, 2, 3))
)


@dataclasses.dataclass(frozen=True)
class Classification:
    """
    Frame classes `f` belongs to, and the ones a tripped budget left open.
    """
    classes: typing.FrozenSet[str]
    undecided: typing.FrozenSet[str] = frozenset()
    budget: typing.Optional[BudgetExceeded] = None


def classify_frame(f, cluster_cap=DEFAULT_CLUSTER_CAP):
    names = {'MS4'}
    undecided = set()
    d = depth(f)
    d0 = q_depth(f)
    barcan = check_barcan(f).verdict
    semisimple = d0 == 1

    budget = None
    try:
        mcas = check_mcas_semantic(f, cluster_cap).verdict
    except BudgetExceeded as e:
        logging.warning('Not deciding M+Cas: %s', e)
        budget = e
        mcas = None
    grz = check_grz_finite(f).verdict
    sc = check_sc(f).verdict
    ed = check_ed(f).verdict

    if barcan:
        names.add('MS4B')
    if mcas:
        names.add('M+S4')
    elif mcas is None:
        undecided.add('M+S4')
    if semisimple:
        names.add('MS4_S')
        if barcan:
            names.add('MS4B_S')
    if grz:
        names.add('grz')
    if sc:
        names.add('sc')
    if ed:
        names.add('ed')
    if d == 1 and restrict(f, f.full).report['s5_squared']:
        names.add('S5^2')
    if grz and sc and ed:
        if mcas:
            names.add('L_omega')
        elif mcas is None:
            undecided.add('L_omega')

    si = classify_si(f)
    if si is SIKind.SIMPLE:
        names.add('simple')
    elif si is SIKind.SI:
        names.add('SI')

    names.add(f'depth {d}')
    names.add(f'q-depth {d0}')
    names.add(f'MS4[{d}]')
    return Classification(frozenset(names), frozenset(undecided), budget)


def classify(f, cluster_cap=DEFAULT_CLUSTER_CAP):
    """
    Names of the frame classes `f` provably belongs to. Classes depending
    on an M+Cas check over more than `cluster_cap` clusters are left out,
    :py:func:`classify_frame` lists them as undecided.

    >>> from ms4labpack.constructions import chain_frame
    >>> sorted(classify(chain_frame(2)))
    ['L_omega', 'M+S4', 'MS4', 'MS4B', 'MS4[2]', 'SI', 'depth 2', 'ed', 'grz', 'q-depth 2', 'sc']
    """
    return set(classify_frame(f, cluster_cap).classes)
