# MS4LAB - Finite MS4 Frame and Algebra Workbench
# SPDX-License-Identifier: GPL-3.0-or-later
# SPDX-FileCopyrightText: 2026 ms4lab developers

"""
Property suites cross-checking the formula side against the relational side
on many frames. Each suite returns a :py:class:`SuiteReport`; a suite passes
when it has no failures.
"""

import dataclasses
import logging
import multiprocessing
import typing

import numpy as np

from ms4labpack.algebra import fmp_countermodel
from ms4labpack.conditions import (
    CORRESPONDENCE,
    check_barcan,
    check_ed,
    check_flat_clusters,
    check_grz_finite,
    check_mcas_semantic,
    check_s52_layers,
    check_sc,
    condition_holds,
    depth_countermodel,
    longest_irreducible_path,
)
from ms4labpack.config import DEFAULT_CLUSTER_CAP
from ms4labpack.constructions import (
    chain_frame,
    enumerate_frames,
    grid_frame,
    layered_grid_frame,
    random_frame,
    random_s52_frame,
    selective_filtration,
    translate,
)
from ms4labpack.errors import BudgetExceeded, GiveUp
from ms4labpack.formula import AxiomName, BAR, ED, GRZ, MCAS_PLUS, SC, build_axiom
from ms4labpack.frame import (
    SIKind,
    classify_si,
    depth,
    e_clusters,
    e_saturated,
    layers,
    q_depth,
    q_roots,
    r_clusters,
)
from ms4labpack.semantics import Status, evaluate, valid, valid_over


# Valuation budget of the suites: rp3 on five worlds is decided relationally.
SUITE_MAX_VALUATIONS = 1 << 21

GRID_GOLDENS = {2: 2, 3: 4, 4: 6}

# The path (0,0) S (1,0) S (1,1) S (2,1) in the 3 x 3 grid and its transpose.
GRID_PREFIXES = (((0, 0), (1, 0), (1, 1), (2, 1)),
                 ((0, 0), (0, 1), (1, 1), (1, 2)))

_DENSITIES = (0.15, 0.3, 0.5)


@dataclasses.dataclass
class SuiteReport:
    name: str
    checked: int = 0
    failures: typing.List[dict] = dataclasses.field(default_factory=list)
    details: typing.Dict[str, int] = dataclasses.field(default_factory=dict)

    @property
    def ok(self):
        return not self.failures

    def count(self, key, amount=1):
        self.details[key] = self.details.get(key, 0) + amount

    def to_json(self):
        return {
            'suite': self.name,
            'ok': self.ok,
            'checked': self.checked,
            'failures': self.failures,
            'details': self.details,
        }


def _pool_map(func, items, threads):
    if threads <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with multiprocessing.Pool(threads) as pool:
        return pool.map(func, items, chunksize=1)


def suite_frames(max_worlds=3, random_count=500, random_max_worlds=5, seed=0):
    """
    Every frame on up to `max_worlds` worlds followed by `random_count`
    random frames of 1..`random_max_worlds` worlds.
    """
    frames = []
    for n in range(1, max_worlds + 1):
        frames += enumerate_frames(n)
    for i in range(random_count):
        n = 1 + i % random_max_worlds
        try:
            frames.append(random_frame(n, _DENSITIES[i % len(_DENSITIES)], seed + i))
        except GiveUp as e:
            logging.warning('Skipping random frame %d: %s', i, e)
    return frames


def _correspondence_job(args):
    index, f, max_valuations, cluster_cap = args
    rows = []
    for name in CORRESPONDENCE:
        try:
            expected = condition_holds(name, f, cluster_cap)
        except BudgetExceeded:
            expected = None
        try:
            got = valid(f, build_axiom(name), max_valuations).valid
        except BudgetExceeded:
            got = None
        rows.append((index, str(name), got, expected))
    logging.debug('Frame %d: %d axioms checked on %d worlds', index, len(rows), f.n)
    return rows


def correspondence(frames, max_valuations=SUITE_MAX_VALUATIONS, threads=1,
                   cluster_cap=DEFAULT_CLUSTER_CAP):
    report = SuiteReport('correspondence')
    jobs = [(i, f, max_valuations, cluster_cap) for i, f in enumerate(frames)]
    for rows in _pool_map(_correspondence_job, jobs, threads):
        for index, axiom, got, expected in rows:
            report.checked += 1
            if expected is None:
                report.count('condition undecided')
            elif got is None:
                report.count('relational only')
            elif got != expected:
                report.failures.append({'frame': index, 'axiom': axiom,
                                        'formula': got, 'condition': expected})
    return report


def _mcas_structure_job(args):
    index, f, cluster_cap = args
    try:
        if not check_mcas_semantic(f, cluster_cap).verdict:
            return None
    except BudgetExceeded:
        return index, None
    problems = []
    decomposition = layers(f)
    if not all(e_saturated(f, layer) for layer in decomposition.layers):
        problems.append('layer not E-saturated')
    if not check_flat_clusters(f).verdict:
        problems.append('cluster not flat')
    if depth(f) != q_depth(f):
        problems.append('depth differs from q-depth')
    if not check_s52_layers(f).verdict:
        problems.append('layer is not an S5^2 frame')
    if classify_si(f) is not SIKind.NOT_SI and q_roots(f) != decomposition.layers[-1]:
        problems.append('roots are not the deepest layer')
    return index, problems


def mcas_structure(frames, threads=1, cluster_cap=DEFAULT_CLUSTER_CAP):
    report = SuiteReport('mcas_structure')
    jobs = [(i, f, cluster_cap) for i, f in enumerate(frames)]
    for result in _pool_map(_mcas_structure_job, jobs, threads):
        if result is None:
            continue
        index, problems = result
        if problems is None:
            report.count('undecided')
            continue
        report.checked += 1
        for problem in problems:
            report.failures.append({'frame': index, 'problem': problem})
    return report


def translation(count=100, max_worlds=6, seed=0, max_valuations=SUITE_MAX_VALUATIONS):
    report = SuiteReport('translation')
    p2 = build_axiom(AxiomName.p(2))
    p3 = build_axiom(AxiomName.p(3))
    for i in range(count):
        s52 = random_s52_frame(1 + i % max_worlds, _DENSITIES[i % len(_DENSITIES)], seed + i)
        g = translate(s52)
        logging.debug('Translation %d: %d worlds from %d', i, g.n, s52.n)
        report.checked += 1
        problems = []
        if not check_barcan(g).verdict:
            problems.append('not Barcan')
        if classify_si(g) is not SIKind.SIMPLE:
            problems.append('not simple')
        if depth(g) != 3:
            problems.append(f'depth {depth(g)}')
        if g.n != s52.n + 2 * len(s52.e2_classes()):
            problems.append(f'{g.n} worlds')

        refutation = depth_countermodel(g, 2)
        if refutation is None or evaluate(g, refutation.valuation, p2) & (1 << refutation.world):
            problems.append('P2 not refuted')
        try:
            if not valid(g, p3, max_valuations).valid:
                problems.append('P3 refuted')
        except BudgetExceeded:
            report.count('P3 decided by depth')
            if depth_countermodel(g, 3) is not None:
                problems.append('P3 refuted')

        for problem in problems:
            report.failures.append({'frame': i, 'problem': problem})
    return report


FMP_AXIOMS = (AxiomName.p(1), AxiomName.p(2), AxiomName.p0(1), BAR, MCAS_PLUS, GRZ, SC, ED)


def fmp(frames, count=50, max_valuations=SUITE_MAX_VALUATIONS):
    report = SuiteReport('fmp')
    for index, f in enumerate(frames):
        for name in FMP_AXIOMS:
            if report.checked >= count:
                return report
            phi = build_axiom(name)
            try:
                if valid(f, phi, max_valuations).valid:
                    continue
            except BudgetExceeded:
                continue
            report.checked += 1
            result = fmp_countermodel(f, phi, max_valuations=max_valuations)
            g = result.frame
            problems = []
            if evaluate(g, result.valuation, phi) & (1 << result.world):
                problems.append('formula holds at the image world')
            if depth(g) > depth(f):
                problems.append('finite frame is deeper')
            failed = result.algebra.check_identities()
            if failed:
                problems.append('identities: ' + ', '.join(failed))
            for problem in problems:
                report.failures.append({'frame': index, 'axiom': str(name), 'problem': problem})
    return report


def path_lemma_frame(rng, m):
    """
    A simple Barcan frame of depth at most 2 with more than m E-clusters and
    more than 2m R-clusters.
    """
    cols = int(rng.integers(m + 1, m + 3))
    rows = int(rng.integers(2 * m + 1, 2 * m + 3))
    if rng.random() < 0.5:
        return grid_frame(rows, cols)[1]
    top = int(rng.integers(1, rows))
    return layered_grid_frame(top, rows - top, cols)


def irreducible_path(count=200, seed=0, ms=(1, 2)):
    report = SuiteReport('irreducible_path')
    rng = np.random.default_rng(seed)
    for i in range(count):
        m = ms[i % len(ms)]
        f = path_lemma_frame(rng, m)
        report.checked += 1
        assumptions = (classify_si(f) is SIKind.SIMPLE and check_barcan(f).verdict and
                       depth(f) <= 2 and len(e_clusters(f)) > m and len(r_clusters(f)) > 2 * m)
        if not assumptions:
            report.failures.append({'frame': i, 'm': m, 'problem': 'frame misses the assumptions'})
            continue
        length, _ = longest_irreducible_path(f, proper=True, cap=m + 1)
        if length <= m:
            report.failures.append({'frame': i, 'm': m, 'problem': f'longest proper path {length}'})
    return report


def grid(sizes=(2, 3, 4)):
    report = SuiteReport('grid')
    lengths = []
    for k in sizes:
        f = grid_frame(k, k)[1]
        length, witness = longest_irreducible_path(f)
        lengths.append(length)
        report.checked += 1
        report.details[f'k={k}'] = length
        if k in GRID_GOLDENS and length != GRID_GOLDENS[k]:
            report.failures.append({'k': k, 'length': length, 'expected': GRID_GOLDENS[k]})
        if k == 3:
            cells = tuple(divmod(x, k) for x in witness.worlds[:4])
            if cells not in GRID_PREFIXES:
                report.failures.append({'k': k, 'problem': f'witness starts {cells}'})
    if any(a >= b for a, b in zip(lengths, lengths[1:])):
        report.failures.append({'problem': f'lengths not increasing: {lengths}'})
    return report


FILTRATION_AXIOMS = (AxiomName.p(1), AxiomName.p(2), AxiomName.p(3),
                     AxiomName.p0(1), AxiomName.p0(2))


def filtration(frames, max_valuations=SUITE_MAX_VALUATIONS):
    report = SuiteReport('filtration')
    for index, f in enumerate(frames):
        if f.n > 5 or not (check_grz_finite(f).verdict and check_sc(f).verdict and
                           check_ed(f).verdict):
            continue
        for name in FILTRATION_AXIOMS:
            phi = build_axiom(name)
            try:
                verdict = valid(f, phi, max_valuations)
            except BudgetExceeded:
                continue
            if verdict.valid:
                continue
            report.checked += 1
            result = selective_filtration(f, phi, verdict.countermodel.valuation)
            chain = result.chain
            if chain.n > depth(f):
                report.failures.append({'frame': index, 'axiom': str(name),
                                        'problem': f'chain of {chain.n} worlds'})
            if evaluate(chain, result.valuation, phi) == chain.full:
                report.failures.append({'frame': index, 'axiom': str(name),
                                        'problem': 'formula holds on the chain'})
    return report


MINIMAL_VARIETY_AXIOMS = (AxiomName.p(1), AxiomName.p(2), AxiomName.p(3), GRZ, ED)


def minimal_variety(max_chain=6):
    report = SuiteReport('minimal_variety')
    chains = [chain_frame(n) for n in range(1, max_chain + 1)]
    for name in MINIMAL_VARIETY_AXIOMS:
        over = valid_over(chains, build_axiom(name))
        for item, f in zip(over.items, chains):
            report.checked += 1
            expected = name.n is None or f.n <= name.n
            if (item.status is Status.VALID) != expected:
                report.failures.append({'axiom': str(name), 'chain': f.n,
                                        'status': item.status.value})
    return report
