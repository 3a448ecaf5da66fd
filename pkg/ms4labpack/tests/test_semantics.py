# MS4LAB - Finite MS4 Frame and Algebra Workbench
# SPDX-License-Identifier: GPL-3.0-or-later
# SPDX-FileCopyrightText: 2026 ms4lab developers

import itertools

import numpy as np

import pytest

from ms4labpack.constructions import chain_frame, grid_frame, random_frame
from ms4labpack.errors import BudgetExceeded, InvalidArgument, UnboundVariable
from ms4labpack.formula import (
    AxiomName,
    BDia,
    Box,
    Dia,
    Ex,
    GRZ,
    Imp,
    MS4AX,
    Var,
    build_axiom,
    parse,
    variables,
    zero_transform,
)
from ms4labpack.frame import (
    e_clusters,
    members,
    q_relation,
    quotient_frame,
    validate,
    worldset,
)
from ms4labpack.semantics import (
    Status,
    compile_formula,
    decode_valuation,
    evaluate,
    extensions,
    valid,
    valid_over,
    valid_parallel,
    valuation_count,
)


p = Var('p')
P1 = build_axiom(AxiomName.p(1))
P2 = build_axiom(AxiomName.p(2))
P3 = build_axiom(AxiomName.p(3))


def test_evaluate():
    f = chain_frame(3)
    assert evaluate(f, {'p': 0b001}, Dia(p)) == 0b111
    assert evaluate(f, {'p': 0b001}, Box(p)) == 0b001
    assert evaluate(f, {'p': 0b110}, Dia(p)) == 0b110
    assert evaluate(f, {'p': 0b010}, Ex(p)) == 0b010
    assert evaluate(f, {}, parse('true -> false')) == 0


def test_extensions():
    f = chain_frame(2)
    ext = extensions(f, {'p': 0b01}, Imp(Dia(p), p))
    assert ext[p] == 0b01
    assert ext[Dia(p)] == 0b11
    assert ext[Imp(Dia(p), p)] == 0b01


def test_unbound_variable():
    with pytest.raises(UnboundVariable) as excinfo:
        evaluate(chain_frame(2), {'q': 0}, p)
    assert excinfo.value.name == 'p'


def test_value_outside_frame():
    with pytest.raises(InvalidArgument):
        evaluate(chain_frame(2), {'p': 0b100}, p)


def test_valuation_order():
    program = compile_formula(parse('a & b'))
    assert program.names == ('a', 'b')
    assert decode_valuation(program, 2, 0b0110) == {'a': 0b01, 'b': 0b10}
    assert decode_valuation(program, 2, 0b1100) == {'a': 0b11, 'b': 0b00}


def test_chain2_refutes_p1():
    verdict = valid(chain_frame(2), P1)
    assert not verdict.valid
    assert verdict.checked == 2
    cm = verdict.countermodel
    assert cm.valuation == {'q1': 0b01}
    assert cm.world == 1
    assert verdict.to_json() == {
        'verdict': 'invalid',
        'checked': 2,
        'countermodel': {'valuation': {'q1': [0]}, 'world': 1, 'label': '1'},
    }


def test_valid():
    verdict = valid(chain_frame(1), P1)
    assert verdict.valid
    assert verdict.countermodel is None
    assert verdict.checked == 2
    assert valid(random_frame(4, 0.4, seed=5), build_axiom(MS4AX)).valid


def test_countermodel_is_first_failure():
    f = chain_frame(3)
    verdict = valid(f, P2)
    program = compile_formula(P2)
    for index in range(verdict.checked - 1):
        v = decode_valuation(program, f.n, index)
        assert evaluate(f, v, P2) == f.full
    assert evaluate(f, verdict.countermodel.valuation, P2) & (1 << verdict.countermodel.world) == 0


def test_budget():
    f = grid_frame(3, 3)[1]
    assert valuation_count(f, P3) == 1 << 27
    with pytest.raises(BudgetExceeded) as excinfo:
        valid(f, P3, max_valuations=1000)
    assert excinfo.value.needed == 1 << 27
    assert excinfo.value.cap == 1000


@pytest.mark.filterwarnings('ignore::DeprecationWarning')
def test_parallel_matches_sequential():
    f = chain_frame(6)
    sequential = valid(f, P3)
    parallel = valid_parallel(f, P3, workers=2)
    assert not sequential.valid
    assert parallel == sequential


def test_parallel_single_worker():
    f = grid_frame(2, 2)[1]
    assert valid_parallel(f, P1, workers=1) == valid(f, P1)


@pytest.mark.parametrize('seed', range(8))
def test_bdia_is_q_preimage(seed):
    f = random_frame(3 + seed % 3, 0.3, seed=seed)
    q = q_relation(f)
    rng = np.random.default_rng(seed)
    for _ in range(10):
        ws = worldset(np.flatnonzero(rng.random(f.n) < 0.5))
        expected = worldset(x for x in range(f.n) if q[x, members(ws)].any())
        assert evaluate(f, {'p': ws}, BDia(p)) == expected


@pytest.mark.parametrize('seed', range(6))
def test_validity_survives_quotient(seed):
    f = random_frame(3, 0.4, seed=seed)
    g, _ = quotient_frame(f)
    for name in (AxiomName.p(1), GRZ, AxiomName.p0(1)):
        phi = build_axiom(name)
        if valid(f, phi).valid:
            assert valid(g, phi).valid


def test_valid_over():
    chains = [chain_frame(n) for n in range(1, 5)]

    report = valid_over(chains, build_axiom(GRZ))
    assert report.aggregate is Status.VALID
    assert [item.status for item in report.items] == [Status.VALID] * 4

    report = valid_over(chains, P2)
    assert report.aggregate is Status.INVALID
    assert [item.status for item in report.items] == [
        Status.VALID, Status.VALID, Status.INVALID, Status.INVALID]
    assert report.items[2].countermodel is not None

    assert valid_over([], P2).aggregate is Status.VALID


def test_valid_over_budget():
    report = valid_over([chain_frame(1), grid_frame(3, 3)[1]], P3, max_valuations=1 << 10)
    assert [item.status for item in report.items] == [Status.VALID, Status.BUDGET_EXCEEDED]
    assert report.aggregate is Status.UNKNOWN
    assert report.to_json()['aggregate'] == 'unknown'


def _saturated_valuations(f, names):
    clusters = e_clusters(f)
    unions = []
    for subset in range(1 << len(clusters)):
        ws = 0
        for i in members(subset):
            ws |= clusters[i]
        unions.append(ws)
    for sets in itertools.product(unions, repeat=len(names)):
        yield dict(zip(names, sets))


EXISTS_FREE = [parse(text) for text in (
    '<>[]p -> []p',
    '[]([](p -> []p) -> p) -> p',
    '[]([]p -> q) | []([]q -> p)',
    '<>[]p -> []<>p',
    '~(<>p & <>~p)',
    '[]p -> p',
)]


@pytest.mark.parametrize('seed', range(8))
def test_zero_transform_against_quotient(seed):
    f = random_frame(3 + seed % 2, 0.4, seed=seed)
    g, _ = quotient_frame(f)
    for phi in EXISTS_FREE:
        phi0 = zero_transform(phi)
        on_saturated = all(evaluate(f, v, phi0) == f.full
                           for v in _saturated_valuations(f, variables(phi)))
        assert on_saturated == valid(g, phi).valid, phi
        if valid(f, phi0).valid:
            assert valid(g, phi).valid, phi

    for n in (1, 2):
        assert (valid(f, build_axiom(AxiomName.p0(n))).valid ==
                valid(g, build_axiom(AxiomName.p(n))).valid)


def test_zero_transform_needs_saturated_valuations():
    f = validate(np.eye(2), np.ones((2, 2)))
    phi = parse('~(<>p & <>~p)')
    assert valid(quotient_frame(f)[0], phi).valid
    verdict = valid(f, zero_transform(phi))
    assert not verdict.valid
    assert verdict.countermodel.valuation == {'p': 0b01}
