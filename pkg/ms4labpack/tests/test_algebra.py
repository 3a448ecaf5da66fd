# MS4LAB - Finite MS4 Frame and Algebra Workbench
# SPDX-License-Identifier: GPL-3.0-or-later
# SPDX-FileCopyrightText: 2026 ms4lab developers

import itertools

import numpy as np

import pytest

from ms4labpack import algebra as algebra_module
from ms4labpack.algebra import (
    CARRIER_LIMIT,
    FiniteBAO,
    IDENTITY_CHECK_LIMIT,
    approximate_exists,
    dual_algebra,
    dual_frame_of_subalgebra,
    fmp_countermodel,
    generated_subalgebra,
    growth_probe,
    staircase_growth,
)
from ms4labpack.constructions import chain_frame, grid_frame, product_frame, random_frame
from ms4labpack.errors import AlreadyValid, InvalidArgument, NotSubalgebra
from ms4labpack.formula import AxiomName, MCAS_PLUS, build_axiom
from ms4labpack.frame import depth, e_clusters, validate
from ms4labpack.semantics import evaluate


def arrow_frame():
    return validate([[1, 1], [0, 1]], [[1, 1], [1, 1]])


def s5_cluster():
    return validate(np.eye(2), np.ones((2, 2)))


def test_dual_algebra():
    assert dual_algebra(chain_frame(1)).size == 2
    algebra = dual_algebra(chain_frame(2))
    assert algebra.size == 4
    assert algebra.carrier == (0, 1, 2, 3)
    assert algebra.table('dia') == (0, 3, 2, 3)
    assert algebra.fixpoints('ex') == [0, 1, 2, 3]
    assert algebra.check_identities() == []


def test_generated_ex():
    algebra = generated_subalgebra(s5_cluster(), [0b01], ('ex',))
    assert algebra.carrier == (0, 1, 2, 3)
    assert algebra.signature == ('ex',)


def test_generated_dia():
    f = grid_frame(2, 2)[1]
    algebra = generated_subalgebra(f, [0b0011], ('dia',))
    assert algebra.carrier == (0, 3, 12, 15)
    assert algebra.contains(0b1100)
    assert not algebra.contains(0b0101)
    assert algebra.check_identities() == []


def test_generated_is_closed():
    f = random_frame(5, 0.3, seed=4)
    algebra = generated_subalgebra(f, [0b00101, 0b11000], ('dia', 'ex'))
    for a in algebra.carrier:
        assert algebra.contains(f.dia(a))
        assert algebra.contains(f.ex(a))
    assert algebra.contains(0b00101)


def test_generated_bad_input():
    f = chain_frame(2)
    with pytest.raises(InvalidArgument):
        generated_subalgebra(f, [0b100])
    with pytest.raises(InvalidArgument):
        generated_subalgebra(f, [0b01], ('box',))


def test_approximate_exists():
    f = grid_frame(2, 2)[1]
    algebra = approximate_exists(f, generated_subalgebra(f, [0b0011], ('dia',)))
    assert algebra.approximate
    assert algebra.ops['ex'].blocks == (0b1111,)
    assert algebra.apply('ex', 0b0011) == 0b1111

    g, atoms = dual_frame_of_subalgebra(f, algebra)
    assert atoms == (0b0011, 0b1100)
    assert g.n == 2
    assert np.array_equal(g.R, np.eye(2, dtype=bool))
    assert g.E.all()


def test_approximate_exists_needs_dia():
    f = s5_cluster()
    with pytest.raises(NotSubalgebra):
        approximate_exists(f, generated_subalgebra(f, [0b01], ('ex',)))


def test_dia_closure_checked():
    f = chain_frame(2)
    algebra = FiniteBAO(f, [0b11], {'dia': f.dia})
    assert algebra.size == 2
    with pytest.raises(NotSubalgebra):
        algebra.index_of(0b01)


@pytest.mark.parametrize('n', [1, 2, 3, 4])
def test_dual_round_trip(n):
    f = chain_frame(n)
    g, atoms = dual_frame_of_subalgebra(f, dual_algebra(f))
    assert atoms == tuple(1 << x for x in range(n))
    assert np.array_equal(g.R, f.R)
    assert np.array_equal(g.E, f.E)


def _nontrivial_e(f):
    return len(e_clusters(f)) not in (1, f.n)


# Frames with both several E-classes and an E-class of several worlds.
STRUCTURED_FRAMES = [
    product_frame(chain_frame(2), 2),
    product_frame(chain_frame(3), 2),
    grid_frame(2, 3)[1],
] + [f for f in (random_frame(n, 0.2, seed) for n in (4, 5) for seed in range(12))
     if _nontrivial_e(f)]


def _upsets(f):
    return [a for a in range(f.full + 1)
            if all(not f.R[x, y] or a >> y & 1 for x in range(f.n) if a >> x & 1
                   for y in range(f.n))]


def _downsets(f):
    return [a for a in range(f.full + 1)
            if all(not f.R[y, x] or a >> y & 1 for x in range(f.n) if a >> x & 1
                   for y in range(f.n))]


@pytest.mark.parametrize('f', STRUCTURED_FRAMES)
def test_dual_round_trip_structured(f):
    assert _nontrivial_e(f)
    g, atoms = dual_frame_of_subalgebra(f, dual_algebra(f))
    assert atoms == tuple(1 << x for x in range(f.n))
    assert np.array_equal(g.R, f.R)
    assert np.array_equal(g.E, f.E)


@pytest.mark.parametrize('f', STRUCTURED_FRAMES)
def test_fixpoints(f):
    algebra = dual_algebra(f)
    clusters = e_clusters(f)
    saturated = sorted(sum(c) for k in range(len(clusters) + 1)
                       for c in itertools.combinations(clusters, k))
    assert algebra.fixpoints('ex') == saturated
    assert len(saturated) == 2 ** len(clusters)

    boxed = [a for a in algebra.carrier if f.box(a) == a]
    assert boxed == _upsets(f)
    assert algebra.fixpoints('dia') == _downsets(f)


def test_fixpoints_nonsymmetric():
    f = product_frame(chain_frame(2), 2)
    assert _upsets(f) != _downsets(f)
    assert len(dual_algebra(f).fixpoints('ex')) == 4


@pytest.mark.parametrize('seed', range(6))
def test_generated_order_independent(seed):
    f = random_frame(5, 0.2, seed)
    rng = np.random.default_rng(seed)
    gens = [int(g) for g in rng.integers(1, f.full, size=3)]
    first = generated_subalgebra(f, gens, ('dia', 'ex'))
    for order in itertools.permutations(gens):
        algebra = generated_subalgebra(f, list(order), ('dia', 'ex'))
        assert algebra.atoms() == first.atoms()
        assert algebra.size == first.size
    assert generated_subalgebra(f, gens + gens[:1], ('dia', 'ex')).size == first.size


def test_identity_check_limit(monkeypatch, caplog):
    assert IDENTITY_CHECK_LIMIT == CARRIER_LIMIT
    monkeypatch.setattr(algebra_module, 'IDENTITY_CHECK_LIMIT', 2)
    with caplog.at_level('WARNING'):
        assert dual_algebra(chain_frame(2)).size == 4
    assert [r.levelname for r in caplog.records] == ['WARNING']
    assert 'dual algebra' in caplog.text


@pytest.mark.parametrize(('f', 'name', 'signature'), [
    (chain_frame(2), AxiomName.p(1), ('dia',)),
    (chain_frame(3), AxiomName.p(2), ('dia',)),
    (arrow_frame(), MCAS_PLUS, ('dia',)),
    (arrow_frame(), MCAS_PLUS, ('dia', 'bdia')),
], ids=['L2-P1', 'L3-P2', 'arrow-mcas', 'arrow-mcas-bdia'])
def test_fmp(f, name, signature):
    phi = build_axiom(name)
    result = fmp_countermodel(f, phi, signature)
    assert not evaluate(result.frame, result.valuation, phi) & (1 << result.world)
    assert depth(result.frame) <= depth(f)
    assert result.algebra.check_identities() == []
    assert result.to_json()['worlds'] == result.frame.n


def test_fmp_already_valid():
    with pytest.raises(AlreadyValid):
        fmp_countermodel(chain_frame(1), build_axiom(AxiomName.p(1)))


def test_growth():
    curve = growth_probe([chain_frame(1)], k_max=3, trials=2, seed=0)
    assert [p.max_size for p in curve.points] == [2, 2, 2]
    assert [p.k for p in curve.points] == [1, 2, 3]

    curve = growth_probe([chain_frame(2)], k_max=3, trials=5, seed=1)
    sizes = [p.max_size for p in curve.points]
    assert all(size <= 4 for size in sizes)
    assert sizes == sorted(sizes)

    with pytest.raises(InvalidArgument):
        growth_probe([chain_frame(1)], k_max=0, trials=1, seed=0)


def test_growth_csv():
    curve = growth_probe([chain_frame(1)], k_max=2, trials=1, seed=0)
    assert curve.to_csv() == 'k,max_size,trials\n1,2,1\n2,2,1\n'


def test_staircase():
    assert [p.max_size for p in staircase_growth(3).points] == [2, 16, 512]
