# MS4LAB - Finite MS4 Frame and Algebra Workbench
# SPDX-License-Identifier: GPL-3.0-or-later
# SPDX-FileCopyrightText: 2026 ms4lab developers

import numpy as np

import pytest

from ms4labpack.conditions import (
    CORRESPONDENCE,
    check_barcan,
    check_ed,
    check_flat_clusters,
    check_grz_finite,
    check_mcas_semantic,
    check_rp,
    check_s52_layers,
    check_sc,
    classify,
    classify_frame,
    condition_holds,
    depth_countermodel,
    longest_irreducible_path,
)
from ms4labpack.constructions import (
    chain_frame,
    grid_frame,
    layered_grid_frame,
    product_frame,
    s4_order,
    translate,
)
from ms4labpack.errors import BudgetExceeded, InvalidArgument
from ms4labpack.formula import AxiomName, build_axiom
from ms4labpack.frame import e_clusters, flat, members, q_relation, qmax, validate
from ms4labpack.semantics import evaluate, valid, valuation_count
from ms4labpack.suites import suite_frames


def arrow_frame():
    return validate([[1, 1], [0, 1]], [[1, 1], [1, 1]])


def non_barcan_frame():
    R = np.eye(3, dtype=bool)
    R[0, 1] = True
    E = np.eye(3, dtype=bool)
    E[1, 2] = E[2, 1] = True
    return validate(R, E)


def fork_frame():
    return s4_order([[0, 1, 1], [0, 0, 0], [0, 0, 0]])


def grid2():
    return grid_frame(2, 2)[1]


def test_barcan():
    report = check_barcan(non_barcan_frame())
    assert not report.verdict
    assert report.witness == (0, 1, 2)
    assert check_barcan(arrow_frame()).verdict
    assert check_barcan(grid2()).verdict
    assert check_barcan(translate(grid_frame(2, 2)[0])).verdict


def test_ed():
    assert check_ed(grid2()).witness == (0, 2)
    assert check_ed(arrow_frame()).witness == (1, 0)
    assert check_ed(chain_frame(3)).verdict


def test_sc():
    report = check_sc(fork_frame())
    assert not report.verdict
    assert report.witness == (0, 1, 2)
    assert check_sc(chain_frame(4)).verdict
    assert check_sc(grid2()).verdict


def test_grz():
    assert check_grz_finite(grid2()).witness == (0, 1)
    assert check_grz_finite(arrow_frame()).verdict
    assert check_grz_finite(fork_frame()).verdict


def test_mcas():
    report = check_mcas_semantic(arrow_frame())
    assert not report.verdict
    assert report.witness == (frozenset({0, 1}), 1)
    assert report.to_json()['witness'] == [[0, 1], 1]

    assert check_mcas_semantic(grid2()).verdict
    assert check_mcas_semantic(chain_frame(3)).verdict
    assert check_mcas_semantic(product_frame(chain_frame(2), 2)).verdict


def test_mcas_cluster_cap():
    with pytest.raises(BudgetExceeded):
        check_mcas_semantic(chain_frame(4), cluster_cap=3)


def test_flat_clusters():
    assert check_flat_clusters(grid2()).verdict
    report = check_flat_clusters(arrow_frame())
    assert report.witness == (frozenset({0, 1}),)


def test_s52_layers():
    assert check_s52_layers(grid2()).verdict
    assert check_s52_layers(translate(grid_frame(2, 2)[0])).verdict
    assert check_s52_layers(chain_frame(3)).verdict


@pytest.mark.parametrize(('k', 'length'), [(2, 2), (3, 4), (4, 6)])
def test_grid_paths(k, length):
    found, witness = longest_irreducible_path(grid_frame(k, k)[1])
    assert found == length
    assert witness.length == length
    assert len(set(witness.worlds)) == length + 1


def test_grid_path_witness():
    _, witness = longest_irreducible_path(grid_frame(3, 3)[1])
    assert tuple(divmod(x, 3) for x in witness.worlds[:4]) == ((0, 0), (0, 1), (1, 1), (1, 2))
    assert witness.tags[0] == frozenset({'R'})
    assert witness.tags[1] == frozenset({'E'})


def test_chain_path():
    length, witness = longest_irreducible_path(chain_frame(3))
    assert length == 1
    assert witness.worlds == (1, 0)
    assert witness.tags == (frozenset({'R'}),)
    assert witness.to_json() == {'worlds': [1, 0], 'tags': [['R']], 'proper': False}


def test_single_world_path():
    assert longest_irreducible_path(chain_frame(1)) == (0, None)


def test_path_cap():
    length, witness = longest_irreducible_path(grid_frame(4, 4)[1], cap=3)
    assert length == 3
    assert witness.length == 3


def test_proper_paths():
    f = layered_grid_frame(1, 2, 2)
    length, witness = longest_irreducible_path(f, proper=True)
    assert witness.proper
    assert all(len(tag) == 1 for tag in witness.tags)
    assert length >= 2


def test_rp():
    assert not check_rp(grid2(), 1).verdict
    assert check_rp(grid2(), 1).witness == longest_irreducible_path(grid2(), cap=2)[1].worlds
    assert check_rp(grid2(), 2).verdict
    assert check_rp(chain_frame(5), 1).verdict
    with pytest.raises(InvalidArgument):
        check_rp(grid2(), 0)


def test_depth_countermodel():
    f = chain_frame(3)
    cm = depth_countermodel(f, 2)
    assert cm.valuation == {'q1': 0b001, 'q2': 0b011}
    assert cm.world == 2
    assert not evaluate(f, cm.valuation, build_axiom(AxiomName.p(2))) & (1 << 2)
    assert depth_countermodel(chain_frame(2), 2) is None
    with pytest.raises(InvalidArgument):
        depth_countermodel(f, 0)


def test_depth_countermodel_zero():
    f = arrow_frame()
    assert depth_countermodel(f, 1) is not None
    assert depth_countermodel(f, 1, zero=True) is None

    f = product_frame(chain_frame(3), 2)
    cm = depth_countermodel(f, 2, zero=True)
    assert not evaluate(f, cm.valuation, build_axiom(AxiomName.p0(2))) & (1 << cm.world)


@pytest.mark.parametrize('f', [
    chain_frame(2),
    chain_frame(3),
    grid2(),
    arrow_frame(),
    fork_frame(),
    non_barcan_frame(),
    product_frame(chain_frame(2), 2),
], ids=['L2', 'L3', 'grid', 'arrow', 'fork', 'non-barcan', 'product'])
def test_correspondence(f):
    for name in CORRESPONDENCE:
        phi = build_axiom(name)
        if valuation_count(f, phi) > 1 << 16:
            continue
        assert valid(f, phi).valid == condition_holds(name, f), name


def test_classify_chain():
    assert classify(chain_frame(2)) >= {
        'MS4', 'MS4B', 'M+S4', 'grz', 'sc', 'ed', 'depth 2', 'q-depth 2'}


def test_classify_grid():
    names = classify(grid2())
    assert names >= {'MS4', 'MS4B', 'M+S4', 'MS4_S', 'MS4B_S', 'S5^2', 'simple', 'depth 1'}
    assert 'grz' not in names


def test_classify_arrow():
    names = classify(arrow_frame())
    assert names >= {'MS4', 'MS4B', 'MS4_S', 'depth 2', 'q-depth 1'}
    assert 'M+S4' not in names
    assert 'ed' not in names


def test_classify_non_barcan():
    assert 'MS4B' not in classify(non_barcan_frame())


def test_classify_undecided():
    f = grid_frame(1, 3)[1]
    result = classify_frame(f, cluster_cap=1)
    assert result.undecided == {'M+S4'}
    assert 'M+S4' not in result.classes
    assert 'MS4B' in result.classes
    assert result.budget.needed == 3
    assert result.budget.cap == 1

    result = classify_frame(f)
    assert result.undecided == frozenset()
    assert result.budget is None
    assert 'M+S4' in result.classes


def test_classify_undecided_chain():
    result = classify_frame(chain_frame(4), cluster_cap=3)
    assert result.undecided == {'M+S4', 'L_omega'}
    assert not result.classes & {'M+S4', 'L_omega'}
    assert classify(chain_frame(4)) >= {'M+S4', 'L_omega', 'grz', 'sc', 'ed'}


def _cluster_unions(f):
    clusters = e_clusters(f)
    for subset in range(1, 1 << len(clusters)):
        union = 0
        for i in members(subset):
            union |= clusters[i]
        yield union


LEMMA_FRAMES = suite_frames(max_worlds=3, random_count=40)


def test_flat_cluster_lemmas():
    for f in LEMMA_FRAMES:
        q = q_relation(f)
        for A in _cluster_unions(f):
            top = qmax(f, A)
            for m in members(top):
                cluster = f.ex(1 << m)
                if flat(f, cluster):
                    assert cluster & ~top == 0, (f, A, m)
                for x in members(A):
                    if q[m, x]:
                        assert q[x, m], (f, A, m, x)


def test_flat_clusters_imply_mcas():
    frames = LEMMA_FRAMES + [product_frame(chain_frame(n), k) for n in (1, 2, 3) for k in (1, 2)]
    checked = 0
    for f in frames:
        if check_flat_clusters(f).verdict:
            checked += 1
            assert check_mcas_semantic(f).verdict, f
    assert checked
